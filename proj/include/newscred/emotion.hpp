#pragma once

#include <array>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "newscred/corpus.hpp"
#include "newscred/types.hpp"

namespace newscred {

inline constexpr int kEmotionCategories = 8;

// Category order (index 0..7): anger, anticipation, disgust, fear, joy,
// sadness, surprise, trust.
extern const char* const kEmotionCategoryNames[kEmotionCategories];

struct LexiconEntry {
  std::array<bool, kEmotionCategories> categories{};
  double intensity = 0.0;  // [0, 1]
  double polarity = 0.0;   // [-1, 1]
};

// Word -> emotion knowledge, keyed by case-folded word.
struct EmotionLexicon {
  std::unordered_map<std::string, LexiconEntry> entries;

  // token is stripped of surrounding punctuation and case-folded before lookup.
  const LexiconEntry* match(const std::string& token) const;
};

// TSV rows: word \t f1..f8 (0/1) \t intensity \t polarity -- 11 columns.
// '#' starts a comment line; blank lines are skipped. Duplicate words keep the
// last row (a warning goes to stderr). Throws on column-count mismatches,
// non-binary flags, or out-of-range intensity/polarity, naming the line.
EmotionLexicon load_lexicon(const std::string& path);

// The 38-dim publisher-emotion vector, five families concatenated in order.
//
//   cate (8):      distribution of category flags over matched tokens,
//                  normalized to sum 1; all zero when nothing matches.
//   lex (10):      [0] matched-occurrence ratio, [1] distinct-matched ratio
//                  (distinct matched keys / distinct keys), [2..9] per-category
//                  hit ratio over all tokens.
//   intensity (8): per-category mean intensity of matched tokens.
//   senti (2):     [0] mean polarity of matched tokens, [1] max |polarity|.
//   aux (10):      [0] '!' count /10   [1] '?' count /10
//                  [2] ellipsis count ('...' runs or U+2026) /10
//                  [3] all-caps word ratio (>=2 letters, all uppercase)
//                  [4] first-person pronoun ratio  [5] second-person ratio
//                  [6] negation word ratio
//                  [7] emoticon token count /10
//                  [8] mean sentence length in tokens /100
//                  [9] token count /1000
//                  Every aux entry saturates at 1.
//
// Ratios divide by the token count; empty text gives the zero vector.
struct EmotionFeatures {
  Vector cate;       // 8
  Vector lex;        // 10
  Vector intensity;  // 8
  Vector senti;      // 2
  Vector aux;        // 10
  Vector combined;   // 38, the concatenation in the order above
};

EmotionFeatures extract_emotion(const std::string& text, const EmotionLexicon& lexicon);

// extract_emotion over each article body; result keyed by id.
std::map<std::string, EmotionFeatures> batch_extract(const std::vector<Article>& articles,
                                                     const EmotionLexicon& lexicon);

}  // namespace newscred
