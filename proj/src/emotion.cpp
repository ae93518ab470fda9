#include "newscred/emotion.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "newscred/text.hpp"

namespace newscred {

const char* const kEmotionCategoryNames[kEmotionCategories] = {
    "anger", "anticipation", "disgust", "fear", "joy", "sadness", "surprise", "trust"};

const LexiconEntry* EmotionLexicon::match(const std::string& token) const {
  std::string key = lookup_key(token);
  if (key.empty()) return nullptr;
  auto it = entries.find(key);
  return it == entries.end() ? nullptr : &it->second;
}

EmotionLexicon load_lexicon(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(cat("cannot open lexicon: ", path));

  constexpr size_t kCols = 1 + kEmotionCategories + 2;  // word, flags, intensity, polarity
  EmotionLexicon lex;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (is_blank(line)) continue;
    size_t first = line.find_first_not_of(" \t");
    if (first != std::string::npos && line[first] == '#') continue;

    std::vector<std::string> cols;
    std::stringstream ss(line);
    std::string col;
    while (std::getline(ss, col, '\t')) cols.push_back(col);
    if (cols.size() != kCols)
      fail(cat(path, " line ", lineno, ": expected ", kCols, " tab-separated columns, got ",
               cols.size()));

    LexiconEntry entry;
    const std::string word = fold_case(cols[0]);
    if (word.empty()) fail(cat(path, " line ", lineno, ": empty word"));
    for (int c = 0; c < kEmotionCategories; ++c) {
      const std::string& flag = cols[1 + c];
      if (flag != "0" && flag != "1")
        fail(cat(path, " line ", lineno, ": category flag ", c + 1, " must be 0 or 1, got '",
                 flag, "'"));
      entry.categories[c] = (flag == "1");
    }
    try {
      entry.intensity = std::stod(cols[1 + kEmotionCategories]);
      entry.polarity = std::stod(cols[2 + kEmotionCategories]);
    } catch (const std::exception&) {
      fail(cat(path, " line ", lineno, ": intensity/polarity not numeric"));
    }
    if (entry.intensity < 0.0 || entry.intensity > 1.0)
      fail(cat(path, " line ", lineno, ": intensity ", entry.intensity, " outside [0, 1]"));
    if (entry.polarity < -1.0 || entry.polarity > 1.0)
      fail(cat(path, " line ", lineno, ": polarity ", entry.polarity, " outside [-1, 1]"));

    if (lex.entries.count(word))
      std::cerr << "lexicon " << path << " line " << lineno << ": duplicate word '" << word
                << "', last entry wins\n";
    lex.entries[word] = entry;
  }
  return lex;
}

namespace {

const std::set<std::string>& first_person_words() {
  static const std::set<std::string> words = {"i",  "me",  "my",  "mine", "myself",
                                              "we", "us",  "our", "ours", "ourselves"};
  return words;
}

const std::set<std::string>& second_person_words() {
  static const std::set<std::string> words = {"you", "your", "yours", "yourself", "yourselves"};
  return words;
}

const std::set<std::string>& negation_words() {
  static const std::set<std::string> words = {
      "no",     "not",    "never",   "none",    "nothing",  "nobody",    "nowhere",
      "neither", "nor",   "cannot",  "can't",   "don't",    "won't",     "isn't",
      "aren't", "wasn't", "weren't", "didn't",  "doesn't",  "couldn't",  "shouldn't",
      "wouldn't", "ain't"};
  return words;
}

const std::set<std::string>& emoticon_tokens() {
  static const std::set<std::string> words = {":)",  ":(",  ":D",  ":P",  ":p",  ";)",  ":/",
                                              ":-)", ":-(", ":'(", ":o",  ":O",  "<3",  "xD",
                                              "XD",  "=)",  "=("};
  return words;
}

bool is_all_caps_word(const std::string& token) {
  int letters = 0;
  for (unsigned char c : token) {
    if (c >= 'a' && c <= 'z') return false;
    if (c >= 'A' && c <= 'Z') ++letters;
  }
  return letters >= 2;
}

// Runs of 3+ '.' count once; each U+2026 counts once.
int count_ellipses(const std::string& text) {
  int count = 0;
  size_t i = 0;
  while (i < text.size()) {
    if (text[i] == '.') {
      size_t run = 0;
      while (i < text.size() && text[i] == '.') ++i, ++run;
      if (run >= 3) ++count;
    } else if (i + 2 < text.size() && static_cast<unsigned char>(text[i]) == 0xe2 &&
               static_cast<unsigned char>(text[i + 1]) == 0x80 &&
               static_cast<unsigned char>(text[i + 2]) == 0xa6) {
      ++count;
      i += 3;
    } else {
      ++i;
    }
  }
  return count;
}

// Each run of sentence terminators (. ! ?) closes one sentence.
int count_sentences(const std::string& text) {
  int count = 0;
  bool in_run = false;
  for (char c : text) {
    bool term = (c == '.' || c == '!' || c == '?');
    if (term && !in_run) ++count;
    in_run = term;
  }
  return count;
}

double clamp01(double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); }

}  // namespace

EmotionFeatures extract_emotion(const std::string& text, const EmotionLexicon& lexicon) {
  EmotionFeatures f;
  f.cate = Vector::Zero(kEmotionCategories);
  f.lex = Vector::Zero(10);
  f.intensity = Vector::Zero(kEmotionCategories);
  f.senti = Vector::Zero(2);
  f.aux = Vector::Zero(10);

  const auto tokens = split_tokens(text);
  const double n = static_cast<double>(tokens.size());
  if (!tokens.empty()) {
    Eigen::Array<double, kEmotionCategories, 1> cat_hits =
        Eigen::Array<double, kEmotionCategories, 1>::Zero();
    Eigen::Array<double, kEmotionCategories, 1> cat_intensity_sum =
        Eigen::Array<double, kEmotionCategories, 1>::Zero();
    int matched = 0;
    double polarity_sum = 0.0, polarity_absmax = 0.0;
    std::set<std::string> distinct_keys, distinct_matched;
    int caps = 0, fp = 0, sp = 0, neg = 0, emoticons = 0;

    for (const auto& token : tokens) {
      std::string key = lookup_key(token);
      if (!key.empty()) {
        distinct_keys.insert(key);
        if (first_person_words().count(key)) ++fp;
        if (second_person_words().count(key)) ++sp;
        if (negation_words().count(key)) ++neg;
      }
      if (is_all_caps_word(token)) ++caps;
      if (emoticon_tokens().count(token)) ++emoticons;

      const LexiconEntry* entry = key.empty() ? nullptr : lexicon.match(key);
      if (!entry) continue;
      ++matched;
      distinct_matched.insert(key);
      polarity_sum += entry->polarity;
      polarity_absmax = std::max(polarity_absmax, std::abs(entry->polarity));
      for (int c = 0; c < kEmotionCategories; ++c) {
        if (entry->categories[c]) {
          cat_hits(c) += 1.0;
          cat_intensity_sum(c) += entry->intensity;
        }
      }
    }

    double flag_mass = cat_hits.sum();
    if (flag_mass > 0.0)
      for (int c = 0; c < kEmotionCategories; ++c) f.cate(c) = cat_hits(c) / flag_mass;

    f.lex(0) = matched / n;
    f.lex(1) = distinct_keys.empty()
                   ? 0.0
                   : static_cast<double>(distinct_matched.size()) / distinct_keys.size();
    for (int c = 0; c < kEmotionCategories; ++c) f.lex(2 + c) = cat_hits(c) / n;

    for (int c = 0; c < kEmotionCategories; ++c)
      if (cat_hits(c) > 0.0) f.intensity(c) = cat_intensity_sum(c) / cat_hits(c);

    if (matched > 0) {
      f.senti(0) = polarity_sum / matched;
      f.senti(1) = polarity_absmax;
    }

    int exclamations = static_cast<int>(std::count(text.begin(), text.end(), '!'));
    int questions = static_cast<int>(std::count(text.begin(), text.end(), '?'));
    int sentences = std::max(1, count_sentences(text));
    f.aux(0) = clamp01(exclamations / 10.0);
    f.aux(1) = clamp01(questions / 10.0);
    f.aux(2) = clamp01(count_ellipses(text) / 10.0);
    f.aux(3) = caps / n;
    f.aux(4) = fp / n;
    f.aux(5) = sp / n;
    f.aux(6) = neg / n;
    f.aux(7) = clamp01(emoticons / 10.0);
    f.aux(8) = clamp01(n / sentences / 100.0);
    f.aux(9) = clamp01(n / 1000.0);
  }

  f.combined.resize(kEmotionDim);
  f.combined << f.cate, f.lex, f.intensity, f.senti, f.aux;
  return f;
}

std::map<std::string, EmotionFeatures> batch_extract(const std::vector<Article>& articles,
                                                     const EmotionLexicon& lexicon) {
  std::map<std::string, EmotionFeatures> out;
  for (const auto& a : articles) out[a.id] = extract_emotion(a.body, lexicon);
  return out;
}

}  // namespace newscred
