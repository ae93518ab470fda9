// Independent counting oracle for the 38-dimensional emotion features, plus
// the hand-built toy lexicon and five-text mini corpus checked against it.
// Re-derives every dimension from the feature definitions with its own
// tokenizer, key normalization, and tallies; shares no code with the library.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <initializer_list>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "newscred/emotion.hpp"
#include "newscred/types.hpp"
#include "synthetic.hpp"

namespace oracle {

using newscred::Vector;

struct OracleEntry {
  std::array<int, 8> flags{};
  double intensity = 0.0;
  double polarity = 0.0;
};

using OracleLexicon = std::map<std::string, OracleEntry>;

inline std::vector<std::string> oracle_tokens(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : text) {
    if (ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r') {
      if (!cur.empty()) out.push_back(cur), cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

inline bool oracle_is_punct(char c) {
  static const std::string punct = "!\"#$%&'()*+,-./:;<=>?@[\\]^_`{|}~";
  return punct.find(c) != std::string::npos;
}

inline std::string oracle_key(const std::string& token) {
  size_t begin = 0, end = token.size();
  while (begin < end && oracle_is_punct(token[begin])) ++begin;
  while (end > begin && oracle_is_punct(token[end - 1])) --end;
  std::string key;
  for (size_t i = begin; i < end; ++i) {
    char c = token[i];
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    key += c;
  }
  return key;
}

inline bool oracle_all_caps(const std::string& token) {
  int upper = 0;
  for (char c : token) {
    if (c >= 'a' && c <= 'z') return false;
    if (c >= 'A' && c <= 'Z') ++upper;
  }
  return upper >= 2;
}

inline int oracle_count_char(const std::string& text, char target) {
  int n = 0;
  for (char c : text) n += (c == target) ? 1 : 0;
  return n;
}

inline int oracle_ellipses(const std::string& text) {
  int n = 0;
  size_t i = 0;
  while (i < text.size()) {
    if (text[i] == '.') {
      size_t j = i;
      while (j < text.size() && text[j] == '.') ++j;
      if (j - i >= 3) ++n;
      i = j;
    } else if (text.compare(i, 3, "\xe2\x80\xa6") == 0) {
      ++n;
      i += 3;
    } else {
      ++i;
    }
  }
  return n;
}

inline int oracle_sentences(const std::string& text) {
  int n = 0;
  bool prev_term = false;
  for (char c : text) {
    bool term = c == '.' || c == '!' || c == '?';
    if (term && !prev_term) ++n;
    prev_term = term;
  }
  return n;
}

inline Vector emotion_oracle(const std::string& text, const OracleLexicon& lex) {
  Vector out = Vector::Zero(38);
  auto tokens = oracle_tokens(text);
  if (tokens.empty()) return out;
  double n = static_cast<double>(tokens.size());

  static const std::set<std::string> first_person = {"i",  "me", "my",  "mine", "myself",
                                                     "we", "us", "our", "ours", "ourselves"};
  static const std::set<std::string> second_person = {"you", "your", "yours", "yourself",
                                                      "yourselves"};
  static const std::set<std::string> negations = {
      "no",      "not",     "never",   "none",    "nothing", "nobody",   "nowhere",  "neither",
      "nor",     "cannot",  "can't",   "don't",   "won't",   "isn't",    "aren't",   "wasn't",
      "weren't", "didn't",  "doesn't", "couldn't", "shouldn't", "wouldn't", "ain't"};
  static const std::set<std::string> emoticons = {":)",  ":(", ":D", ":P", ":p", ";)",
                                                  ":/",  ":-)", ":-(", ":'(", ":o", ":O",
                                                  "<3",  "xD", "XD", "=)", "=("};

  std::array<double, 8> hits{};
  std::array<double, 8> intensity_sum{};
  int matched = 0, caps = 0, fp = 0, sp = 0, neg = 0, emo = 0;
  double pol_sum = 0.0, pol_max = 0.0;
  std::set<std::string> keys, matched_keys;

  for (const auto& token : tokens) {
    std::string key = oracle_key(token);
    if (!key.empty()) {
      keys.insert(key);
      if (first_person.count(key)) ++fp;
      if (second_person.count(key)) ++sp;
      if (negations.count(key)) ++neg;
    }
    if (oracle_all_caps(token)) ++caps;
    if (emoticons.count(token)) ++emo;
    if (key.empty()) continue;
    auto it = lex.find(key);
    if (it == lex.end()) continue;
    ++matched;
    matched_keys.insert(key);
    pol_sum += it->second.polarity;
    pol_max = std::max(pol_max, std::abs(it->second.polarity));
    for (int c = 0; c < 8; ++c)
      if (it->second.flags[c]) {
        hits[c] += 1.0;
        intensity_sum[c] += it->second.intensity;
      }
  }

  double mass = 0.0;
  for (double h : hits) mass += h;
  if (mass > 0.0)
    for (int c = 0; c < 8; ++c) out(c) = hits[c] / mass;

  out(8) = matched / n;
  out(9) = keys.empty() ? 0.0 : static_cast<double>(matched_keys.size()) / keys.size();
  for (int c = 0; c < 8; ++c) out(10 + c) = hits[c] / n;

  for (int c = 0; c < 8; ++c)
    if (hits[c] > 0.0) out(18 + c) = intensity_sum[c] / hits[c];

  if (matched > 0) {
    out(26) = pol_sum / matched;
    out(27) = pol_max;
  }

  auto clamp = [](double v) { return std::min(1.0, std::max(0.0, v)); };
  out(28) = clamp(oracle_count_char(text, '!') / 10.0);
  out(29) = clamp(oracle_count_char(text, '?') / 10.0);
  out(30) = clamp(oracle_ellipses(text) / 10.0);
  out(31) = caps / n;
  out(32) = fp / n;
  out(33) = sp / n;
  out(34) = neg / n;
  out(35) = clamp(emo / 10.0);
  out(36) = clamp(n / std::max(1, oracle_sentences(text)) / 100.0);
  out(37) = clamp(n / 1000.0);
  return out;
}

// The oracle's view of the test lexicon, built by hand (not via load_lexicon).
inline OracleLexicon oracle_mini_lexicon() {
  auto entry = [](std::initializer_list<int> idx, double inten, double pol) {
    OracleEntry e;
    for (int i : idx) e.flags[static_cast<size_t>(i)] = 1;
    e.intensity = inten;
    e.polarity = pol;
    return e;
  };
  OracleLexicon lex;
  lex["furious"] = entry({0}, 0.9, -0.8);
  lex["dreadful"] = entry({3, 5}, 0.8, -0.7);
  lex["hoax"] = entry({2}, 0.6, -0.5);
  lex["cheerful"] = entry({4}, 0.6, 0.7);
  lex["glad"] = entry({4}, 0.55, 0.65);
  lex["trust"] = entry({7}, 0.65, 0.7);
  lex["sad"] = entry({5}, 0.7, -0.6);
  lex["shocked"] = entry({6}, 0.75, -0.3);
  lex["delighted"] = entry({4, 6}, 0.85, 0.8);
  lex["rumor"] = entry({1, 2}, 0.5, -0.4);
  return lex;
}

// The same lexicon as a TSV file for the library loader.
inline std::string mini_lexicon_tsv() {
  return "# word\tf1..f8\tintensity\tpolarity\n"
         "furious\t1\t0\t0\t0\t0\t0\t0\t0\t0.9\t-0.8\n"
         "dreadful\t0\t0\t0\t1\t0\t1\t0\t0\t0.8\t-0.7\n"
         "hoax\t0\t0\t1\t0\t0\t0\t0\t0\t0.6\t-0.5\n"
         "cheerful\t0\t0\t0\t0\t1\t0\t0\t0\t0.6\t0.7\n"
         "glad\t0\t0\t0\t0\t1\t0\t0\t0\t0.55\t0.65\n"
         "trust\t0\t0\t0\t0\t0\t0\t0\t1\t0.65\t0.7\n"
         "sad\t0\t0\t0\t0\t0\t1\t0\t0\t0.7\t-0.6\n"
         "shocked\t0\t0\t0\t0\t0\t0\t1\t0\t0.75\t-0.3\n"
         "delighted\t0\t0\t0\t0\t1\t0\t1\t0\t0.85\t0.8\n"
         "rumor\t0\t1\t1\t0\t0\t0\t0\t0\t0.5\t-0.4\n";
}

inline newscred::EmotionLexicon load_mini_lexicon(const synthetic::TempDir& tmp) {
  synthetic::write_text_file(tmp.file("lexicon.tsv"), mini_lexicon_tsv());
  return newscred::load_lexicon(tmp.file("lexicon.tsv"));
}

inline const std::vector<std::string>& mini_corpus_texts() {
  static const std::vector<std::string> texts = {
      "The FURIOUS mob was furious! Why? Nobody knows...",
      "I trust you. We are glad, so glad :)",
      "plain words without any matches here",
      "Dreadful rumor? No! It was a hoax... a cheerful HOAX!!",
      "delighted yet sad, sad and shocked\xe2\x80\xa6 you won't believe it",
  };
  return texts;
}

}  // namespace oracle
