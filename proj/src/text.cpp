#include "newscred/text.hpp"

#include <cctype>

namespace newscred {

namespace {

// Returns the byte length of the whitespace sequence starting at i, or 0.
size_t whitespace_len(const std::string& s, size_t i) {
  unsigned char c = s[i];
  if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f') return 1;
  // UTF-8 multi-byte whitespace.
  if (c == 0xc2 && i + 1 < s.size() && static_cast<unsigned char>(s[i + 1]) == 0xa0) return 2;  // NBSP
  if (c == 0xe2 && i + 2 < s.size()) {
    unsigned char c1 = s[i + 1], c2 = s[i + 2];
    if (c1 == 0x80 && ((c2 >= 0x80 && c2 <= 0x8a) || c2 == 0xa8 || c2 == 0xa9)) return 3;  // U+2000..200A, U+2028, U+2029
    if (c1 == 0x81 && c2 == 0x9f) return 3;                                                // U+205F
  }
  if (c == 0xe3 && i + 2 < s.size() && static_cast<unsigned char>(s[i + 1]) == 0x80 &&
      static_cast<unsigned char>(s[i + 2]) == 0x80)
    return 3;  // U+3000 ideographic space
  return 0;
}

bool is_ascii_punct(unsigned char c) { return c < 0x80 && std::ispunct(c); }

}  // namespace

std::vector<std::string> split_tokens(const std::string& text) {
  std::vector<std::string> tokens;
  std::string cur;
  size_t i = 0;
  while (i < text.size()) {
    size_t ws = whitespace_len(text, i);
    if (ws > 0) {
      if (!cur.empty()) {
        tokens.push_back(cur);
        cur.clear();
      }
      i += ws;
    } else {
      cur.push_back(text[i]);
      ++i;
    }
  }
  if (!cur.empty()) tokens.push_back(cur);
  return tokens;
}

std::string fold_case(const std::string& token) {
  std::string out = token;
  for (char& c : out)
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string strip_punct(const std::string& token) {
  size_t b = 0, e = token.size();
  while (b < e && is_ascii_punct(token[b])) ++b;
  while (e > b && is_ascii_punct(token[e - 1])) --e;
  return token.substr(b, e - b);
}

std::string lookup_key(const std::string& token) { return fold_case(strip_punct(token)); }

bool is_blank(const std::string& s) {
  size_t i = 0;
  while (i < s.size()) {
    size_t ws = whitespace_len(s, i);
    if (ws == 0) return false;
    i += ws;
  }
  return true;
}

}  // namespace newscred
