#pragma once

#include <string>
#include <vector>

namespace newscred {

// Splits on Unicode whitespace (ASCII space/tab/CR/LF/VT/FF plus NBSP, the
// U+2000..200A range, U+2028, U+2029, U+205F, U+3000). Input is treated as
// UTF-8; invalid bytes are passed through as token characters.
std::vector<std::string> split_tokens(const std::string& text);

// ASCII lowercase fold. Sufficient for the shipped lexicons, which are ASCII.
std::string fold_case(const std::string& token);

// Strips leading/trailing ASCII punctuation; interior characters (apostrophes,
// hyphens) are kept so contractions survive lookup.
std::string strip_punct(const std::string& token);

// strip_punct + fold_case, the canonical lexicon lookup key. May return "".
std::string lookup_key(const std::string& token);

bool is_blank(const std::string& s);

}  // namespace newscred
