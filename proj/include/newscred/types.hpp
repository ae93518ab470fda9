#pragma once

#include <Eigen/Dense>

#include <sstream>
#include <stdexcept>
#include <string>

namespace newscred {

using Scalar = double;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Fixed widths of the fused representation segments, in concatenation order.
struct DimensionContract {
  int text_dim = 32;      // projected body representation
  int image_dim = 30;     // projected image representation
  int emotion_dim = 38;   // lexicon emotion features
  // Attention outputs share text_dim; the title projection must match it.

  int attention_dim() const { return text_dim; }
  int fused_dim() const { return text_dim + image_dim + emotion_dim + 2 * attention_dim(); }
};

inline constexpr int kTextDim = 32;
inline constexpr int kImageDim = 30;
inline constexpr int kEmotionDim = 38;
inline constexpr int kFusedDim = kTextDim + kImageDim + kEmotionDim + 2 * kTextDim;  // 164

enum class Segment { Text, Image, Emotion, TextToTitle, TitleToText };

inline const char* segment_name(Segment s) {
  switch (s) {
    case Segment::Text: return "text";
    case Segment::Image: return "image";
    case Segment::Emotion: return "emotion";
    case Segment::TextToTitle: return "text_to_title";
    case Segment::TitleToText: return "title_to_text";
  }
  return "?";
}

inline int segment_width(Segment s, const DimensionContract& c) {
  switch (s) {
    case Segment::Text: return c.text_dim;
    case Segment::Image: return c.image_dim;
    case Segment::Emotion: return c.emotion_dim;
    case Segment::TextToTitle:
    case Segment::TitleToText: return c.attention_dim();
  }
  return 0;
}

inline const Segment kSegmentOrder[5] = {Segment::Text, Segment::Image, Segment::Emotion,
                                         Segment::TextToTitle, Segment::TitleToText};

[[noreturn]] inline void fail(const std::string& msg) { throw std::runtime_error(msg); }

template <typename... Parts>
std::string cat(Parts&&... parts) {
  std::ostringstream os;
  (os << ... << parts);
  return os.str();
}

}  // namespace newscred
