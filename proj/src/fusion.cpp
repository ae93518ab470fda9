#include "newscred/fusion.hpp"

#include "newscred/attention.hpp"

namespace newscred {

int segment_offset(Segment s, const DimensionContract& c) {
  int off = 0;
  for (Segment cur : kSegmentOrder) {
    if (cur == s) return off;
    off += segment_width(cur, c);
  }
  return off;
}

Vector fuse(const Vector& text, const Vector& image, const Vector& emotion,
            const Vector& text_to_title, const Vector& title_to_text) {
  const DimensionContract c;
  const Vector* parts[5] = {&text, &image, &emotion, &text_to_title, &title_to_text};
  for (int i = 0; i < 5; ++i) {
    int want = segment_width(kSegmentOrder[i], c);
    if (parts[i]->size() != want)
      fail(cat("fuse: segment '", segment_name(kSegmentOrder[i]), "' has dimension ",
               parts[i]->size(), ", expected ", want));
  }
  Vector fused(c.fused_dim());
  int off = 0;
  for (int i = 0; i < 5; ++i) {
    fused.segment(off, parts[i]->size()) = *parts[i];
    off += static_cast<int>(parts[i]->size());
  }
  return fused;
}

Vector read_segment(const Vector& fused, Segment s) {
  const DimensionContract c;
  if (fused.size() != c.fused_dim())
    fail(cat("read_segment: fused vector has dimension ", fused.size(), ", expected ",
             c.fused_dim()));
  return fused.segment(segment_offset(s, c), segment_width(s, c));
}

Vector predict_proba(const ClassifierHead& head, const Vector& fused) {
  if (fused.size() != head.in_dim())
    fail(cat("classifier expects dimension ", head.in_dim(), ", got ", fused.size()));
  if (!fused.allFinite()) fail("classifier input contains non-finite values");
  return softmax(head.weight * fused + head.bias);
}

int classify(const Vector& probs) {
  if (probs.size() != 2) fail(cat("classify expects 2 probabilities, got ", probs.size()));
  return probs(1) > probs(0) ? 1 : 0;
}

}  // namespace newscred
