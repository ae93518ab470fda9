#pragma once

#include "newscred/types.hpp"

namespace newscred {

// Fused layout for the default contract, offsets into the 164-dim vector:
//   text [0, 32)  image [32, 62)  emotion [62, 100)
//   text_to_title [100, 132)  title_to_text [132, 164)
int segment_offset(Segment s, const DimensionContract& c = DimensionContract{});

// Concatenates the five representations in the fixed segment order.
// Throws on any width mismatch, naming the offending segment.
Vector fuse(const Vector& text, const Vector& image, const Vector& emotion,
            const Vector& text_to_title, const Vector& title_to_text);

// Reads one segment back out of a fused vector (default contract).
Vector read_segment(const Vector& fused, Segment s);

struct ClassifierHead {
  Matrix weight;  // 2 x fused_dim
  Vector bias;    // 2

  int in_dim() const { return static_cast<int>(weight.cols()); }
};

// softmax(W x + b). Entries are positive and sum to 1.
Vector predict_proba(const ClassifierHead& head, const Vector& fused);

// Argmax over the two class probabilities; an exact tie goes to 0 (fake).
int classify(const Vector& probs);

}  // namespace newscred
