#pragma once

#include <utility>

#include "newscred/rng.hpp"
#include "newscred/types.hpp"

namespace newscred {

// Row-wise softmax with max subtraction, so any finite logits give finite
// weights and each row sums to 1.
template <typename Derived>
Matrix softmax_rows(const Eigen::MatrixBase<Derived>& logits) {
  Matrix out(logits.rows(), logits.cols());
  for (Eigen::Index i = 0; i < logits.rows(); ++i) {
    double m = logits.row(i).maxCoeff();
    out.row(i) = (logits.row(i).array() - m).exp();
    out.row(i) /= out.row(i).sum();
  }
  return out;
}

template <typename Derived>
Vector softmax(const Eigen::MatrixBase<Derived>& logits) {
  return softmax_rows(logits.transpose()).transpose();
}

// softmax(Q K^T / sqrt(d)) V for row-stacked Q (p x d), K, V (q x d).
// Throws on width mismatches, non-positive d, or NaN inputs.
Matrix scaled_dot_attention(const Matrix& query, const Matrix& key, const Matrix& value, int d);

// One direction of the title<->text similarity extractor: three input
// projections, scaled dot-product attention, mean pooling over query rows,
// then a linear output layer of the same width.
struct AttentionBlock {
  Matrix query_weight;  // dim x dim
  Matrix key_weight;    // dim x dim
  Matrix value_weight;  // dim x dim
  Matrix out_weight;    // dim x dim
  Vector out_bias;      // dim

  int dim() const { return static_cast<int>(out_bias.size()); }
};

// Weight matrices ~ U[-1/sqrt(dim), +1/sqrt(dim)]; out_bias = 0.
AttentionBlock make_attention_block(int dim, SplitMix64& rng);

// Forward pass of one direction with everything the backward pass needs.
struct AttentionTrace {
  Matrix q, k, v;    // projected sequences
  Matrix weights;    // softmax rows, p x q
  Matrix mixed;      // weights * v, p x dim
  Vector pooled;     // row mean of mixed
  Vector output;     // out_weight * pooled + out_bias
};

AttentionTrace attend(const AttentionBlock& block, const Matrix& query_seq,
                      const Matrix& kv_seq);

// Both directions: text rows query the title, and title rows query the text.
// Returns (text_to_title, title_to_text) feature vectors.
std::pair<Vector, Vector> title_text_features(const Matrix& text_seq, const Matrix& title_seq,
                                              const AttentionBlock& text_to_title,
                                              const AttentionBlock& title_to_text);

}  // namespace newscred
