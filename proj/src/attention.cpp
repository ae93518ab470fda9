#include "newscred/attention.hpp"

#include <cmath>

namespace newscred {

Matrix scaled_dot_attention(const Matrix& query, const Matrix& key, const Matrix& value, int d) {
  if (d <= 0) fail(cat("attention dimension must be positive, got ", d));
  if (query.cols() != d || key.cols() != d || value.cols() != d)
    fail(cat("attention width mismatch: Q ", query.rows(), "x", query.cols(), ", K ", key.rows(),
             "x", key.cols(), ", V ", value.rows(), "x", value.cols(), ", d ", d));
  if (key.rows() != value.rows())
    fail(cat("attention key/value row mismatch: ", key.rows(), " vs ", value.rows()));
  if (query.rows() < 1 || key.rows() < 1) fail("attention needs non-empty sequences");
  if (query.hasNaN() || key.hasNaN() || value.hasNaN()) fail("attention inputs contain NaN");

  Matrix logits = query * key.transpose() / std::sqrt(static_cast<double>(d));
  return softmax_rows(logits) * value;
}

AttentionBlock make_attention_block(int dim, SplitMix64& rng) {
  if (dim <= 0) fail("attention block dimension must be positive");
  AttentionBlock block;
  double bound = 1.0 / std::sqrt(static_cast<double>(dim));
  for (Matrix* w : {&block.query_weight, &block.key_weight, &block.value_weight,
                    &block.out_weight}) {
    w->resize(dim, dim);
    for (Eigen::Index i = 0; i < w->size(); ++i) w->data()[i] = rng.uniform(-bound, bound);
  }
  block.out_bias = Vector::Zero(dim);
  return block;
}

AttentionTrace attend(const AttentionBlock& block, const Matrix& query_seq,
                      const Matrix& kv_seq) {
  const int d = block.dim();
  if (query_seq.cols() != d || kv_seq.cols() != d)
    fail(cat("attention block expects width ", d, ", got query ", query_seq.cols(),
             " and key/value ", kv_seq.cols()));
  if (query_seq.rows() < 1 || kv_seq.rows() < 1) fail("attention needs non-empty sequences");

  AttentionTrace t;
  t.q = query_seq * block.query_weight;
  t.k = kv_seq * block.key_weight;
  t.v = kv_seq * block.value_weight;
  Matrix logits = t.q * t.k.transpose() / std::sqrt(static_cast<double>(d));
  t.weights = softmax_rows(logits);
  t.mixed = t.weights * t.v;
  t.pooled = t.mixed.colwise().mean().transpose();
  t.output = block.out_weight * t.pooled + block.out_bias;
  return t;
}

std::pair<Vector, Vector> title_text_features(const Matrix& text_seq, const Matrix& title_seq,
                                              const AttentionBlock& text_to_title,
                                              const AttentionBlock& title_to_text) {
  AttentionTrace fwd = attend(text_to_title, text_seq, title_seq);
  AttentionTrace rev = attend(title_to_text, title_seq, text_seq);
  return {fwd.output, rev.output};
}

}  // namespace newscred
