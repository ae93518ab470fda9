// Independent reference implementations the tests check the library against.
// Everything here is deliberately written with scalar loops and no Eigen
// expressions, so a bug in the library cannot hide in a shared code path.
#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "newscred/attention.hpp"
#include "newscred/encoders.hpp"
#include "newscred/model.hpp"
#include "newscred/training.hpp"
#include "newscred/types.hpp"

namespace oracle {

using newscred::Matrix;
using newscred::Vector;

// C = A * B with explicit triple loops.
inline Matrix matmul(const Matrix& a, const Matrix& b) {
  Matrix c = Matrix::Zero(a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < b.cols(); ++j)
      for (Eigen::Index k = 0; k < a.cols(); ++k) c(i, j) += a(i, k) * b(k, j);
  return c;
}

// relu(X W^T + b) per row, plus the column-mean pool, all scalar loops.
struct ProjectedRef {
  Matrix seq;
  Vector pooled;
};

inline ProjectedRef project(const Matrix& w, const Vector& b, const Matrix& x) {
  ProjectedRef out;
  out.seq = Matrix::Zero(x.rows(), w.rows());
  for (Eigen::Index r = 0; r < x.rows(); ++r)
    for (Eigen::Index o = 0; o < w.rows(); ++o) {
      double acc = b(o);
      for (Eigen::Index i = 0; i < x.cols(); ++i) acc += w(o, i) * x(r, i);
      out.seq(r, o) = acc > 0.0 ? acc : 0.0;
    }
  out.pooled = Vector::Zero(w.rows());
  for (Eigen::Index o = 0; o < w.rows(); ++o) {
    double acc = 0.0;
    for (Eigen::Index r = 0; r < x.rows(); ++r) acc += out.seq(r, o);
    out.pooled(o) = acc / static_cast<double>(x.rows());
  }
  return out;
}

// softmax(Q K^T / sqrt(d)) V via exp/normalize/accumulate scalar loops.
inline Matrix attention(const Matrix& q, const Matrix& k, const Matrix& v, int d) {
  Matrix out = Matrix::Zero(q.rows(), v.cols());
  double scale = 1.0 / std::sqrt(static_cast<double>(d));
  for (Eigen::Index i = 0; i < q.rows(); ++i) {
    std::vector<double> logits(static_cast<size_t>(k.rows()));
    double hi = -1e300;
    for (Eigen::Index j = 0; j < k.rows(); ++j) {
      double dot = 0.0;
      for (Eigen::Index c = 0; c < q.cols(); ++c) dot += q(i, c) * k(j, c);
      logits[static_cast<size_t>(j)] = dot * scale;
      if (logits[static_cast<size_t>(j)] > hi) hi = logits[static_cast<size_t>(j)];
    }
    double z = 0.0;
    for (double& l : logits) {
      l = std::exp(l - hi);
      z += l;
    }
    for (Eigen::Index j = 0; j < k.rows(); ++j)
      for (Eigen::Index c = 0; c < v.cols(); ++c)
        out(i, c) += logits[static_cast<size_t>(j)] / z * v(j, c);
  }
  return out;
}

// End-to-end single attention direction: input projections, attention,
// row-mean pooling, output layer.
inline Vector direction_features(const newscred::AttentionBlock& block, const Matrix& query_seq,
                                 const Matrix& kv_seq) {
  Matrix q = matmul(query_seq, block.query_weight);
  Matrix k = matmul(kv_seq, block.key_weight);
  Matrix v = matmul(kv_seq, block.value_weight);
  Matrix mixed = attention(q, k, v, block.dim());
  Vector pooled = Vector::Zero(mixed.cols());
  for (Eigen::Index c = 0; c < mixed.cols(); ++c) {
    double acc = 0.0;
    for (Eigen::Index r = 0; r < mixed.rows(); ++r) acc += mixed(r, c);
    pooled(c) = acc / static_cast<double>(mixed.rows());
  }
  Vector out = Vector::Zero(block.dim());
  for (int o = 0; o < block.dim(); ++o) {
    double acc = block.out_bias(o);
    for (int i = 0; i < block.dim(); ++i) acc += block.out_weight(o, i) * pooled(i);
    out(o) = acc;
  }
  return out;
}

// Two-class softmax of W x + b via scalar exp/normalize.
inline Vector head_proba(const Matrix& w, const Vector& b, const Vector& x) {
  double l0 = b(0), l1 = b(1);
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    l0 += w(0, i) * x(i);
    l1 += w(1, i) * x(i);
  }
  double hi = l0 > l1 ? l0 : l1;
  double e0 = std::exp(l0 - hi), e1 = std::exp(l1 - hi);
  Vector p(2);
  p << e0 / (e0 + e1), e1 / (e0 + e1);
  return p;
}

// Brute-force confusion tallying, structured as four independent passes so it
// shares nothing with the library's single-pass counting.
struct ConfusionRef {
  long tp = 0, fp = 0, tn = 0, fn = 0;
};

inline ConfusionRef confusion(const std::vector<int>& preds, const std::vector<int>& labels,
                              int positive) {
  ConfusionRef c;
  for (size_t i = 0; i < preds.size(); ++i)
    if (preds[i] == positive && labels[i] == positive) ++c.tp;
  for (size_t i = 0; i < preds.size(); ++i)
    if (preds[i] == positive && labels[i] != positive) ++c.fp;
  for (size_t i = 0; i < preds.size(); ++i)
    if (preds[i] != positive && labels[i] != positive) ++c.tn;
  for (size_t i = 0; i < preds.size(); ++i)
    if (preds[i] != positive && labels[i] == positive) ++c.fn;
  return c;
}

// Mean cross-entropy of a batch under a flat parameter vector.
inline double batch_loss(const newscred::ModelParams& shape, const Vector& flat,
                         const std::vector<newscred::ArticleFeatures>& batch,
                         newscred::AttentionMode mode) {
  newscred::ModelParams params = shape;
  newscred::unpack(params, flat);
  double total = 0.0;
  for (const auto& sample : batch) {
    newscred::ForwardTrace trace;
    newscred::model_forward(params, sample, mode, &trace);
    total += newscred::cross_entropy_logits(trace.logits, sample.label);
  }
  return total / static_cast<double>(batch.size());
}

// Central finite differences of the mean batch loss at `flat`, one coordinate
// at a time: (f(x + h e_i) - f(x - h e_i)) / 2h.
inline Vector fd_gradient(const newscred::ModelParams& shape, const Vector& flat,
                          const std::vector<newscred::ArticleFeatures>& batch,
                          newscred::AttentionMode mode, double step) {
  Vector grad(flat.size());
  Vector probe = flat;
  for (Eigen::Index i = 0; i < flat.size(); ++i) {
    probe(i) = flat(i) + step;
    double up = batch_loss(shape, probe, batch, mode);
    probe(i) = flat(i) - step;
    double down = batch_loss(shape, probe, batch, mode);
    probe(i) = flat(i);
    grad(i) = (up - down) / (2.0 * step);
  }
  return grad;
}

// Relative error with an absolute floor, so near-zero pairs compare cleanly:
// |a - b| / max(eps0, |a|, |b|).
inline double rel_err(double a, double b, double eps0 = 1e-6) {
  double denom = std::max(eps0, std::max(std::abs(a), std::abs(b)));
  return std::abs(a - b) / denom;
}

// Scalar Adam reference for one weight, standard bias-corrected update.
struct ScalarAdam {
  double m = 0.0, v = 0.0;
  long t = 0;

  double step(double w, double g, double lr, double b1 = 0.9, double b2 = 0.999,
              double eps = 1e-8) {
    ++t;
    m = b1 * m + (1 - b1) * g;
    v = b2 * v + (1 - b2) * g * g;
    double mhat = m / (1 - std::pow(b1, static_cast<double>(t)));
    double vhat = v / (1 - std::pow(b2, static_cast<double>(t)));
    return w - lr * mhat / (std::sqrt(vhat) + eps);
  }
};

}  // namespace oracle
