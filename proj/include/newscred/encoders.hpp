#pragma once

#include "newscred/rng.hpp"
#include "newscred/types.hpp"

namespace newscred {

// Trainable linear map out = relu(W x + b) applied per embedding row.
// b starts at zero, so the zero-bias case is a plain weighted projection.
struct ProjectionLayer {
  Matrix weight;  // out x in
  Vector bias;    // out

  int in_dim() const { return static_cast<int>(weight.cols()); }
  int out_dim() const { return static_cast<int>(weight.rows()); }
};

// weight ~ U[-1/sqrt(in), +1/sqrt(in)] from the given stream; bias = 0.
ProjectionLayer make_projection(int out_dim, int in_dim, SplitMix64& rng);

template <typename Derived>
Matrix relu(const Eigen::MatrixBase<Derived>& x) {
  return x.cwiseMax(typename Derived::Scalar(0));
}

struct Projected {
  Matrix pre;     // seq * Wt + b, before the ReLU (kept for gradients)
  Matrix seq;     // m x out, relu(pre)
  Vector pooled;  // column means of seq
};

// Applies the layer row-wise and mean-pools. Throws on width mismatch.
Projected project(const ProjectionLayer& layer, const Matrix& seq);

}  // namespace newscred
