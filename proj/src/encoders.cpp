#include "newscred/encoders.hpp"

#include <cmath>

namespace newscred {

ProjectionLayer make_projection(int out_dim, int in_dim, SplitMix64& rng) {
  if (out_dim <= 0 || in_dim <= 0) fail("projection dimensions must be positive");
  ProjectionLayer layer;
  layer.weight.resize(out_dim, in_dim);
  double bound = 1.0 / std::sqrt(static_cast<double>(in_dim));
  for (Eigen::Index i = 0; i < layer.weight.size(); ++i)
    layer.weight.data()[i] = rng.uniform(-bound, bound);
  layer.bias = Vector::Zero(out_dim);
  return layer;
}

Projected project(const ProjectionLayer& layer, const Matrix& seq) {
  if (seq.cols() != layer.in_dim())
    fail(cat("projection width mismatch: sequence is ", seq.rows(), "x", seq.cols(),
             ", layer expects width ", layer.in_dim()));
  Projected out;
  out.pre = (seq * layer.weight.transpose()).rowwise() + layer.bias.transpose();
  out.seq = relu(out.pre);
  out.pooled = out.seq.colwise().mean().transpose();
  if (!out.seq.allFinite()) fail("projection produced non-finite values");
  return out;
}

}  // namespace newscred
