#include "newscred/providers.hpp"

#include <cmath>

#include "newscred/image.hpp"
#include "newscred/rng.hpp"
#include "newscred/text.hpp"

namespace newscred {

Matrix EmbeddingProvider::embed_text(const std::string& key, const std::string&) const {
  fail(cat("provider ", name(), " does not embed text (key: ", key, ")"));
}

Matrix EmbeddingProvider::embed_image(const std::string& key, const std::string&) const {
  fail(cat("provider ", name(), " does not embed images (key: ", key, ")"));
}

HashedTextEmbedder::HashedTextEmbedder(int dim, uint64_t salt) : dim_(dim), salt_(salt) {
  if (dim <= 0) fail("text embedder dimension must be positive");
}

Matrix HashedTextEmbedder::embed_text(const std::string&, const std::string& text) const {
  auto tokens = split_tokens(text);
  if (tokens.empty()) return Matrix::Zero(1, dim_);
  Matrix rows(static_cast<Eigen::Index>(tokens.size()), dim_);
  const double scale = 1.0 / std::sqrt(static_cast<double>(dim_));
  for (size_t t = 0; t < tokens.size(); ++t) {
    SplitMix64 stream(fnv1a64(tokens[t]) ^ salt_);
    for (int j = 0; j < dim_; ++j)
      rows(static_cast<Eigen::Index>(t), j) = (stream.next() >> 63) ? scale : -scale;
  }
  return rows;
}

Matrix StatsImageEmbedder::embed_image(const std::string& key, const std::string& image_path) const {
  ImageRgb img;
  try {
    img = read_netpbm(image_path);
  } catch (const std::exception& e) {
    fail(cat("image embedding failed for ", key.empty() ? image_path : key, ": ", e.what()));
  }

  Matrix row = Matrix::Zero(1, kDim);
  const double n = static_cast<double>(img.width) * img.height;
  double mean_gray = 0.0;
  for (int r = 0; r < img.height; ++r)
    for (int c = 0; c < img.width; ++c) {
      for (int ch = 0; ch < 3; ++ch) row(0, ch) += img.at(r, c, ch) / n;
      mean_gray += img.gray(r, c) / n;
    }
  for (int r = 0; r < img.height; ++r)
    for (int c = 0; c < img.width; ++c) {
      double d = img.gray(r, c) - mean_gray;
      row(0, 3) += d * d / n;
    }

  Eigen::Matrix<double, 4, 4> cell_sum = Eigen::Matrix<double, 4, 4>::Zero();
  Eigen::Matrix<double, 4, 4> cell_n = Eigen::Matrix<double, 4, 4>::Zero();
  for (int r = 0; r < img.height; ++r)
    for (int c = 0; c < img.width; ++c) {
      int gr = std::min(r * 4 / img.height, 3);
      int gc = std::min(c * 4 / img.width, 3);
      cell_sum(gr, gc) += img.gray(r, c);
      cell_n(gr, gc) += 1.0;
    }
  for (int gr = 0; gr < 4; ++gr)
    for (int gc = 0; gc < 4; ++gc)
      row(0, 4 + gr * 4 + gc) = cell_n(gr, gc) > 0 ? cell_sum(gr, gc) / cell_n(gr, gc) : 0.0;
  return row;
}

PrecomputedEmbedder::PrecomputedEmbedder(std::shared_ptr<const EmbeddingCache> cache,
                                         Channel channel)
    : cache_(std::move(cache)), channel_(channel) {
  if (!cache_) fail("precomputed embedder needs a loaded cache");
}

std::string PrecomputedEmbedder::name() const {
  return cat("precomputed(", cache_->provider, "/", channel_name(channel_), ")");
}

Matrix PrecomputedEmbedder::lookup(const std::string& key) const {
  const Matrix* rows = cache_->find(key, channel_);
  if (!rows)
    fail(cat("no cache entry for ", key, "/", channel_name(channel_), " in provider ",
             cache_->provider));
  return *rows;
}

Matrix PrecomputedEmbedder::embed_text(const std::string& key, const std::string&) const {
  return lookup(key);
}

Matrix PrecomputedEmbedder::embed_image(const std::string& key, const std::string&) const {
  return lookup(key);
}

Matrix embed_text(const EmbeddingProvider& provider, const std::string& text,
                  const std::string& key) {
  if (is_blank(text)) return Matrix::Zero(1, provider.dim());
  Matrix rows = provider.embed_text(key, text);
  if (rows.rows() < 1 || rows.cols() != provider.dim())
    fail(cat("provider ", provider.name(), " returned a ", rows.rows(), "x", rows.cols(),
             " matrix, expected m x ", provider.dim()));
  if (!rows.allFinite()) fail(cat("provider ", provider.name(), " returned non-finite values"));
  return rows;
}

Matrix embed_image(const EmbeddingProvider& provider, const std::string& image_path,
                   const std::string& key) {
  Matrix row = provider.embed_image(key, image_path);
  if (row.rows() != 1 || row.cols() != provider.dim())
    fail(cat("provider ", provider.name(), " returned a ", row.rows(), "x", row.cols(),
             " matrix, expected 1 x ", provider.dim()));
  if (!row.allFinite()) fail(cat("provider ", provider.name(), " returned non-finite values"));
  return row;
}

}  // namespace newscred
