#pragma once

#include <memory>
#include <string>

#include "newscred/embedding_cache.hpp"
#include "newscred/types.hpp"

namespace newscred {

// A frozen embedding source: no trainable state, same input -> same output
// when deterministic() (all shipped providers are). Implementations override
// the modality they support; the other throws.
class EmbeddingProvider {
public:
  virtual ~EmbeddingProvider() = default;
  virtual std::string name() const = 0;
  virtual int dim() const = 0;
  virtual bool deterministic() const { return true; }

  virtual Matrix embed_text(const std::string& key, const std::string& text) const;
  virtual Matrix embed_image(const std::string& key, const std::string& image_path) const;
};

// Hashed per-token embedder: each whitespace token maps to a fixed signed
// basis row, entries +-1/sqrt(d) drawn from a SplitMix64 stream seeded by
// FNV-1a of the token bytes (xor a salt). One row per token.
class HashedTextEmbedder : public EmbeddingProvider {
public:
  explicit HashedTextEmbedder(int dim = 64, uint64_t salt = 0);
  std::string name() const override { return "toy-text"; }
  int dim() const override { return dim_; }
  Matrix embed_text(const std::string& key, const std::string& text) const override;

private:
  int dim_;
  uint64_t salt_;
};

// Image statistics embedder, d_enc = 20:
//   [0..2]   per-channel means (R, G, B)
//   [3]      population variance of grayscale (gray = (R+G+B)/3)
//   [4..19]  4x4 grid of grayscale cell means; pixel (r, c) belongs to cell
//            (r*4/h, c*4/w); cells with no pixels (h or w < 4) stay 0.
// Reads netpbm files (P2/P3/P5/P6).
class StatsImageEmbedder : public EmbeddingProvider {
public:
  static constexpr int kDim = 20;
  std::string name() const override { return "toy-image"; }
  int dim() const override { return kDim; }
  Matrix embed_image(const std::string& key, const std::string& image_path) const override;
};

// Serves embeddings from a cache file produced offline (the path real
// backbone features take). One instance serves one channel; lookups are by
// article id, and a missing entry is an error naming the key.
class PrecomputedEmbedder : public EmbeddingProvider {
public:
  PrecomputedEmbedder(std::shared_ptr<const EmbeddingCache> cache, Channel channel);
  std::string name() const override;
  int dim() const override { return cache_->d_enc; }
  Matrix embed_text(const std::string& key, const std::string& text) const override;
  Matrix embed_image(const std::string& key, const std::string& image_path) const override;

private:
  Matrix lookup(const std::string& key) const;
  std::shared_ptr<const EmbeddingCache> cache_;
  Channel channel_;
};

// Blank or whitespace-only text embeds as a single zero row (m = 1).
Matrix embed_text(const EmbeddingProvider& provider, const std::string& text,
                  const std::string& key = "");
Matrix embed_image(const EmbeddingProvider& provider, const std::string& image_path,
                   const std::string& key = "");

}  // namespace newscred
