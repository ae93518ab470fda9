#pragma once

#include <array>
#include <string>
#include <vector>

#include "newscred/attention.hpp"
#include "newscred/encoders.hpp"
#include "newscred/fusion.hpp"
#include "newscred/types.hpp"

namespace newscred {

enum class AttentionMode { Sequence, Scalar };

const char* attention_mode_name(AttentionMode m);
AttentionMode attention_mode_from_name(const std::string& name);

// Which fused segments feed the classifier; indexed by kSegmentOrder.
// All five active = the full model; ablation variants clear entries.
using SegmentMask = std::array<bool, 5>;

inline constexpr SegmentMask kAllSegments = {true, true, true, true, true};

int masked_fused_dim(const SegmentMask& active, const DimensionContract& contract);

struct ModelDims {
  DimensionContract contract;  // projection/emotion widths
  int d_enc_title = 0;
  int d_enc_text = 0;
  int d_enc_image = 0;
  bool tie_title_weights = false;  // title channel reuses the text projection
};

// Frozen per-article inputs: backbone embeddings plus the emotion vector.
struct ArticleFeatures {
  Matrix title_emb;  // n x d_enc_title
  Matrix body_emb;   // m x d_enc_text
  Matrix image_emb;  // 1 x d_enc_image
  Vector emotion;    // emotion_dim
  int label = 0;
};

// Every trainable tensor. The backbones stay outside: only these update.
struct ModelParams {
  ProjectionLayer text_proj;   // text_dim x d_enc_text
  ProjectionLayer title_proj;  // text_dim x d_enc_title; empty when tied
  ProjectionLayer image_proj;  // image_dim x d_enc_image
  AttentionBlock attn_text_to_title;
  AttentionBlock attn_title_to_text;
  ClassifierHead head;  // 2 x fused_dim(active)

  ModelDims dims;
  SegmentMask active = kAllSegments;
  uint64_t init_seed = 0;

  const ProjectionLayer& title_layer() const {
    return dims.tie_title_weights ? text_proj : title_proj;
  }
};

// Uniform +-1/sqrt(fan_in) init of all weight matrices from one SplitMix64
// stream seeded with `seed`, tensors filled in canonical order; biases zero.
ModelParams init_model(const ModelDims& dims, const SegmentMask& active, uint64_t seed);

// Gradient container with the same tensor shapes as the parameters.
struct ModelGrads {
  ProjectionLayer text_proj;
  ProjectionLayer title_proj;  // unused when tied
  ProjectionLayer image_proj;
  AttentionBlock attn_text_to_title;
  AttentionBlock attn_title_to_text;
  ClassifierHead head;
};

ModelGrads zero_grads(const ModelParams& params);
void scale_grads(ModelGrads& grads, double factor);

// One trainable tensor with its canonical name (e.g. "text_proj.weight");
// exactly one of matrix/vector is set.
struct NamedTensor {
  std::string name;
  Matrix* matrix = nullptr;
  Vector* vector = nullptr;

  Eigen::Index size() const { return matrix ? matrix->size() : vector->size(); }
  double* data() const { return matrix ? matrix->data() : vector->data(); }
};

// Every trainable tensor in canonical order (title projection skipped when
// tied). The same order defines the flat layout and the checkpoint directory.
std::vector<NamedTensor> named_tensors(ModelParams& params);
std::vector<NamedTensor> named_tensors(ModelGrads& grads, const ModelParams& shape);

// Canonical flat view of all trainable values (column-major within each
// tensor, tensors in declaration order, title projection skipped when tied).
// pack/unpack round-trip exactly; Adam and the finite-difference oracle both
// work on this layout.
Eigen::Index param_count(const ModelParams& params);
Vector pack(const ModelParams& params);
void unpack(ModelParams& params, const Vector& flat);
Vector pack_grads(const ModelParams& params, const ModelGrads& grads);

// Named spans of the flat layout, for per-group gradient checks.
struct ParamGroup {
  std::string name;
  Eigen::Index offset;
  Eigen::Index size;
};
std::vector<ParamGroup> param_groups(const ModelParams& params);

// Intermediates of one forward pass, kept for the backward pass.
struct ForwardTrace {
  Projected text;   // body projection
  Projected title;  // title projection
  Projected image;
  AttentionTrace text_to_title;
  AttentionTrace title_to_text;
  Vector fused;   // masked_fused_dim entries
  Vector logits;  // 2
  Vector probs;   // 2
  AttentionMode mode = AttentionMode::Sequence;
};

// Composition of projection, attention, fusion, and the softmax head.
// Sequence mode feeds per-token projected rows to attention; scalar mode
// feeds the pooled vectors as single-row sequences. `trace` may be null.
Vector model_forward(const ModelParams& params, const ArticleFeatures& features,
                     AttentionMode mode, ForwardTrace* trace = nullptr);

// Adds d(loss)/d(theta) for one sample into `grads`, where loss is the
// cross-entropy of the cached forward pass against `label`. The ReLU
// subgradient at exactly 0 is taken as 0.
void accumulate_backward(const ModelParams& params, const ArticleFeatures& features,
                         const ForwardTrace& trace, int label, ModelGrads& grads);

}  // namespace newscred
