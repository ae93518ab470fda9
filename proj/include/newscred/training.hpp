#pragma once

#include <string>
#include <vector>

#include "newscred/model.hpp"
#include "newscred/types.hpp"

namespace newscred {

struct TrainConfig {
  int batch_size = 16;
  int epochs = 10;
  double learning_rate = 1e-4;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_eps = 1e-8;
  uint64_t seed = 0;  // drives the per-epoch shuffle
  AttentionMode attention_mode = AttentionMode::Sequence;
};

struct EpochRecord {
  int epoch = 0;  // 1-based
  double mean_loss = 0.0;
  double train_accuracy = 0.0;
  double wall_seconds = 0.0;
};

using TrainHistory = std::vector<EpochRecord>;

// log(sum_i exp(v_i)) with max subtraction; safe for large-magnitude inputs.
double log_sum_exp(const Vector& v);

// Two-class cross-entropy -log p[label], evaluated in log-sum-exp form.
double cross_entropy_logits(const Vector& logits, int label);
double cross_entropy(const Vector& probs, int label);

// First and second moment estimates for the flat parameter vector.
struct AdamState {
  Vector m;
  Vector v;
  long step = 0;

  static AdamState make(Eigen::Index n) {
    return {Vector::Zero(n), Vector::Zero(n), 0};
  }
};

// One bias-corrected Adam update in place. A zero gradient with zero moments
// leaves the parameters unchanged.
void adam_step(Vector& params, const Vector& grads, AdamState& state, const TrainConfig& cfg);

// Minibatch training of every trainable tensor in `model` on pre-extracted
// features; the embedding providers stay outside and receive no gradients.
// Shuffles sample order each epoch from a SplitMix64 stream seeded with
// cfg.seed; the last partial batch is kept. Returns one record per epoch.
TrainHistory train(ModelParams& model, const std::vector<ArticleFeatures>& data,
                   const TrainConfig& cfg);

// Hard predictions (0/1) for each sample under the given attention mode.
std::vector<int> predict_labels(const ModelParams& model,
                                const std::vector<ArticleFeatures>& data, AttentionMode mode);

}  // namespace newscred
