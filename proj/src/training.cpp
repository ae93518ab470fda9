#include "newscred/training.hpp"

#include <chrono>
#include <cmath>

#include "newscred/rng.hpp"

namespace newscred {

double log_sum_exp(const Vector& v) {
  if (v.size() == 0) fail("log_sum_exp of an empty vector");
  double hi = v.maxCoeff();
  if (!std::isfinite(hi)) return hi;  // all -inf, or a +inf/NaN dominates
  return hi + std::log((v.array() - hi).exp().sum());
}

double cross_entropy_logits(const Vector& logits, int label) {
  if (logits.size() != 2) fail(cat("expected 2 logits, got ", logits.size()));
  if (label != 0 && label != 1) fail(cat("label must be 0 or 1, got ", label));
  return log_sum_exp(logits) - logits(label);
}

double cross_entropy(const Vector& probs, int label) {
  if (probs.size() != 2) fail(cat("expected 2 probabilities, got ", probs.size()));
  Vector logits = probs.array().log();
  return cross_entropy_logits(logits, label);
}

void adam_step(Vector& params, const Vector& grads, AdamState& state, const TrainConfig& cfg) {
  if (params.size() != grads.size())
    fail(cat("adam_step: ", params.size(), " parameters vs ", grads.size(), " gradients"));
  if (state.m.size() != params.size() || state.v.size() != params.size())
    fail("adam_step: moment buffers do not match the parameter vector");

  state.step += 1;
  state.m = cfg.adam_beta1 * state.m + (1.0 - cfg.adam_beta1) * grads;
  state.v = (cfg.adam_beta2 * state.v.array() + (1.0 - cfg.adam_beta2) * grads.array().square())
                .matrix();

  const double t = static_cast<double>(state.step);
  const double bias1 = 1.0 - std::pow(cfg.adam_beta1, t);
  const double bias2 = 1.0 - std::pow(cfg.adam_beta2, t);
  params.array() -= cfg.learning_rate * (state.m.array() / bias1) /
                    ((state.v.array() / bias2).sqrt() + cfg.adam_eps);
}

TrainHistory train(ModelParams& model, const std::vector<ArticleFeatures>& data,
                   const TrainConfig& cfg) {
  if (data.empty()) fail("training needs a non-empty train split");
  if (cfg.batch_size < 1) fail(cat("batch size must be >= 1, got ", cfg.batch_size));
  if (cfg.learning_rate <= 0.0) fail("learning rate must be positive");

  TrainHistory history;
  if (cfg.epochs == 0) return history;

  const Eigen::Index n_params = param_count(model);
  Vector flat = pack(model);
  AdamState state = AdamState::make(n_params);
  SplitMix64 shuffle_rng(cfg.seed);

  std::vector<size_t> order(data.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;

  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    auto started = std::chrono::steady_clock::now();
    fisher_yates(order, shuffle_rng);

    double loss_sum = 0.0;
    size_t correct = 0;
    for (size_t start = 0; start < order.size(); start += cfg.batch_size) {
      size_t batch_n = std::min<size_t>(cfg.batch_size, order.size() - start);
      ModelGrads grads = zero_grads(model);
      for (size_t b = 0; b < batch_n; ++b) {
        const ArticleFeatures& sample = data[order[start + b]];
        ForwardTrace trace;
        model_forward(model, sample, cfg.attention_mode, &trace);
        loss_sum += cross_entropy_logits(trace.logits, sample.label);
        int predicted = trace.probs(1) > trace.probs(0) ? 1 : 0;
        if (predicted == sample.label) ++correct;
        accumulate_backward(model, sample, trace, sample.label, grads);
      }
      scale_grads(grads, 1.0 / static_cast<double>(batch_n));
      adam_step(flat, pack_grads(model, grads), state, cfg);
      unpack(model, flat);
    }

    std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - started;
    history.push_back({epoch, loss_sum / static_cast<double>(data.size()),
                       static_cast<double>(correct) / static_cast<double>(data.size()),
                       elapsed.count()});
  }
  return history;
}

std::vector<int> predict_labels(const ModelParams& model,
                                const std::vector<ArticleFeatures>& data, AttentionMode mode) {
  std::vector<int> labels;
  labels.reserve(data.size());
  for (const ArticleFeatures& sample : data) {
    Vector probs = model_forward(model, sample, mode);
    labels.push_back(probs(1) > probs(0) ? 1 : 0);
  }
  return labels;
}

}  // namespace newscred
