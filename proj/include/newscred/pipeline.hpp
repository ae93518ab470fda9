#pragma once

#include <memory>
#include <string>
#include <vector>

#include "newscred/config.hpp"
#include "newscred/corpus.hpp"
#include "newscred/emotion.hpp"
#include "newscred/metrics.hpp"
#include "newscred/providers.hpp"
#include "newscred/training.hpp"

namespace newscred {

// The three frozen embedding sources of one run.
struct ProviderSet {
  std::shared_ptr<EmbeddingProvider> title;
  std::shared_ptr<EmbeddingProvider> body;
  std::shared_ptr<EmbeddingProvider> image;
};

ProviderSet make_toy_providers(int hash_dim = 64);

// Each channel is served by the first cache holding records for it; a channel
// no cache covers is an error. One file per encoder width (a cache file
// declares a single d_enc), so mixed-width runs pass several files.
ProviderSet make_precomputed_providers(
    std::vector<std::shared_ptr<const EmbeddingCache>> caches);

// Providers per cfg.provider ("toy" builds the hashed/stats embedders,
// "precomputed" loads cfg.cache — a comma-separated list of cache files);
// anything else errors.
ProviderSet make_providers(const RunConfig& cfg);

ModelDims model_dims(const ProviderSet& providers, bool tie_title_weights);

// Frozen features for one article: title/body embeddings keyed by article id,
// image embedding from the resolved image path, emotion vector from the body.
ArticleFeatures extract_article_features(const Article& article, const ProviderSet& providers,
                                         const EmotionLexicon& lexicon,
                                         const std::string& image_root);

// Per-article extraction with failure collection: articles whose extraction
// throws are skipped and reported as "id: reason", the rest keep going.
struct FeatureSet {
  std::vector<std::string> ids;  // parallel to features
  std::vector<ArticleFeatures> features;
  std::vector<std::string> failures;
};
FeatureSet build_features(const std::vector<Article>& articles, const ProviderSet& providers,
                          const EmotionLexicon& lexicon, const std::string& image_root);

// Features grouped by a split, in split id order.
struct SplitFeatures {
  std::vector<ArticleFeatures> train;
  std::vector<ArticleFeatures> test;
  std::vector<std::string> test_ids;
  std::vector<int> test_labels;
};
SplitFeatures features_by_split(const std::vector<Article>& articles, const DatasetSplit& split,
                                const ProviderSet& providers, const EmotionLexicon& lexicon,
                                const std::string& image_root);

// One trained-and-evaluated run over a fixed split.
struct RunResult {
  ModelParams model;
  TrainHistory history;
  std::vector<int> predictions;  // test split order
  std::vector<int> labels;
  MetricsReport report;
};

// init_model(train_seed) on the masked segment set, train on the train half,
// evaluate on the test half. Pure function of (inputs, config, mask).
RunResult run_training(const SplitFeatures& data, const ModelDims& dims, const RunConfig& cfg,
                       const SegmentMask& active = kAllSegments,
                       const std::string& variant_name = "full");

// Trains every variant from scratch with the same seeds and split; one report
// row per variant in list order.
std::vector<MetricsReport> run_ablation(const SplitFeatures& data, const ModelDims& dims,
                                        const RunConfig& cfg,
                                        const std::vector<std::string>& variant_names);

}  // namespace newscred
