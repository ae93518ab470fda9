#include "newscred/pipeline.hpp"

#include <sstream>
#include <unordered_map>

namespace newscred {

ProviderSet make_toy_providers(int hash_dim) {
  ProviderSet p;
  p.title = std::make_shared<HashedTextEmbedder>(hash_dim);
  p.body = std::make_shared<HashedTextEmbedder>(hash_dim);
  p.image = std::make_shared<StatsImageEmbedder>();
  return p;
}

ProviderSet make_precomputed_providers(
    std::vector<std::shared_ptr<const EmbeddingCache>> caches) {
  if (caches.empty()) fail("precomputed providers need at least one cache");

  auto pick = [&](Channel ch) -> std::shared_ptr<EmbeddingProvider> {
    for (const auto& cache : caches)
      for (const auto& [key, rows] : cache->entries)
        if (key.second == ch) return std::make_shared<PrecomputedEmbedder>(cache, ch);
    fail(cat("no cache provides ", channel_name(ch), " embeddings"));
  };

  ProviderSet p;
  p.title = pick(Channel::Title);
  p.body = pick(Channel::Body);
  p.image = pick(Channel::Image);
  return p;
}

ProviderSet make_providers(const RunConfig& cfg) {
  if (cfg.provider == "toy") return make_toy_providers(cfg.hash_dim);
  if (cfg.provider == "precomputed") {
    if (cfg.cache.empty()) fail("provider 'precomputed' needs a cache path in the config");
    std::vector<std::shared_ptr<const EmbeddingCache>> caches;
    std::istringstream paths(cfg.cache);
    std::string path;
    while (std::getline(paths, path, ','))
      if (!path.empty())
        caches.push_back(std::make_shared<EmbeddingCache>(load_embedding_cache(path)));
    return make_precomputed_providers(std::move(caches));
  }
  fail(cat("unknown provider: '", cfg.provider, "' (want toy or precomputed)"));
}

ModelDims model_dims(const ProviderSet& providers, bool tie_title_weights) {
  ModelDims d;
  d.d_enc_title = providers.title->dim();
  d.d_enc_text = providers.body->dim();
  d.d_enc_image = providers.image->dim();
  d.tie_title_weights = tie_title_weights;
  return d;
}

ArticleFeatures extract_article_features(const Article& article, const ProviderSet& providers,
                                         const EmotionLexicon& lexicon,
                                         const std::string& image_root) {
  ArticleFeatures f;
  f.title_emb = embed_text(*providers.title, article.title, article.id);
  f.body_emb = embed_text(*providers.body, article.body, article.id);
  f.image_emb =
      embed_image(*providers.image, resolve_image_path(image_root, article.image_ref), article.id);
  f.emotion = extract_emotion(article.body, lexicon).combined;
  f.label = article.label;
  return f;
}

FeatureSet build_features(const std::vector<Article>& articles, const ProviderSet& providers,
                          const EmotionLexicon& lexicon, const std::string& image_root) {
  FeatureSet out;
  for (const Article& a : articles) {
    try {
      ArticleFeatures f = extract_article_features(a, providers, lexicon, image_root);
      out.ids.push_back(a.id);
      out.features.push_back(std::move(f));
    } catch (const std::exception& e) {
      out.failures.push_back(cat(a.id, ": ", e.what()));
    }
  }
  return out;
}

SplitFeatures features_by_split(const std::vector<Article>& articles, const DatasetSplit& split,
                                const ProviderSet& providers, const EmotionLexicon& lexicon,
                                const std::string& image_root) {
  std::unordered_map<std::string, const Article*> by_id;
  for (const Article& a : articles) by_id[a.id] = &a;

  auto lookup = [&](const std::string& id) -> const Article& {
    auto it = by_id.find(id);
    if (it == by_id.end()) fail(cat("split references unknown article id: ", id));
    return *it->second;
  };

  SplitFeatures out;
  for (const std::string& id : split.train_ids)
    out.train.push_back(extract_article_features(lookup(id), providers, lexicon, image_root));
  for (const std::string& id : split.test_ids) {
    const Article& a = lookup(id);
    out.test.push_back(extract_article_features(a, providers, lexicon, image_root));
    out.test_ids.push_back(id);
    out.test_labels.push_back(a.label);
  }
  return out;
}

RunResult run_training(const SplitFeatures& data, const ModelDims& dims, const RunConfig& cfg,
                       const SegmentMask& active, const std::string& variant_name) {
  RunResult r;
  r.model = init_model(dims, active, cfg.train_seed);
  TrainConfig tc = train_config(cfg);
  r.history = train(r.model, data.train, tc);
  r.predictions = predict_labels(r.model, data.test, tc.attention_mode);
  r.labels = data.test_labels;
  r.report = report(confusion(r.predictions, r.labels, cfg.positive_class), variant_name);
  return r;
}

std::vector<MetricsReport> run_ablation(const SplitFeatures& data, const ModelDims& dims,
                                        const RunConfig& cfg,
                                        const std::vector<std::string>& variant_names) {
  if (variant_names.empty()) fail("ablation needs at least one variant");
  std::vector<MetricsReport> rows;
  for (const std::string& name : variant_names) {
    AblationVariant v = build_variant(name);
    rows.push_back(run_training(data, dims, cfg, v.active, v.name).report);
  }
  return rows;
}

}  // namespace newscred
