// Acceptance gate for the newscred pipeline. Each criterion prints exactly
// one PASS/FAIL line (with its runtime and, on failure, the first problems
// found); the process exit status is the number of failed criteria.
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "newscred/attention.hpp"
#include "newscred/checkpoint.hpp"
#include "newscred/config.hpp"
#include "newscred/corpus.hpp"
#include "newscred/emotion.hpp"
#include "newscred/fusion.hpp"
#include "newscred/metrics.hpp"
#include "newscred/model.hpp"
#include "newscred/pipeline.hpp"
#include "newscred/rng.hpp"
#include "newscred/training.hpp"
#include "newscred/types.hpp"
#include "emotion_oracle.hpp"
#include "oracles.hpp"
#include "synthetic.hpp"

using namespace newscred;

namespace {

using Problems = std::vector<std::string>;

struct Gate {
  int failures = 0;

  void criterion(const std::string& name, double budget_seconds,
                 const std::function<void(Problems&)>& body) {
    Problems problems;
    auto start = std::chrono::steady_clock::now();
    try {
      body(problems);
    } catch (const std::exception& e) {
      problems.push_back(cat("exception: ", e.what()));
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (budget_seconds > 0.0 && seconds > budget_seconds)
      problems.push_back(cat("runtime ", seconds, "s exceeds budget ", budget_seconds, "s"));
    bool ok = problems.empty();
    failures += ok ? 0 : 1;
    std::printf("%s  %-24s (%6.2fs)", ok ? "PASS" : "FAIL", name.c_str(), seconds);
    for (size_t i = 0; i < problems.size() && i < 3; ++i)
      std::printf("%s%s", i == 0 ? "  " : " | ", problems[i].c_str());
    std::printf("\n");
    std::fflush(stdout);
  }
};

void expect(Problems& problems, bool ok, const std::string& msg) {
  if (!ok) problems.push_back(msg);
}

ArticleFeatures random_features(const ModelDims& dims, SplitMix64& rng, int title_rows,
                                int body_rows) {
  auto fill = [&rng](Matrix& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = rng.uniform(-1.0, 1.0);
  };
  ArticleFeatures f;
  f.title_emb = Matrix(title_rows, dims.d_enc_title);
  f.body_emb = Matrix(body_rows, dims.d_enc_text);
  f.image_emb = Matrix(1, dims.d_enc_image);
  fill(f.title_emb);
  fill(f.body_emb);
  fill(f.image_emb);
  f.emotion = Vector(dims.contract.emotion_dim);
  for (Eigen::Index i = 0; i < f.emotion.size(); ++i) f.emotion(i) = rng.uniform(0.0, 1.0);
  f.label = static_cast<int>(rng.below(2));
  return f;
}

// One complete library-side run over a generated corpus: manifest -> filter ->
// split -> frozen toy features -> (the caller trains).
struct PreparedRun {
  std::vector<Article> articles;
  DatasetSplit split_info;
  ModelDims dims;
  SplitFeatures data;
};

PreparedRun prepare(const synthetic::Corpus& corpus, const RunConfig& cfg) {
  PreparedRun r;
  r.articles = filter_complete(load_manifest(corpus.manifest), corpus.image_root);
  r.split_info = split(r.articles, cfg.split_ratio, cfg.split_seed, cfg.stratified);
  ProviderSet providers = make_toy_providers(cfg.hash_dim);
  r.dims = model_dims(providers, cfg.tie_title_weights);
  EmotionLexicon lexicon = load_lexicon(corpus.lexicon);
  r.data = features_by_split(r.articles, r.split_info, providers, lexicon, corpus.image_root);
  return r;
}

}  // namespace

int main() {
  Gate gate;

  gate.criterion("dimension-contract", 1.0, [](Problems& p) {
    DimensionContract c;
    expect(p, c.fused_dim() == 164, "full fused_dim != 164");
    expect(p, c.text_dim == 32 && c.image_dim == 30 && c.emotion_dim == 38 &&
                  c.attention_dim() == 32,
           "segment widths != 32/30/38/32/32");
    expect(p, segment_offset(Segment::Text) == 0 && segment_offset(Segment::Image) == 32 &&
                  segment_offset(Segment::Emotion) == 62 &&
                  segment_offset(Segment::TextToTitle) == 100 &&
                  segment_offset(Segment::TitleToText) == 132,
           "segment offsets wrong");

    // A real forward pass produces exactly 164 fused entries.
    ModelDims dims;
    dims.d_enc_title = 16;
    dims.d_enc_text = 16;
    dims.d_enc_image = 12;
    ModelParams model = init_model(dims, kAllSegments, 5);
    SplitMix64 rng(99);
    ArticleFeatures f = random_features(dims, rng, 3, 4);
    ForwardTrace trace;
    model_forward(model, f, AttentionMode::Sequence, &trace);
    expect(p, trace.fused.size() == 164, cat("forward fused size ", trace.fused.size()));

    const char* names[] = {"T", "V", "E", "S"};
    const int dims_want[] = {132, 134, 126, 100};
    for (int i = 0; i < 4; ++i) {
      AblationVariant v = build_variant(names[i]);
      expect(p, v.fused_dim == dims_want[i],
             cat(names[i], " fused_dim ", v.fused_dim, " != ", dims_want[i]));
    }
    expect(p, build_variant("full").fused_dim == 164, "full variant != 164");
  });

  gate.criterion("attention-invariants", 10.0, [](Problems& p) {
    SplitMix64 rng(2024);
    auto rand_mat = [&rng](int rows, int cols, double lo, double hi) {
      Matrix m(rows, cols);
      for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = rng.uniform(lo, hi);
      return m;
    };
    int bad_sum = 0, bad_single = 0, bad_shift = 0;
    for (int trial = 0; trial < 1200; ++trial) {
      int q_rows = 1 + static_cast<int>(rng.below(5));
      int k_rows = 1 + static_cast<int>(rng.below(5));
      int d = 1 + static_cast<int>(rng.below(6));

      // Softmax rows sum to 1.
      Matrix logits = rand_mat(q_rows, k_rows, -40.0, 40.0);
      Matrix w = softmax_rows(logits);
      for (int i = 0; i < q_rows; ++i)
        if (std::abs(w.row(i).sum() - 1.0) > 1e-9) ++bad_sum;

      // Single key: the value row comes back exactly.
      Matrix q = rand_mat(q_rows, d, -3.0, 3.0);
      Matrix k1 = rand_mat(1, d, -3.0, 3.0);
      Matrix v1 = rand_mat(1, d, -3.0, 3.0);
      Matrix single = scaled_dot_attention(q, k1, v1, d);
      for (int i = 0; i < q_rows; ++i)
        if (!(single.row(i) == v1.row(0))) ++bad_single;

      // Adding one constant vector to every key only shifts each query's
      // logits uniformly, so the output is unchanged.
      Matrix k = rand_mat(k_rows, d, -3.0, 3.0);
      Matrix v = rand_mat(k_rows, d, -3.0, 3.0);
      Matrix shift = rand_mat(1, d, -2.0, 2.0);
      Matrix k_shifted = k;
      for (int j = 0; j < k_rows; ++j) k_shifted.row(j) += shift.row(0);
      Matrix a = scaled_dot_attention(q, k, v, d);
      Matrix b = scaled_dot_attention(q, k_shifted, v, d);
      if ((a - b).cwiseAbs().maxCoeff() > 1e-9) ++bad_shift;
    }
    expect(p, bad_sum == 0, cat(bad_sum, " softmax rows broke the sum-1 bound"));
    expect(p, bad_single == 0, cat(bad_single, " single-key outputs not exact"));
    expect(p, bad_shift == 0, cat(bad_shift, " key-shift invariance violations"));
  });

  gate.criterion("gradient-correctness", 60.0, [](Problems& p) {
    ModelDims dims;
    dims.contract = DimensionContract{4, 3, 5};
    dims.d_enc_title = 5;
    dims.d_enc_text = 6;
    dims.d_enc_image = 4;
    for (AttentionMode mode : {AttentionMode::Sequence, AttentionMode::Scalar}) {
      ModelParams model = init_model(dims, kAllSegments, 314);
      SplitMix64 rng(mode == AttentionMode::Sequence ? 11 : 12);
      std::vector<ArticleFeatures> batch;
      for (int s = 0; s < 3; ++s)
        batch.push_back(random_features(dims, rng, 1 + s % 3, 2 + s % 2));

      ModelGrads grads = zero_grads(model);
      for (const auto& sample : batch) {
        ForwardTrace trace;
        model_forward(model, sample, mode, &trace);
        accumulate_backward(model, sample, trace, sample.label, grads);
      }
      scale_grads(grads, 1.0 / static_cast<double>(batch.size()));
      Vector analytic = pack_grads(model, grads);
      Vector numeric = oracle::fd_gradient(model, pack(model), batch, mode, 1e-5);

      for (const ParamGroup& group : param_groups(model)) {
        double worst = 0.0;
        for (Eigen::Index i = group.offset; i < group.offset + group.size; ++i)
          worst = std::max(worst, oracle::rel_err(analytic(i), numeric(i)));
        expect(p, worst <= 1e-4,
               cat(attention_mode_name(mode), " ", group.name, " max rel err ", worst));
      }
    }
  });

  gate.criterion("metrics-oracle", 10.0, [](Problems& p) {
    SplitMix64 rng(7);
    int mismatches = 0;
    for (int trial = 0; trial < 1000; ++trial) {
      size_t n = 1 + rng.below(50);
      std::vector<int> preds(n), labels(n);
      for (size_t i = 0; i < n; ++i) {
        preds[i] = static_cast<int>(rng.below(2));
        labels[i] = static_cast<int>(rng.below(2));
      }
      int positive = static_cast<int>(rng.below(2));
      ConfusionCounts got = confusion(preds, labels, positive);
      oracle::ConfusionRef want = oracle::confusion(preds, labels, positive);
      if (got.tp != want.tp || got.fp != want.fp || got.tn != want.tn || got.fn != want.fn)
        ++mismatches;

      MetricsReport r = report(got);
      double tp = static_cast<double>(want.tp), fp = static_cast<double>(want.fp);
      double tn = static_cast<double>(want.tn), fn = static_cast<double>(want.fn);
      double acc = (tp + tn) / static_cast<double>(n);
      double pre = tp + fp > 0 ? tp / (tp + fp) : 0.0;
      double rec = tp + fn > 0 ? tp / (tp + fn) : 0.0;
      double f1 = pre + rec > 0 ? 2 * pre * rec / (pre + rec) : 0.0;
      if (r.accuracy != acc || r.precision != pre || r.recall != rec || r.f1 != f1)
        ++mismatches;
    }
    expect(p, mismatches == 0, cat(mismatches, " oracle mismatches"));

    ConfusionCounts hand{2, 1, 0, 1, 0};
    MetricsReport r = report(hand);
    expect(p, r.accuracy == 0.5, "hand case accuracy != 0.5");
    expect(p, std::abs(r.precision - 2.0 / 3.0) < 1e-15 && std::abs(r.recall - 2.0 / 3.0) < 1e-15 &&
                  std::abs(r.f1 - 2.0 / 3.0) < 1e-15,
           "hand case pre/rec/f1 != 2/3");
  });

  gate.criterion("emotion-extractor", 10.0, [](Problems& p) {
    synthetic::TempDir tmp("accept-emotion");
    EmotionLexicon lexicon = oracle::load_mini_lexicon(tmp);
    oracle::OracleLexicon ref_lexicon = oracle::oracle_mini_lexicon();

    int idx = 0;
    for (const std::string& text : oracle::mini_corpus_texts()) {
      EmotionFeatures f = extract_emotion(text, lexicon);
      expect(p, f.combined.size() == 38, cat("text ", idx, " width ", f.combined.size()));
      Vector want = oracle::emotion_oracle(text, ref_lexicon);
      bool exact = f.combined.size() == want.size() && f.combined == want;
      if (!exact)
        p.push_back(cat("text ", idx, " differs from counting oracle, max |diff| ",
                        (f.combined - want).cwiseAbs().maxCoeff()));
      ++idx;
    }

    EmotionFeatures empty = extract_emotion("", lexicon);
    expect(p, empty.combined.size() == 38 && empty.combined == Vector::Zero(38),
           "empty text is not the 38-dim zero vector");
    EmotionFeatures blank = extract_emotion("   \t\n  ", lexicon);
    expect(p, blank.combined == Vector::Zero(38), "whitespace text is not the zero vector");
  });

  gate.criterion("end-to-end-learnability", 120.0, [](Problems& p) {
    synthetic::TempDir tmp("accept-learn");
    synthetic::Corpus corpus = synthetic::learnability_corpus(tmp);
    RunConfig cfg;
    cfg.learning_rate = 1e-2;  // toy-regime scale-up; batch 16 per default
    cfg.epochs = 120;          // within the 200-epoch allowance
    PreparedRun run = prepare(corpus, cfg);
    expect(p, run.data.train.size() + run.data.test.size() == 200, "corpus is not 200 articles");

    RunResult result = run_training(run.data, run.dims, cfg);
    double train_acc = result.history.empty() ? 0.0 : result.history.back().train_accuracy;
    expect(p, train_acc >= 0.95, cat("train accuracy ", train_acc, " < 0.95"));
    expect(p, result.report.accuracy >= 0.85,
           cat("held-out accuracy ", result.report.accuracy, " < 0.85"));
  });

  gate.criterion("ablation-echo", 240.0, [](Problems& p) {
    {
      // Corpus whose only generalizing signal is emotion words: removing the
      // emotion segment (E) collapses held-out accuracy, the full model keeps it.
      synthetic::TempDir tmp("accept-abl-e");
      synthetic::Corpus corpus = synthetic::emotion_only_corpus(tmp);
      RunConfig cfg;
      cfg.learning_rate = 1e-2;
      cfg.epochs = 40;
      cfg.hash_dim = 24;
      PreparedRun run = prepare(corpus, cfg);
      std::vector<MetricsReport> rows = run_ablation(run.data, run.dims, cfg, {"full", "E"});
      expect(p, rows[0].accuracy >= 0.9,
             cat("emotion corpus: full accuracy ", rows[0].accuracy, " < 0.9"));
      expect(p, rows[1].accuracy <= 0.6,
             cat("emotion corpus: variant E accuracy ", rows[1].accuracy, " > 0.6"));
    }
    {
      // Corpus whose only signal is whether the title topic matches the body
      // topic: removing both attention directions (S) loses the relation.
      synthetic::TempDir tmp("accept-abl-s");
      synthetic::Corpus corpus = synthetic::title_match_corpus(tmp);
      RunConfig cfg;
      cfg.learning_rate = 1e-2;
      cfg.epochs = 150;
      cfg.tie_title_weights = true;
      PreparedRun run = prepare(corpus, cfg);
      std::vector<MetricsReport> rows = run_ablation(run.data, run.dims, cfg, {"full", "S"});
      expect(p, rows[0].accuracy - rows[1].accuracy >= 0.15,
             cat("title corpus: full ", rows[0].accuracy, " vs S ", rows[1].accuracy,
                 " gap < 0.15"));
    }
  });

  gate.criterion("reproducibility", 120.0, [](Problems& p) {
    synthetic::TempDir tmp("accept-repro");
    synthetic::Corpus corpus = synthetic::learnability_corpus(tmp);
    RunConfig cfg;
    cfg.learning_rate = 1e-2;
    cfg.epochs = 4;

    auto one_run = [&](const std::string& tag) {
      PreparedRun run = prepare(corpus, cfg);
      RunResult result = run_training(run.data, run.dims, cfg);
      CheckpointMeta meta;
      meta.attention_mode = AttentionMode::Sequence;
      meta.split_seed = cfg.split_seed;
      meta.train_seed = cfg.train_seed;
      meta.config_hash = config_hash(cfg);
      std::string ckpt_path = tmp.file("ckpt-" + tag + ".bin");
      save_checkpoint(ckpt_path, result.model, meta);
      std::ifstream in(ckpt_path, std::ios::binary);
      std::ostringstream bytes;
      bytes << in.rdbuf();
      return std::tuple<std::string, std::string, std::string>(
          bytes.str(), split_to_json(run.split_info), render_table({result.report}));
    };

    auto [ckpt_a, split_a, table_a] = one_run("a");
    auto [ckpt_b, split_b, table_b] = one_run("b");
    expect(p, !ckpt_a.empty() && ckpt_a == ckpt_b, "checkpoint bytes differ between runs");
    expect(p, split_a == split_b, "split JSON differs between runs");
    expect(p, table_a == table_b, "rendered report differs between runs");
  });

  gate.criterion("dataset-statistics", 60.0, [](Problems& p) {
    // Full-size reference manifests with the published per-dataset counts.
    synthetic::TempDir tmp("accept-stats");
    struct Ref {
      const char* dataset;
      int fake, truthful;
    };
    for (const Ref& ref : {Ref{"politifact", 161, 205}, Ref{"gossipcop", 4927, 16693}}) {
      std::string path = tmp.file(cat(ref.dataset, ".jsonl"));
      {
        std::ofstream out(path, std::ios::binary);
        int total = ref.fake + ref.truthful;
        for (int i = 0; i < total; ++i) {
          nlohmann::json j;
          j["id"] = cat(ref.dataset, "-", i);
          j["title"] = "t";
          j["body"] = "b";
          j["image_ref"] = "img.ppm";
          j["label"] = i < ref.fake ? 0 : 1;
          j["dataset"] = ref.dataset;
          out << j.dump() << "\n";
        }
      }
      DatasetStats stats = dataset_stats(load_manifest(path));
      expect(p, stats.fake_count == ref.fake && stats.true_count == ref.truthful &&
                    stats.overall == ref.fake + ref.truthful,
             cat(ref.dataset, " counts ", stats.fake_count, "/", stats.true_count, "/",
                 stats.overall));
    }

    // The shipped 20-article fixture with hand-known counts.
    std::string mini = std::string(NEWSCRED_TEST_DATA_DIR) + "/mini/manifest.jsonl";
    std::vector<Article> articles = load_manifest(mini);
    DatasetStats overall = dataset_stats(articles);
    expect(p, overall.fake_count == 9 && overall.true_count == 11 && overall.overall == 20,
           cat("mini overall ", overall.fake_count, "/", overall.true_count, "/", overall.overall));
    std::vector<Article> politifact, gossipcop;
    for (const Article& a : articles)
      (a.dataset == "politifact" ? politifact : gossipcop).push_back(a);
    DatasetStats pf = dataset_stats(politifact);
    DatasetStats gc = dataset_stats(gossipcop);
    expect(p, pf.fake_count == 5 && pf.true_count == 7 && pf.overall == 12, "mini politifact");
    expect(p, gc.fake_count == 4 && gc.true_count == 4 && gc.overall == 8, "mini gossipcop");
  });

  std::printf("%s: %d criterion(s) failed\n", gate.failures == 0 ? "ACCEPTED" : "REJECTED",
              gate.failures);
  return gate.failures;
}
