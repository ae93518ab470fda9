// Command-line front end: ingest, extract, train, evaluate, ablate, report.
// Every run is a pure function of (config file, input files, seeds), and every
// output artifact embeds the resolved config hash plus both seeds.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "newscred/checkpoint.hpp"
#include "newscred/pipeline.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace newscred;

namespace {

struct CliArgs {
  std::string config_path;
  std::vector<std::string> overrides;
};

RunConfig resolve_config(const CliArgs& args) {
  RunConfig cfg;
  if (!args.config_path.empty()) cfg = parse_config_file(args.config_path);
  apply_overrides(cfg, args.overrides);
  return cfg;
}

void add_common(CLI::App* cmd, CliArgs& args) {
  cmd->add_option("-c,--config", args.config_path, "key = value config file");
  cmd->add_option("-s,--set", args.overrides, "override, key=value (repeatable; wins over file)");
}

// config hash + both seeds, stamped into every JSON artifact.
void stamp(json& doc, const RunConfig& cfg) {
  doc["config_hash"] = config_hash(cfg);
  doc["split_seed"] = cfg.split_seed;
  doc["train_seed"] = cfg.train_seed;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(cat("cannot write ", path));
  out << content;
}

std::string out_path(const RunConfig& cfg, const std::string& name) {
  fs::create_directories(cfg.out_dir);
  return (fs::path(cfg.out_dir) / name).string();
}

json stats_json(const DatasetStats& s) {
  return {{"fake", s.fake_count}, {"true", s.true_count}, {"overall", s.overall}};
}

// Manifest -> complete articles + the split all commands share.
struct LoadedData {
  std::vector<Article> complete;
  DatasetSplit data_split;
  ProviderSet providers;
  EmotionLexicon lexicon;
};

LoadedData load_for_run(const RunConfig& cfg) {
  if (cfg.manifest.empty()) fail("config needs a manifest path");
  if (cfg.lexicon.empty()) fail("config needs a lexicon path");
  LoadedData d;
  std::vector<Article> articles = load_manifest(cfg.manifest);
  d.providers = make_providers(cfg);
  // Precomputed runs need no image files on disk; completeness is checked
  // against the cache at extraction time instead.
  d.complete = cfg.provider == "precomputed" ? articles
                                             : filter_complete(articles, cfg.image_root);
  d.data_split = split(d.complete, cfg.split_ratio, cfg.split_seed, cfg.stratified);
  d.lexicon = load_lexicon(cfg.lexicon);
  return d;
}

json report_json(const MetricsReport& r) {
  return {{"variant", r.variant},
          {"accuracy", r.accuracy},
          {"precision", r.precision},
          {"recall", r.recall},
          {"f1", r.f1},
          {"counts",
           {{"tp", r.counts.tp},
            {"fp", r.counts.fp},
            {"tn", r.counts.tn},
            {"fn", r.counts.fn},
            {"positive_class", r.counts.positive_class}}}};
}

int cmd_ingest(const RunConfig& cfg) {
  if (cfg.manifest.empty()) fail("config needs a manifest path");
  std::vector<Article> articles = load_manifest(cfg.manifest);
  std::vector<Article> complete = filter_complete(articles, cfg.image_root);

  json doc;
  doc["dataset_stats"] = stats_json(dataset_stats(articles));
  json per_dataset = json::object();
  std::map<std::string, std::vector<Article>> by_tag;
  for (const Article& a : articles) by_tag[a.dataset].push_back(a);
  for (const auto& [tag, group] : by_tag) per_dataset[tag] = stats_json(dataset_stats(group));
  doc["per_dataset"] = per_dataset;
  doc["complete"] = complete.size();
  doc["removed"] = articles.size() - complete.size();
  stamp(doc, cfg);

  std::string text = doc.dump(2) + "\n";
  write_file(out_path(cfg, "ingest.json"), text);
  std::cout << text;
  return 0;
}

int cmd_extract(const RunConfig& cfg) {
  if (cfg.manifest.empty()) fail("config needs a manifest path");
  if (cfg.lexicon.empty()) fail("config needs a lexicon path");
  std::vector<Article> articles = load_manifest(cfg.manifest);
  EmotionLexicon lexicon = load_lexicon(cfg.lexicon);
  ProviderSet providers = make_providers(cfg);

  EmbeddingCache text_cache;
  text_cache.provider = providers.body->name();
  text_cache.d_enc = providers.body->dim();
  EmbeddingCache image_cache;
  image_cache.provider = providers.image->name();
  image_cache.d_enc = providers.image->dim();

  std::vector<std::string> failures;
  std::ostringstream emotion_lines;
  {
    json head;
    head["d"] = DimensionContract{}.emotion_dim;
    stamp(head, cfg);
    emotion_lines << head.dump() << "\n";
  }
  for (const Article& a : articles) {
    try {
      Matrix title_rows = embed_text(*providers.title, a.title, a.id);
      Matrix body_rows = embed_text(*providers.body, a.body, a.id);
      Matrix image_row = embed_image(
          *providers.image, resolve_image_path(cfg.image_root, a.image_ref), a.id);
      Vector em = extract_emotion(a.body, lexicon).combined;
      text_cache.put(a.id, Channel::Title, std::move(title_rows));
      text_cache.put(a.id, Channel::Body, std::move(body_rows));
      image_cache.put(a.id, Channel::Image, std::move(image_row));
      json row;
      row["id"] = a.id;
      row["emotion"] = std::vector<double>(em.data(), em.data() + em.size());
      emotion_lines << row.dump() << "\n";
    } catch (const std::exception& e) {
      failures.push_back(cat(a.id, ": ", e.what()));
    }
  }

  json extra;
  stamp(extra, cfg);
  save_embedding_cache(out_path(cfg, "cache_text.bin"), text_cache, extra.dump());
  save_embedding_cache(out_path(cfg, "cache_image.bin"), image_cache, extra.dump());
  write_file(out_path(cfg, "emotion.jsonl"), emotion_lines.str());

  json summary;
  summary["articles"] = articles.size();
  summary["embedded"] = articles.size() - failures.size();
  summary["failures"] = failures;
  stamp(summary, cfg);
  std::string text = summary.dump(2) + "\n";
  write_file(out_path(cfg, "extract.json"), text);
  std::cout << text;
  if (!failures.empty()) {
    std::cerr << failures.size() << " article(s) failed feature extraction\n";
    return 1;
  }
  return 0;
}

void write_split_file(const RunConfig& cfg, const DatasetSplit& s) {
  json doc = json::parse(split_to_json(s));
  doc["config_hash"] = config_hash(cfg);
  doc["train_seed"] = cfg.train_seed;  // the split's own seed is already inside
  write_file(out_path(cfg, "split.json"), doc.dump(2) + "\n");
}

int cmd_train(const RunConfig& cfg) {
  LoadedData d = load_for_run(cfg);
  SplitFeatures feats =
      features_by_split(d.complete, d.data_split, d.providers, d.lexicon, cfg.image_root);
  ModelDims dims = model_dims(d.providers, cfg.tie_title_weights);
  RunResult result = run_training(feats, dims, cfg);

  write_split_file(cfg, d.data_split);
  CheckpointMeta meta{attention_mode_from_name(cfg.attention_mode), cfg.split_seed,
                      cfg.train_seed, config_hash(cfg)};
  save_checkpoint(out_path(cfg, "checkpoint.bin"), result.model, meta);

  std::ostringstream history_lines;
  for (const EpochRecord& e : result.history) {
    json row;
    row["epoch"] = e.epoch;
    row["mean_loss"] = e.mean_loss;
    row["train_accuracy"] = e.train_accuracy;
    row["wall_seconds"] = e.wall_seconds;
    stamp(row, cfg);
    history_lines << row.dump() << "\n";
  }
  write_file(out_path(cfg, "history.jsonl"), history_lines.str());

  json summary;
  summary["epochs"] = result.history.size();
  summary["train_samples"] = feats.train.size();
  summary["test_samples"] = feats.test.size();
  if (!result.history.empty()) {
    summary["final_mean_loss"] = result.history.back().mean_loss;
    summary["final_train_accuracy"] = result.history.back().train_accuracy;
  }
  summary["checkpoint"] = "checkpoint.bin";
  stamp(summary, cfg);
  std::string text = summary.dump(2) + "\n";
  write_file(out_path(cfg, "train.json"), text);
  std::cout << text;
  return 0;
}

int cmd_evaluate(const RunConfig& cfg, const std::string& checkpoint_path) {
  LoadedData d = load_for_run(cfg);
  ModelDims dims = model_dims(d.providers, cfg.tie_title_weights);

  std::string ckpt_file =
      checkpoint_path.empty() ? out_path(cfg, "checkpoint.bin") : checkpoint_path;
  LoadedCheckpoint ckpt = load_checkpoint(ckpt_file);
  check_checkpoint_compat(ckpt, dims, attention_mode_from_name(cfg.attention_mode));

  SplitFeatures feats =
      features_by_split(d.complete, d.data_split, d.providers, d.lexicon, cfg.image_root);
  std::vector<int> preds = predict_labels(ckpt.params, feats.test, ckpt.meta.attention_mode);
  MetricsReport rep = report(confusion(preds, feats.test_labels, cfg.positive_class), "full");

  json doc = report_json(rep);
  json dumped = json::array();
  for (size_t i = 0; i < preds.size(); ++i)
    dumped.push_back({{"id", feats.test_ids[i]},
                      {"predicted", preds[i]},
                      {"label", feats.test_labels[i]}});
  doc["predictions"] = dumped;
  stamp(doc, cfg);
  write_file(out_path(cfg, "metrics.json"), doc.dump(2) + "\n");

  std::string table = render_table({rep});
  write_file(out_path(cfg, "metrics.txt"), table);
  std::cout << table;
  return 0;
}

int cmd_ablate(const RunConfig& cfg) {
  LoadedData d = load_for_run(cfg);
  SplitFeatures feats =
      features_by_split(d.complete, d.data_split, d.providers, d.lexicon, cfg.image_root);
  ModelDims dims = model_dims(d.providers, cfg.tie_title_weights);

  std::vector<std::string> names = parse_variant_list(cfg.variants);
  std::vector<MetricsReport> rows = run_ablation(feats, dims, cfg, names);

  json doc;
  json out_rows = json::array();
  for (size_t i = 0; i < rows.size(); ++i) {
    json row = report_json(rows[i]);
    row["fused_dim"] = build_variant(names[i]).fused_dim;
    out_rows.push_back(row);
  }
  doc["rows"] = out_rows;
  stamp(doc, cfg);
  write_file(out_path(cfg, "ablation.json"), doc.dump(2) + "\n");

  std::ostringstream table;
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%-10s %9s %6s %6s %6s %6s", "variant", "fused_dim", "Acc",
                "Pre", "Rec", "F1");
  table << buf << "\n";
  for (size_t i = 0; i < rows.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%-10s %9d %6.3f %6.3f %6.3f %6.3f", rows[i].variant.c_str(),
                  build_variant(names[i]).fused_dim, rows[i].accuracy, rows[i].precision,
                  rows[i].recall, rows[i].f1);
    table << buf << "\n";
  }
  write_file(out_path(cfg, "ablation.txt"), table.str());
  std::cout << table.str();
  return 0;
}

int cmd_report(const std::string& input) {
  std::ifstream in(input);
  if (!in) fail(cat("cannot open report input: ", input));
  json doc = json::parse(in);

  auto to_report = [](const json& j) {
    MetricsReport r;
    r.variant = j.value("variant", "");
    r.accuracy = j.at("accuracy").get<double>();
    r.precision = j.at("precision").get<double>();
    r.recall = j.at("recall").get<double>();
    r.f1 = j.at("f1").get<double>();
    return r;
  };

  std::vector<MetricsReport> rows;
  if (doc.contains("rows"))
    for (const json& row : doc.at("rows")) rows.push_back(to_report(row));
  else
    rows.push_back(to_report(doc));
  std::cout << render_table(rows);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"title-emotion-attention news classifier"};
  app.require_subcommand(1);

  CliArgs ingest_args, extract_args, train_args, evaluate_args, ablate_args;
  std::string checkpoint_path, report_input;

  CLI::App* ingest = app.add_subcommand("ingest", "validate a manifest and report statistics");
  add_common(ingest, ingest_args);
  CLI::App* extract = app.add_subcommand("extract", "write embedding caches + emotion dump");
  add_common(extract, extract_args);
  CLI::App* train = app.add_subcommand("train", "train and write checkpoint + history");
  add_common(train, train_args);
  CLI::App* evaluate = app.add_subcommand("evaluate", "evaluate a checkpoint on the test split");
  add_common(evaluate, evaluate_args);
  evaluate->add_option("--checkpoint", checkpoint_path, "checkpoint file (default out_dir's)");
  CLI::App* ablate = app.add_subcommand("ablate", "train and evaluate every variant");
  add_common(ablate, ablate_args);
  CLI::App* report_cmd = app.add_subcommand("report", "render a metrics/ablation JSON as a table");
  report_cmd->add_option("--input", report_input, "metrics.json or ablation.json")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (ingest->parsed()) return cmd_ingest(resolve_config(ingest_args));
    if (extract->parsed()) return cmd_extract(resolve_config(extract_args));
    if (train->parsed()) return cmd_train(resolve_config(train_args));
    if (evaluate->parsed()) return cmd_evaluate(resolve_config(evaluate_args), checkpoint_path);
    if (ablate->parsed()) return cmd_ablate(resolve_config(ablate_args));
    if (report_cmd->parsed()) return cmd_report(report_input);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
