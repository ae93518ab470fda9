#include "newscred/corpus.hpp"

#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "newscred/rng.hpp"
#include "newscred/text.hpp"
#include "newscred/types.hpp"

namespace newscred {

using nlohmann::json;

std::vector<Article> load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(cat("cannot open manifest: ", path));

  std::vector<Article> articles;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (is_blank(line)) continue;
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::exception& e) {
      fail(cat(path, " line ", lineno, ": invalid JSON: ", e.what()));
    }
    if (!rec.is_object()) fail(cat(path, " line ", lineno, ": record is not an object"));

    static const char* kFields[] = {"id", "title", "body", "image_ref", "label", "dataset"};
    for (const char* f : kFields)
      if (!rec.contains(f)) fail(cat(path, " line ", lineno, ": missing field '", f, "'"));
    for (auto& [key, _] : rec.items()) {
      bool known = false;
      for (const char* f : kFields) known |= (key == f);
      if (!known) fail(cat(path, " line ", lineno, ": unknown field '", key, "'"));
    }

    Article a;
    try {
      a.id = rec.at("id").get<std::string>();
      a.title = rec.at("title").get<std::string>();
      a.body = rec.at("body").get<std::string>();
      a.image_ref = rec.at("image_ref").get<std::string>();
      a.dataset = rec.at("dataset").get<std::string>();
    } catch (const json::exception& e) {
      fail(cat(path, " line ", lineno, ": bad field type: ", e.what()));
    }
    if (!rec.at("label").is_number_integer())
      fail(cat(path, " line ", lineno, ": label must be an integer"));
    int label = rec.at("label").get<int>();
    if (label != 0 && label != 1)
      fail(cat(path, " line ", lineno, ": label must be 0 (fake) or 1 (true), got ", label));
    a.label = label;
    articles.push_back(std::move(a));
  }
  return articles;
}

std::string resolve_image_path(const std::string& image_root, const std::string& image_ref) {
  std::filesystem::path ref(image_ref);
  if (ref.is_absolute() || image_root.empty()) return image_ref;
  return (std::filesystem::path(image_root) / ref).string();
}

std::vector<Article> filter_complete(const std::vector<Article>& articles,
                                     const std::string& image_root) {
  std::vector<Article> kept;
  kept.reserve(articles.size());
  for (const auto& a : articles) {
    if (is_blank(a.body)) continue;
    std::ifstream img(resolve_image_path(image_root, a.image_ref), std::ios::binary);
    if (!img) continue;
    kept.push_back(a);
  }
  return kept;
}

namespace {

std::vector<std::string> shuffled_ids(const std::vector<const Article*>& articles,
                                      SplitMix64& rng) {
  std::vector<std::string> ids;
  ids.reserve(articles.size());
  for (const Article* a : articles) ids.push_back(a->id);
  fisher_yates(ids, rng);
  return ids;
}

}  // namespace

DatasetSplit split(const std::vector<Article>& articles, double ratio, uint64_t seed,
                   bool stratified) {
  if (!(ratio > 0.0 && ratio < 1.0)) fail(cat("split ratio must be in (0, 1), got ", ratio));
  if (articles.size() < 2) fail(cat("split needs at least 2 articles, got ", articles.size()));

  DatasetSplit out;
  out.seed = seed;
  out.ratio = ratio;
  SplitMix64 rng(seed);

  if (!stratified) {
    std::vector<const Article*> all;
    for (const auto& a : articles) all.push_back(&a);
    auto ids = shuffled_ids(all, rng);
    size_t n_train = static_cast<size_t>(std::floor(ratio * static_cast<double>(ids.size())));
    out.train_ids.assign(ids.begin(), ids.begin() + n_train);
    out.test_ids.assign(ids.begin() + n_train, ids.end());
  } else {
    for (int label : {0, 1}) {
      std::vector<const Article*> cls;
      for (const auto& a : articles)
        if (a.label == label) cls.push_back(&a);
      if (cls.empty()) continue;
      auto ids = shuffled_ids(cls, rng);
      size_t n_train = static_cast<size_t>(std::floor(ratio * static_cast<double>(ids.size())));
      out.train_ids.insert(out.train_ids.end(), ids.begin(), ids.begin() + n_train);
      out.test_ids.insert(out.test_ids.end(), ids.begin() + n_train, ids.end());
    }
  }
  return out;
}

DatasetStats dataset_stats(const std::vector<Article>& articles) {
  DatasetStats s;
  for (const auto& a : articles) {
    if (a.label == 0)
      ++s.fake_count;
    else
      ++s.true_count;
  }
  s.overall = s.fake_count + s.true_count;
  return s;
}

std::string split_to_json(const DatasetSplit& s) {
  json j;
  j["seed"] = s.seed;
  j["ratio"] = s.ratio;
  j["train_ids"] = s.train_ids;
  j["test_ids"] = s.test_ids;
  return j.dump(2) + "\n";
}

DatasetSplit split_from_json(const std::string& json_text) {
  json j = json::parse(json_text);
  DatasetSplit s;
  s.seed = j.at("seed").get<uint64_t>();
  s.ratio = j.at("ratio").get<double>();
  s.train_ids = j.at("train_ids").get<std::vector<std::string>>();
  s.test_ids = j.at("test_ids").get<std::vector<std::string>>();
  return s;
}

}  // namespace newscred
