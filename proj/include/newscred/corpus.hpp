#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace newscred {

// One news item. label: 0 = fake, 1 = true.
struct Article {
  std::string id;
  std::string title;
  std::string body;
  std::string image_ref;  // relative to an image root, or absolute
  int label = 0;
  std::string dataset;  // "politifact" | "gossipcop" | custom tag
};

struct DatasetStats {
  int64_t fake_count = 0;
  int64_t true_count = 0;
  int64_t overall = 0;
};

struct DatasetSplit {
  std::vector<std::string> train_ids;
  std::vector<std::string> test_ids;
  uint64_t seed = 0;
  double ratio = 0.8;
};

// Reads a JSON Lines manifest: one object per line with exactly the fields
// {id, title, body, image_ref, label, dataset}. Blank lines are skipped.
// Throws on malformed lines, unknown fields, or labels outside {0, 1}; the
// message carries the 1-based line number.
std::vector<Article> load_manifest(const std::string& path);

// Keeps articles whose body has non-whitespace content and whose image_ref
// resolves to a readable file under image_root. Order preserved.
std::vector<Article> filter_complete(const std::vector<Article>& articles,
                                     const std::string& image_root);

// Resolves image_ref against image_root (absolute refs pass through).
std::string resolve_image_path(const std::string& image_root, const std::string& image_ref);

// Deterministic train/test split: Fisher-Yates shuffle of the ids in input
// order, driven by SplitMix64(seed), then |train| = floor(ratio * N).
// stratified shuffles and splits each label class separately (class 0 first,
// same PRNG stream) and concatenates the per-class parts.
// Throws if fewer than 2 articles or ratio outside (0, 1).
DatasetSplit split(const std::vector<Article>& articles, double ratio, uint64_t seed,
                   bool stratified = false);

DatasetStats dataset_stats(const std::vector<Article>& articles);

// JSON round-trip for split files: {seed, ratio, train_ids, test_ids}.
std::string split_to_json(const DatasetSplit& s);
DatasetSplit split_from_json(const std::string& json_text);

}  // namespace newscred
