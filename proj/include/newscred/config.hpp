#pragma once

#include <map>
#include <string>
#include <vector>

#include "newscred/training.hpp"

namespace newscred {

// Everything a run needs, resolved from a `key = value` config file plus
// command-line overrides (overrides win). All randomness flows from the two
// named seeds below; both are echoed into every output artifact.
struct RunConfig {
  // inputs
  std::string manifest;
  std::string image_root;
  std::string lexicon;
  std::string cache;             // embedding cache file (precomputed provider input,
                                 // or the extract command's output)
  std::string out_dir = "out";
  std::string provider = "toy";  // toy | precomputed
  int hash_dim = 64;             // toy text embedder width

  // dataset split
  double split_ratio = 0.8;
  bool stratified = false;
  uint64_t split_seed = 1;

  // model + training
  uint64_t train_seed = 2;  // parameter init and epoch shuffling
  bool tie_title_weights = false;
  std::string attention_mode = "sequence";
  int batch_size = 16;
  int epochs = 10;
  double learning_rate = 1e-4;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_eps = 1e-8;

  // evaluation + ablation
  int positive_class = 0;  // fake articles count as positive by default
  std::string variants = "full,T,V,E,S";
};

// Lines of `key = value`; blank lines and lines starting with '#' skipped.
// Unknown keys and unparsable values error with the line number.
RunConfig parse_config_file(const std::string& path);

// One setting by key; errors name unknown keys and bad values.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);

// Each entry "key=value"; applied in order (later wins).
void apply_overrides(RunConfig& cfg, const std::vector<std::string>& overrides);

// Canonical serialized form of every setting (doubles via %.17g); the basis
// for the config hash and for echoing the resolved config into outputs.
std::map<std::string, std::string> config_map(const RunConfig& cfg);

// 16-hex-digit FNV-1a over the sorted `key=value` lines of config_map.
std::string config_hash(const RunConfig& cfg);

TrainConfig train_config(const RunConfig& cfg);

// "full,T,V" -> {"full", "T", "V"}; empty entries rejected.
std::vector<std::string> parse_variant_list(const std::string& csv);

}  // namespace newscred
