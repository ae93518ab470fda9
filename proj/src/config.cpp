#include "newscred/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "newscred/rng.hpp"

namespace newscred {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

bool parse_bool(const std::string& v, const std::string& key) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  fail(cat("config key ", key, ": expected true/false, got '", v, "'"));
}

int parse_int(const std::string& v, const std::string& key) {
  try {
    size_t used = 0;
    int out = std::stoi(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return out;
  } catch (const std::exception&) {
    fail(cat("config key ", key, ": expected an integer, got '", v, "'"));
  }
}

uint64_t parse_u64(const std::string& v, const std::string& key) {
  try {
    size_t used = 0;
    unsigned long long out = std::stoull(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return out;
  } catch (const std::exception&) {
    fail(cat("config key ", key, ": expected a nonnegative integer, got '", v, "'"));
  }
}

double parse_double(const std::string& v, const std::string& key) {
  try {
    size_t used = 0;
    double out = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return out;
  } catch (const std::exception&) {
    fail(cat("config key ", key, ": expected a number, got '", v, "'"));
  }
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "manifest")
    cfg.manifest = value;
  else if (key == "image_root")
    cfg.image_root = value;
  else if (key == "lexicon")
    cfg.lexicon = value;
  else if (key == "cache")
    cfg.cache = value;
  else if (key == "out_dir")
    cfg.out_dir = value;
  else if (key == "provider")
    cfg.provider = value;
  else if (key == "hash_dim")
    cfg.hash_dim = parse_int(value, key);
  else if (key == "split_ratio")
    cfg.split_ratio = parse_double(value, key);
  else if (key == "stratified")
    cfg.stratified = parse_bool(value, key);
  else if (key == "split_seed")
    cfg.split_seed = parse_u64(value, key);
  else if (key == "train_seed")
    cfg.train_seed = parse_u64(value, key);
  else if (key == "tie_title_weights")
    cfg.tie_title_weights = parse_bool(value, key);
  else if (key == "attention_mode")
    cfg.attention_mode = value;
  else if (key == "batch_size")
    cfg.batch_size = parse_int(value, key);
  else if (key == "epochs")
    cfg.epochs = parse_int(value, key);
  else if (key == "learning_rate")
    cfg.learning_rate = parse_double(value, key);
  else if (key == "adam_beta1")
    cfg.adam_beta1 = parse_double(value, key);
  else if (key == "adam_beta2")
    cfg.adam_beta2 = parse_double(value, key);
  else if (key == "adam_eps")
    cfg.adam_eps = parse_double(value, key);
  else if (key == "positive_class")
    cfg.positive_class = parse_int(value, key);
  else if (key == "variants")
    cfg.variants = value;
  else
    fail(cat("unknown config key: '", key, "'"));
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(cat("cannot open config file: ", path));

  RunConfig cfg;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    size_t eq = t.find('=');
    if (eq == std::string::npos)
      fail(cat(path, " line ", line_no, ": expected 'key = value', got '", t, "'"));
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    if (key.empty()) fail(cat(path, " line ", line_no, ": empty key"));
    try {
      apply_setting(cfg, key, value);
    } catch (const std::exception& e) {
      fail(cat(path, " line ", line_no, ": ", e.what()));
    }
  }
  return cfg;
}

void apply_overrides(RunConfig& cfg, const std::vector<std::string>& overrides) {
  for (const std::string& entry : overrides) {
    size_t eq = entry.find('=');
    if (eq == std::string::npos)
      fail(cat("override must look like key=value, got '", entry, "'"));
    apply_setting(cfg, trim(entry.substr(0, eq)), trim(entry.substr(eq + 1)));
  }
}

std::map<std::string, std::string> config_map(const RunConfig& cfg) {
  std::map<std::string, std::string> m;
  m["manifest"] = cfg.manifest;
  m["image_root"] = cfg.image_root;
  m["lexicon"] = cfg.lexicon;
  m["cache"] = cfg.cache;
  m["out_dir"] = cfg.out_dir;
  m["provider"] = cfg.provider;
  m["hash_dim"] = std::to_string(cfg.hash_dim);
  m["split_ratio"] = fmt_double(cfg.split_ratio);
  m["stratified"] = cfg.stratified ? "true" : "false";
  m["split_seed"] = std::to_string(cfg.split_seed);
  m["train_seed"] = std::to_string(cfg.train_seed);
  m["tie_title_weights"] = cfg.tie_title_weights ? "true" : "false";
  m["attention_mode"] = cfg.attention_mode;
  m["batch_size"] = std::to_string(cfg.batch_size);
  m["epochs"] = std::to_string(cfg.epochs);
  m["learning_rate"] = fmt_double(cfg.learning_rate);
  m["adam_beta1"] = fmt_double(cfg.adam_beta1);
  m["adam_beta2"] = fmt_double(cfg.adam_beta2);
  m["adam_eps"] = fmt_double(cfg.adam_eps);
  m["positive_class"] = std::to_string(cfg.positive_class);
  m["variants"] = cfg.variants;
  return m;
}

std::string config_hash(const RunConfig& cfg) {
  std::ostringstream lines;
  for (const auto& [k, v] : config_map(cfg)) lines << k << '=' << v << '\n';
  std::string text = lines.str();
  uint64_t h = fnv1a64(text.data(), text.size());
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

TrainConfig train_config(const RunConfig& cfg) {
  TrainConfig t;
  t.batch_size = cfg.batch_size;
  t.epochs = cfg.epochs;
  t.learning_rate = cfg.learning_rate;
  t.adam_beta1 = cfg.adam_beta1;
  t.adam_beta2 = cfg.adam_beta2;
  t.adam_eps = cfg.adam_eps;
  t.seed = cfg.train_seed;
  t.attention_mode = attention_mode_from_name(cfg.attention_mode);
  return t;
}

std::vector<std::string> parse_variant_list(const std::string& csv) {
  std::vector<std::string> out;
  std::string current;
  std::istringstream in(csv);
  while (std::getline(in, current, ',')) {
    std::string t = trim(current);
    if (t.empty()) fail(cat("empty entry in variant list: '", csv, "'"));
    out.push_back(t);
  }
  if (out.empty()) fail("variant list is empty");
  return out;
}

}  // namespace newscred
