#include "newscred/checkpoint.hpp"

#include <json.hpp>

#include <fstream>

namespace newscred {

using nlohmann::json;

void save_checkpoint(const std::string& path, const ModelParams& params,
                     const CheckpointMeta& meta) {
  auto& p = const_cast<ModelParams&>(params);
  std::vector<NamedTensor> tensors = named_tensors(p);

  json header;
  header["format"] = "newscred-checkpoint";
  header["version"] = 1;
  header["contract"] = {{"text_dim", params.dims.contract.text_dim},
                        {"image_dim", params.dims.contract.image_dim},
                        {"emotion_dim", params.dims.contract.emotion_dim}};
  header["d_enc"] = {{"title", params.dims.d_enc_title},
                     {"text", params.dims.d_enc_text},
                     {"image", params.dims.d_enc_image}};
  header["tie_title_weights"] = params.dims.tie_title_weights;
  json active = json::array();
  for (int i = 0; i < 5; ++i)
    if (params.active[i]) active.push_back(segment_name(kSegmentOrder[i]));
  header["active_segments"] = active;
  header["attention_mode"] = attention_mode_name(meta.attention_mode);
  header["init_seed"] = params.init_seed;
  header["split_seed"] = meta.split_seed;
  header["train_seed"] = meta.train_seed;
  header["config_hash"] = meta.config_hash;

  json directory = json::array();
  for (const NamedTensor& t : tensors) {
    Eigen::Index rows = t.matrix ? t.matrix->rows() : t.vector->size();
    Eigen::Index cols = t.matrix ? t.matrix->cols() : 1;
    directory.push_back({{"name", t.name}, {"rows", rows}, {"cols", cols}});
  }
  header["tensors"] = directory;

  std::ofstream out(path, std::ios::binary);
  if (!out) fail(cat("cannot write checkpoint: ", path));
  out << header.dump() << "\n";
  for (const NamedTensor& t : tensors) {
    if (t.matrix) {
      for (Eigen::Index r = 0; r < t.matrix->rows(); ++r)
        for (Eigen::Index c = 0; c < t.matrix->cols(); ++c) {
          double v = (*t.matrix)(r, c);
          out.write(reinterpret_cast<const char*>(&v), sizeof(double));
        }
    } else {
      out.write(reinterpret_cast<const char*>(t.vector->data()),
                static_cast<std::streamsize>(sizeof(double) * t.vector->size()));
    }
  }
  if (!out) fail(cat("failed writing checkpoint payload: ", path));
}

LoadedCheckpoint load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(cat("cannot open checkpoint: ", path));

  std::string first_line;
  std::getline(in, first_line);
  json header;
  try {
    header = json::parse(first_line);
  } catch (const json::exception& e) {
    fail(cat(path, ": checkpoint header is not valid JSON: ", e.what()));
  }
  if (header.value("format", "") != "newscred-checkpoint")
    fail(cat(path, ": not a checkpoint file (format field missing or wrong)"));

  LoadedCheckpoint loaded;
  ModelDims dims;
  const json& contract = header.at("contract");
  dims.contract.text_dim = contract.at("text_dim").get<int>();
  dims.contract.image_dim = contract.at("image_dim").get<int>();
  dims.contract.emotion_dim = contract.at("emotion_dim").get<int>();
  const json& d_enc = header.at("d_enc");
  dims.d_enc_title = d_enc.at("title").get<int>();
  dims.d_enc_text = d_enc.at("text").get<int>();
  dims.d_enc_image = d_enc.at("image").get<int>();
  dims.tie_title_weights = header.at("tie_title_weights").get<bool>();

  SegmentMask active = {false, false, false, false, false};
  for (const auto& name : header.at("active_segments")) {
    std::string s = name.get<std::string>();
    bool known = false;
    for (int i = 0; i < 5; ++i)
      if (s == segment_name(kSegmentOrder[i])) {
        active[i] = true;
        known = true;
      }
    if (!known) fail(cat(path, ": unknown segment in checkpoint header: ", s));
  }

  uint64_t init_seed = header.at("init_seed").get<uint64_t>();
  loaded.params = init_model(dims, active, init_seed);
  loaded.meta.attention_mode =
      attention_mode_from_name(header.at("attention_mode").get<std::string>());
  loaded.meta.split_seed = header.value("split_seed", uint64_t{0});
  loaded.meta.train_seed = header.at("train_seed").get<uint64_t>();
  loaded.meta.config_hash = header.value("config_hash", "");

  std::vector<NamedTensor> tensors = named_tensors(loaded.params);
  const json& directory = header.at("tensors");
  if (directory.size() != tensors.size())
    fail(cat(path, ": checkpoint lists ", directory.size(), " tensors, model needs ",
             tensors.size()));

  for (size_t i = 0; i < tensors.size(); ++i) {
    const json& entry = directory[i];
    NamedTensor& t = tensors[i];
    Eigen::Index rows = t.matrix ? t.matrix->rows() : t.vector->size();
    Eigen::Index cols = t.matrix ? t.matrix->cols() : 1;
    if (entry.at("name").get<std::string>() != t.name ||
        entry.at("rows").get<Eigen::Index>() != rows ||
        entry.at("cols").get<Eigen::Index>() != cols)
      fail(cat(path, ": tensor ", i, ": expected ", t.name, " ", rows, "x", cols, ", found ",
               entry.at("name").get<std::string>(), " ", entry.at("rows").get<long>(), "x",
               entry.at("cols").get<long>()));

    if (t.matrix) {
      for (Eigen::Index r = 0; r < t.matrix->rows(); ++r)
        for (Eigen::Index c = 0; c < t.matrix->cols(); ++c) {
          double v;
          if (!in.read(reinterpret_cast<char*>(&v), sizeof(double)))
            fail(cat(path, ": truncated payload at tensor ", t.name));
          (*t.matrix)(r, c) = v;
        }
    } else {
      if (!in.read(reinterpret_cast<char*>(t.vector->data()),
                   static_cast<std::streamsize>(sizeof(double) * t.vector->size())))
        fail(cat(path, ": truncated payload at tensor ", t.name));
    }
  }
  return loaded;
}

void check_checkpoint_compat(const LoadedCheckpoint& ckpt, const ModelDims& expected,
                             AttentionMode expected_mode) {
  const ModelDims& found = ckpt.params.dims;
  auto mismatch = [](const char* what, auto want, auto got) {
    fail(cat("checkpoint incompatible: ", what, " expected ", want, ", found ", got));
  };
  if (found.contract.text_dim != expected.contract.text_dim)
    mismatch("text projection dim", expected.contract.text_dim, found.contract.text_dim);
  if (found.contract.image_dim != expected.contract.image_dim)
    mismatch("image projection dim", expected.contract.image_dim, found.contract.image_dim);
  if (found.contract.emotion_dim != expected.contract.emotion_dim)
    mismatch("emotion dim", expected.contract.emotion_dim, found.contract.emotion_dim);
  if (found.d_enc_title != expected.d_enc_title)
    mismatch("d_enc_title", expected.d_enc_title, found.d_enc_title);
  if (found.d_enc_text != expected.d_enc_text)
    mismatch("d_enc_text", expected.d_enc_text, found.d_enc_text);
  if (found.d_enc_image != expected.d_enc_image)
    mismatch("d_enc_image", expected.d_enc_image, found.d_enc_image);
  if (found.tie_title_weights != expected.tie_title_weights)
    mismatch("tie_title_weights", expected.tie_title_weights, found.tie_title_weights);
  if (ckpt.meta.attention_mode != expected_mode)
    mismatch("attention_mode", attention_mode_name(expected_mode),
             attention_mode_name(ckpt.meta.attention_mode));
}

}  // namespace newscred
