#pragma once

#include <string>

#include "newscred/model.hpp"

namespace newscred {

// Run provenance stored alongside the weights so a checkpoint is
// self-describing: the dimension contract, active segments, and attention
// mode are validated on load before any evaluation.
struct CheckpointMeta {
  AttentionMode attention_mode = AttentionMode::Sequence;
  uint64_t split_seed = 0;
  uint64_t train_seed = 0;
  std::string config_hash;  // hex digest of the resolved run config, may be empty
};

struct LoadedCheckpoint {
  ModelParams params;
  CheckpointMeta meta;
};

// One JSON header line (tensor directory, dims, seeds, meta) followed by the
// tensor values as row-major float64 in directory order. Byte-identical for
// identical parameters and meta.
void save_checkpoint(const std::string& path, const ModelParams& params,
                     const CheckpointMeta& meta);

LoadedCheckpoint load_checkpoint(const std::string& path);

// Errors unless the checkpoint was produced under the same dimension contract
// and attention mode; the message names each expected vs found value.
void check_checkpoint_compat(const LoadedCheckpoint& ckpt, const ModelDims& expected,
                             AttentionMode expected_mode);

}  // namespace newscred
