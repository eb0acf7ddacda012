// Copyright 2026 The Dereverb Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef DEREVERB_TRAIN_CHECKPOINT_H_
#define DEREVERB_TRAIN_CHECKPOINT_H_

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "dereverb/models/config.h"
#include "dereverb/models/model.h"
#include "dereverb/nn/adam.h"
#include "dereverb/nn/parameter.h"
#include "json.hpp"

namespace dereverb::train {

inline constexpr uint32_t kCheckpointVersion = 1;

struct Checkpoint {
  models::ModelKind kind = models::ModelKind::kRir;
  nlohmann::json config;  // model config
  std::vector<nn::Parameter> params;
  nn::AdamState adam;
  double lr = 0.0;
  int64_t epoch = 0;  // epochs completed
  std::string rng_state;

  bool operator==(const Checkpoint&) const = default;
};

// Binary layout, little-endian:
//   "DRVB" | u32 version | u32 kind | u64 n + config JSON
//   u32 count, then per parameter: u32 n + name | u32 rank | u64 dims | f32 data
//   i64 adam step | per parameter: f64 m, f64 v | f64 lr | i64 epoch
//   u64 n + RNG state text
// Parameters are stored at float32 precision, optimizer moments at float64.
void SaveCheckpoint(const Checkpoint& ckpt, const std::filesystem::path& path);
// Throws IoFailure, ParseError (bad magic, truncation, inconsistent
// shapes) or VersionMismatch.
Checkpoint LoadCheckpoint(const std::filesystem::path& path);

// Rounds parameter values to what SaveCheckpoint stores.
void RoundToStorage(nn::ParameterStore& params);

// Model rebuilt from the checkpoint's kind and config with its stored
// parameter values. Throws ParseError when names or shapes disagree.
std::unique_ptr<models::Model> RestoreModel(const Checkpoint& ckpt);

}  // namespace dereverb::train

#endif  // DEREVERB_TRAIN_CHECKPOINT_H_
