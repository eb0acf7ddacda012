// Copyright 2026 The Dereverb Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef DEREVERB_TRAIN_TRAINER_H_
#define DEREVERB_TRAIN_TRAINER_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "dereverb/common/rng.h"
#include "dereverb/corpus/example.h"
#include "dereverb/models/loss.h"
#include "dereverb/models/model.h"
#include "dereverb/nn/adam.h"
#include "dereverb/train/checkpoint.h"
#include "json.hpp"

namespace dereverb::train {

struct TrainConfig {
  models::ModelKind kind = models::ModelKind::kJoint;
  models::Scale scale = models::Scale::kDesk;
  int epochs = 10;
  size_t batch = 4;
  double lr = 1e-4;
  models::LossWeights weights;
  uint64_t seed = 0;
  int threads = 1;
  int checkpoint_every = 0;  // 0: final checkpoint only
  size_t max_val_examples = 32;
  // Overrides the scale's default model config when not null.
  nlohmann::json model_config;
};

// Throws InvalidArgument: epochs >= 1, batch >= 1, lr >= 0 and finite,
// threads >= 1, weights valid.
void Validate(const TrainConfig& config);

// Model config the trainer builds: the override or the scale default, with
// the configured loss weights folded into joint configs.
nlohmann::json ResolveModelConfig(const TrainConfig& config);

nlohmann::json ToJson(const TrainConfig& config);

// Random access to examples, so large sets can stay on disk.
class ExampleSet {
 public:
  virtual ~ExampleSet() = default;
  virtual size_t size() const = 0;
  virtual corpus::TrainingExample Get(size_t i) const = 0;
};

class InMemoryExamples : public ExampleSet {
 public:
  explicit InMemoryExamples(std::vector<corpus::TrainingExample> examples)
      : examples_(std::move(examples)) {}
  size_t size() const override { return examples_.size(); }
  corpus::TrainingExample Get(size_t i) const override { return examples_[i]; }

 private:
  std::vector<corpus::TrainingExample> examples_;
};

class CachedExamples : public ExampleSet {
 public:
  explicit CachedExamples(std::vector<std::string> paths)
      : paths_(std::move(paths)) {}
  size_t size() const override { return paths_.size(); }
  corpus::TrainingExample Get(size_t i) const override;

 private:
  std::vector<std::string> paths_;
};

struct LogRow {
  int64_t epoch = 0;  // 1-based
  std::string split;  // "train" or "val"
  models::LossValues loss;

  bool operator==(const LogRow&) const = default;
};

inline constexpr const char* kLogHeader = "epoch,split,total,l_dry,l_rir,l_rec";
// Values at 17 significant digits, so equal rows print identically.
std::string FormatLogRow(const LogRow& row);

struct TrainState {
  std::unique_ptr<models::Model> model;
  nn::AdamState adam;
  Rng rng;
  int64_t epoch = 0;  // epochs completed
};

// Fresh model from the config's seed.
TrainState InitTrainState(const TrainConfig& config);

// Continues from a checkpoint. Throws KindMismatch when the checkpoint
// holds a different model kind.
TrainState ResumeTrainState(const Checkpoint& ckpt, const TrainConfig& config);

Checkpoint MakeCheckpoint(const TrainState& state, const TrainConfig& config);

// Mean loss over `examples` without updating anything.
models::LossValues EvaluateLoss(const models::Model& model,
                                const ExampleSet& examples,
                                const models::LossWeights& weights,
                                size_t limit = 0);

using EpochCallback =
    std::function<void(const TrainState&, const std::vector<LogRow>&)>;

// Runs config.epochs epochs. Each epoch shuffles the training set with the
// state's RNG, averages per-example gradients over each batch in a fixed
// order (worker threads only change who computes them), takes one Adam
// step per batch, and logs the epoch's mean training loss and the mean
// loss on up to max_val_examples validation examples. Throws EmptySplit
// and NonFiniteLoss (message names the epoch, batch and examples).
std::vector<LogRow> Train(TrainState& state, const TrainConfig& config,
                          const ExampleSet& train, const ExampleSet& val,
                          const EpochCallback& on_epoch = nullptr);

}  // namespace dereverb::train

#endif  // DEREVERB_TRAIN_TRAINER_H_
