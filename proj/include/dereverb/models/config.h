// Copyright 2026 The Dereverb Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef DEREVERB_MODELS_CONFIG_H_
#define DEREVERB_MODELS_CONFIG_H_

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace dereverb::models {

enum class ModelKind { kRir, kDryGru, kDryUnet, kJoint };

// "rir", "dry-gru", "dry-unet", "joint".
std::string_view ModelKindName(ModelKind kind);
// Throws InvalidArgument for unknown names.
ModelKind ParseModelKind(std::string_view name);

enum class Scale { kTiny, kDesk, kPaper };

std::string_view ScaleName(Scale scale);
Scale ParseScale(std::string_view name);

// One valid time-axis convolution with a kF == 1 kernel.
struct TimeConvLayer {
  size_t kernel_frames = 1;
  size_t channels = 1;

  bool operator==(const TimeConvLayer&) const = default;
};

struct RirEstimatorConfig {
  // ELU after every layer but the last, ReLU after the last. The last
  // layer's channel count is the number of RIR frames emitted.
  std::vector<TimeConvLayer> layers;

  // Frames consumed by the stack: 1 + sum(kernel_frames - 1).
  size_t InputFrames() const;
  size_t OutputFrames() const { return layers.back().channels; }
  // Time extent after each layer, starting with the input.
  std::vector<size_t> FrameChain() const;

  bool operator==(const RirEstimatorConfig&) const = default;
};

struct DryGruConfig {
  size_t layers = 3;
  size_t hidden = 64;  // per direction
  bool residual = true;
  size_t bins = 257;

  bool operator==(const DryGruConfig&) const = default;
};

struct UnetConfig {
  size_t depth = 4;
  size_t base_channels = 8;

  bool operator==(const UnetConfig&) const = default;
};

struct LossWeights {
  double dry = 1.0;
  double rir = 1.0;
  double rec = 1.0;

  bool operator==(const LossWeights&) const = default;
};

// Throws InvalidArgument on negative or all-zero weights.
void ValidateWeights(const LossWeights& w);

struct JointConfig {
  // Full conv stack; the first `trunk_layers` are shared, the rest form the
  // RIR head.
  RirEstimatorConfig conv;
  size_t trunk_layers = 2;
  // Recurrent dry head over flattened trunk features.
  size_t gru_layers = 3;
  size_t gru_hidden = 64;
  size_t bins = 257;
  LossWeights weights;

  bool operator==(const JointConfig&) const = default;
};

RirEstimatorConfig PaperRirConfig();

RirEstimatorConfig DefaultRirConfig(Scale scale);
DryGruConfig DefaultDryGruConfig(Scale scale);
UnetConfig DefaultUnetConfig(Scale scale);
JointConfig DefaultJointConfig(Scale scale);

// Frequency bins a tiny-scale model expects.
inline constexpr size_t kTinyBins = 5;

// Validation; each throws InvalidArgument with a description.
void Validate(const RirEstimatorConfig& c);
void Validate(const DryGruConfig& c);
void Validate(const UnetConfig& c);
void Validate(const JointConfig& c);

nlohmann::json ToJson(const RirEstimatorConfig& c);
nlohmann::json ToJson(const DryGruConfig& c);
nlohmann::json ToJson(const UnetConfig& c);
nlohmann::json ToJson(const JointConfig& c);
nlohmann::json ToJson(const LossWeights& w);

// Missing keys keep their defaults. Throws ParseError on type errors.
RirEstimatorConfig RirConfigFromJson(const nlohmann::json& j);
DryGruConfig DryGruConfigFromJson(const nlohmann::json& j);
UnetConfig UnetConfigFromJson(const nlohmann::json& j);
JointConfig JointConfigFromJson(const nlohmann::json& j);
LossWeights WeightsFromJson(const nlohmann::json& j);

// Config for `kind` at `scale`, as JSON.
nlohmann::json DefaultConfigJson(ModelKind kind, Scale scale);

}  // namespace dereverb::models

#endif  // DEREVERB_MODELS_CONFIG_H_
