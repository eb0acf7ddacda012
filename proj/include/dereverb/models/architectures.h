// Copyright 2026 The Dereverb Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef DEREVERB_MODELS_ARCHITECTURES_H_
#define DEREVERB_MODELS_ARCHITECTURES_H_

#include <string>
#include <vector>

#include "dereverb/common/rng.h"
#include "dereverb/models/layers.h"
#include "dereverb/models/model.h"

namespace dereverb::models {

// Per-frequency RIR estimator: a stack of valid [kT x 1] convolutions that
// collapses the time axis to one frame; the last layer's channels become
// the RIR frames. Output [R x F], non-negative.
class RirEstimator : public Model {
 public:
  RirEstimator(RirEstimatorConfig config, Rng& rng);

  Prediction Forward(nn::Tape& tape, nn::Var input) const override;
  size_t RequiredFrames() const override { return config_.InputFrames(); }
  nlohmann::json config_json() const override { return ToJson(config_); }
  std::string Describe() const override;

  const RirEstimatorConfig& config() const { return config_; }

 private:
  RirEstimatorConfig config_;
  std::vector<ConvParams> layers_;
};

// Residual Bi-GRU over frames: [T x F] -> [T x F].
class DryGru : public Model {
 public:
  DryGru(DryGruConfig config, Rng& rng);

  Prediction Forward(nn::Tape& tape, nn::Var input) const override;
  nlohmann::json config_json() const override { return ToJson(config_); }
  std::string Describe() const override;

 private:
  DryGruConfig config_;
  GruHeadParams head_;
};

// Compact U-net. Encoder: `depth` 4x4 stride-2 convolutions (ELU) with
// base*2^l channels. Decoder: 4x4 stride-2 transposed convolutions (ELU),
// each concatenated with the matching encoder activation, the input itself
// at the top level. A 1x1 convolution maps to one output channel.
class Unet : public Model {
 public:
  Unet(UnetConfig config, Rng& rng);

  Prediction Forward(nn::Tape& tape, nn::Var input) const override;
  nlohmann::json config_json() const override { return ToJson(config_); }
  std::string Describe() const override;

  // Extent after padding up to a multiple of 2^depth.
  size_t PaddedExtent(size_t n) const;

 private:
  UnetConfig config_;
  std::vector<ConvParams> encoder_;
  std::vector<ConvParams> decoder_;  // decoder_[l] produces level l
  ConvParams output_;
};

// Shared conv trunk feeding a conv RIR head and a recurrent dry head.
// Trunk features are zero-padded in time back to T frames and flattened
// per frame for the dry head.
class JointModel : public Model {
 public:
  JointModel(JointConfig config, Rng& rng);

  Prediction Forward(nn::Tape& tape, nn::Var input) const override;
  size_t RequiredFrames() const override { return config_.conv.InputFrames(); }
  nlohmann::json config_json() const override { return ToJson(config_); }
  std::string Describe() const override;

  const JointConfig& config() const { return config_; }
  // Parameter names owned by one part of the model.
  std::vector<std::string> TrunkParameterNames() const;
  std::vector<std::string> DryHeadParameterNames() const;

 private:
  JointConfig config_;
  std::vector<ConvParams> trunk_;
  std::vector<ConvParams> rir_head_;
  GruHeadParams dry_head_;
};

}  // namespace dereverb::models

#endif  // DEREVERB_MODELS_ARCHITECTURES_H_
