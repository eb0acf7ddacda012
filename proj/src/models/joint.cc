// Copyright 2026 The Dereverb Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <span>
#include <sstream>

#include "dereverb/models/architectures.h"
#include "dereverb/models/input_check.h"
#include "dereverb/nn/ops.h"

namespace dereverb::models {

JointModel::JointModel(JointConfig config, Rng& rng)
    : Model(ModelKind::kJoint), config_(std::move(config)) {
  Validate(config_);
  const std::span<const TimeConvLayer> all(config_.conv.layers);
  const size_t n = config_.trunk_layers;
  trunk_ = AddTimeConvStack(params_, "conv", all.first(n), 0, 1, rng);
  rir_head_ = AddTimeConvStack(params_, "conv", all.subspan(n), n,
                               all[n - 1].channels, rng);
  InitRectifiedOutput(params_, rir_head_.back());
  const size_t features = config_.bins * all[n - 1].channels;
  dry_head_ = AddGruHead(params_, "dry", features, config_.gru_hidden,
                         config_.gru_layers, config_.bins, true, rng);
}

Prediction JointModel::Forward(nn::Tape& tape, nn::Var input) const {
  CheckFrames(input, config_.conv.InputFrames(), "joint");
  CheckBins(input, config_.bins, "joint");
  const size_t frames = input.shape()[0], bins = input.shape()[1];

  nn::Var trunk = nn::Reshape(input, {frames, bins, 1});
  for (const ConvParams& p : trunk_) {
    trunk = ApplyConv(tape, trunk, p, Activation::kElu);
  }

  Prediction out;
  nn::Var r = trunk;
  for (size_t i = 0; i < rir_head_.size(); ++i) {
    const bool last = i + 1 == rir_head_.size();
    r = ApplyConv(tape, r, rir_head_[i],
                  last ? Activation::kRelu : Activation::kElu);
  }
  out.rir_mag =
      nn::Transpose(nn::Reshape(r, {bins, config_.conv.OutputFrames()}));

  const size_t trunk_frames = trunk.shape()[0];
  const size_t channels = trunk.shape()[2];
  const size_t front = (frames - trunk_frames) / 2;
  nn::Var padded =
      nn::PadTF(trunk, front, frames - trunk_frames - front, 0, 0);
  nn::Var seq = nn::Reshape(padded, {frames, bins * channels});
  out.dry_logmag = ApplyGruHead(tape, seq, dry_head_);
  return out;
}

std::vector<std::string> JointModel::TrunkParameterNames() const {
  std::vector<std::string> names;
  for (const ConvParams& p : trunk_) {
    names.push_back(p.kernel->name);
    names.push_back(p.bias->name);
  }
  return names;
}

std::vector<std::string> JointModel::DryHeadParameterNames() const {
  std::vector<std::string> names;
  for (const auto& p : params_) {
    if (p.name.rfind("dry.", 0) == 0) names.push_back(p.name);
  }
  return names;
}

std::string JointModel::Describe() const {
  std::ostringstream os;
  const std::vector<size_t> chain = config_.conv.FrameChain();
  const auto& layers = config_.conv.layers;
  os << "joint, trunk " << config_.trunk_layers << " layers, rir head "
     << layers.size() - config_.trunk_layers << " layers\n";
  size_t cin = 1;
  for (size_t i = 0; i < layers.size(); ++i) {
    os << "  " << (i < config_.trunk_layers ? "trunk" : "rir  ") << " conv"
       << i << "  (" << layers[i].kernel_frames << "x1, " << layers[i].channels
       << ")  " << cin << "->" << layers[i].channels << " ch  "
       << (i + 1 == layers.size() ? "relu" : "elu") << "  frames " << chain[i]
       << "->" << chain[i + 1] << "\n";
    cin = layers[i].channels;
  }
  const size_t feat = config_.bins * layers[config_.trunk_layers - 1].channels;
  os << "  dry head: trunk features " << feat << " per frame -> "
     << 2 * config_.gru_hidden << ", " << config_.gru_layers
     << " x bi-gru hidden " << config_.gru_hidden << " residual -> "
     << config_.bins << "\n"
     << "  loss weights dry " << config_.weights.dry << " rir "
     << config_.weights.rir << " rec " << config_.weights.rec << "\n";
  return os.str();
}

}  // namespace dereverb::models
