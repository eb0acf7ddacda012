// Copyright 2026 The Dereverb Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <sstream>

#include "dereverb/common/error.h"
#include "dereverb/models/architectures.h"
#include "dereverb/models/input_check.h"
#include "dereverb/nn/ops.h"

namespace dereverb::models {

RirEstimator::RirEstimator(RirEstimatorConfig config, Rng& rng)
    : Model(ModelKind::kRir), config_(std::move(config)) {
  Validate(config_);
  layers_ = AddTimeConvStack(params_, "conv", config_.layers, 0, 1, rng);
  InitRectifiedOutput(params_, layers_.back());
}

Prediction RirEstimator::Forward(nn::Tape& tape, nn::Var input) const {
  CheckFrames(input, config_.InputFrames(), "rir estimator");
  const size_t bins = input.shape()[1];
  nn::Var x = nn::Reshape(input, {input.shape()[0], bins, 1});
  for (size_t i = 0; i < layers_.size(); ++i) {
    const bool last = i + 1 == layers_.size();
    x = ApplyConv(tape, x, layers_[i], last ? Activation::kRelu : Activation::kElu);
  }
  // [1 x F x R] -> [R x F]
  Prediction p;
  p.rir_mag = nn::Transpose(nn::Reshape(x, {bins, config_.OutputFrames()}));
  return p;
}

std::string RirEstimator::Describe() const {
  std::ostringstream os;
  const std::vector<size_t> chain = config_.FrameChain();
  os << "rir estimator, " << config_.layers.size() << " layers\n";
  size_t cin = 1;
  for (size_t i = 0; i < config_.layers.size(); ++i) {
    const auto& l = config_.layers[i];
    os << "  conv" << i << "  (" << l.kernel_frames << "x1, " << l.channels
       << ")  " << cin << "->" << l.channels << " ch  "
       << (i + 1 == config_.layers.size() ? "relu" : "elu") << "  frames "
       << chain[i] << "->" << chain[i + 1] << "\n";
    cin = l.channels;
  }
  os << "  output [" << config_.OutputFrames() << " x F]\n";
  return os.str();
}

}  // namespace dereverb::models
