// Copyright 2026 The Dereverb Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <sstream>

#include "dereverb/models/architectures.h"
#include "dereverb/models/input_check.h"

namespace dereverb::models {

DryGru::DryGru(DryGruConfig config, Rng& rng)
    : Model(ModelKind::kDryGru), config_(config) {
  Validate(config_);
  head_ = AddGruHead(params_, "head", config_.bins, config_.hidden,
                     config_.layers, config_.bins, config_.residual, rng);
}

Prediction DryGru::Forward(nn::Tape& tape, nn::Var input) const {
  CheckMatrix(input, "dry-gru");
  CheckBins(input, config_.bins, "dry-gru");
  Prediction p;
  p.dry_logmag = ApplyGruHead(tape, input, head_);
  return p;
}

std::string DryGru::Describe() const {
  std::ostringstream os;
  os << "dry-gru\n"
     << "  input projection " << config_.bins << "->" << 2 * config_.hidden
     << "\n"
     << "  " << config_.layers << " x bi-gru, hidden " << config_.hidden
     << " per direction (" << 2 * config_.hidden << " features)"
     << (config_.residual ? ", residual" : "") << "\n"
     << "  output projection " << 2 * config_.hidden << "->" << config_.bins
     << "\n";
  return os.str();
}

}  // namespace dereverb::models
