// Copyright 2026 The Dereverb Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "dereverb/models/model.h"

#include "dereverb/models/architectures.h"

namespace dereverb::models {

std::unique_ptr<Model> MakeModel(ModelKind kind, const nlohmann::json& config,
                                 uint64_t seed) {
  Rng rng(StreamSeed(seed, "init"));
  switch (kind) {
    case ModelKind::kRir:
      return std::make_unique<RirEstimator>(RirConfigFromJson(config), rng);
    case ModelKind::kDryGru:
      return std::make_unique<DryGru>(DryGruConfigFromJson(config), rng);
    case ModelKind::kDryUnet:
      return std::make_unique<Unet>(UnetConfigFromJson(config), rng);
    case ModelKind::kJoint:
      return std::make_unique<JointModel>(JointConfigFromJson(config), rng);
  }
  return nullptr;
}

std::unique_ptr<Model> MakeModel(ModelKind kind, Scale scale, uint64_t seed) {
  return MakeModel(kind, DefaultConfigJson(kind, scale), seed);
}

}  // namespace dereverb::models
