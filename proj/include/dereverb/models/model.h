// Copyright 2026 The Dereverb Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef DEREVERB_MODELS_MODEL_H_
#define DEREVERB_MODELS_MODEL_H_

#include <cstdint>
#include <memory>
#include <string>

#include "dereverb/models/config.h"
#include "dereverb/nn/parameter.h"
#include "dereverb/nn/tape.h"
#include "json.hpp"

namespace dereverb::models {

// Heads a model did not produce are left as invalid Vars.
struct Prediction {
  nn::Var dry_logmag;  // [T x F]
  nn::Var rir_mag;     // [R x F]
};

class Model {
 public:
  explicit Model(ModelKind kind) : kind_(kind) {}
  virtual ~Model() = default;
  Model(const Model&) = delete;
  Model& operator=(const Model&) = delete;

  ModelKind kind() const { return kind_; }
  nn::ParameterStore& params() { return params_; }
  const nn::ParameterStore& params() const { return params_; }

  // input: [T x F] log magnitude.
  virtual Prediction Forward(nn::Tape& tape, nn::Var input) const = 0;

  // Frame count the model requires, or 0 when any count works.
  virtual size_t RequiredFrames() const { return 0; }
  virtual nlohmann::json config_json() const = 0;
  // Human-readable layer listing.
  virtual std::string Describe() const = 0;

 protected:
  nn::ParameterStore params_;

 private:
  ModelKind kind_;
};

// Builds a freshly initialized model. Initialization draws from a stream
// derived from `seed`. Throws InvalidArgument / ParseError on bad configs.
std::unique_ptr<Model> MakeModel(ModelKind kind, const nlohmann::json& config,
                                 uint64_t seed);

std::unique_ptr<Model> MakeModel(ModelKind kind, Scale scale, uint64_t seed);

}  // namespace dereverb::models

#endif  // DEREVERB_MODELS_MODEL_H_
