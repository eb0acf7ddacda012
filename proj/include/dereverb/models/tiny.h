// Copyright 2026 The Dereverb Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

// Tiny configurations used for end-to-end gradient checks and overfitting.

#ifndef DEREVERB_MODELS_TINY_H_
#define DEREVERB_MODELS_TINY_H_

#include <cstdint>

#include "dereverb/common/rng.h"
#include "dereverb/corpus/example.h"
#include "dereverb/models/config.h"
#include "dereverb/models/model.h"
#include "dereverb/nn/grad_check.h"

namespace dereverb::models {

struct ExampleShape {
  size_t frames = 0;
  size_t bins = 0;
  size_t rir_frames = 0;
};

// Input/target extents a tiny model of `kind` is checked on.
ExampleShape TinyExampleShape(ModelKind kind);

// Random example: log-magnitudes in [-4, 0], magnitudes in [0, 1].
corpus::TrainingExample RandomExample(const ExampleShape& shape, Rng& rng);

// Physically consistent example from the tiny synthesis pipeline: a random
// dry burst convolved with a random exponentially decaying RIR.
corpus::TrainingExample SynthesizedTinyExample(uint64_t seed);

// Builds the tiny `kind` model and a random example, then compares the
// loss gradient of every parameter against Ridders-extrapolated central
// differences.
nn::GradCheckResult TinyModelGradCheck(ModelKind kind, uint64_t seed,
                                       const LossWeights& weights = {});

}  // namespace dereverb::models

#endif  // DEREVERB_MODELS_TINY_H_
