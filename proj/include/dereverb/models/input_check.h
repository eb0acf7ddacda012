// Copyright 2026 The Dereverb Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef DEREVERB_MODELS_INPUT_CHECK_H_
#define DEREVERB_MODELS_INPUT_CHECK_H_

#include "dereverb/nn/tape.h"

namespace dereverb::models {

// Throws ShapeMismatch unless `input` is [T x F] with T, F >= 1.
void CheckMatrix(const nn::Var& input, const char* who);

// Also throws WrongFrameCount unless T == frames.
void CheckFrames(const nn::Var& input, size_t frames, const char* who);

// Throws ShapeMismatch unless F == bins.
void CheckBins(const nn::Var& input, size_t bins, const char* who);

}  // namespace dereverb::models

#endif  // DEREVERB_MODELS_INPUT_CHECK_H_
