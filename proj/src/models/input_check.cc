// Copyright 2026 The Dereverb Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "dereverb/models/input_check.h"

#include <string>

#include "dereverb/common/error.h"

namespace dereverb::models {

void CheckMatrix(const nn::Var& input, const char* who) {
  const nn::Shape& s = input.shape();
  if (s.size() != 2 || s[0] == 0 || s[1] == 0) {
    Fail(ErrorCode::kShapeMismatch, std::string(who) + ": input must be " +
                                        "[frames x bins], got " +
                                        nn::ShapeString(s));
  }
}

void CheckFrames(const nn::Var& input, size_t frames, const char* who) {
  CheckMatrix(input, who);
  if (input.shape()[0] != frames) {
    Fail(ErrorCode::kWrongFrameCount,
         std::string(who) + ": needs exactly " + std::to_string(frames) +
             " input frames, got " + std::to_string(input.shape()[0]));
  }
}

void CheckBins(const nn::Var& input, size_t bins, const char* who) {
  if (input.shape()[1] != bins) {
    Fail(ErrorCode::kShapeMismatch,
         std::string(who) + ": configured for " + std::to_string(bins) +
             " bins, got " + std::to_string(input.shape()[1]));
  }
}

}  // namespace dereverb::models
