// Copyright 2026 The Dereverb Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef DEREVERB_CORPUS_EXAMPLE_H_
#define DEREVERB_CORPUS_EXAMPLE_H_

#include <cstdint>
#include <string>

#include "dereverb/common/array2d.h"

namespace dereverb::corpus {

// One supervised example. Spectrograms are [frames x bins].
struct TrainingExample {
  Array2D input_logmag;        // log of the normalized reverberant magnitude
  Array2D dry_target_logmag;   // log of the normalized aligned dry magnitude
  Array2D rir_target_mag;      // normalized RIR magnitude, first frames only
  Array2D reverb_target_mag;   // normalized reverberant magnitude
  // Max magnitudes each spectrogram was divided by.
  double input_scale = 0.0;
  double dry_scale = 0.0;
  double rir_scale = 0.0;
  double reverb_scale = 0.0;

  bool operator==(const TrainingExample&) const = default;
};

inline constexpr uint32_t kCacheVersion = 1;

// Cache layout, little-endian:
//   "DRVB", u32 version, u32 shape pairs (input, rir, reverb)  -- 32 bytes
//   f32 input, f32 dry (input shape), f32 rir, f32 reverb, f32 scales x4
// Values are stored at float32 precision.
void SaveExample(const TrainingExample& ex, const std::string& path);
// Throws IoFailure, ParseError (bad magic, truncation) or VersionMismatch.
TrainingExample LoadExample(const std::string& path);

// Rounds every stored value to float32, i.e. what a save/load round trip
// returns.
TrainingExample RoundToStorage(const TrainingExample& ex);

}  // namespace dereverb::corpus

#endif  // DEREVERB_CORPUS_EXAMPLE_H_
