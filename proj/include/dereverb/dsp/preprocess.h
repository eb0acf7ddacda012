// Copyright 2026 The Dereverb Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef DEREVERB_DSP_PREPROCESS_H_
#define DEREVERB_DSP_PREPROCESS_H_

#include <cstddef>
#include <utility>

#include "dereverb/dsp/audio.h"

namespace dereverb::dsp {

// Direct-path onset: first index with |h[i]| >= 0.1 * max|h| (-20 dB).
inline constexpr double kDirectPathThreshold = 0.1;
inline constexpr double kSilenceThresholdDb = -40.0;

size_t DetectDirectPathDelay(const AudioClip& rir);

// Drops everything before the first sample whose magnitude exceeds
// `threshold_db` relative to the clip peak. Returns the trimmed clip and the
// number of samples dropped; an all-silent clip trims to empty.
std::pair<AudioClip, size_t> TrimLeadingSilence(
    const AudioClip& clip, double threshold_db = kSilenceThresholdDb);

// Truncates or zero-pads the tail to exactly `target_len` samples.
AudioClip FixLength(const AudioClip& clip, size_t target_len);

// Prepends `delay` zeros.
AudioClip Delay(const AudioClip& clip, size_t delay);

// Drops the first `offset` samples (clamped to the clip length).
AudioClip DropLeading(const AudioClip& clip, size_t offset);

}  // namespace dereverb::dsp

#endif  // DEREVERB_DSP_PREPROCESS_H_
