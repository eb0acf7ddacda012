// Copyright 2026 The Dereverb Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef DEREVERB_DSP_RESAMPLE_H_
#define DEREVERB_DSP_RESAMPLE_H_

#include "dereverb/dsp/audio.h"

namespace dereverb::dsp {

struct ResamplerOptions {
  double kaiser_beta = 8.6;
  // Filter span in zero crossings of the lower of the two rates.
  int taps_per_phase = 32;
};

// Rational-ratio polyphase resampler with a Kaiser-windowed sinc lowpass at
// the lower Nyquist frequency. Output length is round(len * target / source).
// Each phase is normalized to unit DC gain.
AudioClip Resample(const AudioClip& clip, int target_rate,
                   const ResamplerOptions& options = {});

}  // namespace dereverb::dsp

#endif  // DEREVERB_DSP_RESAMPLE_H_
