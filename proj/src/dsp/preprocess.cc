// Copyright 2026 The Dereverb Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "dereverb/dsp/preprocess.h"

#include <algorithm>
#include <cmath>

#include "dereverb/common/error.h"

namespace dereverb::dsp {
namespace {

double PeakAbs(const std::vector<double>& x) {
  double peak = 0.0;
  for (double v : x) peak = std::max(peak, std::abs(v));
  return peak;
}

}  // namespace

size_t DetectDirectPathDelay(const AudioClip& rir) {
  const double peak = PeakAbs(rir.samples);
  if (peak == 0.0) Fail(ErrorCode::kAllZeroRir, "RIR has no energy");
  const double threshold = kDirectPathThreshold * peak;
  for (size_t i = 0; i < rir.samples.size(); ++i) {
    if (std::abs(rir.samples[i]) >= threshold) return i;
  }
  return 0;  // unreachable: the peak itself passes
}

std::pair<AudioClip, size_t> TrimLeadingSilence(const AudioClip& clip,
                                                double threshold_db) {
  const double peak = PeakAbs(clip.samples);
  size_t offset = clip.samples.size();
  if (peak > 0.0) {
    const double threshold = peak * std::pow(10.0, threshold_db / 20.0);
    for (size_t i = 0; i < clip.samples.size(); ++i) {
      if (std::abs(clip.samples[i]) > threshold) {
        offset = i;
        break;
      }
    }
  }
  return {DropLeading(clip, offset), offset};
}

AudioClip FixLength(const AudioClip& clip, size_t target_len) {
  if (target_len == 0) {
    Fail(ErrorCode::kInvalidArgument, "target length must be positive");
  }
  AudioClip out = clip;
  out.samples.resize(target_len, 0.0);
  return out;
}

AudioClip Delay(const AudioClip& clip, size_t delay) {
  AudioClip out;
  out.sample_rate = clip.sample_rate;
  out.samples.assign(delay, 0.0);
  out.samples.insert(out.samples.end(), clip.samples.begin(),
                     clip.samples.end());
  return out;
}

AudioClip DropLeading(const AudioClip& clip, size_t offset) {
  AudioClip out;
  out.sample_rate = clip.sample_rate;
  offset = std::min(offset, clip.samples.size());
  out.samples.assign(clip.samples.begin() + static_cast<long>(offset),
                     clip.samples.end());
  return out;
}

}  // namespace dereverb::dsp
