// Copyright 2026 The Dereverb Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "dereverb/dsp/resample.h"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <vector>

#include "dereverb/common/error.h"

namespace dereverb::dsp {
namespace {

double Sinc(double x) {
  if (x == 0.0) return 1.0;
  const double px = std::numbers::pi * x;
  return std::sin(px) / px;
}

}  // namespace

AudioClip Resample(const AudioClip& clip, int target_rate,
                   const ResamplerOptions& options) {
  if (target_rate <= 0 || clip.sample_rate <= 0) {
    Fail(ErrorCode::kInvalidArgument, "sample rates must be positive");
  }
  if (clip.sample_rate == target_rate) return clip;

  const int64_t g = std::gcd(clip.sample_rate, target_rate);
  const int64_t up = target_rate / g;
  const int64_t down = clip.sample_rate / g;
  const int64_t in_len = static_cast<int64_t>(clip.samples.size());
  const int64_t out_len = (in_len * up + down / 2) / down;

  // Cutoff relative to the input Nyquist; half-width in input samples.
  const double cutoff = std::min(1.0, static_cast<double>(up) / down);
  const double half_width = 0.5 * options.taps_per_phase / cutoff;
  const int64_t reach = static_cast<int64_t>(std::ceil(half_width));
  const int64_t taps = 2 * reach;
  const double i0_beta = std::cyl_bessel_i(0.0, options.kaiser_beta);

  // table[p * taps + i] weights input sample base + (i - reach + 1) for
  // output phase p (fractional input position p / up).
  std::vector<double> table(static_cast<size_t>(up * taps), 0.0);
  for (int64_t p = 0; p < up; ++p) {
    const double frac = static_cast<double>(p) / up;
    double sum = 0.0;
    for (int64_t i = 0; i < taps; ++i) {
      const double tau = frac - static_cast<double>(i - reach + 1);
      const double x = tau / half_width;
      double w = 0.0;
      if (std::abs(x) < 1.0) {
        const double kaiser =
            std::cyl_bessel_i(0.0, options.kaiser_beta * std::sqrt(1.0 - x * x)) /
            i0_beta;
        w = cutoff * Sinc(cutoff * tau) * kaiser;
      }
      table[p * taps + i] = w;
      sum += w;
    }
    for (int64_t i = 0; i < taps; ++i) table[p * taps + i] /= sum;
  }

  AudioClip out;
  out.sample_rate = target_rate;
  out.samples.assign(static_cast<size_t>(out_len), 0.0);
  for (int64_t k = 0; k < out_len; ++k) {
    const int64_t pos = k * down;
    const int64_t base = pos / up;
    const int64_t phase = pos % up;
    const double* w = table.data() + phase * taps;
    double acc = 0.0;
    for (int64_t i = 0; i < taps; ++i) {
      const int64_t j = base + i - reach + 1;
      if (j >= 0 && j < in_len) acc += w[i] * clip.samples[j];
    }
    out.samples[k] = acc;
  }
  return out;
}

}  // namespace dereverb::dsp
