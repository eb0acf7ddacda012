// Copyright 2026 The Dereverb Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "dereverb/dsp/stft.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "dereverb/common/error.h"
#include "dereverb/dsp/fft.h"

namespace dereverb::dsp {
namespace {

std::vector<double> PeriodicHann(int n) {
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i) {
    w[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * i / n);
  }
  return w;
}

// Reflection about the end samples (no edge repeat), folded as often as
// needed so that signals shorter than the pad still work.
size_t ReflectIndex(long i, long n) {
  if (n == 1) return 0;
  const long period = 2 * (n - 1);
  long m = i % period;
  if (m < 0) m += period;
  return static_cast<size_t>(m < n ? m : period - m);
}

void CheckFraming(int frame_len, int hop) {
  if (frame_len <= 0 || hop <= 0 || frame_len % 2 != 0) {
    Fail(ErrorCode::kInvalidArgument,
         "frame length must be positive and even, hop positive");
  }
}

}  // namespace

size_t StftFrameCount(size_t num_samples, int hop) {
  return 1 + num_samples / static_cast<size_t>(hop);
}

ComplexSpectrogram Stft(const AudioClip& clip, int frame_len, int hop) {
  CheckFraming(frame_len, hop);
  if (clip.samples.empty()) {
    Fail(ErrorCode::kEmptyAudio, "STFT of an empty clip");
  }
  const long n = static_cast<long>(clip.samples.size());
  const long pad = frame_len / 2;
  const size_t frames = StftFrameCount(clip.samples.size(), hop);
  const size_t bins = static_cast<size_t>(frame_len / 2 + 1);

  ComplexSpectrogram spec;
  spec.re = Array2D(frames, bins);
  spec.im = Array2D(frames, bins);
  spec.frame_len = frame_len;
  spec.hop = hop;
  spec.sample_rate = clip.sample_rate;

  const std::vector<double> window = PeriodicHann(frame_len);
  RealFft fft(static_cast<size_t>(frame_len));
  std::vector<double> frame(frame_len);
  std::vector<std::complex<double>> out(bins);
  for (size_t t = 0; t < frames; ++t) {
    const long start = static_cast<long>(t) * hop - pad;
    for (int i = 0; i < frame_len; ++i) {
      frame[i] = clip.samples[ReflectIndex(start + i, n)] * window[i];
    }
    fft.Forward(frame, out);
    for (size_t k = 0; k < bins; ++k) {
      spec.re(t, k) = out[k].real();
      spec.im(t, k) = out[k].imag();
    }
  }
  return spec;
}

AudioClip Istft(const ComplexSpectrogram& spec, std::optional<size_t> length) {
  const int frame_len = spec.frame_len;
  const int hop = spec.hop;
  CheckFraming(frame_len, hop);
  if (frame_len % hop != 0 || frame_len / hop < 2) {
    Fail(ErrorCode::kNonColaParams,
         "Hann overlap-add needs hop to divide frame length at least twice");
  }
  const size_t bins = static_cast<size_t>(frame_len / 2 + 1);
  if (spec.bins() != bins || spec.im.rows() != spec.re.rows() ||
      spec.im.cols() != spec.re.cols() || spec.frames() == 0) {
    Fail(ErrorCode::kShapeMismatch, "spectrogram does not match frame length");
  }

  const size_t frames = spec.frames();
  const size_t pad = static_cast<size_t>(frame_len / 2);
  const size_t padded_len = (frames - 1) * hop + frame_len;
  std::vector<double> acc(padded_len, 0.0), envelope(padded_len, 0.0);

  const std::vector<double> window = PeriodicHann(frame_len);
  RealFft fft(static_cast<size_t>(frame_len));
  std::vector<std::complex<double>> in(bins);
  std::vector<double> frame(frame_len);
  const double inv_n = 1.0 / frame_len;
  for (size_t t = 0; t < frames; ++t) {
    for (size_t k = 0; k < bins; ++k) in[k] = {spec.re(t, k), spec.im(t, k)};
    fft.Inverse(in, frame);
    const size_t start = t * hop;
    for (int i = 0; i < frame_len; ++i) {
      acc[start + i] += frame[i] * inv_n * window[i];
      envelope[start + i] += window[i] * window[i];
    }
  }

  const size_t out_len = length.value_or((frames - 1) * hop);
  AudioClip clip;
  clip.sample_rate = spec.sample_rate;
  clip.samples.assign(out_len, 0.0);
  for (size_t i = 0; i < out_len && i + pad < padded_len; ++i) {
    const double e = envelope[i + pad];
    clip.samples[i] = e > 1e-10 ? acc[i + pad] / e : 0.0;
  }
  return clip;
}

MagSpectrogram Magnitude(const ComplexSpectrogram& spec) {
  MagSpectrogram out;
  out.mag = Array2D(spec.frames(), spec.bins());
  auto& m = out.mag.data();
  const auto& re = spec.re.data();
  const auto& im = spec.im.data();
  for (size_t i = 0; i < m.size(); ++i) m[i] = std::hypot(re[i], im[i]);
  return out;
}

Array2D LogMagnitude(const Array2D& mag, double floor) {
  Array2D out(mag.rows(), mag.cols());
  for (size_t i = 0; i < mag.size(); ++i) {
    out.data()[i] = std::log(std::max(mag.data()[i], floor));
  }
  return out;
}

MagSpectrogram NormalizeSpectrogram(const Array2D& mag) {
  MagSpectrogram out;
  out.mag = mag;
  double peak = 0.0;
  for (double v : mag.data()) {
    if (v < 0.0) Fail(ErrorCode::kInvalidArgument, "negative magnitude");
    peak = std::max(peak, v);
  }
  if (peak == 0.0) return out;
  out.scale = peak;
  for (double& v : out.mag.data()) v /= peak;
  return out;
}

Array2D Denormalize(const MagSpectrogram& spec) {
  if (spec.scale == 0.0) return spec.mag;
  Array2D out = spec.mag;
  for (double& v : out.data()) v *= spec.scale;
  return out;
}

}  // namespace dereverb::dsp
