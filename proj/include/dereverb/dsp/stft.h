// Copyright 2026 The Dereverb Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef DEREVERB_DSP_STFT_H_
#define DEREVERB_DSP_STFT_H_

#include <optional>

#include "dereverb/common/array2d.h"
#include "dereverb/dsp/audio.h"

namespace dereverb::dsp {

// 32 ms frames and 16 ms hop at 16 kHz.
inline constexpr int kFrameLength = 512;
inline constexpr int kHopLength = 256;
inline constexpr double kLogFloor = 1e-5;

// Frames x bins complex spectrogram; bins == frame_len / 2 + 1.
struct ComplexSpectrogram {
  Array2D re;
  Array2D im;
  int frame_len = kFrameLength;
  int hop = kHopLength;
  int sample_rate = kSampleRate;

  size_t frames() const { return re.rows(); }
  size_t bins() const { return re.cols(); }
};

// Non-negative magnitudes. `scale` is the maximum divided out by
// NormalizeSpectrogram, 0 when the array is unnormalized.
struct MagSpectrogram {
  Array2D mag;
  double scale = 0.0;
};

// Number of frames produced for `num_samples` input samples.
size_t StftFrameCount(size_t num_samples, int hop = kHopLength);

// Periodic-Hann STFT. The signal is reflect-padded by frame_len/2 on both
// sides, giving 1 + floor(len / hop) frames.
ComplexSpectrogram Stft(const AudioClip& clip, int frame_len = kFrameLength,
                        int hop = kHopLength);

// Weighted overlap-add inverse of Stft; removes the centre padding. The
// output has (frames - 1) * hop samples unless `length` is given. Throws
// NonColaParams unless hop divides frame_len at least twice over.
AudioClip Istft(const ComplexSpectrogram& spec,
                std::optional<size_t> length = std::nullopt);

MagSpectrogram Magnitude(const ComplexSpectrogram& spec);

// ln(max(mag, floor)).
Array2D LogMagnitude(const Array2D& mag, double floor = kLogFloor);

// Divides by the global maximum. An all-zero input is returned unchanged
// with scale 0.
MagSpectrogram NormalizeSpectrogram(const Array2D& mag);
Array2D Denormalize(const MagSpectrogram& spec);

}  // namespace dereverb::dsp

#endif  // DEREVERB_DSP_STFT_H_
