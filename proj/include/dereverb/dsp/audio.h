// Copyright 2026 The Dereverb Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef DEREVERB_DSP_AUDIO_H_
#define DEREVERB_DSP_AUDIO_H_

#include <filesystem>
#include <vector>

namespace dereverb::dsp {

inline constexpr int kSampleRate = 16000;

// Mono waveform. Used for dry speech, room impulse responses and
// reverberant mixtures alike.
struct AudioClip {
  std::vector<double> samples;
  int sample_rate = kSampleRate;

  size_t size() const { return samples.size(); }
  double duration_s() const {
    return static_cast<double>(samples.size()) / sample_rate;
  }
  bool operator==(const AudioClip&) const = default;
};

enum class WavFormat { kPcm16, kFloat32 };

// Reads 16-bit PCM or 32-bit IEEE float RIFF/WAVE. Multi-channel files are
// averaged down to mono; PCM is scaled by 1/32768.
AudioClip ReadWav(const std::filesystem::path& path);

// Writes a mono RIFF/WAVE file. PCM16 output is clamped to [-1, 1] and
// rounded to the nearest code.
void WriteWav(const std::filesystem::path& path, const AudioClip& clip,
              WavFormat format);

}  // namespace dereverb::dsp

#endif  // DEREVERB_DSP_AUDIO_H_
