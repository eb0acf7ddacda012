// Copyright 2026 The Dereverb Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "dereverb/corpus/synth.h"

#include <algorithm>

#include "dereverb/common/error.h"
#include "dereverb/dsp/convolve.h"
#include "dereverb/dsp/preprocess.h"
#include "dereverb/dsp/resample.h"

namespace dereverb::corpus {
namespace {

dsp::MagSpectrogram NormalizedMagnitude(const dsp::AudioClip& clip,
                                        const SynthOptions& o) {
  return dsp::NormalizeSpectrogram(
      dsp::Magnitude(dsp::Stft(clip, o.frame_len, o.hop)).mag);
}

}  // namespace

SynthOptions TinySynthOptions() {
  SynthOptions o;
  o.clip_samples = 32;
  o.min_rir_samples = 12;
  o.frame_len = 8;
  o.hop = 4;
  o.rir_frames = 4;
  return o;
}

Synthesized Synthesize(const dsp::AudioClip& dry_in,
                       const dsp::AudioClip& rir_in, const SynthOptions& o) {
  if (dry_in.samples.empty() || rir_in.samples.empty()) {
    Fail(ErrorCode::kInvalidArgument, "empty dry or RIR signal");
  }
  const dsp::AudioClip dry = dsp::Resample(dry_in, o.sample_rate);
  dsp::AudioClip rir = dsp::Resample(rir_in, o.sample_rate);
  const size_t delay = dsp::DetectDirectPathDelay(rir);

  dsp::AudioClip reverb;
  reverb.sample_rate = o.sample_rate;
  reverb.samples = dsp::ConvolveFft(dry.samples, rir.samples);
  auto [aligned, offset] = dsp::TrimLeadingSilence(dsp::Delay(dry, delay));
  if (aligned.samples.empty()) {
    Fail(ErrorCode::kEmptyAfterTrim, "dry signal is silent after trimming");
  }

  Synthesized out;
  out.dry = dsp::FixLength(aligned, o.clip_samples);
  out.reverb = dsp::FixLength(dsp::DropLeading(reverb, offset), o.clip_samples);
  rir = dsp::FixLength(rir, std::max(rir.size(), o.min_rir_samples));

  const dsp::MagSpectrogram input = NormalizedMagnitude(out.reverb, o);
  const dsp::MagSpectrogram target = NormalizedMagnitude(out.dry, o);
  const dsp::MagSpectrogram rir_mag = NormalizedMagnitude(rir, o);
  if (rir_mag.mag.rows() < o.rir_frames) {
    Fail(ErrorCode::kInvalidArgument, "RIR spectrogram shorter than rir_frames");
  }

  TrainingExample& ex = out.example;
  ex.input_logmag = dsp::LogMagnitude(input.mag, o.log_floor);
  ex.dry_target_logmag = dsp::LogMagnitude(target.mag, o.log_floor);
  ex.rir_target_mag = Array2D(o.rir_frames, rir_mag.mag.cols());
  std::copy_n(rir_mag.mag.data().begin(), ex.rir_target_mag.size(),
              ex.rir_target_mag.data().begin());
  ex.reverb_target_mag = input.mag;
  ex.input_scale = input.scale;
  ex.dry_scale = target.scale;
  ex.rir_scale = rir_mag.scale;
  ex.reverb_scale = input.scale;
  return out;
}

Synthesized SynthesizeFiles(const std::filesystem::path& dry,
                            const std::filesystem::path& rir,
                            const SynthOptions& options) {
  return Synthesize(dsp::ReadWav(dry), dsp::ReadWav(rir), options);
}

}  // namespace dereverb::corpus
