// Copyright 2026 The Dereverb Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef DEREVERB_CORPUS_SYNTH_H_
#define DEREVERB_CORPUS_SYNTH_H_

#include <filesystem>

#include "dereverb/corpus/example.h"
#include "dereverb/dsp/audio.h"
#include "dereverb/dsp/stft.h"

namespace dereverb::corpus {

struct SynthOptions {
  int sample_rate = dsp::kSampleRate;
  size_t clip_samples = 80000;     // 5 s
  size_t min_rir_samples = 32000;  // RIRs zero-padded to at least 2 s
  int frame_len = dsp::kFrameLength;
  int hop = dsp::kHopLength;
  size_t rir_frames = 126;
  double log_floor = dsp::kLogFloor;
};

struct Synthesized {
  TrainingExample example;
  dsp::AudioClip dry;     // aligned, trimmed, fixed length
  dsp::AudioClip reverb;  // same offsets
};

// Resample both to the target rate, convolve, delay the dry signal by the
// RIR's direct-path delay, trim leading silence from it and cut the
// reverberant signal at the same offset, fix both lengths, then build the
// normalized spectrogram targets. Throws AllZeroRir, EmptyAfterTrim,
// InvalidArgument.
// Miniature geometry for tests: 32-sample clips, 8-sample frames, hop 4,
// giving 9x5 spectrograms and 4 RIR frames.
SynthOptions TinySynthOptions();

Synthesized Synthesize(const dsp::AudioClip& dry, const dsp::AudioClip& rir,
                       const SynthOptions& options = {});

// Same, reading both files.
Synthesized SynthesizeFiles(const std::filesystem::path& dry,
                            const std::filesystem::path& rir,
                            const SynthOptions& options = {});

}  // namespace dereverb::corpus

#endif  // DEREVERB_CORPUS_SYNTH_H_
