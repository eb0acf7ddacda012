// Copyright 2026 The Dereverb Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "dereverb/models/tiny.h"

#include <cmath>
#include <random>

#include "dereverb/corpus/synth.h"
#include "dereverb/models/loss.h"

namespace dereverb::models {

ExampleShape TinyExampleShape(ModelKind kind) {
  switch (kind) {
    case ModelKind::kRir:
    case ModelKind::kJoint: {
      const RirEstimatorConfig c = DefaultRirConfig(Scale::kTiny);
      return {c.InputFrames(), kTinyBins, c.OutputFrames()};
    }
    case ModelKind::kDryGru: return {6, kTinyBins, 1};
    case ModelKind::kDryUnet: return {16, 16, 1};
  }
  return {};
}

corpus::TrainingExample RandomExample(const ExampleShape& shape, Rng& rng) {
  std::uniform_real_distribution<double> logmag(-4.0, 0.0), mag(0.0, 1.0);
  auto fill = [&](size_t rows, auto& dist) {
    Array2D a(rows, shape.bins);
    for (double& v : a.data()) v = dist(rng);
    return a;
  };
  corpus::TrainingExample ex;
  ex.input_logmag = fill(shape.frames, logmag);
  ex.dry_target_logmag = fill(shape.frames, logmag);
  ex.rir_target_mag = fill(shape.rir_frames, mag);
  ex.reverb_target_mag = fill(shape.frames, mag);
  ex.input_scale = ex.dry_scale = ex.rir_scale = ex.reverb_scale = 1.0;
  return ex;
}

corpus::TrainingExample SynthesizedTinyExample(uint64_t seed) {
  Rng rng(StreamSeed(seed, "tiny-example"));
  std::normal_distribution<double> noise(0.0, 0.3);
  dsp::AudioClip dry, rir;
  dry.samples.resize(48);
  for (double& v : dry.samples) v = noise(rng);
  rir.samples.resize(12);
  for (size_t i = 0; i < rir.samples.size(); ++i) {
    rir.samples[i] = (i == 0 ? 1.0 : noise(rng)) * std::exp(-0.3 * i);
  }
  return corpus::Synthesize(dry, rir, corpus::TinySynthOptions()).example;
}

nn::GradCheckResult TinyModelGradCheck(ModelKind kind, uint64_t seed,
                                       const LossWeights& weights) {
  std::unique_ptr<Model> model = MakeModel(kind, Scale::kTiny, seed);
  Rng rng(StreamSeed(seed, "gradcheck-example"));
  const corpus::TrainingExample ex = RandomExample(TinyExampleShape(kind), rng);
  const nn::Tensor input = ToTensor(ex.input_logmag);
  // Zero biases put ReLU units exactly on the kink; a small random offset
  // moves them off it.
  std::uniform_real_distribution<double> offset(-0.1, 0.1);
  for (auto& p : model->params()) {
    if (p.name.ends_with(".bias")) {
      for (double& v : p.value.values()) v = offset(rng);
    }
  }
  nn::GradCheckOptions opts;
  opts.seed = seed;
  opts.eps = 1e-1;
  opts.ridders = true;
  return nn::GradCheck(
      model->params(),
      [&](nn::Tape& tape) {
        Prediction pred = model->Forward(tape, tape.Constant(input));
        return ComputeLoss(tape, kind, pred, ex, weights).total;
      },
      opts);
}

}  // namespace dereverb::models
