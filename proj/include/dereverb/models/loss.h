// Copyright 2026 The Dereverb Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef DEREVERB_MODELS_LOSS_H_
#define DEREVERB_MODELS_LOSS_H_

#include "dereverb/common/array2d.h"
#include "dereverb/corpus/example.h"
#include "dereverb/models/config.h"
#include "dereverb/models/model.h"
#include "dereverb/nn/tape.h"

namespace dereverb::models {

nn::Tensor ToTensor(const Array2D& a);
// Throws ShapeMismatch unless `t` is rank 2.
Array2D ToArray(const nn::Tensor& t);

// Per-frequency causal convolution of an RIR magnitude estimate [R x F]
// with a dry magnitude [T x F] along time; output [T x F]. Throws
// ShapeMismatch on rank or bin disagreement.
nn::Var ReconstructReverb(nn::Var rir_mag, nn::Var dry_mag);

struct LossValues {
  double total = 0.0;
  double dry = 0.0;
  double rir = 0.0;
  double rec = 0.0;

  bool operator==(const LossValues&) const = default;
};

struct Loss {
  nn::Var total;
  LossValues values;
};

// MSE terms against the example's targets. A standalone model's total is
// its single term; terms it has no head for stay 0. The joint total is the
// weighted sum; every term is still reported, and zero-weighted terms are
// kept out of the differentiated graph. Throws ShapeMismatch.
Loss ComputeLoss(nn::Tape& tape, ModelKind kind, const Prediction& pred,
                 const corpus::TrainingExample& example,
                 const LossWeights& weights);

}  // namespace dereverb::models

#endif  // DEREVERB_MODELS_LOSS_H_
