// Copyright 2026 The Dereverb Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef DEREVERB_NN_ADAM_H_
#define DEREVERB_NN_ADAM_H_

#include <cstdint>
#include <vector>

#include "dereverb/nn/parameter.h"

namespace dereverb::nn {

struct AdamOptions {
  double lr = 1e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

// First and second moment estimates, one pair per parameter.
struct AdamState {
  std::vector<Tensor> m;
  std::vector<Tensor> v;
  int64_t step = 0;

  static AdamState ForParameters(const ParameterStore& params);
  bool operator==(const AdamState&) const = default;
};

// One bias-corrected Adam update. The step counter is incremented before
// the update, so the first call uses t = 1. The learning rate is constant;
// there is no schedule beyond Adam's own moment scaling.
void AdamStep(ParameterStore& params, const Gradients& grads, AdamState& state,
              const AdamOptions& options);

}  // namespace dereverb::nn

#endif  // DEREVERB_NN_ADAM_H_
