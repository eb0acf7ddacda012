// Copyright 2026 The Dereverb Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef DEREVERB_NN_GRAD_CHECK_H_
#define DEREVERB_NN_GRAD_CHECK_H_

#include <cstdint>
#include <functional>
#include <string>

#include "dereverb/nn/parameter.h"
#include "dereverb/nn/tape.h"

namespace dereverb::nn {

// Builds a scalar loss on the given tape, binding parameters from the store
// under test.
using LossBuilder = std::function<Var(Tape&)>;

struct GradCheckOptions {
  double eps = 1e-5;
  // Ridders' extrapolation over central differences, with tableaus started
  // at eps, eps/10, eps/100 and eps/1000; keeps the estimate with the
  // smallest internal error. Costs up to 80 evaluations per element.
  bool ridders = false;
  // Smallest denominator of the relative error. Components below it are
  // held to an absolute error of max_rel_error * denominator_floor.
  double denominator_floor = 1e-8;
  // 0 checks every element; otherwise at most this many per parameter,
  // chosen under `seed`.
  size_t max_elements_per_param = 0;
  uint64_t seed = 0;
};

struct GradCheckResult {
  double max_rel_error = 0.0;
  std::string worst_param;
  size_t worst_index = 0;
  double worst_analytic = 0.0;
  double worst_numeric = 0.0;
  size_t checked = 0;
};

// Central differences (f(p + eps) - f(p - eps)) / (2 eps), optionally
// Ridders-extrapolated, against the tape gradient, with relative error
// |a - n| / max(|a|, |n|, denominator_floor). Parameters are restored
// before returning.
GradCheckResult GradCheck(ParameterStore& params, const LossBuilder& loss,
                          const GradCheckOptions& options = {});

}  // namespace dereverb::nn

#endif  // DEREVERB_NN_GRAD_CHECK_H_
