// Copyright 2026 The Dereverb Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "dereverb/nn/adam.h"

#include <cmath>

#include "dereverb/common/error.h"

namespace dereverb::nn {

AdamState AdamState::ForParameters(const ParameterStore& params) {
  AdamState s;
  for (const auto& p : params) {
    s.m.emplace_back(p.value.shape());
    s.v.emplace_back(p.value.shape());
  }
  return s;
}

void AdamStep(ParameterStore& params, const Gradients& grads, AdamState& state,
              const AdamOptions& options) {
  if (grads.size() != params.size() || state.m.size() != params.size() ||
      state.v.size() != params.size()) {
    Fail(ErrorCode::kShapeMismatch, "Adam: parameter/gradient count mismatch");
  }
  for (size_t i = 0; i < params.size(); ++i) {
    const Shape& s = params[i].value.shape();
    if (grads[i].shape() != s || state.m[i].shape() != s ||
        state.v[i].shape() != s) {
      Fail(ErrorCode::kShapeMismatch,
           "Adam: shape mismatch for " + params[i].name);
    }
  }

  ++state.step;
  const double t = static_cast<double>(state.step);
  const double c1 = 1.0 - std::pow(options.beta1, t);
  const double c2 = 1.0 - std::pow(options.beta2, t);
  for (size_t i = 0; i < params.size(); ++i) {
    Tensor& theta = params[i].value;
    Tensor& m = state.m[i];
    Tensor& v = state.v[i];
    const Tensor& g = grads[i];
    for (size_t k = 0; k < theta.size(); ++k) {
      m[k] = options.beta1 * m[k] + (1.0 - options.beta1) * g[k];
      v[k] = options.beta2 * v[k] + (1.0 - options.beta2) * g[k] * g[k];
      const double m_hat = m[k] / c1;
      const double v_hat = v[k] / c2;
      theta[k] -= options.lr * m_hat / (std::sqrt(v_hat) + options.eps);
    }
  }
}

}  // namespace dereverb::nn
