// Copyright 2026 The Dereverb Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "dereverb/nn/grad_check.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <vector>

#include "dereverb/common/rng.h"

namespace dereverb::nn {
namespace {

double Evaluate(const LossBuilder& loss) {
  Tape tape;
  return loss(tape).value()[0];
}

constexpr int kRiddersSteps = 10;
constexpr int kRiddersStarts = 4;

struct Estimate {
  double value = 0.0;
  double error = 0.0;
};

// Neville tableau of central differences at steps h, h/1.4, h/1.4^2, ...
// extrapolated to zero step; stops once higher orders stop improving.
Estimate RiddersFrom(const std::function<double(double)>& central, double h) {
  constexpr double kShrink = 1.4;
  constexpr double kShrink2 = kShrink * kShrink;
  constexpr double kSafe = 2.0;
  double table[kRiddersSteps][kRiddersSteps];
  table[0][0] = central(h);
  double best = table[0][0];
  double err = std::numeric_limits<double>::max();
  for (int i = 1; i < kRiddersSteps; ++i) {
    h /= kShrink;
    table[0][i] = central(h);
    double fac = kShrink2;
    for (int j = 1; j <= i; ++j) {
      table[j][i] = (table[j - 1][i] * fac - table[j - 1][i - 1]) / (fac - 1.0);
      fac *= kShrink2;
      const double e = std::max(std::abs(table[j][i] - table[j - 1][i]),
                                std::abs(table[j][i] - table[j - 1][i - 1]));
      if (e <= err) {
        err = e;
        best = table[j][i];
      }
    }
    if (std::abs(table[i][i] - table[i - 1][i - 1]) >= kSafe * err) break;
  }
  return {best, err};
}

// Smooth losses favour large steps and kinks favour small ones, so the
// tableau is started at several scales and the estimate with the smallest
// internal error wins.
double Ridders(const std::function<double(double)>& central, double h) {
  Estimate best = RiddersFrom(central, h);
  for (int k = 1; k < kRiddersStarts; ++k) {
    h /= 10.0;
    const Estimate e = RiddersFrom(central, h);
    if (e.error < best.error) best = e;
  }
  return best.value;
}

}  // namespace

GradCheckResult GradCheck(ParameterStore& params, const LossBuilder& loss,
                          const GradCheckOptions& options) {
  Gradients analytic;
  {
    Tape tape;
    Var l = loss(tape);
    tape.Backward(l);
    analytic = tape.ParamGradients(params);
  }

  Rng rng(options.seed);
  GradCheckResult result;
  for (size_t p = 0; p < params.size(); ++p) {
    Tensor& value = params[p].value;
    std::vector<size_t> indices(value.size());
    std::iota(indices.begin(), indices.end(), 0);
    if (options.max_elements_per_param > 0 &&
        indices.size() > options.max_elements_per_param) {
      std::shuffle(indices.begin(), indices.end(), rng);
      indices.resize(options.max_elements_per_param);
      std::sort(indices.begin(), indices.end());
    }
    for (size_t k : indices) {
      const double saved = value[k];
      auto central = [&](double h) {
        value[k] = saved + h;
        const double up = Evaluate(loss);
        value[k] = saved - h;
        const double down = Evaluate(loss);
        value[k] = saved;
        return (up - down) / (2.0 * h);
      };
      const double numeric =
          options.ridders ? Ridders(central, options.eps) : central(options.eps);
      const double a = analytic[p][k];
      const double denom = std::max({std::abs(a), std::abs(numeric), options.denominator_floor});
      const double rel = std::abs(a - numeric) / denom;
      ++result.checked;
      if (rel > result.max_rel_error || result.worst_param.empty()) {
        result.max_rel_error = std::max(rel, result.max_rel_error);
        if (rel >= result.max_rel_error) {
          result.worst_param = params[p].name;
          result.worst_index = k;
          result.worst_analytic = a;
          result.worst_numeric = numeric;
        }
      }
    }
  }
  return result;
}

}  // namespace dereverb::nn
