// Copyright 2026 The Dereverb Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "dereverb/nn/gru.h"

#include <vector>

#include "dereverb/common/error.h"
#include "dereverb/nn/init.h"
#include "dereverb/nn/ops.h"

namespace dereverb::nn {
namespace {

struct GateVars {
  Var uz, ur, un;  // recurrent blocks [H x H]
};

GateVars SplitRecurrent(Tape& tape, const GruParams& p) {
  const size_t h = p.hidden_size();
  Var u = tape.Param(*p.recurrent);
  return {SliceCols(u, 0, h), SliceCols(u, h, 2 * h), SliceCols(u, 2 * h, 3 * h)};
}

// Step given the input projections xz, xr, xn (each [1 x H], bias included).
Var Step(Var xz, Var xr, Var xn, Var h, const GateVars& g) {
  Var z = Sigmoid(Add(xz, MatMul(h, g.uz)));
  Var r = Sigmoid(Add(xr, MatMul(h, g.ur)));
  Var n = Tanh(Add(xn, MatMul(Mul(r, h), g.un)));
  return Add(h, Mul(z, Sub(n, h)));
}

void CheckParams(const GruParams& p) {
  const size_t h = p.recurrent->value.dim(0);
  if (p.recurrent->value.shape() != Shape{h, 3 * h} ||
      p.input->value.rank() != 2 || p.input->value.dim(1) != 3 * h ||
      p.bias->value.shape() != Shape{3 * h}) {
    Fail(ErrorCode::kShapeMismatch, "inconsistent GRU parameter shapes");
  }
}

}  // namespace

GruParams AddGruParams(ParameterStore& store, const std::string& prefix,
                       size_t input_size, size_t hidden_size, Rng& rng) {
  const size_t h = hidden_size;
  Tensor w({input_size, 3 * h});
  Tensor u({h, 3 * h});
  for (size_t gate = 0; gate < 3; ++gate) {
    Tensor wg = GlorotUniform({input_size, h}, input_size, h, rng);
    Tensor ug = Orthogonal(h, rng);
    for (size_t i = 0; i < input_size; ++i) {
      for (size_t j = 0; j < h; ++j) w[i * 3 * h + gate * h + j] = wg[i * h + j];
    }
    for (size_t i = 0; i < h; ++i) {
      for (size_t j = 0; j < h; ++j) u[i * 3 * h + gate * h + j] = ug[i * h + j];
    }
  }
  GruParams p;
  p.input = &store.Add(prefix + ".input", std::move(w));
  p.recurrent = &store.Add(prefix + ".recurrent", std::move(u));
  p.bias = &store.Add(prefix + ".bias", Tensor({3 * h}));
  return p;
}

Var GruCell(Var x, Var h_prev, const GruParams& params) {
  CheckParams(params);
  Tape& tape = *x.tape;
  const size_t h = params.hidden_size();
  if (x.shape() != Shape{1, params.input_size()} ||
      h_prev.shape() != Shape{1, h}) {
    Fail(ErrorCode::kShapeMismatch, "GruCell: x " + ShapeString(x.shape()) +
                                        ", h " + ShapeString(h_prev.shape()));
  }
  Var proj = Linear(x, tape.Param(*params.input), tape.Param(*params.bias));
  const GateVars g = SplitRecurrent(tape, params);
  return Step(SliceCols(proj, 0, h), SliceCols(proj, h, 2 * h),
              SliceCols(proj, 2 * h, 3 * h), h_prev, g);
}

Var GruSequence(Var seq, const GruParams& params, bool reverse) {
  CheckParams(params);
  Tape& tape = *seq.tape;
  const Tensor& sv = seq.value();
  if (sv.rank() != 2 || sv.dim(1) != params.input_size() || sv.dim(0) == 0) {
    Fail(ErrorCode::kShapeMismatch, "GruSequence: input " +
                                        ShapeString(sv.shape()) +
                                        " for input size " +
                                        std::to_string(params.input_size()));
  }
  const size_t steps = sv.dim(0);
  const size_t h = params.hidden_size();
  // Input projections for all steps at once.
  Var proj = Linear(seq, tape.Param(*params.input), tape.Param(*params.bias));
  Var pz = SliceCols(proj, 0, h);
  Var pr = SliceCols(proj, h, 2 * h);
  Var pn = SliceCols(proj, 2 * h, 3 * h);
  const GateVars g = SplitRecurrent(tape, params);

  std::vector<Var> states(steps);
  Var state = tape.Constant(Tensor({1, h}));
  for (size_t k = 0; k < steps; ++k) {
    const size_t t = reverse ? steps - 1 - k : k;
    state = Step(Row(pz, t), Row(pr, t), Row(pn, t), state, g);
    states[t] = state;
  }
  return StackRows(states);
}

Var BiGruLayer(Var seq, const GruParams& forward, const GruParams& backward) {
  return ConcatLast(GruSequence(seq, forward, false),
                    GruSequence(seq, backward, true));
}

}  // namespace dereverb::nn
