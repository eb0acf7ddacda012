// Copyright 2026 The Dereverb Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef DEREVERB_NN_OPS_H_
#define DEREVERB_NN_OPS_H_

#include <span>
#include <vector>

#include "dereverb/nn/tape.h"

namespace dereverb::nn {

// Elementwise; operands must have identical shapes.
Var Add(Var a, Var b);
Var Sub(Var a, Var b);
Var Mul(Var a, Var b);
Var Scale(Var a, double c);

Var Sigmoid(Var x);
Var Tanh(Var x);
Var Exp(Var x);
// alpha = 1
Var Elu(Var x);
Var Relu(Var x);

// x: [..., C], bias: [C].
Var AddBias(Var x, Var bias);
// a: [n x k], b: [k x m].
Var MatMul(Var a, Var b);
// x: [n x in], w: [in x out], b: [out].
Var Linear(Var x, Var w, Var b);

Var Sum(Var x);
// Mean of squared differences over all elements; scalar.
Var Mse(Var a, Var b);

Var Reshape(Var x, Shape shape);
// [n x m] -> [m x n]
Var Transpose(Var x);
// Concatenation along the last axis; leading extents must agree.
Var ConcatLast(std::span<const Var> parts);
Var ConcatLast(Var a, Var b);

// Row `i` of a 2-D tensor as [1 x m].
Var Row(Var x, size_t i);
// Columns [begin, end) of a 2-D tensor.
Var SliceCols(Var x, size_t begin, size_t end);
// Stacks [1 x m] rows into [n x m].
Var StackRows(std::span<const Var> rows);

// Zero padding / cropping of the first two axes of a [T x F x C] tensor.
Var PadTF(Var x, size_t t_before, size_t t_after, size_t f_before,
          size_t f_after);
Var CropTF(Var x, size_t t_begin, size_t t_len, size_t f_begin, size_t f_len);

enum class Padding { kValid, kSame };

struct Conv2dOptions {
  size_t stride_t = 1;
  size_t stride_f = 1;
  Padding padding = Padding::kValid;
};

// Cross-correlation. input: [T x F x Cin], kernel: [kT x kF x Cin x Cout],
// bias: [Cout] (pass an invalid Var for no bias). Output [T' x F' x Cout]
// with T' = (T - kT) / stride + 1 (valid) or ceil(T / stride) (same).
Var Conv2d(Var input, Var kernel, Var bias, const Conv2dOptions& options = {});

// Adjoint of a valid strided Conv2d with the same kernel tensor: input
// [T x F x Cout], kernel [kT x kF x Cin x Cout], output
// [(T-1)*sT + kT x (F-1)*sF + kF x Cin]. Bias (optional) is [Cin].
Var Conv2dTransposed(Var input, Var kernel, Var bias, size_t stride_t,
                     size_t stride_f);

// Per-column causal convolution along rows:
//   out[t, f] = sum_{tau=0}^{min(t, K-1)} kernel[tau, f] * signal[t - tau, f]
// kernel: [K x F], signal: [T x F], output [T x F].
Var CausalColumnConv(Var kernel, Var signal);

}  // namespace dereverb::nn

#endif  // DEREVERB_NN_OPS_H_
