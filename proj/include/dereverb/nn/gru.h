// Copyright 2026 The Dereverb Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef DEREVERB_NN_GRU_H_
#define DEREVERB_NN_GRU_H_

#include <string>

#include "dereverb/common/rng.h"
#include "dereverb/nn/parameter.h"
#include "dereverb/nn/tape.h"

namespace dereverb::nn {

// Weights of one GRU direction. Gate blocks are laid out [z | r | n] along
// the last axis:
//   input  [Din x 3H]
//   recurrent [H x 3H]
//   bias   [3H]
struct GruParams {
  const Parameter* input = nullptr;
  const Parameter* recurrent = nullptr;
  const Parameter* bias = nullptr;

  size_t input_size() const { return input->value.dim(0); }
  size_t hidden_size() const { return recurrent->value.dim(0); }
};

// Registers "<prefix>.input", "<prefix>.recurrent", "<prefix>.bias".
// Input blocks are Glorot-uniform, each recurrent block orthogonal, biases
// zero.
GruParams AddGruParams(ParameterStore& store, const std::string& prefix,
                       size_t input_size, size_t hidden_size, Rng& rng);

// One step of the standard GRU:
//   z = sigmoid(Wz x + Uz h + bz)
//   r = sigmoid(Wr x + Ur h + br)
//   n = tanh(Wn x + Un (r * h) + bn)
//   h' = (1 - z) * h + z * n
// x: [1 x Din], h_prev: [1 x H]; returns [1 x H].
Var GruCell(Var x, Var h_prev, const GruParams& params);

// Runs one direction over seq [T x Din] from a zero state; returns the
// hidden state at every step, [T x H], in input order.
Var GruSequence(Var seq, const GruParams& params, bool reverse);

// Forward pass left to right and backward pass right to left, concatenated
// per step: [T x 2H].
Var BiGruLayer(Var seq, const GruParams& forward, const GruParams& backward);

}  // namespace dereverb::nn

#endif  // DEREVERB_NN_GRU_H_
