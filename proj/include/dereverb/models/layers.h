// Copyright 2026 The Dereverb Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

// Parameter bundles shared by several architectures.

#ifndef DEREVERB_MODELS_LAYERS_H_
#define DEREVERB_MODELS_LAYERS_H_

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dereverb/common/rng.h"
#include "dereverb/models/config.h"
#include "dereverb/nn/gru.h"
#include "dereverb/nn/parameter.h"
#include "dereverb/nn/tape.h"

namespace dereverb::models {

struct ConvParams {
  const nn::Parameter* kernel = nullptr;  // [kT x kF x Cin x Cout]
  const nn::Parameter* bias = nullptr;    // [Cout]
};

// Glorot kernel, zero bias, registered as <prefix>.kernel / <prefix>.bias.
ConvParams AddConv(nn::ParameterStore& store, const std::string& prefix,
                   size_t kt, size_t kf, size_t cin, size_t cout, Rng& rng);

// Same, for a transposed convolution producing `cout` channels from `cin`.
// The kernel is stored [kT x kF x cout x cin].
ConvParams AddConvTransposed(nn::ParameterStore& store,
                             const std::string& prefix, size_t kt, size_t kf,
                             size_t cin, size_t cout, Rng& rng);

struct LinearParams {
  const nn::Parameter* weight = nullptr;  // [in x out]
  const nn::Parameter* bias = nullptr;    // [out]
};

LinearParams AddLinear(nn::ParameterStore& store, const std::string& prefix,
                       size_t in, size_t out, Rng& rng);

nn::Var ApplyLinear(nn::Tape& tape, nn::Var x, const LinearParams& p);

// Valid stride-1 time-axis convolutions, one ConvParams per layer.
// Initial bias of a ReLU output layer. A small positive offset keeps
// output units from starting below the kink, where they would never move.
inline constexpr double kRectifiedOutputBias = 0.5;
void InitRectifiedOutput(nn::ParameterStore& store, const ConvParams& p);

std::vector<ConvParams> AddTimeConvStack(nn::ParameterStore& store,
                                         const std::string& prefix,
                                         std::span<const TimeConvLayer> layers,
                                         size_t first_layer_index,
                                         size_t in_channels, Rng& rng);

enum class Activation { kNone, kElu, kRelu };

nn::Var ApplyConv(nn::Tape& tape, nn::Var x, const ConvParams& p,
                  Activation act);

// Input projection to 2*hidden, `layers` Bi-GRU layers (each followed by a
// residual add when enabled), output projection to `out` features.
struct GruHeadParams {
  LinearParams input_proj;
  std::vector<std::pair<nn::GruParams, nn::GruParams>> layers;
  LinearParams output_proj;
  bool residual = true;
};

GruHeadParams AddGruHead(nn::ParameterStore& store, const std::string& prefix,
                         size_t in, size_t hidden, size_t layers, size_t out,
                         bool residual, Rng& rng);

// seq: [T x in] -> [T x out].
nn::Var ApplyGruHead(nn::Tape& tape, nn::Var seq, const GruHeadParams& p);

}  // namespace dereverb::models

#endif  // DEREVERB_MODELS_LAYERS_H_
