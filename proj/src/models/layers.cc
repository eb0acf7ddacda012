// Copyright 2026 The Dereverb Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "dereverb/models/layers.h"

#include "dereverb/nn/init.h"
#include "dereverb/nn/ops.h"

namespace dereverb::models {

using nn::Tensor;
using nn::Var;

ConvParams AddConv(nn::ParameterStore& store, const std::string& prefix,
                   size_t kt, size_t kf, size_t cin, size_t cout, Rng& rng) {
  ConvParams p;
  p.kernel = &store.Add(prefix + ".kernel",
                        nn::GlorotUniform({kt, kf, cin, cout}, kt * kf * cin,
                                          kt * kf * cout, rng));
  p.bias = &store.Add(prefix + ".bias", Tensor({cout}));
  return p;
}

ConvParams AddConvTransposed(nn::ParameterStore& store,
                             const std::string& prefix, size_t kt, size_t kf,
                             size_t cin, size_t cout, Rng& rng) {
  ConvParams p;
  p.kernel = &store.Add(prefix + ".kernel",
                        nn::GlorotUniform({kt, kf, cout, cin}, kt * kf * cin,
                                          kt * kf * cout, rng));
  p.bias = &store.Add(prefix + ".bias", Tensor({cout}));
  return p;
}

LinearParams AddLinear(nn::ParameterStore& store, const std::string& prefix,
                       size_t in, size_t out, Rng& rng) {
  LinearParams p;
  p.weight = &store.Add(prefix + ".weight",
                        nn::GlorotUniform({in, out}, in, out, rng));
  p.bias = &store.Add(prefix + ".bias", Tensor({out}));
  return p;
}

Var ApplyLinear(nn::Tape& tape, Var x, const LinearParams& p) {
  return nn::Linear(x, tape.Param(*p.weight), tape.Param(*p.bias));
}

std::vector<ConvParams> AddTimeConvStack(nn::ParameterStore& store,
                                         const std::string& prefix,
                                         std::span<const TimeConvLayer> layers,
                                         size_t first_layer_index,
                                         size_t in_channels, Rng& rng) {
  std::vector<ConvParams> out;
  size_t cin = in_channels;
  for (size_t i = 0; i < layers.size(); ++i) {
    out.push_back(AddConv(store,
                          prefix + std::to_string(first_layer_index + i),
                          layers[i].kernel_frames, 1, cin, layers[i].channels,
                          rng));
    cin = layers[i].channels;
  }
  return out;
}

void InitRectifiedOutput(nn::ParameterStore& store, const ConvParams& p) {
  for (double& v : store.Get(p.bias->name).value.values()) {
    v = kRectifiedOutputBias;
  }
}

Var ApplyConv(nn::Tape& tape, Var x, const ConvParams& p, Activation act) {
  Var y = nn::Conv2d(x, tape.Param(*p.kernel), tape.Param(*p.bias));
  switch (act) {
    case Activation::kElu: return nn::Elu(y);
    case Activation::kRelu: return nn::Relu(y);
    case Activation::kNone: break;
  }
  return y;
}

GruHeadParams AddGruHead(nn::ParameterStore& store, const std::string& prefix,
                         size_t in, size_t hidden, size_t layers, size_t out,
                         bool residual, Rng& rng) {
  GruHeadParams p;
  p.residual = residual;
  p.input_proj = AddLinear(store, prefix + ".in", in, 2 * hidden, rng);
  for (size_t l = 0; l < layers; ++l) {
    const std::string name = prefix + ".gru" + std::to_string(l);
    nn::GruParams fwd = nn::AddGruParams(store, name + ".fwd", 2 * hidden,
                                         hidden, rng);
    nn::GruParams bwd = nn::AddGruParams(store, name + ".bwd", 2 * hidden,
                                         hidden, rng);
    p.layers.emplace_back(fwd, bwd);
  }
  p.output_proj = AddLinear(store, prefix + ".out", 2 * hidden, out, rng);
  return p;
}

Var ApplyGruHead(nn::Tape& tape, Var seq, const GruHeadParams& p) {
  Var h = ApplyLinear(tape, seq, p.input_proj);
  for (const auto& [fwd, bwd] : p.layers) {
    Var y = nn::BiGruLayer(h, fwd, bwd);
    h = p.residual ? nn::Add(h, y) : y;
  }
  return ApplyLinear(tape, h, p.output_proj);
}

}  // namespace dereverb::models
