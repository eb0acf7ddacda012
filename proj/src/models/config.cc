// Copyright 2026 The Dereverb Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "dereverb/models/config.h"

#include <string>

#include "dereverb/common/error.h"

namespace dereverb::models {
namespace {

using nlohmann::json;

std::vector<TimeConvLayer> WithChannels(const std::vector<size_t>& kernels,
                                        const std::vector<size_t>& channels) {
  std::vector<TimeConvLayer> out;
  for (size_t i = 0; i < kernels.size(); ++i) {
    out.push_back({kernels[i], channels[i]});
  }
  return out;
}

const std::vector<size_t> kPaperKernels = {9, 14, 27, 27, 27, 28, 187};

template <typename T>
void Read(const json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(0, std::string("config key '") + key + "': " + e.what());
  }
}

void Require(bool ok, const std::string& what) {
  if (!ok) Fail(ErrorCode::kInvalidArgument, what);
}

}  // namespace

std::string_view ModelKindName(ModelKind kind) {
  switch (kind) {
    case ModelKind::kRir: return "rir";
    case ModelKind::kDryGru: return "dry-gru";
    case ModelKind::kDryUnet: return "dry-unet";
    case ModelKind::kJoint: return "joint";
  }
  return "?";
}

ModelKind ParseModelKind(std::string_view name) {
  for (ModelKind k : {ModelKind::kRir, ModelKind::kDryGru,
                      ModelKind::kDryUnet, ModelKind::kJoint}) {
    if (ModelKindName(k) == name) return k;
  }
  Fail(ErrorCode::kInvalidArgument,
       "unknown model kind '" + std::string(name) +
           "' (expected rir, dry-gru, dry-unet or joint)");
}

std::string_view ScaleName(Scale scale) {
  switch (scale) {
    case Scale::kTiny: return "tiny";
    case Scale::kDesk: return "desk";
    case Scale::kPaper: return "paper";
  }
  return "?";
}

Scale ParseScale(std::string_view name) {
  for (Scale s : {Scale::kTiny, Scale::kDesk, Scale::kPaper}) {
    if (ScaleName(s) == name) return s;
  }
  Fail(ErrorCode::kInvalidArgument,
       "unknown scale '" + std::string(name) + "' (expected tiny, desk or paper)");
}

size_t RirEstimatorConfig::InputFrames() const {
  size_t frames = 1;
  for (const auto& l : layers) frames += l.kernel_frames - 1;
  return frames;
}

std::vector<size_t> RirEstimatorConfig::FrameChain() const {
  std::vector<size_t> chain = {InputFrames()};
  for (const auto& l : layers) chain.push_back(chain.back() - l.kernel_frames + 1);
  return chain;
}

void ValidateWeights(const LossWeights& w) {
  Require(w.dry >= 0 && w.rir >= 0 && w.rec >= 0,
          "loss weights must be non-negative");
  Require(w.dry + w.rir + w.rec > 0, "loss weights must not all be zero");
}

RirEstimatorConfig PaperRirConfig() {
  return {WithChannels(kPaperKernels, {16, 32, 64, 32, 16, 4, 126})};
}

RirEstimatorConfig DefaultRirConfig(Scale scale) {
  switch (scale) {
    case Scale::kTiny: return {WithChannels({3, 3, 3, 3}, {2, 2, 2, 4})};
    case Scale::kDesk:
      return {WithChannels(kPaperKernels, {4, 8, 8, 8, 4, 4, 126})};
    case Scale::kPaper: return PaperRirConfig();
  }
  return {};
}

DryGruConfig DefaultDryGruConfig(Scale scale) {
  switch (scale) {
    case Scale::kTiny: return {2, 4, true, kTinyBins};
    case Scale::kDesk: return {3, 64, true, 257};
    case Scale::kPaper: return {3, 380, true, 257};
  }
  return {};
}

UnetConfig DefaultUnetConfig(Scale scale) {
  if (scale == Scale::kTiny) return {2, 2};
  return {4, 8};
}

JointConfig DefaultJointConfig(Scale scale) {
  JointConfig c;
  c.conv = DefaultRirConfig(scale);
  c.trunk_layers = 2;
  const DryGruConfig gru = DefaultDryGruConfig(scale);
  c.gru_layers = gru.layers;
  c.gru_hidden = gru.hidden;
  c.bins = gru.bins;
  if (scale == Scale::kTiny) c.gru_hidden = 4;
  return c;
}

void Validate(const RirEstimatorConfig& c) {
  Require(!c.layers.empty(), "conv stack is empty");
  for (const auto& l : c.layers) {
    Require(l.kernel_frames >= 1 && l.channels >= 1,
            "conv layers need kernel_frames >= 1 and channels >= 1");
  }
}

void Validate(const DryGruConfig& c) {
  Require(c.layers >= 1 && c.hidden >= 1 && c.bins >= 1,
          "dry-gru needs layers, hidden and bins >= 1");
}

void Validate(const UnetConfig& c) {
  Require(c.depth >= 1 && c.depth <= 8, "unet depth must be in [1, 8]");
  Require(c.base_channels >= 1, "unet base_channels must be >= 1");
}

void Validate(const JointConfig& c) {
  Validate(c.conv);
  Require(c.trunk_layers >= 1 && c.trunk_layers < c.conv.layers.size(),
          "joint trunk must leave at least one RIR head layer");
  Require(c.gru_layers >= 1 && c.gru_hidden >= 1 && c.bins >= 1,
          "joint dry head needs gru_layers, gru_hidden and bins >= 1");
  ValidateWeights(c.weights);
}

json ToJson(const RirEstimatorConfig& c) {
  json layers = json::array();
  for (const auto& l : c.layers) layers.push_back({l.kernel_frames, l.channels});
  return {{"layers", layers}};
}

json ToJson(const DryGruConfig& c) {
  return {{"layers", c.layers},
          {"hidden", c.hidden},
          {"residual", c.residual},
          {"bins", c.bins}};
}

json ToJson(const UnetConfig& c) {
  return {{"depth", c.depth}, {"base_channels", c.base_channels}};
}

json ToJson(const LossWeights& w) {
  return {{"dry", w.dry}, {"rir", w.rir}, {"rec", w.rec}};
}

json ToJson(const JointConfig& c) {
  return {{"conv", ToJson(c.conv)},     {"trunk_layers", c.trunk_layers},
          {"gru_layers", c.gru_layers}, {"gru_hidden", c.gru_hidden},
          {"bins", c.bins},             {"weights", ToJson(c.weights)}};
}

RirEstimatorConfig RirConfigFromJson(const json& j) {
  if (!j.contains("layers")) return DefaultRirConfig(Scale::kDesk);
  RirEstimatorConfig c;
  std::vector<std::vector<size_t>> layers;
  Read(j, "layers", layers);
  for (const auto& l : layers) {
    if (l.size() != 2) throw ParseError(0, "conv layer must be [kernel, channels]");
    c.layers.push_back({l[0], l[1]});
  }
  Validate(c);
  return c;
}

DryGruConfig DryGruConfigFromJson(const json& j) {
  DryGruConfig c;
  Read(j, "layers", c.layers);
  Read(j, "hidden", c.hidden);
  Read(j, "residual", c.residual);
  Read(j, "bins", c.bins);
  Validate(c);
  return c;
}

UnetConfig UnetConfigFromJson(const json& j) {
  UnetConfig c;
  Read(j, "depth", c.depth);
  Read(j, "base_channels", c.base_channels);
  Validate(c);
  return c;
}

LossWeights WeightsFromJson(const json& j) {
  LossWeights w;
  Read(j, "dry", w.dry);
  Read(j, "rir", w.rir);
  Read(j, "rec", w.rec);
  ValidateWeights(w);
  return w;
}

JointConfig JointConfigFromJson(const json& j) {
  JointConfig c;
  if (j.contains("conv")) c.conv = RirConfigFromJson(j.at("conv"));
  else c.conv = DefaultRirConfig(Scale::kDesk);
  Read(j, "trunk_layers", c.trunk_layers);
  Read(j, "gru_layers", c.gru_layers);
  Read(j, "gru_hidden", c.gru_hidden);
  Read(j, "bins", c.bins);
  if (j.contains("weights")) c.weights = WeightsFromJson(j.at("weights"));
  Validate(c);
  return c;
}

json DefaultConfigJson(ModelKind kind, Scale scale) {
  switch (kind) {
    case ModelKind::kRir: return ToJson(DefaultRirConfig(scale));
    case ModelKind::kDryGru: return ToJson(DefaultDryGruConfig(scale));
    case ModelKind::kDryUnet: return ToJson(DefaultUnetConfig(scale));
    case ModelKind::kJoint: return ToJson(DefaultJointConfig(scale));
  }
  return {};
}

}  // namespace dereverb::models
