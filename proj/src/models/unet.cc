// Copyright 2026 The Dereverb Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <sstream>

#include "dereverb/models/architectures.h"
#include "dereverb/models/input_check.h"
#include "dereverb/nn/ops.h"

namespace dereverb::models {
namespace {

constexpr size_t kKernel = 4;
constexpr size_t kStride = 2;

// Channels of the encoder activation at `level` (level 0 is the input).
size_t SkipChannels(const UnetConfig& c, size_t level) {
  return level == 0 ? 1 : c.base_channels << (level - 1);
}

// Channels produced by the decoder at `level`.
size_t DecoderChannels(const UnetConfig& c, size_t level) {
  return level == 0 ? c.base_channels : c.base_channels << (level - 1);
}

}  // namespace

Unet::Unet(UnetConfig config, Rng& rng)
    : Model(ModelKind::kDryUnet), config_(config) {
  Validate(config_);
  for (size_t l = 0; l < config_.depth; ++l) {
    encoder_.push_back(AddConv(params_, "enc" + std::to_string(l), kKernel,
                               kKernel, SkipChannels(config_, l),
                               SkipChannels(config_, l + 1), rng));
  }
  decoder_.resize(config_.depth);
  for (size_t l = config_.depth; l-- > 0;) {
    const size_t cin =
        l + 1 == config_.depth
            ? SkipChannels(config_, config_.depth)
            : DecoderChannels(config_, l + 1) + SkipChannels(config_, l + 1);
    decoder_[l] = AddConvTransposed(params_, "dec" + std::to_string(l),
                                    kKernel, kKernel, cin,
                                    DecoderChannels(config_, l), rng);
  }
  output_ = AddConv(params_, "out", 1, 1,
                    DecoderChannels(config_, 0) + SkipChannels(config_, 0), 1,
                    rng);
}

size_t Unet::PaddedExtent(size_t n) const {
  const size_t m = size_t{1} << config_.depth;
  return (n + m - 1) / m * m;
}

Prediction Unet::Forward(nn::Tape& tape, nn::Var input) const {
  CheckMatrix(input, "dry-unet");
  const size_t frames = input.shape()[0], bins = input.shape()[1];
  const size_t pt = PaddedExtent(frames), pf = PaddedExtent(bins);
  nn::Var x = nn::PadTF(nn::Reshape(input, {frames, bins, 1}), 0,
                        pt - frames, 0, pf - bins);

  std::vector<nn::Var> skips = {x};
  const nn::Conv2dOptions down{kStride, kStride, nn::Padding::kSame};
  for (const ConvParams& enc : encoder_) {
    nn::Var y = nn::Conv2d(skips.back(), tape.Param(*enc.kernel),
                           tape.Param(*enc.bias), down);
    skips.push_back(nn::Elu(y));
  }
  nn::Var d = skips.back();
  for (size_t l = config_.depth; l-- > 0;) {
    nn::Var up = nn::Elu(nn::Conv2dTransposed(
        d, tape.Param(*decoder_[l].kernel), tape.Param(*decoder_[l].bias),
        kStride, kStride));
    const nn::Shape& skip = skips[l].shape();
    up = nn::CropTF(up, 1, skip[0], 1, skip[1]);
    d = nn::ConcatLast(up, skips[l]);
  }
  nn::Var y = ApplyConv(tape, d, output_, Activation::kNone);
  Prediction p;
  p.dry_logmag = nn::Reshape(nn::CropTF(y, 0, frames, 0, bins), {frames, bins});
  return p;
}

std::string Unet::Describe() const {
  std::ostringstream os;
  os << "dry-unet, depth " << config_.depth << ", base channels "
     << config_.base_channels << "\n";
  for (size_t l = 0; l < config_.depth; ++l) {
    os << "  enc" << l << "  4x4 stride 2  " << SkipChannels(config_, l)
       << "->" << SkipChannels(config_, l + 1) << " ch  elu\n";
  }
  for (size_t l = config_.depth; l-- > 0;) {
    os << "  dec" << l << "  4x4 stride 2 transposed  ->"
       << DecoderChannels(config_, l) << " ch  elu, concat skip "
       << SkipChannels(config_, l) << " ch\n";
  }
  os << "  out  1x1  ->1 ch\n";
  return os.str();
}

}  // namespace dereverb::models
