// Copyright 2026 The Dereverb Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "dereverb/dsp/convolve.h"

#include <bit>
#include <complex>

#include "dereverb/common/error.h"
#include "dereverb/dsp/fft.h"

namespace dereverb::dsp {
namespace {

void CheckNonEmpty(std::span<const double> x, std::span<const double> h) {
  if (x.empty() || h.empty()) {
    Fail(ErrorCode::kInvalidArgument, "convolution operands must be non-empty");
  }
}

}  // namespace

std::vector<double> ConvolveDirect(std::span<const double> x,
                                   std::span<const double> h) {
  CheckNonEmpty(x, h);
  std::vector<double> y(x.size() + h.size() - 1, 0.0);
  for (size_t i = 0; i < x.size(); ++i) {
    const double xi = x[i];
    double* out = y.data() + i;
    for (size_t j = 0; j < h.size(); ++j) out[j] += xi * h[j];
  }
  return y;
}

std::vector<double> ConvolveFft(std::span<const double> x,
                                std::span<const double> h) {
  CheckNonEmpty(x, h);
  const size_t out_len = x.size() + h.size() - 1;
  const size_t n = std::bit_ceil(out_len);
  RealFft fft(n);

  std::vector<double> buf(n, 0.0);
  std::vector<std::complex<double>> xs(fft.bins()), hs(fft.bins());
  std::copy(x.begin(), x.end(), buf.begin());
  fft.Forward(buf, xs);
  std::fill(buf.begin(), buf.end(), 0.0);
  std::copy(h.begin(), h.end(), buf.begin());
  fft.Forward(buf, hs);
  for (size_t k = 0; k < xs.size(); ++k) xs[k] *= hs[k];
  fft.Inverse(xs, buf);

  std::vector<double> y(out_len);
  const double scale = 1.0 / static_cast<double>(n);
  for (size_t i = 0; i < out_len; ++i) y[i] = buf[i] * scale;
  return y;
}

}  // namespace dereverb::dsp
