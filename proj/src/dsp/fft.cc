// Copyright 2026 The Dereverb Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "dereverb/dsp/fft.h"

#include <fftw3.h>

#include <algorithm>
#include <cstring>
#include <mutex>

#include "dereverb/common/error.h"

namespace dereverb::dsp {
namespace {

std::mutex& PlannerMutex() {
  static std::mutex mu;
  return mu;
}

}  // namespace

RealFft::RealFft(size_t n) : n_(n) {
  if (n == 0) Fail(ErrorCode::kInvalidArgument, "FFT size must be positive");
  real_ = fftw_alloc_real(n);
  auto* spectrum = fftw_alloc_complex(n / 2 + 1);
  spectrum_ = spectrum;
  std::lock_guard<std::mutex> lock(PlannerMutex());
  // FFTW_ESTIMATE keeps plans (and therefore results) independent of timing.
  forward_plan_ = fftw_plan_dft_r2c_1d(static_cast<int>(n), real_, spectrum,
                                       FFTW_ESTIMATE);
  inverse_plan_ = fftw_plan_dft_c2r_1d(static_cast<int>(n), spectrum, real_,
                                       FFTW_ESTIMATE);
}

RealFft::~RealFft() {
  std::lock_guard<std::mutex> lock(PlannerMutex());
  fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
  fftw_destroy_plan(static_cast<fftw_plan>(inverse_plan_));
  fftw_free(real_);
  fftw_free(spectrum_);
}

void RealFft::Forward(std::span<const double> in,
                      std::span<std::complex<double>> out) {
  if (in.size() != n_ || out.size() != bins()) {
    Fail(ErrorCode::kShapeMismatch, "RealFft::Forward size mismatch");
  }
  std::copy(in.begin(), in.end(), real_);
  fftw_execute(static_cast<fftw_plan>(forward_plan_));
  std::memcpy(out.data(), spectrum_, bins() * sizeof(fftw_complex));
}

void RealFft::Inverse(std::span<const std::complex<double>> in,
                      std::span<double> out) {
  if (in.size() != bins() || out.size() != n_) {
    Fail(ErrorCode::kShapeMismatch, "RealFft::Inverse size mismatch");
  }
  // c2r destroys its input, so work on the owned buffer.
  std::memcpy(spectrum_, in.data(), bins() * sizeof(fftw_complex));
  fftw_execute(static_cast<fftw_plan>(inverse_plan_));
  std::copy(real_, real_ + n_, out.begin());
}

}  // namespace dereverb::dsp
