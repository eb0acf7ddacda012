// Copyright 2026 The Dereverb Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef DEREVERB_DSP_FFT_H_
#define DEREVERB_DSP_FFT_H_

#include <complex>
#include <cstddef>
#include <span>

namespace dereverb::dsp {

// Real-input FFT of fixed size backed by FFTW. Plans are created once per
// instance (planner access is serialized internally); Forward/Inverse may
// be called concurrently on distinct instances.
class RealFft {
 public:
  explicit RealFft(size_t n);
  ~RealFft();
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  size_t size() const { return n_; }
  size_t bins() const { return n_ / 2 + 1; }

  // in: n samples; out: n/2+1 bins.
  void Forward(std::span<const double> in, std::span<std::complex<double>> out);
  // Unnormalized inverse: Inverse(Forward(x)) == n * x.
  void Inverse(std::span<const std::complex<double>> in, std::span<double> out);

 private:
  size_t n_;
  double* real_ = nullptr;
  void* spectrum_ = nullptr;
  void* forward_plan_ = nullptr;
  void* inverse_plan_ = nullptr;
};

}  // namespace dereverb::dsp

#endif  // DEREVERB_DSP_FFT_H_
