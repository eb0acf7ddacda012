// Copyright 2026 The Dereverb Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef DEREVERB_DSP_CONVOLVE_H_
#define DEREVERB_DSP_CONVOLVE_H_

#include <span>
#include <vector>

namespace dereverb::dsp {

// Full linear convolution, length x.size() + h.size() - 1. O(N*M).
std::vector<double> ConvolveDirect(std::span<const double> x,
                                   std::span<const double> h);

// Same result through a zero-padded FFT whose size is the next power of two
// at or above the output length.
std::vector<double> ConvolveFft(std::span<const double> x,
                                std::span<const double> h);

}  // namespace dereverb::dsp

#endif  // DEREVERB_DSP_CONVOLVE_H_
