// Copyright 2026 The Dereverb Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef DEREVERB_NN_INIT_H_
#define DEREVERB_NN_INIT_H_

#include "dereverb/common/rng.h"
#include "dereverb/nn/tensor.h"

namespace dereverb::nn {

// U(-a, a) with a = sqrt(6 / (fan_in + fan_out)).
Tensor GlorotUniform(Shape shape, size_t fan_in, size_t fan_out, Rng& rng);

// Square orthogonal matrix from the QR factorization of a Gaussian draw.
Tensor Orthogonal(size_t n, Rng& rng);

}  // namespace dereverb::nn

#endif  // DEREVERB_NN_INIT_H_
