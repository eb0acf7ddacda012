// Copyright 2026 The Dereverb Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef DEREVERB_COMMON_RNG_H_
#define DEREVERB_COMMON_RNG_H_

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

namespace dereverb {

using Rng = std::mt19937_64;

// Derives an independent seed for a named stream ("prepare", "synth",
// "train", ...) so that the subsystems never share a generator.
uint64_t StreamSeed(uint64_t seed, std::string_view stream);

// Same, for an indexed sub-stream (e.g. one per pair record).
uint64_t StreamSeed(uint64_t seed, uint64_t index);

// Text form of the full generator state (used by checkpoints).
std::string SerializeRng(const Rng& rng);
Rng DeserializeRng(const std::string& state);

}  // namespace dereverb

#endif  // DEREVERB_COMMON_RNG_H_
