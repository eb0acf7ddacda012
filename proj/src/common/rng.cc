// Copyright 2026 The Dereverb Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "dereverb/common/rng.h"

#include <sstream>

#include "dereverb/common/error.h"

namespace dereverb {
namespace {

// splitmix64 finalizer
uint64_t Mix(uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

uint64_t StreamSeed(uint64_t seed, std::string_view stream) {
  // FNV-1a over the stream name, then mixed with the seed.
  uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : stream) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return Mix(seed ^ Mix(h));
}

uint64_t StreamSeed(uint64_t seed, uint64_t index) {
  return Mix(Mix(seed) + index);
}

std::string SerializeRng(const Rng& rng) {
  std::ostringstream os;
  os << rng;
  return os.str();
}

Rng DeserializeRng(const std::string& state) {
  std::istringstream is(state);
  Rng rng;
  is >> rng;
  if (is.fail()) Fail(ErrorCode::kParseError, "malformed RNG state");
  return rng;
}

}  // namespace dereverb
