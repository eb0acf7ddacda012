// Copyright 2026 The Dereverb Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef DEREVERB_TESTS_SUPPORT_FIXTURES_H_
#define DEREVERB_TESTS_SUPPORT_FIXTURES_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "dereverb/dsp/audio.h"

namespace dereverb::testing {

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag = "test");
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

// Two-tone amplitude-modulated signal with light noise.
dsp::AudioClip SpeechLike(size_t samples, uint64_t seed);

// Unit direct path at `delay` followed by exponentially decaying noise.
dsp::AudioClip DecayingRir(size_t samples, size_t delay, uint64_t seed);

// Writes <dir>/<group>_<i>.wav for every (group, count).
void WriteRirCorpus(const std::filesystem::path& dir,
                    const std::vector<std::pair<std::string, size_t>>& groups,
                    size_t samples, uint64_t seed);

// Writes dry clips into <dir>/train, <dir>/val and <dir>/test.
void WriteDryCorpus(const std::filesystem::path& dir, size_t train, size_t val,
                    size_t test, size_t samples, uint64_t seed);

std::string ReadBytes(const std::filesystem::path& path);

// Relative path -> bytes for every regular file under `dir`.
std::vector<std::pair<std::string, std::string>> Snapshot(
    const std::filesystem::path& dir);

}  // namespace dereverb::testing

#endif  // DEREVERB_TESTS_SUPPORT_FIXTURES_H_
