// Copyright 2026 The Dereverb Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "fixtures.h"

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

namespace dereverb::testing {

namespace fs = std::filesystem;

TempDir::TempDir(const std::string& tag) {
  static std::atomic<int> counter{0};
  path_ = fs::temp_directory_path() /
          ("dereverb_" + tag + "_" + std::to_string(::getpid()) + "_" +
           std::to_string(counter++));
  fs::remove_all(path_);
  fs::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

dsp::AudioClip SpeechLike(size_t samples, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 0.01);
  std::uniform_real_distribution<double> pitch(120.0, 300.0);
  const double f0 = pitch(rng);
  dsp::AudioClip c;
  c.samples.assign(samples, 0.0);
  for (size_t i = 0; i < samples; ++i) {
    const double t = static_cast<double>(i) / dsp::kSampleRate;
    const double env = 0.5 + 0.5 * std::sin(2 * std::numbers::pi * 3.0 * t);
    c.samples[i] = env * (0.3 * std::sin(2 * std::numbers::pi * f0 * t) +
                          0.2 * std::sin(2 * std::numbers::pi * 6.0 * f0 * t)) +
                   noise(rng);
  }
  return c;
}

dsp::AudioClip DecayingRir(size_t samples, size_t delay, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  dsp::AudioClip c;
  c.samples.assign(samples, 0.0);
  c.samples[delay] = 1.0;
  for (size_t i = delay + 1; i < samples; ++i) {
    c.samples[i] = 0.3 * g(rng) * std::exp(-static_cast<double>(i - delay) / 2000.0);
  }
  return c;
}

void WriteRirCorpus(const fs::path& dir,
                    const std::vector<std::pair<std::string, size_t>>& groups,
                    size_t samples, uint64_t seed) {
  fs::create_directories(dir);
  uint64_t n = 0;
  for (const auto& [group, count] : groups) {
    for (size_t i = 0; i < count; ++i, ++n) {
      dsp::WriteWav(dir / (group + "_" + std::to_string(i) + ".wav"),
                    DecayingRir(samples, 5 + n % 7, seed * 1000 + n),
                    dsp::WavFormat::kFloat32);
    }
  }
}

void WriteDryCorpus(const fs::path& dir, size_t train, size_t val, size_t test,
                    size_t samples, uint64_t seed) {
  uint64_t n = 0;
  for (const auto& [name, count] : {std::pair<std::string, size_t>{"train", train},
                                    {"val", val},
                                    {"test", test}}) {
    if (count == 0) continue;
    fs::create_directories(dir / name);
    for (size_t i = 0; i < count; ++i, ++n) {
      dsp::WriteWav(dir / name / ("speech_" + std::to_string(i) + ".wav"),
                    SpeechLike(samples, seed * 1000 + n), dsp::WavFormat::kFloat32);
    }
  }
}

std::string ReadBytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::pair<std::string, std::string>> Snapshot(const fs::path& dir) {
  std::vector<std::pair<std::string, std::string>> files;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    files.emplace_back(fs::relative(e.path(), dir).generic_string(),
                       ReadBytes(e.path()));
  }
  std::sort(files.begin(), files.end());
  return files;
}

}  // namespace dereverb::testing
