// Copyright 2026 The Dereverb Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef DEREVERB_CLI_COMMANDS_H_
#define DEREVERB_CLI_COMMANDS_H_

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "dereverb/common/error.h"

namespace dereverb::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitNumeric = 3;
inline constexpr int kExitUsage = 64;

int ExitCodeFor(ErrorCode code);

// Environment fallback for --threads.
inline constexpr const char* kThreadsEnv = "DEREVERB_THREADS";

struct PrepareOptions {
  std::string rir_dir;
  std::string group_pattern = "^(.+)_[^_]+$";  // drops the last _field
  size_t val = 200;
  size_t test = 200;
  size_t cap = 100;
  size_t big_group = 20;
  uint64_t seed = 0;
  std::string out = "manifest.jsonl";
};

struct SynthOptions {
  std::string manifest;
  std::string dry_dir;
  size_t rirs_per_dry = 1;
  uint64_t seed = 0;
  std::string out_dir;
};

struct TrainOptions {
  std::string manifest;
  std::string model = "joint";
  std::string scale = "desk";
  int epochs = 10;
  double lr = 1e-4;
  size_t batch = 4;
  std::vector<double> weights = {1.0, 1.0, 1.0};
  uint64_t seed = 0;
  int threads = 1;
  int checkpoint_every = 0;
  std::string resume;
  std::string out;
};

struct GradcheckOptions {
  std::string model = "all";
  uint64_t seed = 0;
};

struct EvalOptions {
  std::string ckpt;
  std::string manifest;
  std::string split = "test";
  std::string report = "report.csv";
  std::string audition_dir;
  size_t audition_count = 3;
};

struct InfoOptions {
  std::string ckpt;
  std::string model;
  std::string scale = "desk";
};

// Each command prints its resolved configuration first and throws
// dereverb::Error on failure.
void RunPrepare(const PrepareOptions& o, std::ostream& out, std::ostream& err);
void RunSynth(const SynthOptions& o, std::ostream& out, std::ostream& err);
void RunTrain(const TrainOptions& o, std::ostream& out, std::ostream& err);
// Returns the exit code: numeric failure when any model exceeds the
// tolerance.
int RunGradcheck(const GradcheckOptions& o, std::ostream& out);
void RunEval(const EvalOptions& o, std::ostream& out, std::ostream& err);
void RunInfo(const InfoOptions& o, std::ostream& out);

}  // namespace dereverb::cli

#endif  // DEREVERB_CLI_COMMANDS_H_
