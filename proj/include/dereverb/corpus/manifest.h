// Copyright 2026 The Dereverb Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef DEREVERB_CORPUS_MANIFEST_H_
#define DEREVERB_CORPUS_MANIFEST_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace dereverb::corpus {

enum class Split { kTrain, kVal, kTest, kDiscarded };

std::string_view SplitName(Split split);
// Throws InvalidArgument.
Split ParseSplit(std::string_view name);

struct RirRecord {
  std::string id;
  std::string path;
  std::string group_key;
  Split split = Split::kTrain;
  double duration_s = 0.0;

  bool operator==(const RirRecord&) const = default;
};

struct PairRecord {
  std::string dry_path;
  std::string rir_id;
  uint64_t seed = 0;
  Split split = Split::kTrain;
  // Example cache, relative to the manifest's directory. Empty until
  // synthesized.
  std::string cache_path;

  bool operator==(const PairRecord&) const = default;
};

// Indexed by Split.
using SplitCounts = std::array<size_t, 4>;

inline constexpr int kManifestVersion = 1;

struct CorpusManifest {
  int version = kManifestVersion;
  std::vector<RirRecord> rirs;
  std::vector<PairRecord> pairs;

  // RIR counts per split.
  SplitCounts CountRirs() const;
  // Pair counts per split.
  SplitCounts CountPairs() const;
  // Throws InvalidArgument for unknown ids.
  const RirRecord& FindRir(const std::string& id) const;

  bool operator==(const CorpusManifest&) const = default;
};

// One JSON object per line: a {"version":N} header, one line per RIR and
// per pair, and a closing split-count line.
void SaveManifest(const CorpusManifest& manifest,
                  const std::filesystem::path& path);
// Throws IoFailure, ParseError (with 1-based line) or VersionMismatch.
CorpusManifest LoadManifest(const std::filesystem::path& path);

// Resolves a path stored in a manifest relative to the manifest file.
std::filesystem::path ResolveFromManifest(const std::filesystem::path& manifest,
                                          const std::string& stored);

}  // namespace dereverb::corpus

#endif  // DEREVERB_CORPUS_MANIFEST_H_
