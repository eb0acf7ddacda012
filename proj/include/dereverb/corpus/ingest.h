// Copyright 2026 The Dereverb Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef DEREVERB_CORPUS_INGEST_H_
#define DEREVERB_CORPUS_INGEST_H_

#include <filesystem>
#include <string>
#include <vector>

#include "dereverb/corpus/manifest.h"

namespace dereverb::corpus {

struct IngestResult {
  std::vector<RirRecord> records;  // sorted by path
  std::vector<std::string> warnings;
  size_t skipped = 0;
};

// Group key of one file stem: capture group 1 of the first match of
// `pattern` (the whole match if the pattern has no group), else the stem.
// An empty pattern always falls back to the stem.
std::string GroupKey(const std::string& stem, const std::string& pattern);

// One record per readable .wav under `dir` (recursive). Ids are paths
// relative to `dir` without the extension; durations are measured after
// resampling to 16 kHz. Unreadable files are skipped with a warning.
// Throws IoFailure (missing dir), NoFilesFound, InvalidArgument (bad
// pattern).
IngestResult IngestRirs(const std::filesystem::path& dir,
                        const std::string& pattern);

// Sorted .wav paths under `dir` (recursive).
std::vector<std::filesystem::path> ListWavFiles(const std::filesystem::path& dir);

}  // namespace dereverb::corpus

#endif  // DEREVERB_CORPUS_INGEST_H_
