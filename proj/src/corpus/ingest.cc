// Copyright 2026 The Dereverb Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "dereverb/corpus/ingest.h"

#include <algorithm>
#include <cctype>
#include <regex>

#include "dereverb/common/error.h"
#include "dereverb/dsp/audio.h"
#include "dereverb/dsp/resample.h"

namespace dereverb::corpus {
namespace fs = std::filesystem;

namespace {

bool IsWav(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return ext == ".wav";
}

}  // namespace

std::string GroupKey(const std::string& stem, const std::string& pattern) {
  if (pattern.empty()) return stem;
  std::regex re;
  try {
    re = std::regex(pattern);
  } catch (const std::regex_error& e) {
    Fail(ErrorCode::kInvalidArgument,
         "bad group pattern '" + pattern + "': " + e.what());
  }
  std::smatch m;
  if (!std::regex_search(stem, m, re)) return stem;
  const std::string key = m.size() > 1 && m[1].matched ? m[1].str() : m[0].str();
  return key.empty() ? stem : key;
}

std::vector<fs::path> ListWavFiles(const fs::path& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    Fail(ErrorCode::kIoFailure, "not a directory: " + dir.string());
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (entry.is_regular_file() && IsWav(entry.path())) {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  return files;
}

IngestResult IngestRirs(const fs::path& dir, const std::string& pattern) {
  GroupKey("", pattern);  // validates the pattern up front
  const std::vector<fs::path> files = ListWavFiles(dir);
  IngestResult result;
  for (const fs::path& file : files) {
    dsp::AudioClip clip;
    try {
      clip = dsp::Resample(dsp::ReadWav(file), dsp::kSampleRate);
    } catch (const Error& e) {
      result.warnings.push_back("skipping " + file.string() + ": " + e.what());
      ++result.skipped;
      continue;
    }
    RirRecord r;
    fs::path rel = fs::relative(file, dir);
    r.id = rel.replace_extension().generic_string();
    r.path = file.string();
    r.group_key = GroupKey(file.stem().string(), pattern);
    r.duration_s = clip.duration_s();
    result.records.push_back(std::move(r));
  }
  if (result.records.empty()) {
    Fail(ErrorCode::kNoFilesFound,
         "no readable .wav files under " + dir.string() + " (" +
             std::to_string(result.skipped) + " skipped)");
  }
  return result;
}

}  // namespace dereverb::corpus
