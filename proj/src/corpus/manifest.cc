// Copyright 2026 The Dereverb Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "dereverb/corpus/manifest.h"

#include <fstream>

#include "dereverb/common/error.h"
#include "json.hpp"

namespace dereverb::corpus {
namespace {

using Json = nlohmann::ordered_json;

constexpr Split kAllSplits[] = {Split::kTrain, Split::kVal, Split::kTest,
                                Split::kDiscarded};

Json CountsJson(const char* what, const SplitCounts& c) {
  Json j = {{"type", what}};
  for (Split s : kAllSplits) j[std::string(SplitName(s))] = c[static_cast<int>(s)];
  return j;
}

template <typename T>
T Field(const Json& j, const char* key, int line) {
  if (!j.contains(key)) {
    throw ParseError(line, std::string("missing field '") + key + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw ParseError(line, std::string("field '") + key + "': " + e.what());
  }
}

Split SplitField(const Json& j, int line) {
  try {
    return ParseSplit(Field<std::string>(j, "split", line));
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(line, e.what());
  }
}

}  // namespace

std::string_view SplitName(Split split) {
  switch (split) {
    case Split::kTrain: return "train";
    case Split::kVal: return "val";
    case Split::kTest: return "test";
    case Split::kDiscarded: return "discarded";
  }
  return "?";
}

Split ParseSplit(std::string_view name) {
  for (Split s : kAllSplits) {
    if (SplitName(s) == name) return s;
  }
  Fail(ErrorCode::kInvalidArgument, "unknown split '" + std::string(name) + "'");
}

SplitCounts CorpusManifest::CountRirs() const {
  SplitCounts c{};
  for (const auto& r : rirs) ++c[static_cast<int>(r.split)];
  return c;
}

SplitCounts CorpusManifest::CountPairs() const {
  SplitCounts c{};
  for (const auto& p : pairs) ++c[static_cast<int>(p.split)];
  return c;
}

const RirRecord& CorpusManifest::FindRir(const std::string& id) const {
  for (const auto& r : rirs) {
    if (r.id == id) return r;
  }
  Fail(ErrorCode::kInvalidArgument, "manifest has no RIR '" + id + "'");
}

void SaveManifest(const CorpusManifest& m, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) Fail(ErrorCode::kIoFailure, "cannot write " + path.string());
  out << Json{{"version", m.version}}.dump() << "\n";
  for (const auto& r : m.rirs) {
    out << Json{{"type", "rir"},
                {"id", r.id},
                {"path", r.path},
                {"group_key", r.group_key},
                {"split", SplitName(r.split)},
                {"duration_s", r.duration_s}}
               .dump()
        << "\n";
  }
  for (const auto& p : m.pairs) {
    out << Json{{"type", "pair"},
                {"dry_path", p.dry_path},
                {"rir_id", p.rir_id},
                {"seed", p.seed},
                {"split", SplitName(p.split)},
                {"cache_path", p.cache_path}}
               .dump()
        << "\n";
  }
  out << CountsJson("split_counts", m.CountRirs()).dump() << "\n";
  if (!out) Fail(ErrorCode::kIoFailure, "write failed: " + path.string());
}

CorpusManifest LoadManifest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kIoFailure, "cannot open " + path.string());
  CorpusManifest m;
  std::string text;
  int line = 0;
  bool have_header = false;
  while (std::getline(in, text)) {
    ++line;
    if (text.empty()) continue;
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      throw ParseError(line, "not a JSON object");
    }
    if (!have_header) {
      m.version = Field<int>(j, "version", line);
      if (m.version != kManifestVersion) {
        Fail(ErrorCode::kVersionMismatch,
             "manifest version " + std::to_string(m.version) +
                 " (supported: " + std::to_string(kManifestVersion) + ")");
      }
      have_header = true;
      continue;
    }
    const std::string type = Field<std::string>(j, "type", line);
    if (type == "rir") {
      RirRecord r;
      r.id = Field<std::string>(j, "id", line);
      r.path = Field<std::string>(j, "path", line);
      r.group_key = Field<std::string>(j, "group_key", line);
      r.split = SplitField(j, line);
      r.duration_s = Field<double>(j, "duration_s", line);
      if (r.group_key.empty()) throw ParseError(line, "empty group_key");
      m.rirs.push_back(std::move(r));
    } else if (type == "pair") {
      PairRecord p;
      p.dry_path = Field<std::string>(j, "dry_path", line);
      p.rir_id = Field<std::string>(j, "rir_id", line);
      p.seed = Field<uint64_t>(j, "seed", line);
      p.split = SplitField(j, line);
      p.cache_path = Field<std::string>(j, "cache_path", line);
      m.pairs.push_back(std::move(p));
    } else if (type == "split_counts") {
      const SplitCounts c = m.CountRirs();
      for (Split s : kAllSplits) {
        if (Field<size_t>(j, std::string(SplitName(s)).c_str(), line) !=
            c[static_cast<int>(s)]) {
          throw ParseError(line, "split_counts disagree with the RIR records");
        }
      }
    } else {
      throw ParseError(line, "unknown record type '" + type + "'");
    }
  }
  if (!have_header) throw ParseError(line + 1, "missing version header");
  return m;
}

std::filesystem::path ResolveFromManifest(const std::filesystem::path& manifest,
                                          const std::string& stored) {
  const std::filesystem::path p(stored);
  if (p.is_absolute()) return p;
  return manifest.parent_path() / p;
}

}  // namespace dereverb::corpus
