// Copyright 2026 The Dereverb Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "dereverb/corpus/pairs.h"

#include <random>

#include "dereverb/common/error.h"
#include "dereverb/common/rng.h"

namespace dereverb::corpus {

std::vector<PairRecord> MakePairs(const std::vector<DryFile>& dry,
                                  const CorpusManifest& manifest,
                                  size_t rirs_per_dry, uint64_t seed) {
  if (rirs_per_dry == 0) {
    Fail(ErrorCode::kInvalidArgument, "rirs_per_dry must be >= 1");
  }
  std::vector<std::vector<const RirRecord*>> pools(4);
  for (const auto& r : manifest.rirs) {
    pools[static_cast<int>(r.split)].push_back(&r);
  }
  Rng rng(StreamSeed(seed, "pairs"));
  std::vector<PairRecord> pairs;
  for (const DryFile& d : dry) {
    if (d.split == Split::kDiscarded) {
      Fail(ErrorCode::kInvalidArgument, "dry file in the discarded split");
    }
    const auto& pool = pools[static_cast<int>(d.split)];
    if (pool.empty()) {
      Fail(ErrorCode::kEmptySplit, "no " + std::string(SplitName(d.split)) +
                                       " RIRs to pair with " + d.path);
    }
    std::uniform_int_distribution<size_t> pick(0, pool.size() - 1);
    for (size_t k = 0; k < rirs_per_dry; ++k) {
      PairRecord p;
      p.dry_path = d.path;
      p.rir_id = pool[pick(rng)]->id;
      p.seed = StreamSeed(seed, static_cast<uint64_t>(pairs.size()));
      p.split = d.split;
      pairs.push_back(std::move(p));
    }
  }
  return pairs;
}

}  // namespace dereverb::corpus
