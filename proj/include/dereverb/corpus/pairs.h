// Copyright 2026 The Dereverb Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef DEREVERB_CORPUS_PAIRS_H_
#define DEREVERB_CORPUS_PAIRS_H_

#include <cstdint>
#include <string>
#include <vector>

#include "dereverb/corpus/manifest.h"

namespace dereverb::corpus {

struct DryFile {
  std::string path;
  Split split = Split::kTrain;
};

// rirs_per_dry RIRs per dry file, each drawn uniformly (with replacement)
// from the RIRs of the dry file's split. Pairs come out in dry-file order;
// each gets its own derived seed. Throws EmptySplit, InvalidArgument.
std::vector<PairRecord> MakePairs(const std::vector<DryFile>& dry,
                                  const CorpusManifest& manifest,
                                  size_t rirs_per_dry, uint64_t seed);

}  // namespace dereverb::corpus

#endif  // DEREVERB_CORPUS_PAIRS_H_
