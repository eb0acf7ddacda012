// Copyright 2026 The Dereverb Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef DEREVERB_CORPUS_SPLIT_H_
#define DEREVERB_CORPUS_SPLIT_H_

#include <cstdint>
#include <vector>

#include "dereverb/corpus/manifest.h"

namespace dereverb::corpus {

struct SplitOptions {
  size_t val = 200;
  size_t test = 200;
  size_t cap = 100;       // max retained RIRs per group
  size_t big_group = 20;  // groups larger than this always go to train
  uint64_t seed = 0;
};

// Leakage-free assignment of whole groups to train/val/test.
//  1. Each group (records sharing group_key) keeps at most `cap` records,
//     chosen in a seeded random order; the rest are discarded.
//  2. Groups retaining more than `big_group` go to train.
//  3. The other groups, in seeded random order, go whole to whichever of
//     val/test has the largest remaining deficit that still fits them,
//     otherwise to train.
//  4. If a deficit remains, an exact two-way subset-sum over the small
//     groups reassigns them, keeping greedy choices where it can.
// Throws InsufficientData when val and test cannot be filled exactly.
CorpusManifest SplitGroups(std::vector<RirRecord> records,
                           const SplitOptions& options);

}  // namespace dereverb::corpus

#endif  // DEREVERB_CORPUS_SPLIT_H_
