// Copyright 2026 The Dereverb Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "dereverb/corpus/split.h"

#include <algorithm>
#include <map>
#include <string>

#include "dereverb/common/error.h"
#include "dereverb/common/rng.h"

namespace dereverb::corpus {
namespace {

struct Group {
  std::string key;
  std::vector<size_t> members;  // indices into the record list, retained only
  Split split = Split::kTrain;
};

// Exact fill of both deficits with whole groups: a subset-sum table over
// (val, test) states. Each group keeps its current split when that still
// leads to a solution, so the greedy result is disturbed as little as
// possible. Returns false when no assignment exists.
bool ExactAssign(const std::vector<Group*>& groups, size_t val, size_t test) {
  const size_t n = groups.size(), width = test + 1;
  // reach[i][v * width + t]: groups i.. can fill (v, t) exactly
  std::vector<std::vector<char>> reach(
      n + 1, std::vector<char>((val + 1) * width, 0));
  reach[n][0] = 1;
  for (size_t i = n; i-- > 0;) {
    const size_t w = groups[i]->members.size();
    const auto& next = reach[i + 1];
    auto& cur = reach[i];
    for (size_t v = 0; v <= val; ++v) {
      for (size_t t = 0; t <= test; ++t) {
        cur[v * width + t] = next[v * width + t] ||
                             (v >= w && next[(v - w) * width + t]) ||
                             (t >= w && next[v * width + t - w]);
      }
    }
  }
  if (!reach[0][val * width + test]) return false;
  size_t v = val, t = test;
  for (size_t i = 0; i < n; ++i) {
    const size_t w = groups[i]->members.size();
    const auto& next = reach[i + 1];
    auto feasible = [&](Split s) {
      switch (s) {
        case Split::kVal: return v >= w && next[(v - w) * width + t] != 0;
        case Split::kTest: return t >= w && next[v * width + t - w] != 0;
        default: return next[v * width + t] != 0;
      }
    };
    Split choice = groups[i]->split;
    if (!feasible(choice)) {
      for (Split s : {Split::kTrain, Split::kVal, Split::kTest}) {
        if (feasible(s)) {
          choice = s;
          break;
        }
      }
    }
    groups[i]->split = choice;
    if (choice == Split::kVal) v -= w;
    if (choice == Split::kTest) t -= w;
  }
  return true;
}

}  // namespace

CorpusManifest SplitGroups(std::vector<RirRecord> records,
                           const SplitOptions& options) {
  if (options.cap == 0) Fail(ErrorCode::kInvalidArgument, "cap must be >= 1");
  std::map<std::string, std::vector<size_t>> by_key;
  for (size_t i = 0; i < records.size(); ++i) {
    if (records[i].group_key.empty()) {
      Fail(ErrorCode::kInvalidArgument, "record '" + records[i].id +
                                            "' has an empty group_key");
    }
    by_key[records[i].group_key].push_back(i);
  }

  Rng cap_rng(StreamSeed(options.seed, "split-cap"));
  std::vector<Group> groups;
  size_t retained = 0;
  for (auto& [key, members] : by_key) {
    std::sort(members.begin(), members.end(), [&](size_t a, size_t b) {
      return records[a].id < records[b].id;
    });
    if (members.size() > options.cap) {
      std::shuffle(members.begin(), members.end(), cap_rng);
      for (size_t i = options.cap; i < members.size(); ++i) {
        records[members[i]].split = Split::kDiscarded;
      }
      members.resize(options.cap);
      std::sort(members.begin(), members.end());
    }
    retained += members.size();
    groups.push_back({key, members, Split::kTrain});
  }
  if (retained < options.val + options.test) {
    Fail(ErrorCode::kInsufficientData,
         std::to_string(retained) + " retained RIRs cannot fill val " +
             std::to_string(options.val) + " + test " +
             std::to_string(options.test));
  }

  std::vector<Group*> small;
  for (Group& g : groups) {
    if (g.members.size() <= options.big_group) small.push_back(&g);
  }
  Rng order_rng(StreamSeed(options.seed, "split-order"));
  std::shuffle(small.begin(), small.end(), order_rng);

  size_t val_deficit = options.val, test_deficit = options.test;
  for (Group* g : small) {
    const size_t n = g->members.size();
    const bool val_fits = val_deficit >= n && val_deficit > 0;
    const bool test_fits = test_deficit >= n && test_deficit > 0;
    if (val_fits && (!test_fits || val_deficit >= test_deficit)) {
      g->split = Split::kVal;
      val_deficit -= n;
    } else if (test_fits) {
      g->split = Split::kTest;
      test_deficit -= n;
    }
  }

  if ((val_deficit > 0 || test_deficit > 0) &&
      !ExactAssign(small, options.val, options.test)) {
    Fail(ErrorCode::kInsufficientData,
         "no assignment of whole groups of size <= " +
             std::to_string(options.big_group) + " fills val " +
             std::to_string(options.val) + " and test " +
             std::to_string(options.test) + " exactly");
  }

  CorpusManifest m;
  for (const Group& g : groups) {
    for (size_t i : g.members) records[i].split = g.split;
  }
  m.rirs = std::move(records);
  return m;
}

}  // namespace dereverb::corpus
