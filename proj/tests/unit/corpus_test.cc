// Copyright 2026 The Dereverb Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <random>
#include <set>

#include "dereverb/common/error.h"
#include "dereverb/corpus/example.h"
#include "dereverb/corpus/ingest.h"
#include "dereverb/corpus/manifest.h"
#include "dereverb/corpus/pairs.h"
#include "dereverb/corpus/split.h"
#include "dereverb/corpus/synth.h"
#include "dereverb/dsp/audio.h"

namespace dereverb::corpus {
namespace {

namespace fs = std::filesystem;

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("dereverb_corpus_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter_++));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  static inline int counter_ = 0;
  fs::path path_;
};

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no exception";
  return ErrorCode::kInvalidArgument;
}

// Amplitude-modulated tone mixture with a little noise; stands in for
// speech.
dsp::AudioClip SpeechLike(size_t n, uint64_t seed, size_t lead_silence = 0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 0.01);
  dsp::AudioClip c;
  c.samples.assign(n, 0.0);
  for (size_t i = lead_silence; i < n; ++i) {
    const double t = static_cast<double>(i) / dsp::kSampleRate;
    const double env = 0.5 + 0.5 * std::sin(2 * std::numbers::pi * 3.0 * t);
    c.samples[i] = env * (0.3 * std::sin(2 * std::numbers::pi * 220.0 * t) +
                          0.2 * std::sin(2 * std::numbers::pi * 1330.0 * t)) +
                   noise(rng);
  }
  return c;
}

dsp::AudioClip DeltaRir(size_t len, size_t at) {
  dsp::AudioClip c;
  c.samples.assign(len, 0.0);
  c.samples[at] = 1.0;
  return c;
}

dsp::AudioClip DecayingRir(size_t len, size_t delay, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  dsp::AudioClip c;
  c.samples.assign(len, 0.0);
  c.samples[delay] = 1.0;
  for (size_t i = delay + 1; i < len; ++i) {
    c.samples[i] = 0.3 * g(rng) * std::exp(-static_cast<double>(i - delay) / 2000.0);
  }
  return c;
}

// ------------------------------------------------------------ manifest

CorpusManifest SampleManifest() {
  CorpusManifest m;
  m.rirs = {{"a/r1", "/data/a/r1.wav", "roomA", Split::kTrain, 1.25},
            {"a/r2", "/data/a/r2.wav", "roomA", Split::kDiscarded, 0.1},
            {"b", "/data/b.wav", "b", Split::kVal, 2.0 / 3.0},
            {"c \"q\"", "/data/c q.wav", "c", Split::kTest, 1e-3}};
  m.pairs = {{"/dry/x.wav", "a/r1", 18446744073709551615ull, Split::kTrain,
              "cache/000000.bin"},
             {"/dry/y.wav", "b", 7, Split::kVal, ""}};
  return m;
}

TEST(ManifestTest, RoundTrip) {
  TempDir dir;
  const CorpusManifest m = SampleManifest();
  SaveManifest(m, dir.path() / "m.jsonl");
  EXPECT_EQ(LoadManifest(dir.path() / "m.jsonl"), m);
  const SplitCounts c = m.CountRirs();
  EXPECT_EQ(c[0], 1u);
  EXPECT_EQ(c[3], 1u);
}

TEST(ManifestTest, FirstLineIsVersionHeader) {
  TempDir dir;
  SaveManifest(SampleManifest(), dir.path() / "m.jsonl");
  std::ifstream in(dir.path() / "m.jsonl");
  std::string first;
  std::getline(in, first);
  EXPECT_EQ(first, "{\"version\":1}");
}

TEST(ManifestTest, GarbageLineReportsItsNumber) {
  TempDir dir;
  SaveManifest(SampleManifest(), dir.path() / "m.jsonl");
  std::ifstream in(dir.path() / "m.jsonl");
  std::vector<std::string> lines;
  for (std::string l; std::getline(in, l);) lines.push_back(l);
  lines[2] = "{not json";
  std::ofstream out(dir.path() / "bad.jsonl");
  for (const auto& l : lines) out << l << "\n";
  out.close();
  try {
    LoadManifest(dir.path() / "bad.jsonl");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
  }
}

TEST(ManifestTest, UnsupportedVersion) {
  TempDir dir;
  std::ofstream(dir.path() / "m.jsonl") << "{\"version\":99}\n";
  EXPECT_EQ(CodeOf([&] { LoadManifest(dir.path() / "m.jsonl"); }),
            ErrorCode::kVersionMismatch);
}

TEST(ManifestTest, MissingFile) {
  EXPECT_EQ(CodeOf([] { LoadManifest("/nonexistent/m.jsonl"); }),
            ErrorCode::kIoFailure);
}

// -------------------------------------------------------------- ingest

void WriteTone(const fs::path& p, size_t n = 1600, int rate = dsp::kSampleRate) {
  dsp::AudioClip c = DecayingRir(n, 10, n);
  c.sample_rate = rate;
  dsp::WriteWav(p, c, dsp::WavFormat::kPcm16);
}

TEST(IngestTest, PatternGroupsAndFallback) {
  EXPECT_EQ(GroupKey("roomA_src1_mic1", "^(room[A-Z]_src[0-9]+)"), "roomA_src1");
  EXPECT_EQ(GroupKey("roomA_src1_mic2", "^(room[A-Z]_src[0-9]+)"), "roomA_src1");
  EXPECT_EQ(GroupKey("lecture_hall", "^(room[A-Z]_src[0-9]+)"), "lecture_hall");
  EXPECT_EQ(GroupKey("abc123", "[0-9]+"), "123");
  EXPECT_EQ(GroupKey("abc", ""), "abc");
  EXPECT_EQ(CodeOf([] { GroupKey("x", "("); }), ErrorCode::kInvalidArgument);
}

TEST(IngestTest, SkipsCorruptFiles) {
  TempDir dir;
  for (int i = 0; i < 9; ++i) {
    WriteTone(dir.path() / ("roomA_src" + std::to_string(i % 3) + "_mic" +
                            std::to_string(i) + ".wav"));
  }
  std::ofstream(dir.path() / "broken.wav") << "RIFF garbage";
  const IngestResult r = IngestRirs(dir.path(), "^(room[A-Z]_src[0-9]+)");
  EXPECT_EQ(r.records.size(), 9u);
  EXPECT_EQ(r.skipped, 1u);
  ASSERT_EQ(r.warnings.size(), 1u);
  EXPECT_NE(r.warnings[0].find("broken.wav"), std::string::npos);
  std::set<std::string> keys;
  for (const auto& rec : r.records) keys.insert(rec.group_key);
  EXPECT_EQ(keys, (std::set<std::string>{"roomA_src0", "roomA_src1", "roomA_src2"}));
  EXPECT_NEAR(r.records[0].duration_s, 0.1, 1e-12);
}

TEST(IngestTest, DurationIsMeasuredAt16k) {
  TempDir dir;
  WriteTone(dir.path() / "x.wav", 4410, 44100);
  const IngestResult r = IngestRirs(dir.path(), "");
  ASSERT_EQ(r.records.size(), 1u);
  EXPECT_NEAR(r.records[0].duration_s, 0.1, 1.0 / dsp::kSampleRate);
  EXPECT_EQ(r.records[0].id, "x");
}

TEST(IngestTest, Errors) {
  TempDir dir;
  EXPECT_EQ(CodeOf([&] { IngestRirs(dir.path() / "missing", ""); }),
            ErrorCode::kIoFailure);
  EXPECT_EQ(CodeOf([&] { IngestRirs(dir.path(), ""); }), ErrorCode::kNoFilesFound);
}

// --------------------------------------------------------------- split

std::vector<RirRecord> SyntheticRecords(const std::vector<size_t>& sizes) {
  std::vector<RirRecord> out;
  for (size_t g = 0; g < sizes.size(); ++g) {
    for (size_t i = 0; i < sizes[g]; ++i) {
      RirRecord r;
      r.group_key = "g" + std::to_string(g);
      r.id = r.group_key + "_" + std::to_string(i);
      r.path = r.id + ".wav";
      r.duration_s = 1.0;
      out.push_back(r);
    }
  }
  return out;
}

struct SplitSummary {
  std::map<std::string, std::set<Split>> splits_by_group;
  std::map<std::string, size_t> retained_by_group;
  SplitCounts counts{};
};

SplitSummary Summarize(const CorpusManifest& m) {
  SplitSummary s;
  for (const auto& r : m.rirs) {
    ++s.counts[static_cast<int>(r.split)];
    if (r.split == Split::kDiscarded) continue;
    s.splits_by_group[r.group_key].insert(r.split);
    ++s.retained_by_group[r.group_key];
  }
  return s;
}

void ExpectInvariants(const CorpusManifest& m, const SplitOptions& o) {
  const SplitSummary s = Summarize(m);
  for (const auto& [key, splits] : s.splits_by_group) {
    EXPECT_EQ(splits.size(), 1u) << key;
    EXPECT_LE(s.retained_by_group.at(key), o.cap) << key;
    if (s.retained_by_group.at(key) > o.big_group) {
      EXPECT_EQ(*splits.begin(), Split::kTrain) << key;
    }
  }
  EXPECT_EQ(s.counts[1], o.val);
  EXPECT_EQ(s.counts[2], o.test);
}

TEST(SplitTest, BigGroupGoesToTrainAndCapDiscards) {
  std::vector<size_t> sizes = {25, 150};
  for (int i = 0; i < 40; ++i) sizes.push_back(10);
  SplitOptions o;
  o.seed = 3;
  const CorpusManifest m = SplitGroups(SyntheticRecords(sizes), o);
  const SplitSummary s = Summarize(m);
  EXPECT_EQ(s.splits_by_group.at("g0"), std::set<Split>{Split::kTrain});
  EXPECT_EQ(s.retained_by_group.at("g1"), 100u);
  EXPECT_EQ(s.counts[3], 50u);
  ExpectInvariants(m, o);
}

TEST(SplitTest, PaperScaleCounts) {
  // 1762 retained: 1350 in groups too big to leave train, 412 in small
  // groups.
  std::vector<size_t> sizes;
  for (int i = 0; i < 12; ++i) sizes.push_back(100);
  for (int i = 0; i < 5; ++i) sizes.push_back(30);
  std::mt19937_64 rng(1);
  size_t total = 1350;
  while (total < 1762) {
    const size_t n = std::min<size_t>(1 + rng() % 20, 1762 - total);
    sizes.push_back(n);
    total += n;
  }
  SplitOptions o;
  o.seed = 11;
  const CorpusManifest m = SplitGroups(SyntheticRecords(sizes), o);
  const SplitSummary s = Summarize(m);
  EXPECT_EQ(s.counts[0], 1362u);
  EXPECT_EQ(s.counts[1] + s.counts[2], 400u);
  ExpectInvariants(m, o);
}

TEST(SplitTest, RandomCorporaKeepInvariants) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<size_t> sizes;
    for (int g = 0; g < 80; ++g) sizes.push_back(1 + rng() % 30);
    sizes[0] = 150;
    SplitOptions o;
    o.seed = trial;
    o.val = 100;
    o.test = 100;
    ExpectInvariants(SplitGroups(SyntheticRecords(sizes), o), o);
  }
}

TEST(SplitTest, DeterministicUnderSeed) {
  std::vector<size_t> sizes;
  for (int g = 0; g < 60; ++g) sizes.push_back(1 + (g * 7) % 23);
  SplitOptions o;
  o.val = o.test = 80;
  o.seed = 9;
  EXPECT_EQ(SplitGroups(SyntheticRecords(sizes), o),
            SplitGroups(SyntheticRecords(sizes), o));
}

TEST(SplitTest, InsufficientData) {
  SplitOptions o;
  EXPECT_EQ(CodeOf([&] { SplitGroups(SyntheticRecords({50, 50, 50}), o); }),
            ErrorCode::kInsufficientData);
  // Enough RIRs, but all in groups too big to leave train.
  EXPECT_EQ(CodeOf([&] { SplitGroups(SyntheticRecords({100, 100, 100, 100, 100}), o); }),
            ErrorCode::kInsufficientData);
}

// --------------------------------------------------------------- pairs

CorpusManifest PairingManifest() {
  std::vector<size_t> sizes(30, 5);
  SplitOptions o;
  o.val = o.test = 20;
  return SplitGroups(SyntheticRecords(sizes), o);
}

TEST(PairsTest, CountsAndSplits) {
  const CorpusManifest m = PairingManifest();
  const std::vector<DryFile> dry = {{"a.wav", Split::kTrain},
                                    {"b.wav", Split::kVal},
                                    {"c.wav", Split::kTest}};
  const auto pairs = MakePairs(dry, m, 2, 1);
  ASSERT_EQ(pairs.size(), 6u);
  for (const auto& p : pairs) {
    EXPECT_EQ(m.FindRir(p.rir_id).split, p.split);
  }
  EXPECT_EQ(pairs[0].dry_path, "a.wav");
  EXPECT_EQ(pairs[5].dry_path, "c.wav");
}

TEST(PairsTest, DeterministicAndSeedSensitive) {
  const CorpusManifest m = PairingManifest();
  std::vector<DryFile> dry;
  for (int i = 0; i < 20; ++i) dry.push_back({"d" + std::to_string(i), Split::kTrain});
  const auto a = MakePairs(dry, m, 1, 42);
  EXPECT_EQ(a, MakePairs(dry, m, 1, 42));
  const auto b = MakePairs(dry, m, 1, 43);
  size_t differ = 0;
  for (size_t i = 0; i < a.size(); ++i) differ += a[i].rir_id != b[i].rir_id;
  EXPECT_GE(differ, 10u);
}

TEST(PairsTest, EmptySplit) {
  CorpusManifest m;
  m.rirs = SyntheticRecords({3});
  EXPECT_EQ(CodeOf([&] { MakePairs({{"x", Split::kVal}}, m, 1, 1); }),
            ErrorCode::kEmptySplit);
  EXPECT_EQ(CodeOf([&] { MakePairs({{"x", Split::kTrain}}, m, 0, 1); }),
            ErrorCode::kInvalidArgument);
}

// ----------------------------------------------------------- synthesis

double MaxAbsDiff(const Array2D& a, const Array2D& b) {
  double m = 0.0;
  for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

TEST(SynthTest, ShapesForStandardClip) {
  const Synthesized s = Synthesize(SpeechLike(40000, 1), DecayingRir(8000, 37, 2));
  const TrainingExample& ex = s.example;
  EXPECT_EQ(ex.input_logmag.rows(), 313u);
  EXPECT_EQ(ex.input_logmag.cols(), 257u);
  EXPECT_EQ(ex.dry_target_logmag.rows(), 313u);
  EXPECT_EQ(ex.rir_target_mag.rows(), 126u);
  EXPECT_EQ(ex.rir_target_mag.cols(), 257u);
  EXPECT_EQ(ex.reverb_target_mag.rows(), 313u);
  EXPECT_EQ(s.dry.size(), 80000u);
  EXPECT_EQ(s.reverb.size(), 80000u);
  for (double v : ex.reverb_target_mag.data()) ASSERT_TRUE(std::isfinite(v));
  EXPECT_GT(ex.rir_scale, 0.0);
}

TEST(SynthTest, DeltaRirGivesIdenticalInputAndTarget) {
  const Synthesized s = Synthesize(SpeechLike(30000, 3, 500), DeltaRir(100, 0));
  EXPECT_LT(MaxAbsDiff(s.example.input_logmag, s.example.dry_target_logmag), 1e-6);
  Array2D dry_mag = s.example.dry_target_logmag;
  for (double& v : dry_mag.data()) v = std::exp(v);
  for (size_t i = 0; i < dry_mag.size(); ++i) {
    const double r = s.example.reverb_target_mag.data()[i];
    if (r > dsp::kLogFloor) EXPECT_NEAR(r, dry_mag.data()[i], 1e-6);
  }
}

TEST(SynthTest, DelayedDeltaMatchesDeltaAfterAlignment) {
  const dsp::AudioClip dry = SpeechLike(30000, 4);
  const Synthesized a = Synthesize(dry, DeltaRir(1000, 0));
  const Synthesized b = Synthesize(dry, DeltaRir(1000, 480));
  EXPECT_LT(MaxAbsDiff(a.example.dry_target_logmag, b.example.dry_target_logmag), 1e-9);
  EXPECT_LT(MaxAbsDiff(a.example.input_logmag, b.example.input_logmag), 1e-6);
}

TEST(SynthTest, Deterministic) {
  const dsp::AudioClip dry = SpeechLike(20000, 5);
  const dsp::AudioClip rir = DecayingRir(4000, 12, 6);
  EXPECT_EQ(Synthesize(dry, rir).example, Synthesize(dry, rir).example);
}

TEST(SynthTest, Errors) {
  dsp::AudioClip zero_rir;
  zero_rir.samples.assign(100, 0.0);
  EXPECT_EQ(CodeOf([&] { Synthesize(SpeechLike(1000, 1), zero_rir); }),
            ErrorCode::kAllZeroRir);
  dsp::AudioClip silent;
  silent.samples.assign(1000, 0.0);
  EXPECT_EQ(CodeOf([&] { Synthesize(silent, DeltaRir(10, 0)); }),
            ErrorCode::kEmptyAfterTrim);
}

TEST(SynthTest, TinyOptions) {
  const Synthesized s =
      Synthesize(SpeechLike(64, 7), DecayingRir(10, 1, 8), TinySynthOptions());
  EXPECT_EQ(s.example.input_logmag.rows(), 9u);
  EXPECT_EQ(s.example.input_logmag.cols(), 5u);
  EXPECT_EQ(s.example.rir_target_mag.rows(), 4u);
}

// --------------------------------------------------------------- cache

TEST(ExampleCacheTest, RoundTripAtStoragePrecision) {
  TempDir dir;
  const TrainingExample ex =
      Synthesize(SpeechLike(20000, 9), DecayingRir(3000, 5, 10)).example;
  const fs::path p = dir.path() / "ex.bin";
  SaveExample(ex, p.string());
  EXPECT_EQ(LoadExample(p.string()), RoundToStorage(ex));
  std::ifstream in(p, std::ios::binary);
  char magic[4];
  in.read(magic, 4);
  EXPECT_EQ(std::string(magic, 4), "DRVB");
  const size_t expected = 32 + 4 * (3 * 313 * 257 + 126 * 257 + 4);
  EXPECT_EQ(fs::file_size(p), expected);
}

TEST(ExampleCacheTest, CorruptFiles) {
  TempDir dir;
  const TrainingExample ex =
      Synthesize(SpeechLike(4000, 9), DeltaRir(10, 0)).example;
  const fs::path p = dir.path() / "ex.bin";
  SaveExample(ex, p.string());
  fs::resize_file(p, fs::file_size(p) - 3);
  EXPECT_EQ(CodeOf([&] { LoadExample(p.string()); }), ErrorCode::kParseError);
  SaveExample(ex, p.string());
  {
    std::fstream f(p, std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(4);
    const uint32_t v = 7;
    f.write(reinterpret_cast<const char*>(&v), 4);
  }
  EXPECT_EQ(CodeOf([&] { LoadExample(p.string()); }), ErrorCode::kVersionMismatch);
  std::ofstream(p, std::ios::trunc) << "NOPE";
  EXPECT_EQ(CodeOf([&] { LoadExample(p.string()); }), ErrorCode::kParseError);
}

}  // namespace
}  // namespace dereverb::corpus
