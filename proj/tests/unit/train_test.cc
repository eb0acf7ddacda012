// Copyright 2026 The Dereverb Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <gtest/gtest.h>

#include <unistd.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

#include "dereverb/common/error.h"
#include "dereverb/models/tiny.h"
#include "dereverb/train/checkpoint.h"
#include "dereverb/train/trainer.h"

namespace dereverb::train {
namespace {

namespace fs = std::filesystem;
using models::ModelKind;

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("dereverb_train_" + std::to_string(::getpid()) + "_" +
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
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kInvalidArgument;
}

TrainConfig TinyConfig(ModelKind kind) {
  TrainConfig c;
  c.kind = kind;
  c.scale = models::Scale::kTiny;
  c.epochs = 3;
  c.batch = 2;
  c.lr = 1e-3;
  c.seed = 11;
  return c;
}

InMemoryExamples TinyExamples(ModelKind kind, size_t n, uint64_t seed) {
  Rng rng(seed);
  std::vector<corpus::TrainingExample> out;
  for (size_t i = 0; i < n; ++i) {
    out.push_back(models::RandomExample(models::TinyExampleShape(kind), rng));
  }
  return InMemoryExamples(std::move(out));
}

nn::Tensor ForwardDry(const models::Model& model,
                      const corpus::TrainingExample& ex) {
  nn::Tape tape;
  auto pred = model.Forward(tape, tape.Constant(models::ToTensor(ex.input_logmag)));
  return pred.dry_logmag.value();
}

nn::Tensor ForwardRir(const models::Model& model,
                      const corpus::TrainingExample& ex) {
  nn::Tape tape;
  auto pred = model.Forward(tape, tape.Constant(models::ToTensor(ex.input_logmag)));
  return pred.rir_mag.value();
}

Checkpoint TrainedCheckpoint(ModelKind kind) {
  TrainConfig c = TinyConfig(kind);
  TrainState s = InitTrainState(c);
  auto data = TinyExamples(kind, 4, 3);
  Train(s, c, data, InMemoryExamples({}));
  return MakeCheckpoint(s, c);
}

TEST(CheckpointTest, RoundTripIsIdentityAfterRounding) {
  TempDir dir;
  for (ModelKind kind : {ModelKind::kRir, ModelKind::kDryGru,
                         ModelKind::kDryUnet, ModelKind::kJoint}) {
    Checkpoint ckpt = TrainedCheckpoint(kind);
    for (auto& p : ckpt.params) {
      for (double& v : p.value.values()) v = static_cast<float>(v);
    }
    const fs::path path = dir.path() / "model.ckpt";
    SaveCheckpoint(ckpt, path);
    Checkpoint loaded = LoadCheckpoint(path);
    EXPECT_TRUE(loaded == ckpt) << models::ModelKindName(kind);
    const fs::path again = dir.path() / "again.ckpt";
    SaveCheckpoint(loaded, again);
    std::ifstream a(path, std::ios::binary), b(again, std::ios::binary);
    std::string sa((std::istreambuf_iterator<char>(a)), {});
    std::string sb((std::istreambuf_iterator<char>(b)), {});
    EXPECT_EQ(sa, sb);
    EXPECT_EQ(sa.substr(0, 4), "DRVB");
  }
}

TEST(CheckpointTest, TruncatedFileIsParseError) {
  TempDir dir;
  const fs::path path = dir.path() / "model.ckpt";
  SaveCheckpoint(TrainedCheckpoint(ModelKind::kRir), path);
  const auto size = fs::file_size(path);
  for (auto keep : {size_t{0}, size_t{3}, size_t{12}, size_t{40},
                    static_cast<size_t>(size / 2), static_cast<size_t>(size - 1)}) {
    fs::resize_file(path, keep);
    EXPECT_EQ(CodeOf([&] { LoadCheckpoint(path); }), ErrorCode::kParseError)
        << keep;
    SaveCheckpoint(TrainedCheckpoint(ModelKind::kRir), path);
  }
}

TEST(CheckpointTest, TrailingBytesAndBadMagicRejected) {
  TempDir dir;
  const fs::path path = dir.path() / "model.ckpt";
  SaveCheckpoint(TrainedCheckpoint(ModelKind::kRir), path);
  { std::ofstream(path, std::ios::binary | std::ios::app) << 'x'; }
  EXPECT_EQ(CodeOf([&] { LoadCheckpoint(path); }), ErrorCode::kParseError);
  SaveCheckpoint(TrainedCheckpoint(ModelKind::kRir), path);
  {
    std::fstream f(path, std::ios::binary | std::ios::in | std::ios::out);
    f.write("XXXX", 4);
  }
  EXPECT_EQ(CodeOf([&] { LoadCheckpoint(path); }), ErrorCode::kParseError);
}

TEST(CheckpointTest, FutureVersionIsVersionMismatch) {
  TempDir dir;
  const fs::path path = dir.path() / "model.ckpt";
  SaveCheckpoint(TrainedCheckpoint(ModelKind::kRir), path);
  {
    std::fstream f(path, std::ios::binary | std::ios::in | std::ios::out);
    f.seekp(4);
    const char version[4] = {9, 0, 0, 0};
    f.write(version, 4);
  }
  EXPECT_EQ(CodeOf([&] { LoadCheckpoint(path); }), ErrorCode::kVersionMismatch);
}

TEST(CheckpointTest, MissingFileIsIoFailure) {
  EXPECT_EQ(CodeOf([] { LoadCheckpoint("/nonexistent/dir/model.ckpt"); }),
            ErrorCode::kIoFailure);
}

TEST(CheckpointTest, ForwardMatchesExactlyAfterLoad) {
  TempDir dir;
  for (ModelKind kind : {ModelKind::kRir, ModelKind::kDryGru,
                         ModelKind::kDryUnet, ModelKind::kJoint}) {
    TrainConfig c = TinyConfig(kind);
    TrainState s = InitTrainState(c);
    auto data = TinyExamples(kind, 2, 5);
    Train(s, c, data, InMemoryExamples({}));
    RoundToStorage(s.model->params());
    const fs::path path = dir.path() / "model.ckpt";
    SaveCheckpoint(MakeCheckpoint(s, c), path);
    auto restored = RestoreModel(LoadCheckpoint(path));
    const auto ex = data.Get(0);
    if (kind != ModelKind::kRir) {
      EXPECT_EQ(ForwardDry(*s.model, ex), ForwardDry(*restored, ex));
    }
    if (kind == ModelKind::kRir || kind == ModelKind::kJoint) {
      EXPECT_EQ(ForwardRir(*s.model, ex), ForwardRir(*restored, ex));
    }
  }
}

TEST(CheckpointTest, RestoreRejectsRenamedParameter) {
  Checkpoint ckpt = TrainedCheckpoint(ModelKind::kRir);
  ckpt.params[0].name = "bogus";
  EXPECT_EQ(CodeOf([&] { RestoreModel(ckpt); }), ErrorCode::kParseError);
}

TEST(TrainConfigTest, Validation) {
  TrainConfig c = TinyConfig(ModelKind::kRir);
  c.epochs = 0;
  EXPECT_EQ(CodeOf([&] { Validate(c); }), ErrorCode::kInvalidArgument);
  c = TinyConfig(ModelKind::kRir);
  c.batch = 0;
  EXPECT_EQ(CodeOf([&] { Validate(c); }), ErrorCode::kInvalidArgument);
  c = TinyConfig(ModelKind::kRir);
  c.lr = -1e-3;
  EXPECT_EQ(CodeOf([&] { Validate(c); }), ErrorCode::kInvalidArgument);
  c.lr = std::numeric_limits<double>::quiet_NaN();
  EXPECT_EQ(CodeOf([&] { Validate(c); }), ErrorCode::kInvalidArgument);
  c = TinyConfig(ModelKind::kRir);
  c.threads = 0;
  EXPECT_EQ(CodeOf([&] { Validate(c); }), ErrorCode::kInvalidArgument);
  c = TinyConfig(ModelKind::kJoint);
  c.weights = {0, 0, 0};
  EXPECT_EQ(CodeOf([&] { Validate(c); }), ErrorCode::kInvalidArgument);
}

TEST(TrainConfigTest, JointWeightsFoldIntoModelConfig) {
  TrainConfig c = TinyConfig(ModelKind::kJoint);
  c.weights = {1, 0, 0};
  const auto j = ResolveModelConfig(c);
  EXPECT_EQ(j["weights"]["rec"], 0.0);
  EXPECT_EQ(ToJson(c)["model"], "joint");
}

TEST(TrainerTest, SameSeedSameLog) {
  for (ModelKind kind : {ModelKind::kRir, ModelKind::kDryGru,
                         ModelKind::kDryUnet, ModelKind::kJoint}) {
    auto data = TinyExamples(kind, 5, 1);
    auto val = TinyExamples(kind, 2, 2);
    TrainConfig c = TinyConfig(kind);
    TrainState a = InitTrainState(c);
    TrainState b = InitTrainState(c);
    EXPECT_EQ(Train(a, c, data, val), Train(b, c, data, val));
  }
}

TEST(TrainerTest, ThreadCountDoesNotChangeLog) {
  auto data = TinyExamples(ModelKind::kJoint, 7, 1);
  TrainConfig c = TinyConfig(ModelKind::kJoint);
  c.batch = 4;
  TrainState a = InitTrainState(c);
  const auto serial = Train(a, c, data, InMemoryExamples({}));
  c.threads = 3;
  TrainState b = InitTrainState(c);
  EXPECT_EQ(serial, Train(b, c, data, InMemoryExamples({})));
}

TEST(TrainerTest, LogLayout) {
  auto data = TinyExamples(ModelKind::kJoint, 3, 1);
  auto val = TinyExamples(ModelKind::kJoint, 40, 2);
  TrainConfig c = TinyConfig(ModelKind::kJoint);
  TrainState s = InitTrainState(c);
  const auto log = Train(s, c, data, val);
  ASSERT_EQ(log.size(), 6u);
  for (size_t i = 0; i < log.size(); ++i) {
    EXPECT_EQ(log[i].epoch, static_cast<int64_t>(i / 2 + 1));
    EXPECT_EQ(log[i].split, i % 2 == 0 ? "train" : "val");
  }
  EXPECT_EQ(s.epoch, 3);
  // Validation uses at most the first 32 examples.
  const auto capped = EvaluateLoss(*s.model, val, c.weights, 32);
  EXPECT_EQ(log.back().loss, capped);
  EXPECT_EQ(FormatLogRow({2, "val", {1.5, 0.25, 0.5, 0.75}}),
            "2,val,1.5,0.25,0.5,0.75");
}

TEST(TrainerTest, ZeroLearningRateGivesConstantLog) {
  auto data = TinyExamples(ModelKind::kJoint, 5, 1);
  auto val = TinyExamples(ModelKind::kJoint, 2, 2);
  TrainConfig c = TinyConfig(ModelKind::kJoint);
  c.lr = 0.0;
  c.epochs = 4;
  TrainState s = InitTrainState(c);
  const auto log = Train(s, c, data, val);
  for (size_t i = 2; i < log.size(); ++i) {
    EXPECT_EQ(log[i].loss, log[i % 2].loss);
  }
}

TEST(TrainerTest, LossDecreasesOnTinyProblem) {
  auto data = TinyExamples(ModelKind::kRir, 4, 1);
  TrainConfig c = TinyConfig(ModelKind::kRir);
  c.epochs = 100;
  c.lr = 1e-2;
  TrainState s = InitTrainState(c);
  const auto log = Train(s, c, data, InMemoryExamples({}));
  EXPECT_LT(log.back().loss.total, 0.5 * log.front().loss.total);
}

TEST(TrainerTest, ResumeMatchesUninterruptedRun) {
  TempDir dir;
  auto data = TinyExamples(ModelKind::kJoint, 5, 1);
  auto val = TinyExamples(ModelKind::kJoint, 2, 2);
  TrainConfig c = TinyConfig(ModelKind::kJoint);
  c.epochs = 10;
  TrainState full = InitTrainState(c);
  const auto full_log = Train(full, c, data, val);

  c.epochs = 5;
  TrainState first = InitTrainState(c);
  auto log = Train(first, c, data, val);
  const fs::path path = dir.path() / "half.ckpt";
  SaveCheckpoint(MakeCheckpoint(first, c), path);
  TrainState second = ResumeTrainState(LoadCheckpoint(path), c);
  EXPECT_EQ(second.epoch, 5);
  const auto rest = Train(second, c, data, val);
  log.insert(log.end(), rest.begin(), rest.end());

  ASSERT_EQ(log.size(), full_log.size());
  for (size_t i = 0; i < log.size(); ++i) {
    EXPECT_EQ(log[i].epoch, full_log[i].epoch);
    EXPECT_EQ(log[i].split, full_log[i].split);
    EXPECT_NEAR(log[i].loss.total, full_log[i].loss.total, 1e-6);
    EXPECT_NEAR(log[i].loss.dry, full_log[i].loss.dry, 1e-6);
    EXPECT_NEAR(log[i].loss.rir, full_log[i].loss.rir, 1e-6);
    EXPECT_NEAR(log[i].loss.rec, full_log[i].loss.rec, 1e-6);
  }
}

TEST(TrainerTest, ResumeWithWrongKindFails) {
  Checkpoint ckpt = TrainedCheckpoint(ModelKind::kRir);
  EXPECT_EQ(CodeOf([&] { ResumeTrainState(ckpt, TinyConfig(ModelKind::kJoint)); }),
            ErrorCode::kKindMismatch);
}

TEST(TrainerTest, NonFiniteLossAborts) {
  auto data = TinyExamples(ModelKind::kRir, 3, 1);
  std::vector<corpus::TrainingExample> bad;
  for (size_t i = 0; i < data.size(); ++i) bad.push_back(data.Get(i));
  bad[1].rir_target_mag(0, 0) = std::numeric_limits<float>::infinity();
  TrainConfig c = TinyConfig(ModelKind::kRir);
  TrainState s = InitTrainState(c);
  try {
    Train(s, c, InMemoryExamples(bad), InMemoryExamples({}));
    FAIL() << "expected NonFiniteLoss";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonFiniteLoss);
    EXPECT_NE(std::string(e.what()).find("example 1"), std::string::npos)
        << e.what();
  }
}

TEST(TrainerTest, EmptyTrainingSplitFails) {
  TrainConfig c = TinyConfig(ModelKind::kRir);
  TrainState s = InitTrainState(c);
  EXPECT_EQ(CodeOf([&] { Train(s, c, InMemoryExamples({}), InMemoryExamples({})); }),
            ErrorCode::kEmptySplit);
}

TEST(TrainerTest, JointOverfitsSingleExample) {
  InMemoryExamples data({models::SynthesizedTinyExample(4)});
  TrainConfig c = TinyConfig(ModelKind::kJoint);
  c.epochs = 500;
  c.batch = 1;
  TrainState s = InitTrainState(c);
  const auto log = Train(s, c, data, InMemoryExamples({}));
  const auto& first = log.front().loss;
  const auto& last = log.back().loss;
  EXPECT_LE(last.total, 0.1 * first.total);
  EXPECT_LE(last.dry, 0.5 * first.dry);
  EXPECT_LE(last.rir, 0.5 * first.rir);
  EXPECT_LE(last.rec, 0.5 * first.rec);
}

}  // namespace
}  // namespace dereverb::train
