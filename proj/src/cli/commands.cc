// Copyright 2026 The Dereverb Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "dereverb/cli/commands.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>

#include "dereverb/corpus/ingest.h"
#include "dereverb/corpus/manifest.h"
#include "dereverb/corpus/pairs.h"
#include "dereverb/corpus/split.h"
#include "dereverb/corpus/synth.h"
#include "dereverb/dsp/audio.h"
#include "dereverb/dsp/stft.h"
#include "dereverb/eval/metrics.h"
#include "dereverb/eval/report.h"
#include "dereverb/models/config.h"
#include "dereverb/models/model.h"
#include "dereverb/models/tiny.h"
#include "dereverb/train/checkpoint.h"
#include "dereverb/train/trainer.h"
#include "json.hpp"

namespace dereverb::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

inline constexpr double kGradcheckTolerance = 1e-4;

void PrintConfig(std::ostream& out, const std::string& command,
                 const ordered_json& config) {
  out << command << " config: " << config.dump() << '\n';
}

std::string Counts(const corpus::SplitCounts& c) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), "train=%zu val=%zu test=%zu discarded=%zu",
                c[0], c[1], c[2], c[3]);
  return buf;
}

// Path stored in a manifest: relative to the manifest's directory.
std::string StorePath(const fs::path& file, const fs::path& manifest) {
  const fs::path base = fs::weakly_canonical(fs::absolute(manifest).parent_path());
  return fs::weakly_canonical(fs::absolute(file)).lexically_relative(base).generic_string();
}

void CreateDirs(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) Fail(ErrorCode::kIoFailure, "cannot create " + dir.string() + ": " + ec.message());
}

// Dry files split by train/, val/ and test/ subdirectories when present;
// otherwise every file is training material.
std::vector<corpus::DryFile> ListDryFiles(const fs::path& dir,
                                          const fs::path& manifest) {
  std::vector<corpus::DryFile> out;
  bool split_dirs = false;
  for (corpus::Split s : {corpus::Split::kTrain, corpus::Split::kVal, corpus::Split::kTest}) {
    const fs::path sub = dir / std::string(corpus::SplitName(s));
    if (!fs::is_directory(sub)) continue;
    split_dirs = true;
    for (const fs::path& f : corpus::ListWavFiles(sub)) {
      out.push_back({StorePath(f, manifest), s});
    }
  }
  if (!split_dirs) {
    for (const fs::path& f : corpus::ListWavFiles(dir)) {
      out.push_back({StorePath(f, manifest), corpus::Split::kTrain});
    }
  }
  if (out.empty()) Fail(ErrorCode::kNoFilesFound, "no WAV files under " + dir.string());
  return out;
}

std::vector<std::string> CachePaths(const corpus::CorpusManifest& m,
                                    const fs::path& manifest, corpus::Split split) {
  std::vector<std::string> paths;
  for (const auto& p : m.pairs) {
    if (p.split != split) continue;
    if (p.cache_path.empty()) {
      Fail(ErrorCode::kInvalidArgument, "pair without cached example; run synth first");
    }
    paths.push_back(corpus::ResolveFromManifest(manifest, p.cache_path).string());
  }
  return paths;
}

std::string ExampleId(const corpus::PairRecord& p) {
  return fs::path(p.cache_path).stem().string();
}

models::LossWeights ParseWeights(const std::vector<double>& w) {
  if (w.size() != 3) {
    Fail(ErrorCode::kInvalidArgument, "--weights takes w_dry,w_rir,w_rec");
  }
  models::LossWeights weights{w[0], w[1], w[2]};
  models::ValidateWeights(weights);
  return weights;
}

std::string LossLine(const models::LossValues& v) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), "total=%.6g l_dry=%.6g l_rir=%.6g l_rec=%.6g",
                v.total, v.dry, v.rir, v.rec);
  return buf;
}

void PrintModel(const models::Model& model, std::ostream& out) {
  out << "model: " << models::ModelKindName(model.kind()) << '\n';
  out << "config: " << model.config_json().dump() << '\n';
  out << model.Describe();
  for (const auto& p : model.params()) {
    out << "  " << p.name << " [";
    for (size_t i = 0; i < p.value.shape().size(); ++i) {
      out << (i ? "x" : "") << p.value.shape()[i];
    }
    out << "] " << p.value.size() << '\n';
  }
  out << "parameters: " << model.params().TotalElements() << '\n';
}

}  // namespace

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIoFailure:
      return kExitIo;
    case ErrorCode::kInvalidArgument:
      return kExitUsage;
    case ErrorCode::kNotScalarLoss:
    case ErrorCode::kNonFiniteLoss:
    case ErrorCode::kZeroEnergy:
    case ErrorCode::kInsufficientDecay:
      return kExitNumeric;
    default:
      return kExitData;
  }
}

void RunPrepare(const PrepareOptions& o, std::ostream& out, std::ostream& err) {
  PrintConfig(out, "prepare",
              {{"rir_dir", o.rir_dir}, {"group_pattern", o.group_pattern},
               {"val", o.val}, {"test", o.test}, {"cap", o.cap},
               {"big_group", o.big_group}, {"seed", o.seed}, {"out", o.out}});
  corpus::IngestResult ingest = corpus::IngestRirs(o.rir_dir, o.group_pattern);
  for (const auto& w : ingest.warnings) err << "warning: " << w << '\n';
  for (auto& r : ingest.records) r.path = StorePath(r.path, o.out);
  corpus::SplitOptions split;
  split.val = o.val;
  split.test = o.test;
  split.cap = o.cap;
  split.big_group = o.big_group;
  split.seed = StreamSeed(o.seed, "prepare");
  const corpus::CorpusManifest manifest =
      corpus::SplitGroups(std::move(ingest.records), split);
  if (fs::path(o.out).has_parent_path()) CreateDirs(fs::path(o.out).parent_path());
  corpus::SaveManifest(manifest, o.out);
  const auto counts = manifest.CountRirs();
  out << "rirs: " << Counts(counts) << " skipped=" << ingest.skipped << '\n';
  out << "discarded: " << counts[3] << '\n';
  out << "wrote " << o.out << '\n';
}

void RunSynth(const SynthOptions& o, std::ostream& out, std::ostream& err) {
  PrintConfig(out, "synth",
              {{"manifest", o.manifest}, {"dry_dir", o.dry_dir},
               {"rirs_per_dry", o.rirs_per_dry}, {"seed", o.seed},
               {"out_dir", o.out_dir}});
  corpus::CorpusManifest manifest = corpus::LoadManifest(o.manifest);
  const fs::path out_manifest = fs::path(o.out_dir) / "manifest.jsonl";
  CreateDirs(o.out_dir);
  // Re-anchor stored RIR paths at the new manifest.
  for (auto& r : manifest.rirs) {
    r.path = StorePath(corpus::ResolveFromManifest(o.manifest, r.path), out_manifest);
  }
  const auto dry = ListDryFiles(o.dry_dir, out_manifest);
  std::vector<corpus::PairRecord> pairs =
      corpus::MakePairs(dry, manifest, o.rirs_per_dry, StreamSeed(o.seed, "synth"));
  for (size_t i = 0; i < pairs.size(); ++i) {
    corpus::PairRecord& p = pairs[i];
    char name[32];
    std::snprintf(name, sizeof(name), "pair_%06zu.bin", i);
    const fs::path rel = fs::path("cache") / std::string(corpus::SplitName(p.split)) / name;
    CreateDirs((fs::path(o.out_dir) / rel).parent_path());
    const corpus::Synthesized s = corpus::SynthesizeFiles(
        corpus::ResolveFromManifest(out_manifest, p.dry_path),
        corpus::ResolveFromManifest(out_manifest, manifest.FindRir(p.rir_id).path));
    corpus::SaveExample(s.example, (fs::path(o.out_dir) / rel).string());
    p.cache_path = rel.generic_string();
  }
  manifest.pairs = std::move(pairs);
  corpus::SaveManifest(manifest, out_manifest);
  (void)err;
  out << "pairs: " << Counts(manifest.CountPairs()) << '\n';
  out << "wrote " << manifest.pairs.size() << " cached examples and "
      << out_manifest.string() << '\n';
}

void RunTrain(const TrainOptions& o, std::ostream& out, std::ostream& err) {
  train::TrainConfig config;
  config.kind = models::ParseModelKind(o.model);
  config.scale = models::ParseScale(o.scale);
  config.epochs = o.epochs;
  config.batch = o.batch;
  config.lr = o.lr;
  config.weights = ParseWeights(o.weights);
  config.seed = o.seed;
  config.threads = o.threads;
  config.checkpoint_every = o.checkpoint_every;
  train::Validate(config);
  ordered_json resolved = train::ToJson(config);
  resolved["manifest"] = o.manifest;
  resolved["resume"] = o.resume;
  resolved["out"] = o.out;
  PrintConfig(out, "train", resolved);

  const corpus::CorpusManifest manifest = corpus::LoadManifest(o.manifest);
  const train::CachedExamples train_set(CachePaths(manifest, o.manifest, corpus::Split::kTrain));
  const train::CachedExamples val_set(CachePaths(manifest, o.manifest, corpus::Split::kVal));
  if (train_set.size() == 0) Fail(ErrorCode::kEmptySplit, "manifest has no training pairs");

  train::TrainState state = o.resume.empty()
                                ? train::InitTrainState(config)
                                : train::ResumeTrainState(train::LoadCheckpoint(o.resume), config);
  CreateDirs(o.out);
  const fs::path log_path = fs::path(o.out) / "train_log.csv";
  const bool append = !o.resume.empty() && fs::exists(log_path);
  std::ofstream log(log_path, append ? std::ios::binary | std::ios::app : std::ios::binary);
  if (!log) Fail(ErrorCode::kIoFailure, "cannot write " + log_path.string());
  if (!append) log << train::kLogHeader << '\n';

  auto on_epoch = [&](const train::TrainState& s, const std::vector<train::LogRow>& rows) {
    for (const auto& r : rows) {
      log << train::FormatLogRow(r) << '\n';
      out << "epoch " << r.epoch << ' ' << r.split << ' ' << LossLine(r.loss) << '\n';
    }
    log.flush();
    if (!log) Fail(ErrorCode::kIoFailure, "failed writing " + log_path.string());
    if (config.checkpoint_every > 0 && s.epoch % config.checkpoint_every == 0) {
      char name[48];
      std::snprintf(name, sizeof(name), "checkpoint_epoch_%04lld.bin",
                    static_cast<long long>(s.epoch));
      train::SaveCheckpoint(train::MakeCheckpoint(s, config), fs::path(o.out) / name);
    }
  };
  std::vector<train::LogRow> rows;
  try {
    rows = train::Train(state, config, train_set, val_set, on_epoch);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kNonFiniteLoss) {
      // Leave the state the failure happened in for inspection.
      const fs::path dump = fs::path(o.out) / "nonfinite_state.bin";
      train::SaveCheckpoint(train::MakeCheckpoint(state, config), dump);
      err << "diagnostic: " << e.what() << "\ndiagnostic: model state at failure in "
          << dump.string() << '\n';
    }
    throw;
  }
  const fs::path ckpt = fs::path(o.out) / "checkpoint.bin";
  train::SaveCheckpoint(train::MakeCheckpoint(state, config), ckpt);
  for (const auto& r : rows) {
    if (r.epoch == state.epoch) out << "final " << r.split << ' ' << LossLine(r.loss) << '\n';
  }
  out << "wrote " << ckpt.string() << " and " << log_path.string() << '\n';
}

int RunGradcheck(const GradcheckOptions& o, std::ostream& out) {
  PrintConfig(out, "gradcheck", {{"model", o.model}, {"seed", o.seed},
                                 {"tolerance", kGradcheckTolerance}});
  std::vector<models::ModelKind> kinds;
  if (o.model == "all") {
    kinds = {models::ModelKind::kRir, models::ModelKind::kDryGru,
             models::ModelKind::kDryUnet, models::ModelKind::kJoint};
  } else {
    kinds = {models::ParseModelKind(o.model)};
  }
  double worst = 0.0;
  for (models::ModelKind kind : kinds) {
    const nn::GradCheckResult r = models::TinyModelGradCheck(kind, o.seed);
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "%s max_rel_error=%.3e checked=%zu worst=%s[%zu]\n",
                  std::string(models::ModelKindName(kind)).c_str(),
                  r.max_rel_error, r.checked, r.worst_param.c_str(), r.worst_index);
    out << buf;
    worst = std::max(worst, r.max_rel_error);
  }
  const bool ok = worst <= kGradcheckTolerance;
  out << (ok ? "gradcheck passed" : "gradcheck FAILED") << '\n';
  return ok ? kExitOk : kExitNumeric;
}

void RunEval(const EvalOptions& o, std::ostream& out, std::ostream& err) {
  PrintConfig(out, "eval", {{"ckpt", o.ckpt}, {"manifest", o.manifest},
                            {"split", o.split}, {"report", o.report},
                            {"audition_dir", o.audition_dir},
                            {"audition_count", o.audition_count}});
  const corpus::Split split = corpus::ParseSplit(o.split);
  const train::Checkpoint ckpt = train::LoadCheckpoint(o.ckpt);
  const auto model = train::RestoreModel(ckpt);
  const corpus::CorpusManifest manifest = corpus::LoadManifest(o.manifest);
  std::vector<eval::NamedExample> examples;
  std::vector<const corpus::PairRecord*> pairs;
  for (const auto& p : manifest.pairs) {
    if (p.split != split) continue;
    if (p.cache_path.empty()) {
      Fail(ErrorCode::kInvalidArgument, "pair without cached example; run synth first");
    }
    examples.push_back({ExampleId(p), corpus::LoadExample(
        corpus::ResolveFromManifest(o.manifest, p.cache_path).string())});
    pairs.push_back(&p);
  }
  if (examples.empty()) Fail(ErrorCode::kEmptySplit, "split " + o.split + " has no pairs");
  const eval::MetricsReport report = eval::Evaluate(*model, examples);
  if (fs::path(o.report).has_parent_path()) CreateDirs(fs::path(o.report).parent_path());
  eval::WriteReportCsv(report, fs::path(o.report));
  for (const auto& [metric, agg] : report.aggregates) {
    out << metric << " mean=" << agg.mean << " std=" << agg.std << " n=" << agg.count << '\n';
  }
  for (const auto& [metric, n] : report.undefined) {
    if (n > 0) err << "warning: " << metric << " undefined for " << n << " examples\n";
  }
  out << "wrote " << o.report << '\n';

  if (o.audition_dir.empty() || model->kind() == models::ModelKind::kRir) return;
  CreateDirs(o.audition_dir);
  for (size_t i = 0; i < std::min(o.audition_count, pairs.size()); ++i) {
    const corpus::PairRecord& p = *pairs[i];
    const corpus::Synthesized s = corpus::SynthesizeFiles(
        corpus::ResolveFromManifest(o.manifest, p.dry_path),
        corpus::ResolveFromManifest(o.manifest, manifest.FindRir(p.rir_id).path));
    const dsp::ComplexSpectrogram spec = dsp::Stft(s.reverb);
    nn::Tape tape;
    const models::Prediction pred = model->Forward(
        tape, tape.Constant(models::ToTensor(examples[i].example.input_logmag)));
    const dsp::AudioClip est = eval::ReconstructAudio(
        models::ToArray(pred.dry_logmag.value()), spec, s.example.input_scale,
        s.reverb.size());
    const fs::path base = fs::path(o.audition_dir) / examples[i].id;
    dsp::WriteWav(base.string() + "_reverb.wav", s.reverb, dsp::WavFormat::kFloat32);
    dsp::WriteWav(base.string() + "_dry.wav", s.dry, dsp::WavFormat::kFloat32);
    dsp::WriteWav(base.string() + "_estimate.wav", est, dsp::WavFormat::kFloat32);
  }
  out << "wrote auditions to " << o.audition_dir << '\n';
}

void RunInfo(const InfoOptions& o, std::ostream& out) {
  PrintConfig(out, "info", {{"ckpt", o.ckpt}, {"model", o.model}, {"scale", o.scale}});
  if (!o.ckpt.empty()) {
    const train::Checkpoint ckpt = train::LoadCheckpoint(o.ckpt);
    out << "epoch: " << ckpt.epoch << "\nlr: " << ckpt.lr
        << "\nadam_step: " << ckpt.adam.step << '\n';
    PrintModel(*train::RestoreModel(ckpt), out);
    return;
  }
  if (o.model.empty()) Fail(ErrorCode::kInvalidArgument, "info needs --ckpt or --model");
  PrintModel(*models::MakeModel(models::ParseModelKind(o.model),
                                models::ParseScale(o.scale), 0),
             out);
}

}  // namespace dereverb::cli
