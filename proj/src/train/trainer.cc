// Copyright 2026 The Dereverb Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "dereverb/train/trainer.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <thread>

#include "dereverb/common/error.h"
#include "dereverb/models/tiny.h"

namespace dereverb::train {
namespace {

struct ExampleResult {
  models::LossValues loss;
  nn::Gradients grads;
};

ExampleResult ForwardBackward(const models::Model& model,
                              const corpus::TrainingExample& ex,
                              const models::LossWeights& weights,
                              bool want_grads) {
  nn::Tape tape;
  models::Prediction pred =
      model.Forward(tape, tape.Constant(models::ToTensor(ex.input_logmag)));
  models::Loss loss = models::ComputeLoss(tape, model.kind(), pred, ex, weights);
  ExampleResult r;
  r.loss = loss.values;
  if (want_grads) {
    tape.Backward(loss.total);
    r.grads = tape.ParamGradients(model.params());
  }
  return r;
}

// Runs fn(i) for i in [0, n) on up to `threads` workers. Results must be
// written to per-index slots; the caller reduces them in index order.
void ParallelFor(size_t n, int threads, const std::function<void(size_t)>& fn) {
  const size_t workers = std::min<size_t>(std::max(threads, 1), n);
  if (workers <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (size_t i = w; i < n; i += workers) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

bool Finite(const models::LossValues& v) {
  return std::isfinite(v.total) && std::isfinite(v.dry) &&
         std::isfinite(v.rir) && std::isfinite(v.rec);
}

void Accumulate(models::LossValues& acc, const models::LossValues& v) {
  acc.total += v.total;
  acc.dry += v.dry;
  acc.rir += v.rir;
  acc.rec += v.rec;
}

models::LossValues Mean(models::LossValues acc, size_t n) {
  const double inv = 1.0 / static_cast<double>(n);
  acc.total *= inv;
  acc.dry *= inv;
  acc.rir *= inv;
  acc.rec *= inv;
  return acc;
}

std::string Describe(const models::LossValues& v) {
  std::ostringstream os;
  os << "total=" << v.total << " l_dry=" << v.dry << " l_rir=" << v.rir
     << " l_rec=" << v.rec;
  return os.str();
}

}  // namespace

void Validate(const TrainConfig& c) {
  if (c.epochs < 1) Fail(ErrorCode::kInvalidArgument, "epochs must be >= 1");
  if (c.batch < 1) Fail(ErrorCode::kInvalidArgument, "batch must be >= 1");
  if (!(c.lr >= 0.0) || !std::isfinite(c.lr)) {
    Fail(ErrorCode::kInvalidArgument, "lr must be finite and >= 0");
  }
  if (c.threads < 1) Fail(ErrorCode::kInvalidArgument, "threads must be >= 1");
  if (c.checkpoint_every < 0) {
    Fail(ErrorCode::kInvalidArgument, "checkpoint_every must be >= 0");
  }
  models::ValidateWeights(c.weights);
}

nlohmann::json ResolveModelConfig(const TrainConfig& c) {
  nlohmann::json j = c.model_config.is_null()
                         ? models::DefaultConfigJson(c.kind, c.scale)
                         : c.model_config;
  if (c.kind == models::ModelKind::kJoint) j["weights"] = models::ToJson(c.weights);
  return j;
}

nlohmann::json ToJson(const TrainConfig& c) {
  return {{"model", models::ModelKindName(c.kind)},
          {"scale", models::ScaleName(c.scale)},
          {"epochs", c.epochs},
          {"batch", c.batch},
          {"lr", c.lr},
          {"weights", models::ToJson(c.weights)},
          {"seed", c.seed},
          {"threads", c.threads},
          {"checkpoint_every", c.checkpoint_every},
          {"max_val_examples", c.max_val_examples},
          {"model_config", ResolveModelConfig(c)}};
}

corpus::TrainingExample CachedExamples::Get(size_t i) const {
  return corpus::LoadExample(paths_.at(i));
}

std::string FormatLogRow(const LogRow& r) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%lld,%s,%.17g,%.17g,%.17g,%.17g",
                static_cast<long long>(r.epoch), r.split.c_str(), r.loss.total,
                r.loss.dry, r.loss.rir, r.loss.rec);
  return buf;
}

TrainState InitTrainState(const TrainConfig& config) {
  Validate(config);
  TrainState s;
  s.model = models::MakeModel(config.kind, ResolveModelConfig(config), config.seed);
  s.adam = nn::AdamState::ForParameters(s.model->params());
  s.rng = Rng(StreamSeed(config.seed, "train"));
  return s;
}

TrainState ResumeTrainState(const Checkpoint& ckpt, const TrainConfig& config) {
  Validate(config);
  if (ckpt.kind != config.kind) {
    Fail(ErrorCode::kKindMismatch,
         "checkpoint holds a " + std::string(models::ModelKindName(ckpt.kind)) +
             " model, config asks for " +
             std::string(models::ModelKindName(config.kind)));
  }
  TrainState s;
  s.model = RestoreModel(ckpt);
  s.adam = ckpt.adam;
  s.rng = DeserializeRng(ckpt.rng_state);
  s.epoch = ckpt.epoch;
  return s;
}

Checkpoint MakeCheckpoint(const TrainState& s, const TrainConfig& config) {
  Checkpoint c;
  c.kind = s.model->kind();
  c.config = s.model->config_json();
  c.params.assign(s.model->params().begin(), s.model->params().end());
  c.adam = s.adam;
  c.lr = config.lr;
  c.epoch = s.epoch;
  c.rng_state = SerializeRng(s.rng);
  return c;
}

models::LossValues EvaluateLoss(const models::Model& model,
                                const ExampleSet& examples,
                                const models::LossWeights& weights,
                                size_t limit) {
  const size_t n = limit == 0 ? examples.size() : std::min(limit, examples.size());
  if (n == 0) Fail(ErrorCode::kEmptySplit, "no examples to evaluate");
  models::LossValues acc;
  for (size_t i = 0; i < n; ++i) {
    Accumulate(acc, ForwardBackward(model, examples.Get(i), weights, false).loss);
  }
  return Mean(acc, n);
}

std::vector<LogRow> Train(TrainState& state, const TrainConfig& config,
                          const ExampleSet& train, const ExampleSet& val,
                          const EpochCallback& on_epoch) {
  Validate(config);
  if (train.size() == 0) Fail(ErrorCode::kEmptySplit, "training split is empty");
  const models::Model& model = *state.model;
  nn::ParameterStore& params = state.model->params();
  nn::AdamOptions adam;
  adam.lr = config.lr;

  std::vector<LogRow> log;
  const size_t n = train.size();
  for (int e = 0; e < config.epochs; ++e) {
    const int64_t epoch = state.epoch + 1;
    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), state.rng);

    std::vector<models::LossValues> per_example(n);
    for (size_t start = 0, b = 0; start < n; start += config.batch, ++b) {
      const size_t count = std::min(config.batch, n - start);
      std::vector<ExampleResult> results(count);
      ParallelFor(count, config.threads, [&](size_t k) {
        results[k] = ForwardBackward(model, train.Get(order[start + k]),
                                     config.weights, true);
      });
      nn::Gradients grads = nn::ZeroGradients(params);
      for (size_t k = 0; k < count; ++k) {
        if (!Finite(results[k].loss)) {
          Fail(ErrorCode::kNonFiniteLoss,
               "non-finite loss at epoch " + std::to_string(epoch) +
                   ", batch " + std::to_string(b) + ", example " +
                   std::to_string(order[start + k]) + ": " +
                   Describe(results[k].loss));
        }
        per_example[order[start + k]] = results[k].loss;
        for (size_t p = 0; p < grads.size(); ++p) {
          auto dst = grads[p].values();
          const auto& src = results[k].grads[p].values();
          for (size_t i = 0; i < dst.size(); ++i) dst[i] += src[i];
        }
      }
      const double inv = 1.0 / static_cast<double>(count);
      for (auto& g : grads) {
        for (double& v : g.values()) v *= inv;
      }
      nn::AdamStep(params, grads, state.adam, adam);
    }

    std::vector<LogRow> rows;
    models::LossValues acc;
    for (const auto& v : per_example) Accumulate(acc, v);
    rows.push_back({epoch, "train", Mean(acc, n)});
    if (val.size() > 0) {
      const models::LossValues v =
          EvaluateLoss(model, val, config.weights, config.max_val_examples);
      if (!Finite(v)) {
        Fail(ErrorCode::kNonFiniteLoss, "non-finite validation loss at epoch " +
                                            std::to_string(epoch) + ": " +
                                            Describe(v));
      }
      rows.push_back({epoch, "val", v});
    }
    state.epoch = epoch;
    if (on_epoch) on_epoch(state, rows);
    log.insert(log.end(), rows.begin(), rows.end());
  }
  return log;
}

}  // namespace dereverb::train
