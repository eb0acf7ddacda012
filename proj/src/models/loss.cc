// Copyright 2026 The Dereverb Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "dereverb/models/loss.h"

#include <cmath>
#include <string>

#include "dereverb/common/error.h"
#include "dereverb/nn/ops.h"

namespace dereverb::models {
namespace {

nn::Var TargetMse(nn::Tape& tape, nn::Var est, const Array2D& target,
                  const char* what) {
  const nn::Shape want = {target.rows(), target.cols()};
  if (est.shape() != want) {
    Fail(ErrorCode::kShapeMismatch, std::string(what) + " estimate " +
                                        nn::ShapeString(est.shape()) +
                                        " vs target " + nn::ShapeString(want));
  }
  return nn::Mse(est, tape.Constant(ToTensor(target)));
}

}  // namespace

nn::Tensor ToTensor(const Array2D& a) {
  return nn::Tensor({a.rows(), a.cols()}, a.data());
}

Array2D ToArray(const nn::Tensor& t) {
  if (t.rank() != 2) {
    Fail(ErrorCode::kShapeMismatch, "expected a matrix, got " +
                                        nn::ShapeString(t.shape()));
  }
  Array2D a(t.dim(0), t.dim(1));
  a.data().assign(t.values().begin(), t.values().end());
  return a;
}

nn::Var ReconstructReverb(nn::Var rir_mag, nn::Var dry_mag) {
  const nn::Shape& r = rir_mag.shape();
  const nn::Shape& d = dry_mag.shape();
  if (r.size() != 2 || d.size() != 2 || r[1] != d[1]) {
    Fail(ErrorCode::kShapeMismatch, "ReconstructReverb: rir " +
                                        nn::ShapeString(r) + ", dry " +
                                        nn::ShapeString(d));
  }
  return nn::CausalColumnConv(rir_mag, dry_mag);
}

Loss ComputeLoss(nn::Tape& tape, ModelKind kind, const Prediction& pred,
                 const corpus::TrainingExample& example,
                 const LossWeights& weights) {
  Loss loss;
  nn::Var dry, rir, rec;
  if (pred.dry_logmag.valid()) {
    dry = TargetMse(tape, pred.dry_logmag, example.dry_target_logmag, "dry");
    loss.values.dry = dry.value()[0];
  }
  if (pred.rir_mag.valid()) {
    rir = TargetMse(tape, pred.rir_mag, example.rir_target_mag, "rir");
    loss.values.rir = rir.value()[0];
  }
  if (kind != ModelKind::kJoint) {
    loss.total = dry.valid() ? dry : rir;
    if (!loss.total.valid()) {
      Fail(ErrorCode::kInvalidArgument, "prediction has no heads");
    }
    loss.values.total = loss.total.value()[0];
    return loss;
  }
  if (!dry.valid() || !rir.valid()) {
    Fail(ErrorCode::kInvalidArgument, "joint prediction needs both heads");
  }
  ValidateWeights(weights);
  Array2D dry_mag = example.dry_target_logmag;
  for (double& v : dry_mag.data()) v = std::exp(v);
  nn::Var reverb = ReconstructReverb(pred.rir_mag, tape.Constant(ToTensor(dry_mag)));
  rec = TargetMse(tape, reverb, example.reverb_target_mag, "reconstruction");
  loss.values.rec = rec.value()[0];

  for (auto [w, term] : {std::pair{weights.dry, dry}, std::pair{weights.rir, rir},
                         std::pair{weights.rec, rec}}) {
    if (w == 0.0) continue;
    nn::Var part = w == 1.0 ? term : nn::Scale(term, w);
    loss.total = loss.total.valid() ? nn::Add(loss.total, part) : part;
  }
  loss.values.total = loss.total.value()[0];
  return loss;
}

}  // namespace dereverb::models
