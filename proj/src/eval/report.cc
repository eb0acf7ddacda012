// Copyright 2026 The Dereverb Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "dereverb/eval/report.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "dereverb/common/error.h"
#include "dereverb/eval/metrics.h"
#include "dereverb/models/loss.h"

namespace dereverb::eval {
namespace {

using models::ModelKind;

bool HasDry(ModelKind k) { return k != ModelKind::kRir; }
bool HasRir(ModelKind k) { return k == ModelKind::kRir || k == ModelKind::kJoint; }

Array2D Exp(const Array2D& a) {
  Array2D out = a;
  for (double& v : out.data()) v = std::exp(v);
  return out;
}

// Curve of an estimate, or nothing when the estimate has no energy.
std::optional<std::vector<double>> TryEdc(const Array2D& mag) {
  try {
    return EnergyDecayCurve(mag);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kZeroEnergy) throw;
    return std::nullopt;
  }
}

std::optional<double> TryT60(const std::vector<double>& edc) {
  try {
    return T60Estimate(edc);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kInsufficientDecay) throw;
    return std::nullopt;
  }
}

std::string Format(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::vector<std::string> MetricNames(ModelKind kind) {
  std::vector<std::string> names;
  if (HasDry(kind)) names.insert(names.end(), {"lsd", "mag_mse"});
  if (HasRir(kind)) names.insert(names.end(), {"rir_mse", "edc_mse", "t60_error"});
  if (kind == ModelKind::kJoint) names.push_back("l_rec");
  return names;
}

MetricsReport Evaluate(const models::Model& model,
                       const std::vector<NamedExample>& examples) {
  if (examples.empty()) Fail(ErrorCode::kEmptySplit, "no examples to evaluate");
  MetricsReport report;
  report.kind = model.kind();
  for (const auto& name : MetricNames(report.kind)) report.undefined[name] = 0;

  for (const NamedExample& named : examples) {
    const corpus::TrainingExample& ex = named.example;
    nn::Tape tape;
    const models::Prediction pred =
        model.Forward(tape, tape.Constant(models::ToTensor(ex.input_logmag)));
    auto add = [&](const std::string& metric, double value) {
      if (!std::isfinite(value)) {
        Fail(ErrorCode::kNonFiniteLoss,
             metric + " is not finite for example " + named.id);
      }
      report.rows.push_back({named.id, metric, value});
    };

    if (HasDry(report.kind)) {
      const Array2D est = models::ToArray(pred.dry_logmag.value());
      add("lsd", LogSpectralDistance(est, ex.dry_target_logmag));
      add("mag_mse", MeanSquaredError(Exp(est), Exp(ex.dry_target_logmag)));
    }
    if (HasRir(report.kind)) {
      const Array2D est = models::ToArray(pred.rir_mag.value());
      add("rir_mse", MeanSquaredError(est, ex.rir_target_mag));
      const std::vector<double> ref_edc = EnergyDecayCurve(ex.rir_target_mag);
      const auto est_edc = TryEdc(est);
      if (est_edc) {
        double sum = 0.0;
        for (size_t t = 0; t < ref_edc.size(); ++t) {
          const double d = (*est_edc)[t] - ref_edc[t];
          sum += d * d;
        }
        add("edc_mse", sum / static_cast<double>(ref_edc.size()));
      } else {
        ++report.undefined["edc_mse"];
      }
      const auto ref_t60 = TryT60(ref_edc);
      const auto est_t60 = est_edc ? TryT60(*est_edc) : std::nullopt;
      if (ref_t60 && est_t60) {
        add("t60_error", std::abs(*est_t60 - *ref_t60));
      } else {
        ++report.undefined["t60_error"];
      }
    }
    if (report.kind == ModelKind::kJoint) {
      const nn::Var dry_mag =
          tape.Constant(models::ToTensor(Exp(ex.dry_target_logmag)));
      const nn::Var rec = models::ReconstructReverb(pred.rir_mag, dry_mag);
      add("l_rec", MeanSquaredError(models::ToArray(rec.value()),
                                    ex.reverb_target_mag));
    }
  }

  std::map<std::string, std::vector<double>> by_metric;
  for (const MetricRow& r : report.rows) by_metric[r.metric].push_back(r.value);
  for (auto& [metric, values] : by_metric) {
    std::sort(values.begin(), values.end());
    const double n = static_cast<double>(values.size());
    double sum = 0.0;
    for (double v : values) sum += v;
    const double mean = sum / n;
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    report.aggregates[metric] = {mean, std::sqrt(var / n), values.size()};
  }
  return report;
}

void WriteReportCsv(const MetricsReport& report, std::ostream& out) {
  out << "example_id,metric,value\n";
  for (const MetricRow& r : report.rows) {
    out << r.example_id << ',' << r.metric << ',' << Format(r.value) << '\n';
  }
  out << "# aggregate model=" << models::ModelKindName(report.kind) << '\n';
  out << "metric,mean,std,count\n";
  for (const auto& name : MetricNames(report.kind)) {
    const auto it = report.aggregates.find(name);
    if (it == report.aggregates.end()) continue;
    out << name << ',' << Format(it->second.mean) << ','
        << Format(it->second.std) << ',' << it->second.count << '\n';
  }
  out << "# undefined\n";
  for (const auto& name : MetricNames(report.kind)) {
    out << "# " << name << ',' << report.undefined.at(name) << '\n';
  }
}

void WriteReportCsv(const MetricsReport& report,
                    const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) Fail(ErrorCode::kIoFailure, "cannot write report " + path.string());
  WriteReportCsv(report, out);
  if (!out) Fail(ErrorCode::kIoFailure, "failed writing report " + path.string());
}

}  // namespace dereverb::eval
