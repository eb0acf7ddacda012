// Copyright 2026 The Dereverb Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "dereverb/eval/metrics.h"

#include <cmath>
#include <numbers>
#include <string>

#include "dereverb/common/error.h"

namespace dereverb::eval {
namespace {

void RequireSameShape(const Array2D& a, const Array2D& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    Fail(ErrorCode::kShapeMismatch,
         std::string(what) + ": " + std::to_string(a.rows()) + "x" +
             std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) +
             "x" + std::to_string(b.cols()));
  }
}

}  // namespace

double LogSpectralDistance(const Array2D& est, const Array2D& ref) {
  RequireSameShape(est, ref, "log spectral distance");
  if (est.rows() == 0 || est.cols() == 0) {
    Fail(ErrorCode::kShapeMismatch, "log spectral distance of empty arrays");
  }
  const double to_db = 20.0 / std::numbers::ln10;
  double total = 0.0;
  for (size_t t = 0; t < est.rows(); ++t) {
    double sq = 0.0;
    for (size_t f = 0; f < est.cols(); ++f) {
      const double d = to_db * (est(t, f) - ref(t, f));
      sq += d * d;
    }
    total += std::sqrt(sq / static_cast<double>(est.cols()));
  }
  return total / static_cast<double>(est.rows());
}

double MeanSquaredError(const Array2D& a, const Array2D& b) {
  RequireSameShape(a, b, "mean squared error");
  if (a.data().empty()) Fail(ErrorCode::kShapeMismatch, "mse of empty arrays");
  double sum = 0.0;
  for (size_t i = 0; i < a.data().size(); ++i) {
    const double d = a.data()[i] - b.data()[i];
    sum += d * d;
  }
  return sum / static_cast<double>(a.data().size());
}

std::vector<double> EnergyDecayCurve(const Array2D& rir_mag) {
  const size_t frames = rir_mag.rows();
  std::vector<double> tail(frames, 0.0);
  for (size_t t = frames; t-- > 0;) {
    double e = 0.0;
    for (size_t f = 0; f < rir_mag.cols(); ++f) {
      const double m = rir_mag(t, f);
      if (m < 0.0 || std::isnan(m)) {
        Fail(ErrorCode::kInvalidArgument, "energy decay curve of negative input");
      }
      e += m * m;
    }
    tail[t] = e + (t + 1 < frames ? tail[t + 1] : 0.0);
  }
  if (frames == 0 || !(tail[0] > 0.0)) {
    Fail(ErrorCode::kZeroEnergy, "energy decay curve of an all-zero RIR");
  }
  std::vector<double> db(frames);
  for (size_t t = 0; t < frames; ++t) {
    db[t] = tail[t] > 0.0
                ? std::max(kEdcFloorDb, 10.0 * std::log10(tail[t] / tail[0]))
                : kEdcFloorDb;
  }
  return db;
}

double T60Estimate(const std::vector<double>& edc_db, double hop_s) {
  if (!(hop_s > 0.0)) Fail(ErrorCode::kInvalidArgument, "hop must be positive");
  bool reaches = false;
  double n = 0.0, st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
  for (size_t i = 0; i < edc_db.size(); ++i) {
    const double y = edc_db[i];
    if (y <= kFitLowerDb) reaches = true;
    if (y > kFitUpperDb || y < kFitLowerDb) continue;
    const double t = static_cast<double>(i) * hop_s;
    n += 1.0;
    st += t;
    sy += y;
    stt += t * t;
    sty += t * y;
  }
  if (!reaches || n < 2.0) {
    Fail(ErrorCode::kInsufficientDecay,
         "decay curve does not fall to " + std::to_string(kFitLowerDb) + " dB");
  }
  const double denom = n * stt - st * st;
  const double slope = denom > 0.0 ? (n * sty - st * sy) / denom : 0.0;
  if (!(slope < 0.0)) {
    Fail(ErrorCode::kInsufficientDecay, "decay curve fit does not decay");
  }
  return -60.0 / slope;
}

dsp::AudioClip ReconstructAudio(const Array2D& est_logmag,
                                const dsp::ComplexSpectrogram& reverberant,
                                double scale, std::optional<size_t> length,
                                double log_floor) {
  RequireSameShape(est_logmag, reverberant.re, "reconstruct audio");
  const double floor_log = std::log(log_floor);
  dsp::ComplexSpectrogram out = reverberant;
  for (size_t t = 0; t < est_logmag.rows(); ++t) {
    for (size_t f = 0; f < est_logmag.cols(); ++f) {
      const double re = reverberant.re(t, f);
      const double im = reverberant.im(t, f);
      const double mag = est_logmag(t, f) <= floor_log
                             ? 0.0
                             : std::exp(est_logmag(t, f)) * scale;
      const double norm = std::hypot(re, im);
      // Bins with no reverberant energy have no phase; use zero phase.
      out.re(t, f) = norm > 0.0 ? mag * re / norm : mag;
      out.im(t, f) = norm > 0.0 ? mag * im / norm : 0.0;
    }
  }
  return dsp::Istft(out, length);
}

}  // namespace dereverb::eval
