// Copyright 2026 The Dereverb Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef DEREVERB_EVAL_METRICS_H_
#define DEREVERB_EVAL_METRICS_H_

#include <optional>
#include <vector>

#include "dereverb/common/array2d.h"
#include "dereverb/dsp/audio.h"
#include "dereverb/dsp/stft.h"

namespace dereverb::eval {

inline constexpr double kEdcFloorDb = -120.0;
inline constexpr double kFrameHopSeconds = 0.016;
inline constexpr double kFitUpperDb = -5.0;
inline constexpr double kFitLowerDb = -25.0;

// Mean over frames of the RMS over bins of the log-magnitude difference in
// dB. Throws ShapeMismatch.
double LogSpectralDistance(const Array2D& est_logmag, const Array2D& ref_logmag);

// Mean squared difference. Throws ShapeMismatch.
double MeanSquaredError(const Array2D& a, const Array2D& b);

// Schroeder backward integral of per-frame energy in dB relative to its
// start, clamped at kEdcFloorDb. Throws InvalidArgument on negative input
// and ZeroEnergy when every frame is silent.
std::vector<double> EnergyDecayCurve(const Array2D& rir_mag);

// Least-squares line through the curve points in [kFitLowerDb,
// kFitUpperDb]; returns the time the line takes to fall 60 dB. Throws
// InsufficientDecay when the curve never reaches kFitLowerDb or the fit
// does not decay.
double T60Estimate(const std::vector<double>& edc_db,
                   double hop_s = kFrameHopSeconds);

// Magnitudes exp(est_logmag) * scale with the reverberant phase, then
// inverse STFT. Bins at or below the log floor become silent. Throws
// ShapeMismatch.
dsp::AudioClip ReconstructAudio(const Array2D& est_logmag,
                                const dsp::ComplexSpectrogram& reverberant,
                                double scale,
                                std::optional<size_t> length = std::nullopt,
                                double log_floor = dsp::kLogFloor);

}  // namespace dereverb::eval

#endif  // DEREVERB_EVAL_METRICS_H_
