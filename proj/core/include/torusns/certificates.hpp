#pragma once

#include <optional>
#include <span>
#include <vector>

#include "torusns/params.hpp"
#include "torusns/spectral_field.hpp"
#include "torusns/time_grid.hpp"

namespace torusns {

// Every fitter returns the smallest constant that makes the corresponding
// decay inequality hold on the lattice (and on the grid times, where the
// bound is time dependent). Zero input gives exactly zero.

struct HBoundFit {
  /// per_j[j - 1]: sup_k |h_j(k)| |k|^{2 eps} exp((j/2)|k|^2) / delta^2.
  std::vector<double> per_j;
  /// Running maximum of per_j.
  std::vector<double> running_max;
  double max() const { return running_max.empty() ? 0.0 : running_max.back(); }
};

HBoundFit fit_h_bound(std::span<const SpectralField> h1_history, const SolverParams& params);

struct GBoundEntry {
  /// fmc_norm(g_j, j, decay_c, beta) / delta^2.
  double D = 0.0;
  /// Least-squares rate d in log|g| + beta log|k| = log(D delta^2) - d |k| sqrt(j).
  double d = 0.0;
  /// exp(fitted intercept) / delta^2.
  double D_fit = 0.0;
  /// False when fewer than four supported modes (or a single |k| shell) remain.
  bool d_fitted = false;
};

struct GBoundFit {
  std::vector<GBoundEntry> per_j;
  std::vector<double> running_max;
  double max() const { return running_max.empty() ? 0.0 : running_max.back(); }
};

GBoundEntry fit_g_bound_single(const SpectralField& g, int j, const SolverParams& params);
GBoundFit fit_g_bound(std::span<const SpectralField> g_history, const SolverParams& params);

/// Smallest D with
///   |H1(t,k)| <= D delta^2 |k|^{-2 eps} (1 - exp(-t|k|^2/2)) / |k|^2 exp(-(m+1)|k|^2/2)
/// over grid times t > 0. The t = 0 slice is excluded: the envelope vanishes
/// there while H1(0) still carries the history terms.
double check_H1_envelope(const TimeSlicedField& H1, int m, const SolverParams& params);

/// Gaussian-form constant for the H0 * H1 product,
///   |X(t,k)| <= |k| D exp(-(m+1)|k|^2/3) (1 - exp(-t|k|^2)) / |k|^2,
/// reported raw and normalised by delta^3. t = 0 is excluded.
struct GaussianFit {
  double raw = 0.0;
  double per_delta3 = 0.0;
};
GaussianFit fit_H0H1_estimate(const TimeSlicedField& product, int m, const SolverParams& params);

/// Norms recorded for one fixed-point iterate g: ||g||, ||I2(g)||, ||I3(g)||.
struct IterateMeasurement {
  double g_norm = 0.0;
  double i2_norm = 0.0;
  double i3_norm = 0.0;
};

struct ContractionCoefficients {
  double c1 = 0.0;
  double c2 = 0.0;
  /// Empty when every recorded iterate had ||g|| = 0.
  std::optional<double> c3;
  /// c2 + 2 c3 ||g|| < 1.
  bool contraction_ok = true;
};

ContractionCoefficients contraction_coefficients(double i1_norm,
                                                 std::span<const IterateMeasurement> iterates,
                                                 double g_norm);

struct EnvelopePoint {
  double t = 0.0;
  double phi = 0.0;
};

struct PhiEnvelope {
  std::vector<EnvelopePoint> series;
  double sup = 0.0;
  bool exceeds_two_delta = false;
};

/// Phi(alpha) norm time series of fields[i] sampled at times[i].
PhiEnvelope phi_envelope(std::span<const double> times, std::span<const SpectralField> fields,
                         const SolverParams& params);
/// Same for a sliced field whose grid starts at absolute time t0.
PhiEnvelope phi_envelope(const TimeSlicedField& v, double t0, const SolverParams& params);

/// Per-step summary of every fitted constant.
struct CertificateRecord {
  int m = 0;  // index j of the g_j / h_j produced by the step
  double D_h = 0.0;
  double D_h_max = 0.0;
  double D_g = 0.0;
  double D_g_max = 0.0;
  double d_g = 0.0;
  bool d_g_fitted = false;
  double D_H1 = 0.0;
  double D_H0H1 = 0.0;
  double D_H0H1_per_delta3 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  std::optional<double> c3;
  bool contraction_ok = true;
  int fp_iterations = 0;
  double max_ratio = 0.0;
  double phi_envelope = 0.0;
};

}  // namespace torusns
