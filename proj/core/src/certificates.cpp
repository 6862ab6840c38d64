#include "torusns/certificates.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace torusns {

namespace {

std::vector<double> running_maximum(const std::vector<double>& values) {
  std::vector<double> out;
  out.reserve(values.size());
  double best = 0.0;
  for (double v : values) {
    best = std::max(best, v);
    out.push_back(best);
  }
  return out;
}

}  // namespace

HBoundFit fit_h_bound(std::span<const SpectralField> h1_history, const SolverParams& params) {
  HBoundFit fit;
  const double two_eps = 2.0 * params.epsilon;
  const double log_delta_sq = 2.0 * std::log(params.delta);
  for (std::size_t idx = 0; idx < h1_history.size(); ++idx) {
    const SpectralField& h = h1_history[idx];
    const double j = static_cast<double>(idx + 1);
    double sup = 0.0;
    const auto& lat = h.lattice();
    for (std::size_t i = 0; i < h.size(); ++i) {
      const double mag = h[i].magnitude();
      if (mag == 0.0) continue;
      const double norm_sq = static_cast<double>(lat.site(i).norm_sq());
      // Log space: exp((j/2)|k|^2) alone overflows for large j.
      const double log_ratio =
          std::log(mag) + two_eps * std::log(lat.norms()[i]) + 0.5 * j * norm_sq - log_delta_sq;
      sup = std::max(sup, std::exp(log_ratio));
    }
    fit.per_j.push_back(sup);
  }
  fit.running_max = running_maximum(fit.per_j);
  return fit;
}

GBoundEntry fit_g_bound_single(const SpectralField& g, int j, const SolverParams& params) {
  GBoundEntry entry;
  const double delta_sq = params.delta * params.delta;
  entry.D = fmc_norm(g, j, params.decay_c, params.beta) / delta_sq;

  const double root_j = std::sqrt(static_cast<double>(j));
  std::vector<double> xs;
  std::vector<double> ys;
  const auto& lat = g.lattice();
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double mag = g[i].magnitude();
    if (mag == 0.0) continue;
    xs.push_back(lat.norms()[i] * root_j);
    ys.push_back(std::log(mag) + params.beta * std::log(lat.norms()[i]));
  }
  if (xs.size() < 4) return entry;

  const double n = static_cast<double>(xs.size());
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mean_x += xs[i];
    mean_y += ys[i];
  }
  mean_x /= n;
  mean_y /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mean_x) * (xs[i] - mean_x);
    sxy += (xs[i] - mean_x) * (ys[i] - mean_y);
  }
  if (!(sxx > 0.0)) return entry;
  const double slope = sxy / sxx;
  entry.d = -slope;
  entry.D_fit = std::exp(mean_y - slope * mean_x) / delta_sq;
  entry.d_fitted = true;
  return entry;
}

GBoundFit fit_g_bound(std::span<const SpectralField> g_history, const SolverParams& params) {
  GBoundFit fit;
  std::vector<double> ds;
  for (std::size_t idx = 0; idx < g_history.size(); ++idx) {
    fit.per_j.push_back(fit_g_bound_single(g_history[idx], static_cast<int>(idx + 1), params));
    ds.push_back(fit.per_j.back().D);
  }
  fit.running_max = running_maximum(ds);
  return fit;
}

double check_H1_envelope(const TimeSlicedField& H1, int m, const SolverParams& params) {
  const double two_eps = 2.0 * params.epsilon;
  const double log_delta_sq = 2.0 * std::log(params.delta);
  const auto& lat = H1.lattice();
  double sup = 0.0;
  for (std::size_t n = 1; n < H1.size(); ++n) {
    const double t = H1.grid().time(n);
    const SpectralField& slice = H1[n];
    for (std::size_t i = 0; i < slice.size(); ++i) {
      const double mag = slice[i].magnitude();
      if (mag == 0.0) continue;
      const double norm_sq = static_cast<double>(lat.site(i).norm_sq());
      const double rise = -std::expm1(-0.5 * t * norm_sq);
      const double log_ratio = std::log(mag) + two_eps * std::log(lat.norms()[i]) +
                               std::log(norm_sq) - std::log(rise) +
                               0.5 * (m + 1) * norm_sq - log_delta_sq;
      sup = std::max(sup, std::exp(log_ratio));
    }
  }
  return sup;
}

GaussianFit fit_H0H1_estimate(const TimeSlicedField& product, int m, const SolverParams& params) {
  const auto& lat = product.lattice();
  double sup = 0.0;
  for (std::size_t n = 1; n < product.size(); ++n) {
    const double t = product.grid().time(n);
    const SpectralField& slice = product[n];
    for (std::size_t i = 0; i < slice.size(); ++i) {
      const double mag = slice[i].magnitude();
      if (mag == 0.0) continue;
      const double norm_sq = static_cast<double>(lat.site(i).norm_sq());
      const double rise = -std::expm1(-t * norm_sq);
      const double log_ratio = std::log(mag) + std::log(lat.norms()[i]) - std::log(rise) +
                               (m + 1) * norm_sq / 3.0;
      sup = std::max(sup, std::exp(log_ratio));
    }
  }
  const double d3 = params.delta * params.delta * params.delta;
  return {sup, sup / d3};
}

ContractionCoefficients contraction_coefficients(double i1_norm,
                                                 std::span<const IterateMeasurement> iterates,
                                                 double g_norm) {
  ContractionCoefficients out;
  out.c1 = i1_norm;
  for (const auto& it : iterates) {
    if (!(it.g_norm > 0.0)) continue;
    out.c2 = std::max(out.c2, it.i2_norm / it.g_norm);
    const double c3 = it.i3_norm / (it.g_norm * it.g_norm);
    out.c3 = out.c3 ? std::max(*out.c3, c3) : c3;
  }
  out.contraction_ok = out.c2 + 2.0 * out.c3.value_or(0.0) * g_norm < 1.0;
  return out;
}

PhiEnvelope phi_envelope(std::span<const double> times, std::span<const SpectralField> fields,
                         const SolverParams& params) {
  if (times.size() != fields.size()) throw std::invalid_argument("phi_envelope: times/fields size mismatch");
  PhiEnvelope env;
  env.series.reserve(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double phi = phi_norm(fields[i], params.alpha());
    env.series.push_back({times[i], phi});
    env.sup = std::max(env.sup, phi);
  }
  env.exceeds_two_delta = env.sup > 2.0 * params.delta;
  return env;
}

PhiEnvelope phi_envelope(const TimeSlicedField& v, double t0, const SolverParams& params) {
  std::vector<double> times;
  times.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) times.push_back(t0 + v.grid().time(i));
  return phi_envelope(times, v.slices(), params);
}

}  // namespace torusns
