#include "torusns/induction.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace torusns {

DecompositionState DecompositionState::initial(SpectralField v0) {
  return DecompositionState{0, std::move(v0), {}, {}};
}

void DecompositionState::validate() const {
  if (m < 0 || h1_history.size() != static_cast<std::size_t>(m) ||
      g_history.size() != static_cast<std::size_t>(m)) {
    throw std::logic_error("decomposition state history lengths do not match m");
  }
}

namespace {

// sum_j exp(-(m - j + t)|k|^2) history[j-1]; weights below the underflow
// threshold drop the (j, k) contribution.
SpectralField decayed_history(const std::vector<SpectralField>& history, int m, double t,
                              const LatticePtr& lattice) {
  SpectralField acc(lattice);
  const auto& lat = *lattice;
  for (std::size_t idx = 0; idx < history.size(); ++idx) {
    const int j = static_cast<int>(idx) + 1;
    const double age = static_cast<double>(m - j) + t;
    const auto src = history[idx].values();
    auto out = acc.values();
    for (std::size_t i = 0; i < lat.size(); ++i) {
      if (src[i].is_zero()) continue;
      const double w = heat_factor(age, static_cast<double>(lat.site(i).norm_sq()));
      if (w == 0.0) continue;
      out[i] += src[i] * w;
    }
  }
  return acc;
}

std::vector<double> k_powers(const Lattice& lat, double exponent) {
  std::vector<double> out(lat.size());
  for (std::size_t i = 0; i < lat.size(); ++i) out[i] = std::pow(lat.norms()[i], exponent);
  return out;
}

// (history part + current) / |k|^{2 eps}; shared by assemble_H1 and the
// state-only reconstruction so both round identically.
SpectralField h1_slice(SpectralField acc, const SpectralField* current, const std::vector<double>& k2eps) {
  if (current) acc += *current;
  for (std::size_t i = 0; i < acc.size(); ++i) {
    if (!acc[i].is_zero()) acc[i] *= 1.0 / k2eps[i];
  }
  return acc;
}

}  // namespace

TimeSlicedField assemble_H0(const DecompositionState& state, const TimeGrid& grid) {
  std::vector<SpectralField> slices;
  slices.reserve(grid.size());
  for (std::size_t n = 0; n < grid.size(); ++n) {
    slices.push_back(heat_multiply(state.v0, static_cast<double>(state.m) + grid.time(n)));
  }
  return TimeSlicedField(grid, std::move(slices));
}

TimeSlicedField assemble_H1(const DecompositionState& state, const TimeSlicedField& h1_next,
                            const SolverParams& params) {
  if (!h1_next[0].same_lattice(state.v0)) throw std::invalid_argument("assemble_H1: lattice mismatch");
  const auto k2eps = k_powers(state.v0.lattice(), 2.0 * params.epsilon);
  const TimeGrid& grid = h1_next.grid();
  std::vector<SpectralField> slices;
  slices.reserve(grid.size());
  for (std::size_t n = 0; n < grid.size(); ++n) {
    slices.push_back(h1_slice(decayed_history(state.h1_history, state.m, grid.time(n), state.v0.lattice_ptr()),
                              &h1_next[n], k2eps));
  }
  return TimeSlicedField(grid, std::move(slices));
}

TimeSlicedField assemble_G(const DecompositionState& state, const TimeGrid& grid) {
  std::vector<SpectralField> slices;
  slices.reserve(grid.size());
  for (std::size_t n = 0; n < grid.size(); ++n) {
    slices.push_back(decayed_history(state.g_history, state.m, grid.time(n), state.v0.lattice_ptr()));
  }
  return TimeSlicedField(grid, std::move(slices));
}

TimeSlicedField compute_h1_next(const TimeSlicedField& H0, const SolverParams& params) {
  TimeSlicedField out = star_product(H0, H0, params.threads);
  const auto k2eps = k_powers(H0.lattice(), 2.0 * params.epsilon);
  for (std::size_t n = 0; n < out.size(); ++n) {
    auto values = out[n].values();
    for (std::size_t i = 0; i < values.size(); ++i) values[i] *= k2eps[i];
  }
  return out;
}

std::array<TimeSlicedField, 8> assemble_I1_terms(const TimeSlicedField& H0, const TimeSlicedField& H1,
                                                 const TimeSlicedField& G, int threads) {
  return {star_product(H0, H1, threads), star_product(H0, G, threads),
          star_product(H1, H0, threads), star_product(H1, H1, threads),
          star_product(H1, G, threads),  star_product(G, H0, threads),
          star_product(G, H1, threads),  star_product(G, G, threads)};
}

TimeSlicedField assemble_I1(const TimeSlicedField& H0, const TimeSlicedField& H1,
                            const TimeSlicedField& G, int threads) {
  auto terms = assemble_I1_terms(H0, H1, G, threads);
  TimeSlicedField sum = std::move(terms[0]);
  for (std::size_t i = 1; i < terms.size(); ++i) sum += terms[i];
  return sum;
}

TimeSlicedField apply_I2(const TimeSlicedField& H0, const TimeSlicedField& H1,
                         const TimeSlicedField& G, const TimeSlicedField& g, int threads) {
  TimeSlicedField sum = star_product(H0, g, threads);
  sum += star_product(g, H0, threads);
  sum += star_product(H1, g, threads);
  sum += star_product(g, H1, threads);
  sum += star_product(G, g, threads);
  sum += star_product(g, G, threads);
  return sum;
}

TimeSlicedField apply_I3(const TimeSlicedField& g, int threads) { return star_product(g, g, threads); }

namespace {

std::string divergence_message(int m, int iterations, double ratio, double update) {
  std::ostringstream msg;
  msg << "fixed-point iteration for g_" << (m + 1) << " did not converge after " << iterations
      << " iterations (last update " << update << ", last contraction ratio " << ratio << ")";
  return msg.str();
}

}  // namespace

FixedPointDivergence::FixedPointDivergence(int m, int iterations, double last_ratio, double last_update)
    : std::runtime_error(divergence_message(m, iterations, last_ratio, last_update)),
      m_(m),
      iterations_(iterations),
      last_ratio_(last_ratio),
      last_update_(last_update) {}

FixedPointResult fixed_point_solve_g(const TimeSlicedField& I1, const TimeSlicedField& H0,
                                     const TimeSlicedField& H1, const TimeSlicedField& G,
                                     const SolverParams& params, int space_index) {
  if (!(params.fp_tol > 0.0)) throw std::invalid_argument("fp_tol must be > 0");
  const auto norm = [&](const TimeSlicedField& f) {
    return fmc_norm(f, space_index, params.decay_c, params.beta);
  };

  FixedPointResult result{TimeSlicedField(I1.grid(), I1.lattice_ptr()), 0, {}, {}, norm(I1), 0.0};
  double previous_update = std::numeric_limits<double>::quiet_NaN();
  double last_ratio = std::numeric_limits<double>::quiet_NaN();

  for (int n = 1; n <= params.fp_max_iter; ++n) {
    TimeSlicedField next = I1;
    if (!result.g.is_zero()) {
      const TimeSlicedField linear = apply_I2(H0, H1, G, result.g, params.threads);
      const TimeSlicedField quadratic = apply_I3(result.g, params.threads);
      result.iterates.push_back({norm(result.g), norm(linear), norm(quadratic)});
      next += linear;
      next += quadratic;
    }
    const double update = norm(next - result.g);
    result.g = std::move(next);
    result.iterations = n;

    if (n > 1) {
      last_ratio = previous_update > 0.0 ? update / previous_update : 0.0;
      result.ratios.push_back(last_ratio);
    }
    if (!std::isfinite(update)) {
      throw FixedPointDivergence(space_index - 1, n, last_ratio, update);
    }
    if (update < params.fp_tol) {
      result.g_norm = norm(result.g);
      return result;
    }
    previous_update = update;
  }
  throw FixedPointDivergence(space_index - 1, params.fp_max_iter, last_ratio, previous_update);
}

SpectralField reconstruct_v(const IntervalSolution& interval, std::size_t t_index) {
  SpectralField v = interval.H0[t_index];
  v += interval.H1[t_index];
  v += interval.G[t_index] + interval.g[t_index];
  return v;
}

SpectralField reconstruct_v(const DecompositionState& state, const SolverParams& params) {
  state.validate();
  const auto k2eps = k_powers(state.v0.lattice(), 2.0 * params.epsilon);
  SpectralField v = heat_multiply(state.v0, static_cast<double>(state.m));
  v += h1_slice(decayed_history(state.h1_history, state.m, 0.0, state.v0.lattice_ptr()), nullptr, k2eps);
  v += decayed_history(state.g_history, state.m, 0.0, state.v0.lattice_ptr());
  return v;
}

StepResult advance_unit_interval(const DecompositionState& state, const SolverParams& params) {
  state.validate();
  const TimeGrid grid(params.substeps);
  const int space_index = state.m + 1;

  TimeSlicedField H0 = assemble_H0(state, grid);
  TimeSlicedField h1_next = compute_h1_next(H0, params);
  TimeSlicedField H1 = assemble_H1(state, h1_next, params);
  TimeSlicedField G = assemble_G(state, grid);

  auto terms = assemble_I1_terms(H0, H1, G, params.threads);
  TimeSlicedField I1 = terms[0];
  for (std::size_t i = 1; i < terms.size(); ++i) I1 += terms[i];

  FixedPointResult fp = fixed_point_solve_g(I1, H0, H1, G, params, space_index);

  StepResult out{state,
                 CertificateRecord{},
                 IntervalSolution{std::move(H0), std::move(H1), std::move(G), std::move(h1_next),
                                  std::move(fp.g), TimeSlicedField(grid, state.v0.lattice_ptr()),
                                  fp.iterations, fp.ratios}};
  IntervalSolution& interval = out.interval;
  for (std::size_t n = 0; n < grid.size(); ++n) interval.v[n] = reconstruct_v(interval, n);

  DecompositionState& next = out.state;
  next.h1_history.push_back(interval.h1_next.back());
  next.g_history.push_back(interval.g.back());
  next.m = space_index;

  CertificateRecord& rec = out.record;
  rec.m = space_index;
  const HBoundFit h_fit = fit_h_bound(next.h1_history, params);
  rec.D_h = h_fit.per_j.back();
  rec.D_h_max = h_fit.max();
  const GBoundFit g_fit = fit_g_bound(next.g_history, params);
  rec.D_g = g_fit.per_j.back().D;
  rec.D_g_max = g_fit.max();
  rec.d_g = g_fit.per_j.back().d;
  rec.d_g_fitted = g_fit.per_j.back().d_fitted;
  rec.D_H1 = check_H1_envelope(interval.H1, state.m, params);
  const GaussianFit h0h1 = fit_H0H1_estimate(terms[0], state.m, params);
  rec.D_H0H1 = h0h1.raw;
  rec.D_H0H1_per_delta3 = h0h1.per_delta3;
  const ContractionCoefficients cc = contraction_coefficients(fp.i1_norm, fp.iterates, fp.g_norm);
  rec.c1 = cc.c1;
  rec.c2 = cc.c2;
  rec.c3 = cc.c3;
  rec.contraction_ok = cc.contraction_ok;
  rec.fp_iterations = fp.iterations;
  for (double r : fp.ratios) rec.max_ratio = std::max(rec.max_ratio, r);
  rec.phi_envelope = phi_envelope(interval.v, static_cast<double>(state.m), params).sup;
  return out;
}

}  // namespace torusns
