#pragma once

#include <array>
#include <stdexcept>
#include <vector>

#include "torusns/certificates.hpp"
#include "torusns/operators.hpp"
#include "torusns/params.hpp"
#include "torusns/spectral_field.hpp"
#include "torusns/time_grid.hpp"

namespace torusns {

/// Solution record at integer time m:
///   v(m) = exp(-m|k|^2) v0 + sum_j exp(-(m-j)|k|^2) h_j / |k|^{2 eps}
///                          + sum_j exp(-(m-j)|k|^2) g_j.
/// h1_history holds h_j = |k|^{2 eps} (H0 * H0)(1) of step j, g_history the
/// remainders g_j(1); both have length m.
struct DecompositionState {
  int m = 0;
  SpectralField v0;
  std::vector<SpectralField> h1_history;
  std::vector<SpectralField> g_history;

  static DecompositionState initial(SpectralField v0);
  /// Throws std::logic_error when history lengths disagree with m.
  void validate() const;
};

/// Slice t: heat_multiply(v0, m + t).
TimeSlicedField assemble_H0(const DecompositionState& state, const TimeGrid& grid);

/// Slice t: (sum_j exp(-(m-j+t)|k|^2) h_j + h1_next(t)) / |k|^{2 eps}.
TimeSlicedField assemble_H1(const DecompositionState& state, const TimeSlicedField& h1_next,
                            const SolverParams& params);

/// Slice t: sum_j exp(-(m-j+t)|k|^2) g_j.
TimeSlicedField assemble_G(const DecompositionState& state, const TimeGrid& grid);

/// |k|^{2 eps} (H0 * H0).
TimeSlicedField compute_h1_next(const TimeSlicedField& H0, const SolverParams& params);

/// The eight ordered products X * Y, X, Y in {H0, H1, G}, without H0 * H0,
/// in the order H0H1, H0G, H1H0, H1H1, H1G, GH0, GH1, GG.
std::array<TimeSlicedField, 8> assemble_I1_terms(const TimeSlicedField& H0, const TimeSlicedField& H1,
                                                 const TimeSlicedField& G, int threads = 1);
TimeSlicedField assemble_I1(const TimeSlicedField& H0, const TimeSlicedField& H1,
                            const TimeSlicedField& G, int threads = 1);

/// Part of the remainder equation linear in g: sum over H in {H0, H1, G} of H * g + g * H.
TimeSlicedField apply_I2(const TimeSlicedField& H0, const TimeSlicedField& H1,
                         const TimeSlicedField& G, const TimeSlicedField& g, int threads = 1);

/// Quadratic part g * g.
TimeSlicedField apply_I3(const TimeSlicedField& g, int threads = 1);

/// Raised when the remainder iteration fails to converge (or leaves the
/// finite range): the data is outside the contraction regime.
class FixedPointDivergence : public std::runtime_error {
 public:
  FixedPointDivergence(int m, int iterations, double last_ratio, double last_update);

  int m() const { return m_; }
  int iterations() const { return iterations_; }
  double last_ratio() const { return last_ratio_; }
  double last_update() const { return last_update_; }

 private:
  int m_;
  int iterations_;
  double last_ratio_;
  double last_update_;
};

struct FixedPointResult {
  TimeSlicedField g;
  int iterations = 0;
  /// ||Delta^{n+1}|| / ||Delta^n|| for consecutive updates.
  std::vector<double> ratios;
  std::vector<IterateMeasurement> iterates;
  double i1_norm = 0.0;
  double g_norm = 0.0;
};

/// Solves g = I1 + I2(g) + I3(g) by successive substitution from g = 0 on
/// the whole substep grid. Updates are measured in the F_{space_index}(decay_c)
/// norm, maximised over slices; iteration stops once an update falls below
/// params.fp_tol. Throws FixedPointDivergence after params.fp_max_iter
/// iterations or on a non-finite update.
FixedPointResult fixed_point_solve_g(const TimeSlicedField& I1, const TimeSlicedField& H0,
                                     const TimeSlicedField& H1, const TimeSlicedField& G,
                                     const SolverParams& params, int space_index);

/// Everything computed on one unit interval [m, m+1].
struct IntervalSolution {
  TimeSlicedField H0;
  TimeSlicedField H1;
  TimeSlicedField G;
  TimeSlicedField h1_next;
  TimeSlicedField g;
  /// Reconstructed velocity on the interval.
  TimeSlicedField v;
  int iterations = 0;
  std::vector<double> ratios;
};

struct StepResult {
  DecompositionState state;
  CertificateRecord record;
  IntervalSolution interval;
};

/// Advances the state from m to m + 1 and fills the step's certificate.
StepResult advance_unit_interval(const DecompositionState& state, const SolverParams& params);

/// v(m + t) = H0(t) + H1(t) + (G(t) + g(t)) at grid index t_index.
SpectralField reconstruct_v(const IntervalSolution& interval, std::size_t t_index);
/// v(m) from the state alone.
SpectralField reconstruct_v(const DecompositionState& state, const SolverParams& params);

}  // namespace torusns
