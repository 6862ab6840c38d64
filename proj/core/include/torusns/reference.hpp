#pragma once

#include <stdexcept>
#include <vector>

#include "torusns/params.hpp"
#include "torusns/spectral_field.hpp"
#include "torusns/time_grid.hpp"

namespace torusns {

/// Mild solution sampled on a uniform grid over [0, horizon].
struct PicardTrajectory {
  TimeGrid grid;
  std::vector<SpectralField> slices;
  int iterations_used = 0;
  double final_update_norm = 0.0;
  /// sup over slices of the Phi(alpha) norm of each successive update.
  std::vector<double> update_norms;

  /// Slice at grid time t; throws std::invalid_argument off the grid.
  const SpectralField& at(double t) const { return slices[grid.index_of(t)]; }
};

class PicardDivergence : public std::runtime_error {
 public:
  PicardDivergence(int iterations, double last_update);
  int iterations() const { return iterations_; }
  double last_update() const { return last_update_; }

 private:
  int iterations_;
  double last_update_;
};

/// Direct Picard iteration of the mild equation on the whole grid, starting
/// from v = 0:
///   v_{n+1}(t) = exp(-t|k|^2) v0 + int_0^t exp(-(t-s)|k|^2) B(v_n(s), v_n(s)) ds,
/// with the same lattice and Duhamel quadrature as the induction solver.
/// Stops when the sup-over-slices Phi(alpha) update drops below fp_tol.
/// horizon must be a positive multiple of 1 / substeps.
PicardTrajectory picard_solve(const SpectralField& v0, double horizon, const SolverParams& params);

}  // namespace torusns
