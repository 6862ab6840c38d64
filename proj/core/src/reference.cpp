#include "torusns/reference.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "torusns/operators.hpp"

namespace torusns {

namespace {

std::string picard_message(int iterations, double update) {
  std::ostringstream msg;
  msg << "Picard iteration did not converge after " << iterations << " iterations (last update "
      << update << ")";
  return msg.str();
}

}  // namespace

PicardDivergence::PicardDivergence(int iterations, double last_update)
    : std::runtime_error(picard_message(iterations, last_update)),
      iterations_(iterations),
      last_update_(last_update) {}

PicardTrajectory picard_solve(const SpectralField& v0, double horizon, const SolverParams& params) {
  params.validate();
  const double scaled = horizon * params.substeps;
  const double steps = std::round(scaled);
  if (!(horizon > 0.0) || steps < 1.0 || std::abs(scaled - steps) > 1e-9) {
    throw std::invalid_argument("Picard horizon must be a positive multiple of the substep width");
  }
  const TimeGrid grid = TimeGrid::with_steps(params.substeps, static_cast<int>(steps));

  std::vector<SpectralField> linear;
  linear.reserve(grid.size());
  for (std::size_t n = 0; n < grid.size(); ++n) linear.push_back(heat_multiply(v0, grid.time(n)));

  PicardTrajectory traj{grid, std::vector<SpectralField>(grid.size(), SpectralField(v0.lattice_ptr())), 0,
                        0.0, {}};
  const double alpha = params.alpha();

  for (int it = 1; it <= params.fp_max_iter; ++it) {
    std::vector<SpectralField> sources;
    sources.reserve(grid.size());
    for (const auto& slice : traj.slices) sources.push_back(bilinear(slice, slice, params.threads));
    const TimeSlicedField duhamel = duhamel_integrate_all(TimeSlicedField(grid, std::move(sources)));

    double update = 0.0;
    std::vector<SpectralField> next;
    next.reserve(grid.size());
    for (std::size_t n = 0; n < grid.size(); ++n) {
      next.push_back(linear[n] + duhamel[n]);
      const double u = phi_norm(next.back() - traj.slices[n], alpha);
      update = std::isnan(u) ? u : std::max(update, u);
    }
    traj.slices = std::move(next);
    traj.iterations_used = it;
    traj.final_update_norm = update;
    traj.update_norms.push_back(update);
    if (!std::isfinite(update)) throw PicardDivergence(it, update);
    if (update < params.fp_tol) return traj;
  }
  throw PicardDivergence(params.fp_max_iter, traj.final_update_norm);
}

}  // namespace torusns
