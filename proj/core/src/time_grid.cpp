#include "torusns/time_grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace torusns {

TimeGrid::TimeGrid(int substeps, int units) : substeps_(substeps), steps_(substeps * units) {
  if (substeps < 1) throw std::invalid_argument("time grid needs at least one substep");
  if (units < 1) throw std::invalid_argument("time grid needs at least one unit interval");
}

TimeGrid TimeGrid::with_steps(int substeps, int steps) {
  if (steps < 1) throw std::invalid_argument("time grid needs at least one step");
  TimeGrid grid(substeps);
  grid.steps_ = steps;
  return grid;
}

std::size_t TimeGrid::index_of(double t) const {
  if (!(t >= 0.0) || t > end()) {
    throw std::invalid_argument("time " + std::to_string(t) + " lies outside [0, " +
                                std::to_string(end()) + "]");
  }
  const double scaled = t * substeps_;
  const double nearest = std::round(scaled);
  if (std::abs(scaled - nearest) > 1e-9) {
    throw std::invalid_argument("time " + std::to_string(t) + " is not on the substep grid");
  }
  return static_cast<std::size_t>(nearest);
}

TimeSlicedField::TimeSlicedField(TimeGrid grid, LatticePtr lattice) : grid_(grid) {
  slices_.assign(grid_.size(), SpectralField(std::move(lattice)));
}

TimeSlicedField::TimeSlicedField(TimeGrid grid, std::vector<SpectralField> slices)
    : grid_(grid), slices_(std::move(slices)) {
  if (slices_.size() != grid_.size()) {
    throw std::invalid_argument("slice count does not match the time grid");
  }
  for (const auto& s : slices_) {
    if (!s.same_lattice(slices_.front())) throw std::invalid_argument("slices must share one lattice");
  }
}

bool TimeSlicedField::compatible(const TimeSlicedField& other) const {
  return grid_ == other.grid_ && slices_.front().same_lattice(other.slices_.front());
}

void TimeSlicedField::require_compatible(const TimeSlicedField& other) const {
  if (!compatible(other)) throw std::invalid_argument("time-sliced fields differ in grid or lattice");
}

bool TimeSlicedField::is_zero() const {
  return std::all_of(slices_.begin(), slices_.end(), [](const SpectralField& s) { return s.is_zero(); });
}

TimeSlicedField& TimeSlicedField::operator+=(const TimeSlicedField& other) {
  require_compatible(other);
  for (std::size_t i = 0; i < slices_.size(); ++i) slices_[i] += other.slices_[i];
  return *this;
}

TimeSlicedField& TimeSlicedField::operator-=(const TimeSlicedField& other) {
  require_compatible(other);
  for (std::size_t i = 0; i < slices_.size(); ++i) slices_[i] -= other.slices_[i];
  return *this;
}

TimeSlicedField& TimeSlicedField::operator*=(double s) {
  for (auto& slice : slices_) slice *= s;
  return *this;
}

bool TimeSlicedField::operator==(const TimeSlicedField& other) const {
  return grid_ == other.grid_ && slices_ == other.slices_;
}

double fmc_norm(const TimeSlicedField& f, int m, double c, double beta) {
  double sup = 0.0;
  for (const auto& s : f.slices()) {
    const double n = fmc_norm(s, m, c, beta);
    if (std::isnan(n)) return n;
    sup = std::max(sup, n);
  }
  return sup;
}

double phi_norm(const TimeSlicedField& f, double alpha) {
  double sup = 0.0;
  for (const auto& s : f.slices()) {
    const double n = phi_norm(s, alpha);
    if (std::isnan(n)) return n;
    sup = std::max(sup, n);
  }
  return sup;
}

}  // namespace torusns
