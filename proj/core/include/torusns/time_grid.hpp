#pragma once

#include <cstddef>
#include <vector>

#include "torusns/spectral_field.hpp"

namespace torusns {

/// Uniform grid t_i = i / substeps, i = 0..steps. TimeGrid(S) is the
/// substep grid of one induction interval [0, 1].
class TimeGrid {
 public:
  explicit TimeGrid(int substeps, int units = 1);
  static TimeGrid with_steps(int substeps, int steps);

  int substeps() const { return substeps_; }
  int steps() const { return steps_; }
  std::size_t size() const { return static_cast<std::size_t>(steps_) + 1; }
  double step() const { return 1.0 / substeps_; }
  double time(std::size_t i) const { return static_cast<double>(i) / substeps_; }
  double end() const { return time(static_cast<std::size_t>(steps_)); }

  /// Index of grid time t. Throws std::invalid_argument when t lies outside
  /// [0, end] or between grid points.
  std::size_t index_of(double t) const;

  bool operator==(const TimeGrid&) const = default;

 private:
  int substeps_;
  int steps_;
};

/// A spectral field sampled at every time of a TimeGrid.
class TimeSlicedField {
 public:
  TimeSlicedField(TimeGrid grid, LatticePtr lattice);
  TimeSlicedField(TimeGrid grid, std::vector<SpectralField> slices);

  const TimeGrid& grid() const { return grid_; }
  const Lattice& lattice() const { return slices_.front().lattice(); }
  const LatticePtr& lattice_ptr() const { return slices_.front().lattice_ptr(); }
  std::size_t size() const { return slices_.size(); }

  const SpectralField& operator[](std::size_t i) const { return slices_[i]; }
  SpectralField& operator[](std::size_t i) { return slices_[i]; }
  const SpectralField& back() const { return slices_.back(); }
  const std::vector<SpectralField>& slices() const { return slices_; }

  bool compatible(const TimeSlicedField& other) const;
  bool is_zero() const;

  TimeSlicedField& operator+=(const TimeSlicedField& other);
  TimeSlicedField& operator-=(const TimeSlicedField& other);
  TimeSlicedField& operator*=(double s);
  friend TimeSlicedField operator+(TimeSlicedField a, const TimeSlicedField& b) { return a += b; }
  friend TimeSlicedField operator-(TimeSlicedField a, const TimeSlicedField& b) { return a -= b; }
  friend TimeSlicedField operator*(TimeSlicedField a, double s) { return a *= s; }
  friend TimeSlicedField operator*(double s, TimeSlicedField a) { return a *= s; }

  bool operator==(const TimeSlicedField& other) const;

 private:
  void require_compatible(const TimeSlicedField& other) const;

  TimeGrid grid_;
  std::vector<SpectralField> slices_;
};

/// max over slices of fmc_norm(slice, m, c, beta).
double fmc_norm(const TimeSlicedField& f, int m, double c, double beta);

/// max over slices of phi_norm(slice, alpha).
double phi_norm(const TimeSlicedField& f, double alpha);

}  // namespace torusns
