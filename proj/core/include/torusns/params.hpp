#pragma once

#include <cmath>

namespace torusns {

/// Numerical and physical parameters shared by every solver stage.
struct SolverParams {
  /// alpha = 2 + epsilon; requires 0 < 3 epsilon < 1.
  double epsilon = 0.25;
  /// Weight exponent of the F_m(c) norm; requires beta > 3.
  double beta = 3.5;
  /// Initial-data smallness, ||v0||_alpha <= delta.
  double delta = 1e-3;
  /// Exponential decay rate c in exp(-c sqrt(m) |k|).
  double decay_c = 1.0 / std::sqrt(3.0);
  /// Absolute stopping threshold on the F_{m+1}(c) norm of successive updates.
  double fp_tol = 1e-13;
  int fp_max_iter = 50;
  /// Duhamel substeps per unit interval.
  int substeps = 8;
  double eps_div = 1e-12;
  /// Worker threads for the convolution kernels. Results do not depend on it.
  int threads = 1;

  double alpha() const { return 2.0 + epsilon; }

  bool operator==(const SolverParams&) const = default;

  /// Throws std::invalid_argument naming the violated inequality.
  void validate() const;
};

}  // namespace torusns
