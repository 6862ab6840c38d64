#pragma once

#include "torusns/spectral_field.hpp"
#include "torusns/time_grid.hpp"

namespace torusns {

/// P_k x = x - (<k, x> / |k|^2) k. Throws std::invalid_argument for k = 0.
Vec3c leray_project(const WaveVector& k, const Vec3c& x);

/// out(k) = 2 pi i sum_l <k, u(k - l)> P_k v(l), over l and k - l both
/// nonzero lattice sites. Interactions leaving the lattice are dropped.
/// Throws std::invalid_argument if u and v live on different lattices.
SpectralField bilinear(const SpectralField& u, const SpectralField& v, int threads = 1);

/// Per-mode integral of exp(-(t - s)|k|^2) source(s, k) ds from 0 to every
/// grid time t.
///
/// On each substep the exponential is integrated exactly and the source is
/// frozen at the mean of its two endpoint samples, so the rule is exact on
/// sources constant in s and second order on smooth ones.
TimeSlicedField duhamel_integrate_all(const TimeSlicedField& source);

/// Same rule evaluated at one grid time t. Bitwise identical to the matching
/// slice of duhamel_integrate_all. Throws std::invalid_argument for t off
/// the grid or outside [0, grid end].
SpectralField duhamel_integrate(const TimeSlicedField& source, double t);

/// (U * V)(t) = duhamel_integrate(s -> bilinear(U(s), V(s)), t) on every
/// grid time. Throws std::invalid_argument on grid or lattice mismatch.
TimeSlicedField star_product(const TimeSlicedField& u, const TimeSlicedField& v, int threads = 1);

/// Completion of the square
///   a1 |k - l|^2 + a2 |l|^2 = coeff_k |k|^2 + (a1 + a2) |l - shift_coeff k|^2.
struct IdentitySplit {
  double coeff_k;      // a1 a2 / (a1 + a2)
  double shift_coeff;  // a1 / (a1 + a2)
  double residual;     // (a1 + a2) |l - shift_coeff k|^2
};

/// Throws std::invalid_argument unless a1, a2 >= 0 and a1 + a2 > 0.
IdentitySplit identity_split(double a1, double a2, const WaveVector& k, const WaveVector& l);

}  // namespace torusns
