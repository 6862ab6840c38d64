#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "torusns/lattice.hpp"
#include "torusns/vec3.hpp"

namespace torusns {

/// Velocity amplitudes on a truncated lattice. Storage is dense in site
/// order; a site belongs to the support iff its amplitude is nonzero. The
/// zero mode is never representable since lattices exclude it.
class SpectralField {
 public:
  explicit SpectralField(LatticePtr lattice);

  const Lattice& lattice() const { return *lattice_; }
  const LatticePtr& lattice_ptr() const { return lattice_; }
  bool same_lattice(const SpectralField& other) const { return lattice_->same_as(*other.lattice_); }

  std::size_t size() const { return values_.size(); }
  std::span<const Vec3c> values() const { return values_; }
  std::span<Vec3c> values() { return values_; }
  const Vec3c& operator[](std::size_t i) const { return values_[i]; }
  Vec3c& operator[](std::size_t i) { return values_[i]; }

  /// Amplitude at k; zero for sites outside the lattice (including k = 0).
  Vec3c at(const WaveVector& k) const;
  /// Throws std::out_of_range when k is not a lattice site.
  void set(const WaveVector& k, const Vec3c& value);

  std::size_t support_size() const;
  bool is_zero() const { return support_size() == 0; }

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(Complex s);
  SpectralField& operator*=(double s);

  friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
  friend SpectralField operator*(SpectralField a, Complex s) { return a *= s; }
  friend SpectralField operator*(Complex s, SpectralField a) { return a *= s; }
  friend SpectralField operator*(SpectralField a, double s) { return a *= s; }
  friend SpectralField operator*(double s, SpectralField a) { return a *= s; }

  bool operator==(const SpectralField& other) const;

 private:
  void require_same_lattice(const SpectralField& other) const;

  LatticePtr lattice_;
  std::vector<Vec3c> values_;
};

/// Heat factors below this are flushed to exact zero.
inline constexpr double kHeatUnderflow = 1e-300;

/// sup_k |k|^alpha |f(k)|; 0 for the zero field.
double phi_norm(const SpectralField& f, double alpha);

/// sup_k |k|^beta exp(c sqrt(m) |k|) |f(k)|, the smallest C with
/// |f(k)| <= C |k|^-beta exp(-c sqrt(m) |k|) on the lattice.
double fmc_norm(const SpectralField& f, int m, double c, double beta);

/// Scales each mode by exp(-t |k|^2). Throws std::invalid_argument for t < 0.
SpectralField heat_multiply(const SpectralField& f, double t);

/// exp(-t |k|^2) with the underflow clamp applied.
double heat_factor(double t, double norm_sq);

/// max_k |<k, f(k)>| / (|f(k)| |k|) over supported sites; 0 for the zero field.
double divergence_defect(const SpectralField& f);
bool is_divergence_free(const SpectralField& f, double eps_div);

/// max_k |f(-k) - conj(f(k))|.
double reality_defect(const SpectralField& f);

/// max_k |a(k) - b(k)|.
double max_abs_difference(const SpectralField& a, const SpectralField& b);

/// max_k |f(k)|.
double sup_magnitude(const SpectralField& f);

}  // namespace torusns
