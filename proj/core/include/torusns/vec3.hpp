#pragma once

#include <array>
#include <cmath>
#include <complex>

#include "torusns/wave_vector.hpp"

namespace torusns {

using Complex = std::complex<double>;

/// Complex 3-vector: the velocity amplitude carried by one Fourier mode.
struct Vec3c {
  std::array<Complex, 3> c{};

  constexpr Complex& operator[](int i) { return c[static_cast<std::size_t>(i)]; }
  constexpr const Complex& operator[](int i) const { return c[static_cast<std::size_t>(i)]; }

  Vec3c& operator+=(const Vec3c& o) {
    c[0] += o.c[0];
    c[1] += o.c[1];
    c[2] += o.c[2];
    return *this;
  }
  Vec3c& operator-=(const Vec3c& o) {
    c[0] -= o.c[0];
    c[1] -= o.c[1];
    c[2] -= o.c[2];
    return *this;
  }
  Vec3c& operator*=(Complex s) {
    c[0] *= s;
    c[1] *= s;
    c[2] *= s;
    return *this;
  }
  Vec3c& operator*=(double s) {
    c[0] *= s;
    c[1] *= s;
    c[2] *= s;
    return *this;
  }

  friend Vec3c operator+(Vec3c a, const Vec3c& b) { return a += b; }
  friend Vec3c operator-(Vec3c a, const Vec3c& b) { return a -= b; }
  friend Vec3c operator*(Vec3c a, Complex s) { return a *= s; }
  friend Vec3c operator*(Complex s, Vec3c a) { return a *= s; }
  friend Vec3c operator*(Vec3c a, double s) { return a *= s; }
  friend Vec3c operator*(double s, Vec3c a) { return a *= s; }

  bool operator==(const Vec3c&) const = default;

  bool is_zero() const {
    return c[0] == Complex{} && c[1] == Complex{} && c[2] == Complex{};
  }

  double norm_sq() const { return std::norm(c[0]) + std::norm(c[1]) + std::norm(c[2]); }
  /// Complex Euclidean magnitude.
  double magnitude() const { return std::sqrt(norm_sq()); }

  Vec3c conj() const { return {{std::conj(c[0]), std::conj(c[1]), std::conj(c[2])}}; }
};

/// <k, x> with the real lattice vector k (no conjugation).
inline Complex dot(const WaveVector& k, const Vec3c& x) {
  return static_cast<double>(k.kx()) * x.c[0] + static_cast<double>(k.ky()) * x.c[1] +
         static_cast<double>(k.kz()) * x.c[2];
}

inline Complex dot(const Vec3c& a, const Vec3c& b) {
  return a.c[0] * b.c[0] + a.c[1] * b.c[1] + a.c[2] * b.c[2];
}

}  // namespace torusns
