#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <ostream>

namespace torusns {

/// Integer lattice site k in Z^3 with its squared length cached.
class WaveVector {
 public:
  constexpr WaveVector() = default;
  constexpr WaveVector(int kx, int ky, int kz)
      : kx_(kx), ky_(ky), kz_(kz),
        norm_sq_(std::int64_t{kx} * kx + std::int64_t{ky} * ky + std::int64_t{kz} * kz) {}

  constexpr int kx() const { return kx_; }
  constexpr int ky() const { return ky_; }
  constexpr int kz() const { return kz_; }
  constexpr int operator[](int axis) const { return axis == 0 ? kx_ : (axis == 1 ? ky_ : kz_); }

  constexpr std::int64_t norm_sq() const { return norm_sq_; }
  double norm() const { return std::sqrt(static_cast<double>(norm_sq_)); }
  constexpr bool is_zero() const { return norm_sq_ == 0; }

  constexpr WaveVector operator-() const { return {-kx_, -ky_, -kz_}; }
  constexpr WaveVector operator+(const WaveVector& o) const { return {kx_ + o.kx_, ky_ + o.ky_, kz_ + o.kz_}; }
  constexpr WaveVector operator-(const WaveVector& o) const { return {kx_ - o.kx_, ky_ - o.ky_, kz_ - o.kz_}; }

  constexpr bool operator==(const WaveVector&) const = default;
  // Lexicographic on (kx, ky, kz); norm_sq is a function of those.
  constexpr auto operator<=>(const WaveVector&) const = default;

 private:
  int kx_ = 0;
  int ky_ = 0;
  int kz_ = 0;
  std::int64_t norm_sq_ = 0;
};

inline std::ostream& operator<<(std::ostream& os, const WaveVector& k) {
  return os << '(' << k.kx() << ',' << k.ky() << ',' << k.kz() << ')';
}

}  // namespace torusns
