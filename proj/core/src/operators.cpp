#include "torusns/operators.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "torusns/parallel.hpp"

namespace torusns {

Vec3c leray_project(const WaveVector& k, const Vec3c& x) {
  if (k.is_zero()) throw std::invalid_argument("Leray projector is undefined at k = 0");
  const Complex coeff = dot(k, x) / static_cast<double>(k.norm_sq());
  Vec3c out = x;
  out[0] -= coeff * static_cast<double>(k.kx());
  out[1] -= coeff * static_cast<double>(k.ky());
  out[2] -= coeff * static_cast<double>(k.kz());
  return out;
}

SpectralField bilinear(const SpectralField& u, const SpectralField& v, int threads) {
  if (!u.same_lattice(v)) throw std::invalid_argument("bilinear: operands live on different lattices");
  SpectralField out(u.lattice_ptr());
  if (u.is_zero() || v.is_zero()) return out;

  const Lattice& lat = u.lattice();
  const Complex prefactor{0.0, 2.0 * std::numbers::pi};
  const auto uv = u.values();
  const auto vv = v.values();
  auto ov = out.values();

  detail::parallel_for(lat.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t ki = begin; ki < end; ++ki) {
      const WaveVector& k = lat.site(ki);
      Vec3c acc{};
      for (const auto& triad : lat.triads(ki)) {
        const Vec3c& uk = uv[triad.k_minus_l];
        const Vec3c& vl = vv[triad.l];
        const Complex weight = dot(k, uk);
        acc[0] += weight * vl[0];
        acc[1] += weight * vl[1];
        acc[2] += weight * vl[2];
      }
      // P_k is linear, so projecting the accumulated sum once is exact.
      ov[ki] = leray_project(k, acc) * prefactor;
    }
  });
  return out;
}

namespace {

// Runs the substep recurrence
//   I_{n+1} = e^{-h|k|^2} I_n + (1 - e^{-h|k|^2}) / |k|^2 * (f_n + f_{n+1}) / 2
// up to grid index last, writing every intermediate slice when sink is set.
SpectralField duhamel_upto(const TimeSlicedField& source, std::size_t last,
                           std::vector<SpectralField>* sink) {
  const TimeGrid& grid = source.grid();
  const Lattice& lat = source.lattice();
  const double h = grid.step();

  SpectralField acc(source.lattice_ptr());
  if (sink) sink->push_back(acc);
  if (last == 0) return acc;

  std::vector<double> decay(lat.size());
  std::vector<double> weight(lat.size());
  for (std::size_t i = 0; i < lat.size(); ++i) {
    const double lambda = static_cast<double>(lat.site(i).norm_sq());
    decay[i] = std::exp(-h * lambda);
    weight[i] = -std::expm1(-h * lambda) / lambda;
  }

  for (std::size_t n = 0; n < last; ++n) {
    const auto left = source[n].values();
    const auto right = source[n + 1].values();
    auto out = acc.values();
    for (std::size_t i = 0; i < lat.size(); ++i) {
      Vec3c mean = left[i] + right[i];
      mean *= 0.5 * weight[i];
      out[i] *= decay[i];
      out[i] += mean;
    }
    if (sink) sink->push_back(acc);
  }
  return acc;
}

}  // namespace

TimeSlicedField duhamel_integrate_all(const TimeSlicedField& source) {
  std::vector<SpectralField> slices;
  slices.reserve(source.size());
  duhamel_upto(source, source.size() - 1, &slices);
  return TimeSlicedField(source.grid(), std::move(slices));
}

SpectralField duhamel_integrate(const TimeSlicedField& source, double t) {
  return duhamel_upto(source, source.grid().index_of(t), nullptr);
}

TimeSlicedField star_product(const TimeSlicedField& u, const TimeSlicedField& v, int threads) {
  if (!u.compatible(v)) throw std::invalid_argument("star_product: grid or lattice mismatch");
  std::vector<SpectralField> sources;
  sources.reserve(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) sources.push_back(bilinear(u[i], v[i], threads));
  return duhamel_integrate_all(TimeSlicedField(u.grid(), std::move(sources)));
}

IdentitySplit identity_split(double a1, double a2, const WaveVector& k, const WaveVector& l) {
  if (!(a1 >= 0.0) || !(a2 >= 0.0)) throw std::invalid_argument("identity_split needs a1, a2 >= 0");
  const double total = a1 + a2;
  if (!(total > 0.0)) throw std::invalid_argument("identity_split needs a1 + a2 > 0");
  const double shift = a1 / total;
  double shifted_sq = 0.0;
  for (int axis = 0; axis < 3; ++axis) {
    const double d = std::fma(-shift, k[axis], l[axis]);
    shifted_sq = std::fma(d, d, shifted_sq);
  }
  return {a1 * a2 / total, shift, total * shifted_sq};
}

}  // namespace torusns
