#include "torusns/initial_conditions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <numbers>
#include <random>

#include "torusns/checkpoint.hpp"
#include "torusns/operators.hpp"

namespace torusns {

namespace {

// Bit-reproducible draws: mt19937_64 is fully specified by the standard,
// the distribution adaptors are not.
class Draws {
 public:
  explicit Draws(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  Complex gaussian_pair() {
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(theta), r * std::sin(theta)};
  }

 private:
  std::mt19937_64 engine_;
};

// Canonical representative of {k, -k}: first nonzero component positive.
bool is_canonical(const WaveVector& k) { return k > -k; }

SpectralField random_phi_ball(const RunConfig& config, const LatticePtr& lattice) {
  const double alpha = config.params.alpha();
  const double delta = config.params.delta;
  SpectralField v0(lattice);
  Draws draws(config.rng_seed);
  const auto& lat = *lattice;
  for (std::size_t i = 0; i < lat.size(); ++i) {
    const WaveVector& k = lat.site(i);
    if (config.reality_symmetry && !is_canonical(k)) continue;
    Vec3c dir;
    double mag = 0.0;
    while (mag == 0.0) {
      dir = leray_project(k, Vec3c{{draws.gaussian_pair(), draws.gaussian_pair(), draws.gaussian_pair()}});
      mag = dir.magnitude();
    }
    const double coefficient = draws.uniform() * delta;
    v0[i] = dir * (coefficient / (mag * std::pow(lat.norms()[i], alpha)));
    if (config.reality_symmetry) v0[lat.negated(i)] = v0[i].conj();
  }
  // Guard the bound against rounding in the scale factors.
  const double phi = phi_norm(v0, alpha);
  if (phi > delta) v0 *= (delta / phi) * (1.0 - 4.0 * std::numeric_limits<double>::epsilon());
  return v0;
}

void place(SpectralField& v0, const WaveVector& k, const Vec3c& value, bool mirror) {
  v0.set(k, value);
  if (mirror) v0.set(-k, value.conj());
}

}  // namespace

SpectralField generate_ic(const RunConfig& config, const LatticePtr& lattice) {
  const double delta = config.params.delta;
  switch (config.ic_kind) {
    case IcKind::random_phi_ball:
      return random_phi_ball(config, lattice);
    case IcKind::single_mode: {
      SpectralField v0(lattice);
      place(v0, {1, 0, 0}, Vec3c{{0.0, delta, 0.0}}, config.reality_symmetry);
      return v0;
    }
    case IcKind::two_mode: {
      SpectralField v0(lattice);
      place(v0, {1, 0, 0}, Vec3c{{0.0, delta, 0.0}}, config.reality_symmetry);
      place(v0, {0, 1, 0}, Vec3c{{0.0, 0.0, delta}}, config.reality_symmetry);
      return v0;
    }
    case IcKind::from_checkpoint: {
      SpectralField loaded = load_field(config.ic_path, lattice->spec());
      SpectralField v0(lattice);
      for (std::size_t i = 0; i < v0.size(); ++i) v0[i] = loaded[i];
      return v0;
    }
  }
  throw std::logic_error("unhandled initial condition kind");
}

SpectralField generate_ic(const RunConfig& config) { return generate_ic(config, Lattice::make(config.lattice)); }

}  // namespace torusns
