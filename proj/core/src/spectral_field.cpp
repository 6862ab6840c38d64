#include "torusns/spectral_field.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace torusns {

SpectralField::SpectralField(LatticePtr lattice) : lattice_(std::move(lattice)) {
  if (!lattice_) throw std::invalid_argument("SpectralField requires a lattice");
  values_.resize(lattice_->size());
}

Vec3c SpectralField::at(const WaveVector& k) const {
  const auto idx = lattice_->index_of(k);
  return idx ? values_[*idx] : Vec3c{};
}

void SpectralField::set(const WaveVector& k, const Vec3c& value) {
  const auto idx = lattice_->index_of(k);
  if (!idx) {
    std::ostringstream msg;
    msg << "site " << k << " is not in the lattice";
    throw std::out_of_range(msg.str());
  }
  values_[*idx] = value;
}

std::size_t SpectralField::support_size() const {
  return static_cast<std::size_t>(
      std::count_if(values_.begin(), values_.end(), [](const Vec3c& v) { return !v.is_zero(); }));
}

void SpectralField::require_same_lattice(const SpectralField& other) const {
  if (!same_lattice(other)) throw std::invalid_argument("spectral fields live on different lattices");
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  require_same_lattice(other);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  require_same_lattice(other);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

SpectralField& SpectralField::operator*=(Complex s) {
  for (auto& v : values_) v *= s;
  return *this;
}

SpectralField& SpectralField::operator*=(double s) {
  for (auto& v : values_) v *= s;
  return *this;
}

bool SpectralField::operator==(const SpectralField& other) const {
  return same_lattice(other) && values_ == other.values_;
}

double phi_norm(const SpectralField& f, double alpha) {
  double sup = 0.0;
  const auto norms = f.lattice().norms();
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i].is_zero()) continue;
    const double term = std::pow(norms[i], alpha) * f[i].magnitude();
    if (std::isnan(term)) return term;
    sup = std::max(sup, term);
  }
  return sup;
}

double fmc_norm(const SpectralField& f, int m, double c, double beta) {
  double sup = 0.0;
  const double rate = c * std::sqrt(static_cast<double>(m));
  const auto norms = f.lattice().norms();
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i].is_zero()) continue;
    const double term = std::pow(norms[i], beta) * std::exp(rate * norms[i]) * f[i].magnitude();
    if (std::isnan(term)) return term;
    sup = std::max(sup, term);
  }
  return sup;
}

double heat_factor(double t, double norm_sq) {
  const double factor = std::exp(-t * norm_sq);
  return factor < kHeatUnderflow ? 0.0 : factor;
}

SpectralField heat_multiply(const SpectralField& f, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("heat_multiply requires t >= 0");
  SpectralField out = f;
  const auto sites = f.lattice().sites();
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i].is_zero()) continue;
    const double factor = heat_factor(t, static_cast<double>(sites[i].norm_sq()));
    if (factor == 0.0) {
      out[i] = Vec3c{};
    } else {
      out[i] *= factor;
    }
  }
  return out;
}

double divergence_defect(const SpectralField& f) {
  double worst = 0.0;
  const auto sites = f.lattice().sites();
  const auto norms = f.lattice().norms();
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double mag = f[i].magnitude();
    if (mag == 0.0) continue;
    worst = std::max(worst, std::abs(dot(sites[i], f[i])) / (mag * norms[i]));
  }
  return worst;
}

bool is_divergence_free(const SpectralField& f, double eps_div) {
  return divergence_defect(f) <= eps_div;
}

double reality_defect(const SpectralField& f) {
  double worst = 0.0;
  const auto& lat = f.lattice();
  for (std::size_t i = 0; i < f.size(); ++i) {
    worst = std::max(worst, (f[lat.negated(i)] - f[i].conj()).magnitude());
  }
  return worst;
}

double max_abs_difference(const SpectralField& a, const SpectralField& b) {
  if (!a.same_lattice(b)) throw std::invalid_argument("spectral fields live on different lattices");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, (a[i] - b[i]).magnitude());
  return worst;
}

double sup_magnitude(const SpectralField& f) {
  double worst = 0.0;
  for (const auto& v : f.values()) worst = std::max(worst, v.magnitude());
  return worst;
}

}  // namespace torusns
