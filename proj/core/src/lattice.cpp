#include "torusns/lattice.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace torusns {

std::string_view to_string(TruncationRule rule) {
  switch (rule) {
    case TruncationRule::euclidean_ball:
      return "euclidean_ball";
    case TruncationRule::sup_cube:
      return "sup_cube";
  }
  return "unknown";
}

TruncationRule truncation_rule_from_string(std::string_view name) {
  if (name == "euclidean_ball") return TruncationRule::euclidean_ball;
  if (name == "sup_cube") return TruncationRule::sup_cube;
  throw std::invalid_argument("unknown truncation rule '" + std::string(name) +
                              "' (expected euclidean_ball or sup_cube)");
}

namespace {

bool inside(const WaveVector& k, const LatticeSpec& spec) {
  if (k.is_zero()) return false;
  const std::int64_t r = spec.k_max;
  switch (spec.truncation_rule) {
    case TruncationRule::euclidean_ball:
      return k.norm_sq() <= r * r;
    case TruncationRule::sup_cube:
      return std::abs(k.kx()) <= r && std::abs(k.ky()) <= r && std::abs(k.kz()) <= r;
  }
  return false;
}

}  // namespace

std::vector<WaveVector> build_lattice(const LatticeSpec& spec) {
  if (spec.k_max < 1) {
    throw std::invalid_argument("lattice k_max must be >= 1 (got " + std::to_string(spec.k_max) + ")");
  }
  const int r = spec.k_max;
  std::vector<WaveVector> sites;
  // Nested loops in increasing (kx, ky, kz) give lexicographic order directly.
  for (int x = -r; x <= r; ++x) {
    for (int y = -r; y <= r; ++y) {
      for (int z = -r; z <= r; ++z) {
        const WaveVector k{x, y, z};
        if (inside(k, spec)) sites.push_back(k);
      }
    }
  }
  return sites;
}

Lattice::Lattice(const LatticeSpec& spec) : spec_(spec), sites_(build_lattice(spec)) {
  const std::size_t side = 2 * static_cast<std::size_t>(spec_.k_max) + 1;
  lookup_.assign(side * side * side, -1);
  norms_.reserve(sites_.size());
  for (std::size_t i = 0; i < sites_.size(); ++i) {
    lookup_[cube_offset(sites_[i])] = static_cast<std::int32_t>(i);
    norms_.push_back(sites_[i].norm());
  }

  negated_.resize(sites_.size());
  for (std::size_t i = 0; i < sites_.size(); ++i) negated_[i] = *index_of(-sites_[i]);

  triad_offsets_.reserve(sites_.size() + 1);
  triad_offsets_.push_back(0);
  for (const auto& k : sites_) {
    for (std::size_t li = 0; li < sites_.size(); ++li) {
      if (const auto kl = index_of(k - sites_[li])) {
        triads_.push_back({static_cast<std::uint32_t>(li), static_cast<std::uint32_t>(*kl)});
      }
    }
    triad_offsets_.push_back(triads_.size());
  }
}

std::shared_ptr<const Lattice> Lattice::make(const LatticeSpec& spec) {
  return std::make_shared<const Lattice>(spec);
}

std::size_t Lattice::cube_offset(const WaveVector& k) const {
  const std::size_t side = 2 * static_cast<std::size_t>(spec_.k_max) + 1;
  const auto shift = [&](int c) { return static_cast<std::size_t>(c + spec_.k_max); };
  return (shift(k.kx()) * side + shift(k.ky())) * side + shift(k.kz());
}

std::optional<std::size_t> Lattice::index_of(const WaveVector& k) const {
  const int r = spec_.k_max;
  if (std::abs(k.kx()) > r || std::abs(k.ky()) > r || std::abs(k.kz()) > r) return std::nullopt;
  const std::int32_t idx = lookup_[cube_offset(k)];
  if (idx < 0) return std::nullopt;
  return static_cast<std::size_t>(idx);
}

}  // namespace torusns
