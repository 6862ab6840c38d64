#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "torusns/wave_vector.hpp"

namespace torusns {

enum class TruncationRule { euclidean_ball, sup_cube };

std::string_view to_string(TruncationRule rule);
TruncationRule truncation_rule_from_string(std::string_view name);

struct LatticeSpec {
  int k_max = 4;
  TruncationRule truncation_rule = TruncationRule::euclidean_ball;

  bool operator==(const LatticeSpec&) const = default;
};

/// Every nonzero k within the truncation radius, in lexicographic order.
/// Throws std::invalid_argument when k_max < 1.
std::vector<WaveVector> build_lattice(const LatticeSpec& spec);

/// Immutable truncated lattice with O(1) site lookup and the precomputed
/// interaction table used by the convolution kernels.
class Lattice {
 public:
  /// One admissible (l, k - l) pair for an output site k, both nonzero and
  /// inside the lattice.
  struct Triad {
    std::uint32_t l;
    std::uint32_t k_minus_l;
  };

  static std::shared_ptr<const Lattice> make(const LatticeSpec& spec);

  const LatticeSpec& spec() const { return spec_; }
  std::size_t size() const { return sites_.size(); }
  std::span<const WaveVector> sites() const { return sites_; }
  const WaveVector& site(std::size_t i) const { return sites_[i]; }

  /// |k| for every site, in site order.
  std::span<const double> norms() const { return norms_; }

  std::optional<std::size_t> index_of(const WaveVector& k) const;
  std::size_t negated(std::size_t i) const { return negated_[i]; }

  std::span<const Triad> triads(std::size_t k_index) const {
    return {triads_.data() + triad_offsets_[k_index],
            triads_.data() + triad_offsets_[k_index + 1]};
  }
  std::size_t triad_count() const { return triads_.size(); }

  bool same_as(const Lattice& other) const { return this == &other || spec_ == other.spec_; }

  explicit Lattice(const LatticeSpec& spec);

 private:
  std::size_t cube_offset(const WaveVector& k) const;

  LatticeSpec spec_;
  std::vector<WaveVector> sites_;
  std::vector<double> norms_;
  std::vector<std::int32_t> lookup_;
  std::vector<std::size_t> negated_;
  std::vector<std::size_t> triad_offsets_;
  std::vector<Triad> triads_;
};

using LatticePtr = std::shared_ptr<const Lattice>;

}  // namespace torusns
