#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <vector>

#include "torusns/spectral_field.hpp"

namespace torusns {

class CheckpointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint32_t kCheckpointVersion = 1;

// Layout, all little-endian:
//   "TNSFIELD"                        8 bytes magic
//   u32 version, i32 k_max, u32 truncation rule, u64 record count
//   per record: i32 kx, ky, kz; f64 re/im of x, y, z
// Records cover every site whose amplitude is not bitwise +0.

std::vector<std::byte> encode_field(const SpectralField& field);

/// Throws CheckpointError on a bad magic/version, truncated input, trailing
/// bytes, sites outside the lattice, or (when given) a lattice mismatch.
SpectralField decode_field(std::span<const std::byte> bytes,
                           const std::optional<LatticeSpec>& expected = std::nullopt);

void save_field(const std::filesystem::path& path, const SpectralField& field);
SpectralField load_field(const std::filesystem::path& path,
                         const std::optional<LatticeSpec>& expected = std::nullopt);

}  // namespace torusns
