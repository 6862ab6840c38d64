#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "torusns/lattice.hpp"
#include "torusns/params.hpp"

namespace torusns {

enum class IcKind { random_phi_ball, single_mode, two_mode, from_checkpoint };

std::string_view to_string(IcKind kind);
IcKind ic_kind_from_string(std::string_view name);

/// Which artifacts a run writes.
struct EmitSet {
  bool norm_series = true;
  bool certificates = true;
  bool fields = false;

  bool operator==(const EmitSet&) const = default;
};

/// Flat run configuration. Every key has a default; see config_keys().
struct RunConfig {
  SolverParams params;
  LatticeSpec lattice;
  IcKind ic_kind = IcKind::random_phi_ball;
  std::string ic_path;
  bool reality_symmetry = false;
  std::uint64_t rng_seed = 0;
  int horizon_m = 20;
  std::string output_dir = "torusns_out";
  EmitSet emit;
  /// Run the Picard cross-check when 0 < horizon_m <= oracle_horizon.
  int oracle_horizon = 0;
  double oracle_tol = 1e-9;

  bool operator==(const RunConfig&) const = default;

  /// Throws ConfigError naming the violated constraint.
  void validate() const;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Recognised keys, in serialisation order.
const std::vector<std::string_view>& config_keys();

/// Sets one key from its textual value. Throws ConfigError on unknown keys
/// or malformed values; does not run validate().
void apply_setting(RunConfig& config, std::string_view key, std::string_view value);

/// Parses "key = value" lines; '#' starts a comment. Unknown or repeated
/// keys are errors. The result is validated.
RunConfig parse_config(std::string_view text);

/// Inverse of parse_config: every key, shortest round-trip numbers.
std::string serialize_config(const RunConfig& config);

/// Shortest decimal string that parses back to the same double.
std::string format_double(double value);

}  // namespace torusns
