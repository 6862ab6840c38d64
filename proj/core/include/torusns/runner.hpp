#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "torusns/certificates.hpp"
#include "torusns/config.hpp"
#include "torusns/induction.hpp"

namespace torusns {

/// One row of norm_series.csv: the solution at absolute time m + t.
struct NormSeriesRow {
  int m = 0;
  double t = 0.0;
  double phi_norm = 0.0;
  double fmc_norm_g = 0.0;
  int fp_iterations = 0;
};

enum class RunStatus { success = 0, fixed_point_failure = 2, oracle_mismatch = 3 };

/// Process exit code for a status. Configuration errors use 1.
int exit_code(RunStatus status);

struct RunOutcome {
  RunStatus status = RunStatus::success;
  std::string message{};
  int steps_completed = 0;
  DecompositionState final_state;
  /// v(m) for m = 0..steps_completed.
  std::vector<SpectralField> v_integer{};
  std::vector<NormSeriesRow> norm_series{};
  std::vector<CertificateRecord> certificates{};
  /// Set on fixed-point failure.
  std::optional<double> last_ratio{};
  /// Largest |v_picard - v_induction| over modes and integer times, when
  /// the oracle ran.
  std::optional<double> oracle_max_diff{};
};

/// Runs horizon_m induction steps (plus the Picard cross-check when
/// enabled) entirely in memory. Configuration errors propagate as exceptions;
/// solver failures are reported through the status.
RunOutcome simulate(const RunConfig& config);

/// simulate() followed by writing config.txt, the selected CSVs and field
/// checkpoints under config.output_dir.
RunOutcome run(const RunConfig& config);

void write_norm_series(std::ostream& out, std::span<const NormSeriesRow> rows);
void write_certificates(std::ostream& out, std::span<const CertificateRecord> records);

struct OracleOutcome {
  RunStatus status = RunStatus::success;
  std::string message;
  int iterations = 0;
  std::vector<EnvelopePoint> series;
};

/// Picard-only run over [0, horizon_m]; writes oracle_series.csv.
OracleOutcome run_oracle(const RunConfig& config);

struct BisectTrial {
  double delta = 0.0;
  bool converged = false;
  int steps_completed = 0;
};

struct BisectResult {
  /// Largest delta observed to converge for the whole horizon.
  double delta0 = 0.0;
  std::vector<BisectTrial> trials;
};

/// Bisection on delta over [lo, hi] for the largest value whose first
/// `horizon` steps all converge. Only delta changes between trials.
BisectResult bisect_delta(const RunConfig& base, int horizon, int iterations, double lo, double hi);

struct CheckRow {
  int j = 0;
  double D_h = 0.0;
  double D_h_max = 0.0;
  double D_g = 0.0;
  double D_g_max = 0.0;
  double d_g = 0.0;
  bool d_g_fitted = false;
  double phi_norm_v = 0.0;
};

/// Re-fits the decay constants from the checkpoints a run wrote with
/// emit = fields. Throws CheckpointError / ConfigError on missing or bad
/// inputs.
std::vector<CheckRow> check_saved_run(const std::filesystem::path& dir);
void write_check(std::ostream& out, std::span<const CheckRow> rows);

}  // namespace torusns
