#include "torusns/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "torusns/checkpoint.hpp"
#include "torusns/initial_conditions.hpp"
#include "torusns/reference.hpp"

namespace torusns {

namespace fs = std::filesystem;

int exit_code(RunStatus status) { return static_cast<int>(status); }

namespace {

std::string checkpoint_name(std::string_view prefix, int j) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*s_%04d.ckpt", static_cast<int>(prefix.size()), prefix.data(), j);
  return buf;
}

void append_series(RunOutcome& out, int m, const IntervalSolution& interval, const SolverParams& params) {
  const TimeGrid& grid = interval.v.grid();
  for (std::size_t n = 0; n < grid.size(); ++n) {
    out.norm_series.push_back({m, grid.time(n), phi_norm(interval.v[n], params.alpha()),
                               fmc_norm(interval.g[n], m + 1, params.decay_c, params.beta),
                               interval.iterations});
  }
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  return out;
}

}  // namespace

RunOutcome simulate(const RunConfig& config) {
  config.validate();
  const SolverParams& params = config.params;
  const LatticePtr lattice = Lattice::make(config.lattice);

  RunOutcome out{.final_state = DecompositionState::initial(generate_ic(config, lattice))};
  out.v_integer.push_back(reconstruct_v(out.final_state, params));

  for (int step = 0; step < config.horizon_m; ++step) {
    try {
      StepResult res = advance_unit_interval(out.final_state, params);
      append_series(out, step, res.interval, params);
      out.certificates.push_back(res.record);
      out.final_state = std::move(res.state);
      out.v_integer.push_back(reconstruct_v(out.final_state, params));
      out.steps_completed = step + 1;
    } catch (const FixedPointDivergence& e) {
      out.status = RunStatus::fixed_point_failure;
      out.last_ratio = e.last_ratio();
      std::ostringstream msg;
      msg << "step " << step << ": " << e.what();
      out.message = msg.str();
      return out;
    }
  }

  if (config.oracle_horizon > 0 && config.horizon_m <= config.oracle_horizon) {
    try {
      const PicardTrajectory traj =
          picard_solve(out.final_state.v0, static_cast<double>(config.horizon_m), params);
      double worst = 0.0;
      for (int m = 0; m <= config.horizon_m; ++m) {
        worst = std::max(worst, max_abs_difference(traj.at(m), out.v_integer[static_cast<std::size_t>(m)]));
      }
      out.oracle_max_diff = worst;
      if (!(worst <= config.oracle_tol)) {
        out.status = RunStatus::oracle_mismatch;
        std::ostringstream msg;
        msg << "induction and Picard solutions differ by " << worst << " (tolerance " << config.oracle_tol << ")";
        out.message = msg.str();
      }
    } catch (const PicardDivergence& e) {
      out.status = RunStatus::oracle_mismatch;
      out.message = std::string("oracle failed: ") + e.what();
    }
  }
  return out;
}

void write_norm_series(std::ostream& out, std::span<const NormSeriesRow> rows) {
  out << "# schema: torusns.norm_series v1\n";
  out << "m,t,phi_norm,fmc_norm_g,fp_iterations\n";
  for (const auto& r : rows) {
    out << r.m << ',' << format_double(r.t) << ',' << format_double(r.phi_norm) << ','
        << format_double(r.fmc_norm_g) << ',' << r.fp_iterations << '\n';
  }
}

void write_certificates(std::ostream& out, std::span<const CertificateRecord> records) {
  out << "# schema: torusns.certificates v1\n";
  out << "m,D_h,D_h_max,D_g,D_g_max,d_g,d_g_fitted,D_H1,D_H0H1,D_H0H1_per_delta3,c1,c2,c3,"
         "contraction_ok,fp_iterations,max_ratio,phi_envelope\n";
  for (const auto& r : records) {
    out << r.m << ',' << format_double(r.D_h) << ',' << format_double(r.D_h_max) << ','
        << format_double(r.D_g) << ',' << format_double(r.D_g_max) << ',' << format_double(r.d_g) << ','
        << (r.d_g_fitted ? 1 : 0) << ',' << format_double(r.D_H1) << ',' << format_double(r.D_H0H1) << ','
        << format_double(r.D_H0H1_per_delta3) << ',' << format_double(r.c1) << ',' << format_double(r.c2)
        << ',' << (r.c3 ? format_double(*r.c3) : std::string{}) << ',' << (r.contraction_ok ? 1 : 0) << ','
        << r.fp_iterations << ',' << format_double(r.max_ratio) << ',' << format_double(r.phi_envelope)
        << '\n';
  }
}

RunOutcome run(const RunConfig& config) {
  RunOutcome outcome = simulate(config);

  const fs::path dir(config.output_dir);
  fs::create_directories(dir);
  open_output(dir / "config.txt") << serialize_config(config);
  if (config.emit.norm_series) {
    auto out = open_output(dir / "norm_series.csv");
    write_norm_series(out, outcome.norm_series);
  }
  if (config.emit.certificates) {
    auto out = open_output(dir / "certificates.csv");
    write_certificates(out, outcome.certificates);
  }
  if (config.emit.fields) {
    const fs::path fields = dir / "fields";
    fs::create_directories(fields);
    const DecompositionState& s = outcome.final_state;
    save_field(fields / "v0.ckpt", s.v0);
    for (int j = 1; j <= s.m; ++j) {
      save_field(fields / checkpoint_name("h1", j), s.h1_history[static_cast<std::size_t>(j - 1)]);
      save_field(fields / checkpoint_name("g", j), s.g_history[static_cast<std::size_t>(j - 1)]);
    }
  }
  if (outcome.oracle_max_diff) {
    open_output(dir / "oracle.txt") << "max_abs_diff = " << format_double(*outcome.oracle_max_diff) << '\n';
  }
  return outcome;
}

OracleOutcome run_oracle(const RunConfig& config) {
  config.validate();
  const SpectralField v0 = generate_ic(config);
  OracleOutcome out;
  try {
    const PicardTrajectory traj = picard_solve(v0, static_cast<double>(config.horizon_m), config.params);
    out.iterations = traj.iterations_used;
    std::vector<double> times;
    for (std::size_t n = 0; n < traj.grid.size(); ++n) times.push_back(traj.grid.time(n));
    out.series = phi_envelope(times, traj.slices, config.params).series;
  } catch (const PicardDivergence& e) {
    out.status = RunStatus::fixed_point_failure;
    out.message = e.what();
  }

  const fs::path dir(config.output_dir);
  fs::create_directories(dir);
  open_output(dir / "config.txt") << serialize_config(config);
  auto csv = open_output(dir / "oracle_series.csv");
  csv << "# schema: torusns.oracle_series v1\n";
  csv << "t,phi_norm\n";
  for (const auto& p : out.series) csv << format_double(p.t) << ',' << format_double(p.phi) << '\n';
  return out;
}

BisectResult bisect_delta(const RunConfig& base, int horizon, int iterations, double lo, double hi) {
  if (!(lo >= 0.0) || !(hi > lo)) throw ConfigError("bisection bracket needs 0 <= lo < hi");
  if (horizon < 1 || iterations < 1) throw ConfigError("bisection needs horizon >= 1 and iterations >= 1");

  BisectResult result;
  const auto trial = [&](double delta) {
    RunConfig cfg = base;
    cfg.params.delta = delta;
    cfg.horizon_m = horizon;
    cfg.oracle_horizon = 0;
    const RunOutcome o = simulate(cfg);
    result.trials.push_back({delta, o.status == RunStatus::success, o.steps_completed});
    return result.trials.back().converged;
  };

  if (trial(hi)) {
    result.delta0 = hi;
    return result;
  }
  double good = lo;
  double bad = hi;
  for (int i = 0; i < iterations; ++i) {
    const double mid = 0.5 * (good + bad);
    if (mid <= 0.0 || trial(mid)) {
      good = mid;
    } else {
      bad = mid;
    }
  }
  result.delta0 = good;
  return result;
}

std::vector<CheckRow> check_saved_run(const fs::path& dir) {
  std::ifstream cfg_in(dir / "config.txt");
  if (!cfg_in) throw ConfigError("missing " + (dir / "config.txt").string());
  std::stringstream text;
  text << cfg_in.rdbuf();
  const RunConfig config = parse_config(text.str());
  const SolverParams& params = config.params;

  const fs::path fields = dir / "fields";
  DecompositionState state = DecompositionState::initial(load_field(fields / "v0.ckpt", config.lattice));
  for (int j = 1; fs::exists(fields / checkpoint_name("h1", j)); ++j) {
    state.h1_history.push_back(load_field(fields / checkpoint_name("h1", j), config.lattice));
    state.g_history.push_back(load_field(fields / checkpoint_name("g", j), config.lattice));
  }
  state.m = static_cast<int>(state.h1_history.size());

  const HBoundFit h_fit = fit_h_bound(state.h1_history, params);
  const GBoundFit g_fit = fit_g_bound(state.g_history, params);

  std::vector<CheckRow> rows;
  DecompositionState prefix = DecompositionState::initial(state.v0);
  for (int j = 1; j <= state.m; ++j) {
    const auto idx = static_cast<std::size_t>(j - 1);
    prefix.h1_history.push_back(state.h1_history[idx]);
    prefix.g_history.push_back(state.g_history[idx]);
    prefix.m = j;
    const GBoundEntry& g = g_fit.per_j[idx];
    rows.push_back({j, h_fit.per_j[idx], h_fit.running_max[idx], g.D, g_fit.running_max[idx], g.d, g.d_fitted,
                    phi_norm(reconstruct_v(prefix, params), params.alpha())});
  }
  return rows;
}

void write_check(std::ostream& out, std::span<const CheckRow> rows) {
  out << "# schema: torusns.check v1\n";
  out << "j,D_h,D_h_max,D_g,D_g_max,d_g,d_g_fitted,phi_norm_v\n";
  for (const auto& r : rows) {
    out << r.j << ',' << format_double(r.D_h) << ',' << format_double(r.D_h_max) << ','
        << format_double(r.D_g) << ',' << format_double(r.D_g_max) << ',' << format_double(r.d_g) << ','
        << (r.d_g_fitted ? 1 : 0) << ',' << format_double(r.phi_norm_v) << '\n';
  }
}

}  // namespace torusns
