#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "torusns/config.hpp"
#include "torusns/runner.hpp"

namespace {

using namespace torusns;

constexpr int kUsageError = 1;
constexpr const char* kOutputDirEnv = "TORUSNS_OUTPUT_DIR";

// Config file plus per-key flags shared by run, bisect-delta and oracle.
struct ConfigOptions {
  std::string config_path;
  std::map<std::string, std::string, std::less<>> flags;

  void attach(CLI::App& app) {
    app.add_option("--config", config_path, "key = value configuration file")->check(CLI::ExistingFile);
    for (std::string_view key : config_keys()) {
      const std::string name(key);
      app.add_option_function<std::string>(
          "--" + name, [this, name](const std::string& v) { flags[name] = v; }, "overrides '" + name + "'");
    }
  }

  // File first, then the output-directory variable, then explicit flags.
  RunConfig resolve() const {
    RunConfig config;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      std::ostringstream text;
      text << in.rdbuf();
      try {
        config = parse_config(text.str());
      } catch (const ConfigError& e) {
        throw ConfigError(config_path + ": " + e.what());
      }
    }
    if (const char* env = std::getenv(kOutputDirEnv); env && *env) config.output_dir = env;
    for (const auto& [key, value] : flags) apply_setting(config, key, value);
    config.validate();
    return config;
  }
};

int report(RunStatus status, const std::string& message) {
  if (status != RunStatus::success) std::cerr << "torusns: " << message << '\n';
  return exit_code(status);
}

int do_run(const ConfigOptions& opts) {
  const RunConfig config = opts.resolve();
  const RunOutcome out = run(config);
  std::cerr << "completed " << out.steps_completed << " of " << config.horizon_m << " steps; output in "
            << config.output_dir << '\n';
  if (out.oracle_max_diff) std::cerr << "oracle max |difference| = " << *out.oracle_max_diff << '\n';
  return report(out.status, out.message);
}

int do_oracle(const ConfigOptions& opts) {
  const RunConfig config = opts.resolve();
  const OracleOutcome out = run_oracle(config);
  if (out.status == RunStatus::success)
    std::cerr << "Picard iteration converged in " << out.iterations << " iterations\n";
  return report(out.status, out.message);
}

struct BisectOptions {
  int horizon = 5;
  int iterations = 20;
  double lo = 0.0;
  double hi = 1.0;
};

int do_bisect(const ConfigOptions& opts, const BisectOptions& b) {
  const RunConfig config = opts.resolve();
  const BisectResult res = bisect_delta(config, b.horizon, b.iterations, b.lo, b.hi);
  std::filesystem::create_directories(config.output_dir);
  std::ofstream csv(std::filesystem::path(config.output_dir) / "bisect.csv");
  csv << "# schema: torusns.bisect v1\n" << "delta,converged,steps_completed\n";
  for (const auto& t : res.trials) {
    csv << format_double(t.delta) << ',' << (t.converged ? 1 : 0) << ',' << t.steps_completed << '\n';
  }
  std::cout << "delta0 = " << format_double(res.delta0) << '\n';
  return 0;
}

int do_check(const std::string& dir) {
  const auto rows = check_saved_run(dir);
  std::ofstream csv(std::filesystem::path(dir) / "check.csv");
  write_check(csv, rows);
  write_check(std::cout, rows);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Induction solver and certificate checker for small-data Navier-Stokes on the 3-torus"};
  app.require_subcommand(1);

  ConfigOptions run_opts;
  auto* run_cmd = app.add_subcommand("run", "advance the induction and write series, certificates and fields");
  run_opts.attach(*run_cmd);

  ConfigOptions oracle_opts;
  auto* oracle_cmd = app.add_subcommand("oracle", "Picard iteration of the mild equation only");
  oracle_opts.attach(*oracle_cmd);

  ConfigOptions bisect_opts;
  BisectOptions bisect;
  auto* bisect_cmd = app.add_subcommand("bisect-delta", "largest delta whose first steps all converge");
  bisect_opts.attach(*bisect_cmd);
  bisect_cmd->add_option("--steps", bisect.horizon, "induction steps per trial")->capture_default_str();
  bisect_cmd->add_option("--iterations", bisect.iterations, "bisection halvings")->capture_default_str();
  bisect_cmd->add_option("--lo", bisect.lo, "delta known to converge")->capture_default_str();
  bisect_cmd->add_option("--hi", bisect.hi, "upper end of the search")->capture_default_str();

  std::string check_dir;
  auto* check_cmd = app.add_subcommand("check", "re-fit decay constants from a run saved with emit=fields");
  check_cmd->add_option("dir", check_dir, "run output directory")->required()->check(CLI::ExistingDirectory);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (*run_cmd) return do_run(run_opts);
    if (*oracle_cmd) return do_oracle(oracle_opts);
    if (*bisect_cmd) return do_bisect(bisect_opts, bisect);
    if (*check_cmd) return do_check(check_dir);
  } catch (const std::exception& e) {
    std::cerr << "torusns: " << e.what() << '\n';
  }
  return kUsageError;
}
