#include "torusns/config.hpp"

#include <charconv>
#include <cmath>
#include <set>
#include <sstream>
#include <system_error>

namespace torusns {

std::string_view to_string(IcKind kind) {
  switch (kind) {
    case IcKind::random_phi_ball:
      return "random_phi_ball";
    case IcKind::single_mode:
      return "single_mode";
    case IcKind::two_mode:
      return "two_mode";
    case IcKind::from_checkpoint:
      return "from_checkpoint";
  }
  return "unknown";
}

IcKind ic_kind_from_string(std::string_view name) {
  for (IcKind k : {IcKind::random_phi_ball, IcKind::single_mode, IcKind::two_mode, IcKind::from_checkpoint}) {
    if (to_string(k) == name) return k;
  }
  throw ConfigError("unknown initial condition '" + std::string(name) +
                    "' (expected random_phi_ball, single_mode, two_mode or from_checkpoint)");
}

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view expected) {
  throw ConfigError("invalid value '" + std::string(value) + "' for key '" + std::string(key) +
                    "' (expected " + std::string(expected) + ")");
}

double parse_double(std::string_view key, std::string_view value) {
  double out = 0.0;
  const auto res = std::from_chars(value.data(), value.data() + value.size(), out);
  if (res.ec != std::errc{} || res.ptr != value.data() + value.size()) bad_value(key, value, "a real number");
  return out;
}

template <class Int>
Int parse_int(std::string_view key, std::string_view value) {
  Int out{};
  const auto res = std::from_chars(value.data(), value.data() + value.size(), out);
  if (res.ec != std::errc{} || res.ptr != value.data() + value.size()) bad_value(key, value, "an integer");
  return out;
}

bool parse_bool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  bad_value(key, value, "true or false");
}

EmitSet parse_emit(std::string_view key, std::string_view value) {
  EmitSet emit{false, false, false};
  std::string_view rest = value;
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string_view item = trim(rest.substr(0, comma));
    if (item == "norm_series") {
      emit.norm_series = true;
    } else if (item == "certificates") {
      emit.certificates = true;
    } else if (item == "fields") {
      emit.fields = true;
    } else if (!item.empty()) {
      bad_value(key, value, "a comma list of norm_series, certificates, fields");
    }
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return emit;
}

std::string format_emit(const EmitSet& emit) {
  std::string out;
  const auto add = [&](bool on, std::string_view name) {
    if (!on) return;
    if (!out.empty()) out += ',';
    out += name;
  };
  add(emit.norm_series, "norm_series");
  add(emit.certificates, "certificates");
  add(emit.fields, "fields");
  return out;
}

}  // namespace

const std::vector<std::string_view>& config_keys() {
  static const std::vector<std::string_view> keys = {
      "epsilon",   "beta",     "delta",       "decay_c",      "fp_tol",    "fp_max_iter", "substeps",
      "eps_div",   "threads",  "k_max",       "truncation",   "ic",        "ic_path",     "reality_symmetry",
      "seed",      "horizon_m", "output_dir", "emit",         "oracle_horizon", "oracle_tol"};
  return keys;
}

void apply_setting(RunConfig& c, std::string_view key, std::string_view raw) {
  const std::string_view value = trim(raw);
  SolverParams& p = c.params;
  if (key == "epsilon") {
    p.epsilon = parse_double(key, value);
  } else if (key == "beta") {
    p.beta = parse_double(key, value);
  } else if (key == "delta") {
    p.delta = parse_double(key, value);
  } else if (key == "decay_c") {
    p.decay_c = parse_double(key, value);
  } else if (key == "fp_tol") {
    p.fp_tol = parse_double(key, value);
  } else if (key == "fp_max_iter") {
    p.fp_max_iter = parse_int<int>(key, value);
  } else if (key == "substeps") {
    p.substeps = parse_int<int>(key, value);
  } else if (key == "eps_div") {
    p.eps_div = parse_double(key, value);
  } else if (key == "threads") {
    p.threads = parse_int<int>(key, value);
  } else if (key == "k_max") {
    c.lattice.k_max = parse_int<int>(key, value);
  } else if (key == "truncation") {
    try {
      c.lattice.truncation_rule = truncation_rule_from_string(value);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  } else if (key == "ic") {
    c.ic_kind = ic_kind_from_string(value);
  } else if (key == "ic_path") {
    c.ic_path = std::string(value);
  } else if (key == "reality_symmetry") {
    c.reality_symmetry = parse_bool(key, value);
  } else if (key == "seed") {
    c.rng_seed = parse_int<std::uint64_t>(key, value);
  } else if (key == "horizon_m") {
    c.horizon_m = parse_int<int>(key, value);
  } else if (key == "output_dir") {
    c.output_dir = std::string(value);
  } else if (key == "emit") {
    c.emit = parse_emit(key, value);
  } else if (key == "oracle_horizon") {
    c.oracle_horizon = parse_int<int>(key, value);
  } else if (key == "oracle_tol") {
    c.oracle_tol = parse_double(key, value);
  } else {
    throw ConfigError("unknown configuration key '" + std::string(key) + "'");
  }
}

void RunConfig::validate() const {
  try {
    params.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (lattice.k_max < 1) throw ConfigError("k_max must be >= 1");
  if (horizon_m < 1) throw ConfigError("horizon_m must be >= 1");
  if (oracle_horizon < 0) throw ConfigError("oracle_horizon must be >= 0");
  if (!(oracle_tol > 0.0)) throw ConfigError("oracle_tol must be > 0");
  if (ic_kind == IcKind::from_checkpoint && ic_path.empty()) {
    throw ConfigError("ic = from_checkpoint requires ic_path");
  }
  for (const std::string* s : {&ic_path, &output_dir}) {
    if (s->find_first_of("#\n") != std::string::npos) throw ConfigError("paths may not contain '#' or newlines");
  }
}

RunConfig parse_config(std::string_view text) {
  RunConfig config;
  std::set<std::string, std::less<>> seen;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string_view key = trim(line.substr(0, eq));
    if (!seen.insert(std::string(key)).second) {
      throw ConfigError("line " + std::to_string(line_no) + ": key '" + std::string(key) + "' given twice");
    }
    try {
      apply_setting(config, key, line.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  config.validate();
  return config;
}

std::string serialize_config(const RunConfig& c) {
  const SolverParams& p = c.params;
  std::ostringstream out;
  out << "epsilon = " << format_double(p.epsilon) << '\n'
      << "beta = " << format_double(p.beta) << '\n'
      << "delta = " << format_double(p.delta) << '\n'
      << "decay_c = " << format_double(p.decay_c) << '\n'
      << "fp_tol = " << format_double(p.fp_tol) << '\n'
      << "fp_max_iter = " << p.fp_max_iter << '\n'
      << "substeps = " << p.substeps << '\n'
      << "eps_div = " << format_double(p.eps_div) << '\n'
      << "threads = " << p.threads << '\n'
      << "k_max = " << c.lattice.k_max << '\n'
      << "truncation = " << to_string(c.lattice.truncation_rule) << '\n'
      << "ic = " << to_string(c.ic_kind) << '\n'
      << "ic_path = " << c.ic_path << '\n'
      << "reality_symmetry = " << (c.reality_symmetry ? "true" : "false") << '\n'
      << "seed = " << c.rng_seed << '\n'
      << "horizon_m = " << c.horizon_m << '\n'
      << "output_dir = " << c.output_dir << '\n'
      << "emit = " << format_emit(c.emit) << '\n'
      << "oracle_horizon = " << c.oracle_horizon << '\n'
      << "oracle_tol = " << format_double(c.oracle_tol) << '\n';
  return out.str();
}

}  // namespace torusns
