#include "fracburgers/config.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <set>

#include <CLI11.hpp>

#include "fracburgers/errors.hpp"

namespace fracburgers {

using nlohmann::json;
using nlohmann::ordered_json;

std::string to_string(Command c) {
  switch (c) {
    case Command::Simulate: return "simulate";
    case Command::Linear: return "linear";
    case Command::Verify: return "verify";
    case Command::KernelCheck: return "kernel-check";
    case Command::Convergence: return "convergence";
    case Command::Sweep: return "sweep";
  }
  return "?";
}

Command parse_command(const std::string& s) {
  for (Command c : {Command::Simulate, Command::Linear, Command::Verify, Command::KernelCheck,
                    Command::Convergence, Command::Sweep}) {
    if (to_string(c) == s) return c;
  }
  throw ConfigError("command: unknown value '" + s + "'");
}

void RunConfig::validate() const {
  if (grid_n < 8 || (grid_n & (grid_n - 1)) != 0) {
    throw ConfigError("grid_n: must be a power of two >= 8");
  }
  if (!(period > 0.0 && std::isfinite(period))) throw ConfigError("period: must be positive");
  if (!(t_final >= 0.0 && std::isfinite(t_final))) throw ConfigError("t_final: must be >= 0");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ConfigError("alpha: must lie in (0, 1]");
  if (!(effective_beta() > 0.0 && effective_beta() < alpha)) throw ConfigError("beta: must lie in (0, alpha)");
  if (!(profile.amplitude >= 0.0)) throw ConfigError("profile.amplitude: must be >= 0");
  if (kernel.type != "burgers" && kernel.type != "synthetic") {
    throw ConfigError("kernel.type: must be 'burgers' or 'synthetic'");
  }
  if (kernel.odd_profile != "holder" && kernel.odd_profile != "smooth") {
    throw ConfigError("kernel.odd_profile: must be 'holder' or 'smooth'");
  }
  if (!(std::abs(kernel.a) < 0.5)) throw ConfigError("kernel.a: must satisfy |a| < 1/2");
  if (window_begin && window_end && !(*window_begin < *window_end)) {
    throw ConfigError("norms.window: begin must precede end");
  }
  if (out.empty()) throw ConfigError("out: must not be empty");
  try {
    solver.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(std::string("solver.") + e.what());
  }
}

ordered_json RunConfig::to_json() const {
  ordered_json j;
  j["command"] = to_string(command);
  j["grid_n"] = grid_n;
  j["period"] = period;
  j["profile"] = {{"name", profile.name},
                  {"mean", profile.mean},
                  {"amplitude", profile.amplitude},
                  {"modes", profile.modes}};
  if (samples_path) j["samples"] = *samples_path;
  j["t_final"] = t_final;
  ordered_json s;
  s["scheme"] = to_string(solver.scheme);
  if (solver.dt) s["dt"] = *solver.dt;
  if (solver.cfl_safety) s["cfl"] = *solver.cfl_safety;
  s["snapshot_interval"] = solver.snapshot_interval;
  s["form"] = to_string(solver.form);
  s["dealias"] = solver.dealias;
  s["lag_coefficient"] = solver.lag_coefficient;
  s["imex_midpoint"] = solver.imex_midpoint;
  j["solver"] = s;
  j["kernel"] = {{"type", kernel.type}, {"a", kernel.a}, {"b", kernel.b}, {"odd_profile", kernel.odd_profile}};
  ordered_json n;
  n["alpha"] = alpha;
  n["beta"] = effective_beta();
  if (window_begin && window_end) n["window"] = {*window_begin, *window_end};
  j["norms"] = n;
  j["out"] = out;
  j["seed"] = seed;
  return j;
}

namespace {

void check_keys(const json& j, const std::string& where, const std::set<std::string>& allowed) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& [key, _] : j.items()) {
    if (!allowed.count(key)) {
      throw ConfigError("unknown config key '" + (where.empty() ? key : where + "." + key) + "'");
    }
  }
}

template <typename T>
void read(const json& j, const std::string& key, const std::string& path, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError("config key '" + path + "' has the wrong type");
  }
}

}  // namespace

RunConfig config_from_json(const json& j, RunConfig c) {
  check_keys(j, "", {"command", "grid_n", "period", "profile", "samples", "t_final", "solver",
                     "kernel", "norms", "out", "seed"});
  std::string command = to_string(c.command);
  read(j, "command", "command", command);
  c.command = parse_command(command);
  read(j, "grid_n", "grid_n", c.grid_n);
  read(j, "period", "period", c.period);
  if (j.contains("profile")) {
    const json& p = j["profile"];
    check_keys(p, "profile", {"name", "mean", "amplitude", "modes"});
    read(p, "name", "profile.name", c.profile.name);
    read(p, "mean", "profile.mean", c.profile.mean);
    read(p, "amplitude", "profile.amplitude", c.profile.amplitude);
    read(p, "modes", "profile.modes", c.profile.modes);
  }
  if (j.contains("samples")) {
    std::string s;
    read(j, "samples", "samples", s);
    c.samples_path = s;
  }
  read(j, "t_final", "t_final", c.t_final);
  if (j.contains("solver")) {
    const json& s = j["solver"];
    check_keys(s, "solver", {"scheme", "dt", "cfl", "snapshot_interval", "form", "dealias",
                             "lag_coefficient", "imex_midpoint"});
    if (s.contains("scheme")) {
      std::string v;
      read(s, "scheme", "solver.scheme", v);
      c.solver.scheme = parse_scheme(v);
    }
    if (s.contains("form")) {
      std::string v;
      read(s, "form", "solver.form", v);
      c.solver.form = parse_form(v);
    }
    if (s.contains("dt") && s.contains("cfl")) throw ConfigError("solver: set only one of 'dt' and 'cfl'");
    if (s.contains("dt")) {
      double v = 0.0;
      read(s, "dt", "solver.dt", v);
      c.solver.dt = v;
      c.solver.cfl_safety.reset();
    }
    if (s.contains("cfl")) {
      double v = 0.0;
      read(s, "cfl", "solver.cfl", v);
      c.solver.cfl_safety = v;
      c.solver.dt.reset();
    }
    read(s, "snapshot_interval", "solver.snapshot_interval", c.solver.snapshot_interval);
    read(s, "dealias", "solver.dealias", c.solver.dealias);
    read(s, "lag_coefficient", "solver.lag_coefficient", c.solver.lag_coefficient);
    read(s, "imex_midpoint", "solver.imex_midpoint", c.solver.imex_midpoint);
  }
  if (j.contains("kernel")) {
    const json& k = j["kernel"];
    check_keys(k, "kernel", {"type", "a", "b", "odd_profile"});
    read(k, "type", "kernel.type", c.kernel.type);
    read(k, "a", "kernel.a", c.kernel.a);
    read(k, "b", "kernel.b", c.kernel.b);
    read(k, "odd_profile", "kernel.odd_profile", c.kernel.odd_profile);
  }
  if (j.contains("norms")) {
    const json& n = j["norms"];
    check_keys(n, "norms", {"alpha", "beta", "window"});
    read(n, "alpha", "norms.alpha", c.alpha);
    if (n.contains("beta")) {
      double b = 0.0;
      read(n, "beta", "norms.beta", b);
      c.beta = b;
    }
    if (n.contains("window")) {
      std::vector<double> w;
      read(n, "window", "norms.window", w);
      if (w.size() != 2) throw ConfigError("config key 'norms.window' needs [begin, end]");
      c.window_begin = w[0];
      c.window_end = w[1];
    }
  }
  read(j, "out", "out", c.out);
  read(j, "seed", "seed", c.seed);
  c.profile.seed = c.seed;
  return c;
}

RunConfig load_config_file(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
  }
  return config_from_json(j, std::move(base));
}

std::optional<RunConfig> parse_config(int argc, const char* const* argv) {
  CLI::App app{"Nonlocal Burgers simulator and verification harness"};
  app.set_version_flag("--version", "fracburgers 0.1.0");
  std::string config_path, command, profile, out, form, scheme;
  std::size_t grid_n = 0;
  double period = 0, amplitude = 0, mean = 0, t_final = 0, dt = 0, cfl = 0, alpha = 0, beta = 0,
         snapshot = 0, kernel_a = 0, kernel_b = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> positional;

  auto* o_config = app.add_option("--config", config_path, "JSON configuration file");
  auto* o_command = app.add_option("--command", command,
                                   "simulate | linear | verify | kernel-check | convergence | sweep");
  auto* o_n = app.add_option("--grid-n", grid_n, "grid points (power of two >= 8)");
  auto* o_period = app.add_option("--period", period, "period L");
  auto* o_profile = app.add_option("--profile", profile, "constant | cosine | sawtooth | random");
  auto* o_mean = app.add_option("--mean", mean, "profile mean");
  auto* o_amp = app.add_option("--amplitude", amplitude, "profile amplitude");
  auto* o_t = app.add_option("--t-final", t_final, "final time");
  auto* o_dt = app.add_option("--dt", dt, "fixed time step");
  auto* o_cfl = app.add_option("--cfl", cfl, "CFL safety factor in (0, 1]");
  o_dt->excludes(o_cfl);
  auto* o_snap = app.add_option("--snapshot-interval", snapshot, "time between stored snapshots");
  auto* o_form = app.add_option("--form", form, "u-spectral | u-quadrature | w-divergence");
  auto* o_scheme = app.add_option("--scheme", scheme, "explicit-rk4 | imex");
  auto* o_alpha = app.add_option("--alpha", alpha, "Hoelder exponent in (0, 1]");
  auto* o_beta = app.add_option("--beta", beta, "Schauder exponent in (0, alpha)");
  auto* o_a = app.add_option("--kernel-a", kernel_a, "synthetic coefficient amplitude");
  auto* o_b = app.add_option("--kernel-b", kernel_b, "synthetic odd kernel amplitude");
  auto* o_out = app.add_option("--out", out, "output directory");
  auto* o_seed = app.add_option("--seed", seed, "random seed");
  app.add_option("cmd", positional, "command (alternative to --command)")->expected(0, 1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return std::nullopt;
  } catch (const CLI::CallForVersion&) {
    std::cout << "fracburgers 0.1.0\n";
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw ConfigError(e.what());
  }

  RunConfig c;
  if (o_config->count()) c = load_config_file(config_path, c);
  if (!positional.empty()) c.command = parse_command(positional.front());
  if (o_command->count()) c.command = parse_command(command);
  if (o_n->count()) c.grid_n = grid_n;
  if (o_period->count()) c.period = period;
  if (o_profile->count()) c.profile.name = profile;
  if (o_mean->count()) c.profile.mean = mean;
  if (o_amp->count()) c.profile.amplitude = amplitude;
  if (o_t->count()) c.t_final = t_final;
  if (o_dt->count()) {
    c.solver.dt = dt;
    c.solver.cfl_safety.reset();
  }
  if (o_cfl->count()) {
    c.solver.cfl_safety = cfl;
    c.solver.dt.reset();
  }
  if (o_snap->count()) c.solver.snapshot_interval = snapshot;
  if (o_form->count()) c.solver.form = parse_form(form);
  if (o_scheme->count()) c.solver.scheme = parse_scheme(scheme);
  if (o_alpha->count()) c.alpha = alpha;
  if (o_beta->count()) c.beta = beta;
  if (o_a->count()) {
    c.kernel.a = kernel_a;
    c.kernel.type = "synthetic";
  }
  if (o_b->count()) {
    c.kernel.b = kernel_b;
    c.kernel.type = "synthetic";
  }
  if (o_out->count()) c.out = out;
  if (o_seed->count()) c.seed = seed;
  c.profile.seed = c.seed;
  c.validate();
  return c;
}

}  // namespace fracburgers
