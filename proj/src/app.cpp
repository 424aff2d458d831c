#include "fracburgers/app.hpp"

#include <filesystem>
#include <fstream>

#include "fracburgers/errors.hpp"
#include "fracburgers/norms.hpp"
#include "fracburgers/output.hpp"
#include "fracburgers/verify.hpp"

namespace fracburgers {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

Field initial_data(const RunConfig& cfg) {
  const TorusGrid grid = make_grid(cfg.grid_n, cfg.period);
  if (!cfg.samples_path) return make_profile(grid, cfg.profile);
  std::ifstream in(*cfg.samples_path);
  if (!in) throw ConfigError("samples: cannot open '" + *cfg.samples_path + "'");
  std::vector<double> v;
  double x = 0.0;
  while (in >> x) v.push_back(x);
  if (!in.eof()) throw DataError("samples: '" + *cfg.samples_path + "' holds a non-numeric token");
  if (v.size() != grid.size()) {
    throw DataError("samples: expected " + std::to_string(grid.size()) + " values, found " +
                    std::to_string(v.size()));
  }
  return Field(grid, 0.0, std::move(v));
}

namespace {

ordered_json run_info_json(const RunInfo& info) {
  return {{"dt", info.dt},
          {"steps", info.steps},
          {"min", info.min_value},
          {"max", info.max_value},
          {"certified", info.certified}};
}

void log_verdicts(const std::vector<Verdict>& vs, std::ostream& log) {
  for (const Verdict& v : vs) log << (v.pass ? "PASS " : "FAIL ") << v.name << '\n';
}

int finish_report(const std::vector<Verdict>& vs, const fs::path& dir, std::ostream& log) {
  const bool ok = write_report(vs, dir);
  log_verdicts(vs, log);
  return ok ? kExitPass : kExitVerificationFailed;
}

// Solves and streams the trajectory, then writes every per-run file.
template <typename Solve>
RunResult solve_and_write(const RunConfig& cfg, const fs::path& dir, Solve solve,
                          const ordered_json& extra = ordered_json::object()) {
  SnapshotWriter writer(dir);
  RunResult r = solve([&](const Field& f) { writer.append(f); });
  writer.finish();
  ordered_json more = extra;
  more["run"] = run_info_json(r.info);
  write_manifest(r.trajectory, dir, cfg.to_json(), more);
  write_diagnostics(r.trajectory, dir);
  write_spectrum(r.trajectory.back(), dir);
  return r;
}

KernelPair synthetic_pair(const RunConfig& cfg) {
  SyntheticCoefficientSpec cs;
  cs.a = cfg.kernel.a;
  cs.alpha = cfg.alpha;
  cs.period = cfg.period;
  cs.t_max = std::max(cfg.t_final, 1.0);
  SyntheticOddSpec gs;
  gs.b = cfg.kernel.b;
  gs.alpha = cfg.alpha;
  gs.period = cfg.period;
  gs.profile = cfg.kernel.odd_profile == "smooth" ? OddProfile::Smooth : OddProfile::Holder;
  gs.t_max = cs.t_max;
  return KernelPair{synthetic_coefficient(cs), synthetic_odd_kernel(gs)};
}

Field square_field(const Field& u) {
  std::vector<double> sq(u.size());
  for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = u[i] * u[i];
  return Field(u.grid(), u.time(), std::move(sq));
}

Trajectory squared(const Trajectory& u) {
  return map_values(u, [](double v) { return v * v; });
}

int cmd_simulate(const RunConfig& cfg, std::ostream& log) {
  const fs::path dir = cfg.out;
  const Field u0 = initial_data(cfg);
  SolverConfig solver = cfg.solver;
  if (solver.form == Form::Linear) throw ConfigError("solver.form: simulate needs a Burgers form");
  const RunResult r = solve_and_write(cfg, dir, [&](const SnapshotSink& sink) {
    return solve_burgers(u0, cfg.t_final, solver, sink);
  });
  emit_plot_script(PlotKind::Trajectory, dir);
  log << "simulate: " << r.trajectory.size() << " snapshots, " << r.info.steps << " steps\n";
  return kExitPass;
}

int cmd_linear(const RunConfig& cfg, std::ostream& log) {
  const fs::path dir = cfg.out;
  const Field u0 = initial_data(cfg);
  LinearProblem prob;
  if (cfg.kernel.type == "synthetic") {
    const KernelPair pair = synthetic_pair(cfg);
    prob.even = pair.even;
    if (cfg.kernel.b != 0.0) prob.odd = pair.odd;
  } else {
    // Burgers coefficient of the initial state, frozen in time.
    prob.even = coefficient_from_state(square_field(u0));
  }
  SamplingSpec sampling;
  sampling.period = cfg.period;
  sampling.t_min = 0.0;
  sampling.t_max = std::max(cfg.t_final, 1.0);
  // The operator is K_diag plus the frozen remainder of m, plus the extra odd
  // kernel when one is given; every piece is certified.
  const KernelPair frozen = freeze_decompose(prob.even);
  prob.certified = validate_assumptions(frozen, sampling).all_pass();
  if (prob.odd) {
    prob.certified = prob.certified &&
                     validate_assumptions(KernelPair{frozen.even, prob.odd}, sampling).all_pass();
  }
  prob.u0 = u0;
  SolverConfig solver = cfg.solver;
  solver.form = Form::Linear;
  const RunResult r = solve_and_write(cfg, dir, [&](const SnapshotSink& sink) {
    return solve_linear(prob, cfg.t_final, solver, sink);
  });
  emit_plot_script(PlotKind::Trajectory, dir);
  log << "linear: " << r.trajectory.size() << " snapshots, certified=" << (prob.certified ? "yes" : "no")
      << '\n';
  return kExitPass;
}

int cmd_verify(const RunConfig& cfg, std::ostream& log) {
  const fs::path dir = cfg.out;
  const Field u0 = initial_data(cfg);
  SolverConfig solver = cfg.solver;
  if (solver.form == Form::Linear) throw ConfigError("solver.form: verify needs a Burgers form");
  const RunResult r = solve_and_write(cfg, dir, [&](const SnapshotSink& sink) {
    return solve_burgers(u0, cfg.t_final, solver, sink);
  });
  const Trajectory& u = r.trajectory;
  std::vector<Verdict> vs;
  vs.push_back(check_extremum_principles(u));
  vs.push_back(check_energy_law(u, solver.form == Form::WDivergence ? 1e-10 : 1e-6));
  vs.push_back(fit_convergence_to_constant(u));
  if (u.t_end() - u.t_begin() >= 1.0) vs.push_back(measure_smoothing(u, cfg.alpha));
  vs.push_back(bootstrap_smoothness(u, 3));

  // Norms of the final unit window (or the whole run if shorter).
  const double t0 = std::max(u.t_begin(), u.t_end() - 1.0);
  TimeWindow window{cfg.window_begin.value_or(t0), cfg.window_end.value_or(u.t_end())};
  if (u.size() >= 3) {
    const NormReport nr = c1beta_norm(u, cfg.effective_beta(), window, PairMode::Stratified);
    Verdict nv;
    nv.name = "norms";
    nv.set("window_begin", window.begin);
    nv.set("window_end", window.end);
    nv.set("sup_norm", nr.sup_norm);
    nv.set("holder_seminorm", nr.holder_seminorm);
    nv.set("c1beta", nr.c1beta);
    nv.set("lip_norm", nr.lip_norm);
    nv.pass = std::isfinite(nr.c1beta);
    nv.details = "stratified pair sampling";
    vs.push_back(nv);
  }

  if (u0.is_positive()) {
    SamplingSpec sampling;
    sampling.period = cfg.period;
    // Every tenth snapshot keeps the time interpolation meaningful and cheap.
    Trajectory w(u.grid());
    for (std::size_t k = 0; k < u.size(); k += 10) w.append(u[k]);
    if (w.back().time() != u.back().time()) w.append(u.back());
    w = squared(w);
    const CoefficientPtr m = coefficient_from_state(w);
    const AssumptionReport rep = validate_assumptions(freeze_decompose(m), sampling);
    double lo = INFINITY, hi = -INFINITY;
    for (const Field& f : u.snapshots()) {
      lo = std::min(lo, f.min());
      hi = std::max(hi, f.max());
    }
    vs.push_back(check_assumptions(rep, std::make_pair(lo, hi)));
  }
  emit_plot_script(PlotKind::Trajectory, dir);
  return finish_report(vs, dir, log);
}

int cmd_kernel_check(const RunConfig& cfg, std::ostream& log) {
  SamplingSpec sampling;
  sampling.period = cfg.period;
  sampling.seed = cfg.seed;
  std::vector<Verdict> vs;
  if (cfg.kernel.type == "synthetic") {
    sampling.alpha = cfg.alpha;
    const KernelPair given = synthetic_pair(cfg);
    const KernelPair frozen = freeze_decompose(given.even);
    vs.push_back(check_assumptions(validate_assumptions(frozen, sampling)));
    vs.back().name = "kernel_check_coefficient";
    vs.push_back(check_assumptions(validate_assumptions(KernelPair{frozen.even, given.odd}, sampling)));
    vs.back().name = "kernel_check_odd";
  } else {
    const Field u0 = initial_data(cfg);
    const CoefficientPtr m = coefficient_from_state(square_field(u0));
    vs.push_back(check_assumptions(validate_assumptions(freeze_decompose(m), sampling),
                                   std::make_pair(u0.min(), u0.max())));
    vs.back().name = "kernel_check";
  }
  return finish_report(vs, cfg.out, log);
}

int cmd_convergence(const RunConfig& cfg, std::ostream& log) {
  std::vector<Verdict> vs;
  vs.push_back(check_operator_equivalence());
  vs.push_back(mms_convergence());
  return finish_report(vs, cfg.out, log);
}

int cmd_sweep(const RunConfig& cfg, std::ostream& log) {
  SchauderSweepSpec spec;
  spec.alpha = cfg.alpha;
  spec.beta = cfg.effective_beta();
  SchauderSweepResult sw = schauder_sweep(spec);
  std::vector<Verdict> vs = sw.runs;
  vs.push_back(sw.family);
  vs.push_back(sw.homogeneity);

  SyntheticCoefficientSpec cs;
  cs.a = 0.4;
  cs.alpha = cfg.alpha;
  const KernelPair frozen = freeze_decompose(synthetic_coefficient(cs));
  SyntheticOddSpec gs;
  gs.b = 1.0;
  gs.alpha = cfg.alpha;
  OperatorBoundSpec ob;
  ob.alpha = cfg.alpha;
  ob.beta = cfg.effective_beta();
  vs.push_back(operator_holder_bound(*frozen.even, ob));
  vs.push_back(operator_holder_bound(*synthetic_odd_kernel(gs), ob));
  const int code = finish_report(vs, cfg.out, log);
  emit_plot_script(PlotKind::Report, cfg.out);
  return code;
}

}  // namespace

int run_command(const RunConfig& cfg, std::ostream& log) {
  cfg.validate();
  switch (cfg.command) {
    case Command::Simulate: return cmd_simulate(cfg, log);
    case Command::Linear: return cmd_linear(cfg, log);
    case Command::Verify: return cmd_verify(cfg, log);
    case Command::KernelCheck: return cmd_kernel_check(cfg, log);
    case Command::Convergence: return cmd_convergence(cfg, log);
    case Command::Sweep: return cmd_sweep(cfg, log);
  }
  return kExitUsage;
}

int run_main(int argc, const char* const* argv, std::ostream& log, std::ostream& err) {
  try {
    const std::optional<RunConfig> cfg = parse_config(argc, argv);
    if (!cfg) return kExitPass;
    return run_command(*cfg, log);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DataError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "runtime error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

}  // namespace fracburgers
