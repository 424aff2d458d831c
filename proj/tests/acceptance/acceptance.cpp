// Acceptance gate. `acceptance` runs every criterion, `acceptance N` runs one.
// Prints one PASS/FAIL line per criterion; exit status 0 only if all pass.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "fracburgers/evolution.hpp"
#include "fracburgers/kernels.hpp"
#include "fracburgers/profiles.hpp"
#include "fracburgers/verify.hpp"

namespace fb = fracburgers;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string summary;

  void require(const fb::Verdict& v, std::initializer_list<const char*> keys) {
    pass = pass && v.pass;
    std::ostringstream os;
    os << (summary.empty() ? "" : "; ") << v.name << (v.pass ? "" : " [fail]");
    for (const char* k : keys) os << ' ' << k << '=' << v.value(k);
    summary += os.str();
  }
  void require(bool ok, const std::string& what) {
    pass = pass && ok;
    summary += (summary.empty() ? "" : "; ") + what + (ok ? "" : " [fail]");
  }
};

fb::Field cosine_data(std::size_t n) {
  const auto g = fb::make_grid(n);
  return fb::sample(g, [](double x) { return 1.5 + 0.5 * std::cos(x); });
}

fb::SolverConfig rk4(double interval) {
  fb::SolverConfig c;
  c.snapshot_interval = interval;
  return c;
}

Outcome operator_equivalence() {
  Outcome o;
  o.require(fb::check_operator_equivalence({128, 256, 512}, 8, 1e-3, 1.9), {"rel_error_N256", "min_order"});
  return o;
}

Outcome form_equivalence() {
  Outcome o;
  const auto u0 = cosine_data(256);
  // Matched step: the CFL step of the largest form's coefficient bound.
  const double dt = fb::cfl_dt(u0.grid(), fb::kC1 * u0.max(), 0.5);
  o.require(fb::check_form_equivalence(u0, 1.0, dt, 1e-4),
            {"spectral_vs_quadrature", "spectral_vs_w_divergence", "quadrature_vs_w_divergence"});
  return o;
}

Outcome extremum_principles() {
  Outcome o;
  const auto g = fb::make_grid(256);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    fb::ProfileSpec p;
    p.name = "random";
    p.seed = seed;
    const auto r = fb::solve_burgers(fb::make_profile(g, p), 5.0, rk4(0.05));
    auto v = fb::check_extremum_principles(r.trajectory, 1e-6);
    v.name = "seed " + std::to_string(seed);
    // Extremes over every step, not only the stored snapshots.
    const double lo = r.trajectory.front().min(), hi = r.trajectory.front().max();
    const double step_excursion = std::max(lo - r.info.min_value, r.info.max_value - hi);
    v.set("step_excursion", std::max(0.0, step_excursion));
    v.pass = v.pass && step_excursion <= 1e-6;
    o.require(v, {"excursion", "step_excursion"});
  }
  return o;
}

Outcome energy_law() {
  Outcome o;
  const auto u0 = cosine_data(256);
  for (auto form : {fb::Form::USpectral, fb::Form::UQuadrature, fb::Form::WDivergence}) {
    fb::SolverConfig c = rk4(0.05);
    c.form = form;
    const double tol = form == fb::Form::WDivergence ? 1e-10 : 1e-6;
    auto v = fb::check_energy_law(fb::solve_burgers(u0, 5.0, c).trajectory, tol, 1e-8, 0.01);
    v.name = fb::to_string(form);
    o.require(v, {"energy_drift", "mean_decrease", "identity_mismatch"});
  }
  return o;
}

Outcome exponential_convergence() {
  Outcome o;
  const auto g = fb::make_grid(256);
  const auto u0 = fb::sample(g, [](double x) { return 1.0 + 1e-3 * std::cos(x); });
  const auto traj = fb::solve_burgers(u0, 15.0, rk4(0.05)).trajectory;
  o.require(fb::fit_convergence_to_constant(traj, 0.05, 1e-3, 1.0, 0.1),
            {"rate", "residual", "limit", "expected_limit"});
  return o;
}

Outcome smoothing() {
  Outcome o;
  const auto g = fb::make_grid(1024);
  const auto start = std::chrono::steady_clock::now();
  for (auto [mean, amp] : {std::pair{1.5, 0.5}, {1.0, 0.5}, {2.0, 1.0}}) {
    fb::ProfileSpec p;
    p.name = "sawtooth";
    p.mean = mean;
    p.amplitude = amp;
    const auto traj = fb::solve_burgers(fb::make_profile(g, p), 1.0, rk4(1.0 / 512)).trajectory;
    auto v = fb::measure_smoothing(traj, 0.5, 0.1);
    std::ostringstream name;
    name << "sawtooth " << mean << "+-" << amp;
    v.name = name.str();
    o.require(v, {"slope", "sup", "near_floor_slope"});
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::ostringstream os;
  os << "runtime " << secs << " s";
  o.require(secs <= 600.0, os.str());
  return o;
}

Outcome schauder_shadow() {
  Outcome o;
  const auto r = fb::schauder_sweep();
  o.require(r.runs.size() == 8, std::to_string(r.runs.size()) + " kernel families");
  o.require(r.family, {"max", "median", "max_over_median"});
  o.require(r.homogeneity, {"difference"});
  return o;
}

Outcome operator_bounds() {
  Outcome o;
  fb::SyntheticCoefficientSpec cs;
  cs.a = 0.4;
  cs.alpha = 0.5;
  auto vl = fb::operator_holder_bound(*fb::synthetic_coefficient(cs));
  vl.name = "L";
  o.require(vl, {"max_over_median"});
  fb::SyntheticOddSpec gs;
  gs.b = 1.0;
  gs.alpha = 0.5;
  auto vg = fb::operator_holder_bound(*fb::synthetic_odd_kernel(gs));
  vg.name = "g";
  o.require(vg, {"max_over_median"});
  return o;
}

Outcome bootstrap() {
  Outcome o;
  const auto g = fb::make_grid(256);
  std::vector<fb::Trajectory> runs;
  for (int s = 0; s < 5; ++s) {
    fb::ProfileSpec p;  // min 1, max 2
    if (s > 0) {
      p.name = "random";
      p.seed = static_cast<std::uint64_t>(s);
    }
    const auto u0 = fb::make_profile(g, p);
    if (std::abs(u0.min() - 1.0) > 1e-12 || std::abs(u0.max() - 2.0) > 1e-12) {
      o.require(false, "profile bounds differ from (1, 2)");
    }
    runs.push_back(fb::solve_burgers(u0, 1.0, rk4(0.1)).trajectory);
  }
  o.require(fb::bootstrap_sweep(runs, 3, 2.0, 40, 1e-12), {"worst_tail", "ck_spread"});
  return o;
}

Outcome manufactured() {
  Outcome o;
  o.require(fb::mms_convergence(), {"spatial_order", "temporal_order"});
  return o;
}

Outcome validator() {
  Outcome o;
  const auto traj = fb::solve_burgers(cosine_data(128), 1.0, rk4(0.05)).trajectory;
  double lo = traj.front().min(), hi = traj.front().max();
  for (const auto& s : traj.snapshots()) {
    lo = std::min(lo, s.min());
    hi = std::max(hi, s.max());
  }
  const auto pair = fb::freeze_decompose(
      fb::coefficient_from_state(fb::map_values(traj, [](double u) { return u * u; })));
  fb::SamplingSpec sampling;
  sampling.t_min = traj.t_begin();
  sampling.t_max = traj.t_end();
  auto v = fb::check_assumptions(fb::validate_assumptions(pair, sampling), std::make_pair(lo, hi));
  v.name = "burgers pair";
  o.require(v, {"estimated_lambda", "estimated_Lambda", "bracket_lo", "bracket_hi", "K3_estimate",
                "G2_estimate"});

  // K(t, x, y) = (1 + sign(y - x) / 2) / |x - y|^2.
  const fb::FunctionCoefficient broken(
      [](double, double x, double y) {
        const double d = std::remainder(y - x, 2.0 * std::numbers::pi);
        return 1.0 + (d > 0.0 ? 0.5 : (d < 0.0 ? -0.5 : 0.0));
      },
      fb::CoefficientTraits{.lambda = 0.5, .Lambda = 1.5, .alpha = 1.0, .holder = 1.0,
                            .t_min = 0.0, .t_max = 1.0});
  const auto rep = fb::validate_assumptions(broken);
  const auto& k1 = rep.check("K1");
  std::ostringstream os;
  os << "asymmetric kernel rejected on K1";
  if (k1.witness) {
    os << " with witness (t=" << k1.witness->t1 << ", x=" << k1.witness->x1 << ", y=" << k1.witness->y << ")";
  }
  o.require(!k1.pass && k1.witness.has_value() && !rep.all_pass(), os.str());
  return o;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Outcome reproducibility() {
  Outcome o;
  const fs::path root = fs::temp_directory_path() / "fracburgers_acceptance_repro";
  fs::remove_all(root);
  for (const char* run : {"a", "b"}) {
    const std::string cmd = std::string(FRACBURGERS_CLI) +
                            " verify --grid-n 128 --profile random --seed 7 --t-final 10"
                            " --snapshot-interval 0.05 --out " + (root / run).string() + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    o.require(status != -1 && WIFEXITED(status) && WEXITSTATUS(status) == 0,
              std::string("run ") + run + " exit " + std::to_string(WEXITSTATUS(status)));
  }
  for (const char* f : {"snapshots.csv", "report.json"}) {
    const std::string a = slurp(root / "a" / f), b = slurp(root / "b" / f);
    o.require(!a.empty() && a == b, std::string(f) + " byte-identical (" + std::to_string(a.size()) + " bytes)");
  }
  return o;
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {1, "operator equivalence", operator_equivalence},
      {2, "form equivalence", form_equivalence},
      {3, "maximum/minimum principles", extremum_principles},
      {4, "energy law", energy_law},
      {5, "exponential convergence", exponential_convergence},
      {6, "smoothing", smoothing},
      {7, "Schauder ratio sweep", schauder_shadow},
      {8, "operator Hoelder bounds", operator_bounds},
      {9, "bootstrap smoothness", bootstrap},
      {10, "manufactured-solution convergence", manufactured},
      {11, "assumption validator", validator},
      {12, "reproducibility", reproducibility},
  };
  std::vector<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.push_back(std::atoi(argv[i]));

  bool ok = true;
  for (const Criterion& c : all) {
    if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), c.id) == wanted.end()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out.pass = false;
      out.summary = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s criterion %d (%s) [%.1fs]: %s\n", out.pass ? "PASS" : "FAIL", c.id, c.name, secs,
                out.summary.c_str());
    std::fflush(stdout);
    ok = ok && out.pass;
  }
  return ok ? 0 : 1;
}
