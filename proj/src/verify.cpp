#include "fracburgers/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "fracburgers/errors.hpp"
#include "fracburgers/norms.hpp"
#include "fracburgers/quadrature.hpp"
#include "fracburgers/spectral.hpp"

namespace fracburgers {

void Verdict::set(const std::string& key, double v) {
  for (auto& [k, old] : measured) {
    if (k == key) {
      old = v;
      return;
    }
  }
  measured.emplace_back(key, v);
}

double Verdict::value(std::string_view key) const {
  for (const auto& [k, v] : measured) {
    if (k == key) return v;
  }
  throw ConfigError("verdict " + name + " has no measurement " + std::string(key));
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw ConfigError("fit_line: need >= 2 points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw ConfigError("fit_line: degenerate abscissae");
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (f.intercept + f.slope * x[i]);
    ss += r * r;
  }
  f.residual = std::sqrt(ss / n);
  return f;
}

namespace {

std::string fmt(const char* f, double a) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt2(const char* f, double a, double b) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

double mean_square(const Field& u) {
  double s = 0.0;
  for (double v : u.values()) s += v * v;
  return s / static_cast<double>(u.size());
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Passes when every value is within spread * median.
Verdict spread_verdict(const std::string& name, const std::vector<double>& values, double spread) {
  Verdict v;
  v.name = name;
  const double med = median(values);
  const double mx = *std::max_element(values.begin(), values.end());
  const double mn = *std::min_element(values.begin(), values.end());
  v.set("max", mx);
  v.set("median", med);
  v.set("min", mn);
  v.set("max_over_median", med > 0.0 ? mx / med : (mx == 0.0 ? 0.0 : kUnset));
  v.target = 1.0;
  v.tolerance = spread;
  v.pass = mx <= spread * med || mx == 0.0;
  return v;
}

Trajectory apply_snapshotwise(const Trajectory& u, const std::function<Field(const Field&)>& op) {
  Trajectory out(u.grid());
  for (const Field& f : u.snapshots()) out.append(op(f).with_time(f.time()));
  return out;
}

}  // namespace

Verdict check_extremum_principles(const Trajectory& traj, double tolerance) {
  Verdict v;
  v.name = "extremum_principles";
  v.target = 0.0;
  v.tolerance = tolerance;
  if (traj.empty()) throw ConfigError("check_extremum_principles: empty trajectory");
  const double lo = traj.front().min();
  const double hi = traj.front().max();
  double worst = 0.0;
  double worst_t = traj.t_begin();
  std::size_t worst_i = 0;
  for (const Field& f : traj.snapshots()) {
    for (std::size_t i = 0; i < f.size(); ++i) {
      const double e = std::max(lo - f[i], f[i] - hi);
      if (e > worst) {
        worst = e;
        worst_t = f.time();
        worst_i = i;
      }
    }
  }
  v.set("excursion", worst);
  v.set("initial_min", lo);
  v.set("initial_max", hi);
  v.pass = worst <= tolerance;
  if (worst > 0.0) {
    v.details = fmt2("worst excursion at t=%.17g, node %.0f", worst_t, static_cast<double>(worst_i));
  }
  return v;
}

Verdict check_energy_law(const Trajectory& traj, double drift_tolerance, double monotone_tolerance,
                         double identity_tolerance) {
  Verdict v;
  v.name = "energy_law";
  v.target = 0.0;
  v.tolerance = drift_tolerance;
  if (traj.empty()) throw ConfigError("check_energy_law: empty trajectory");
  const double e0 = mean_square(traj.front());
  double drift = 0.0;
  double decrease = 0.0;
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const double e = mean_square(traj[k]);
    drift = std::max(drift, e0 > 0.0 ? std::abs(e - e0) / e0 : std::abs(e - e0));
    if (k > 0) decrease = std::max(decrease, traj[k - 1].mean() - traj[k].mean());
  }
  // Trapezoid integral of the identity's rate of change of mean(u).
  const double L = traj.grid().period();
  double integral = 0.0;
  double prev_rate = mean_growth_identity(traj.front()) / L;
  for (std::size_t k = 1; k < traj.size(); ++k) {
    const double rate = mean_growth_identity(traj[k]) / L;
    integral += 0.5 * (rate + prev_rate) * (traj.times()[k] - traj.times()[k - 1]);
    prev_rate = rate;
  }
  const double change = traj.back().mean() - traj.front().mean();
  double mismatch = 0.0;
  if (change != 0.0 || integral != 0.0) {
    mismatch = std::abs(change - integral) / std::max(std::abs(change), std::abs(integral));
  }
  v.set("energy_drift", drift);
  v.set("mean_decrease", decrease);
  v.set("mean_change", change);
  v.set("identity_integral", integral);
  v.set("identity_mismatch", mismatch);
  v.pass = drift <= drift_tolerance && decrease <= monotone_tolerance && mismatch <= identity_tolerance;
  v.details = fmt2("monotone tol %.3g, identity tol %.3g", monotone_tolerance, identity_tolerance);
  return v;
}

Verdict fit_convergence_to_constant(const Trajectory& traj, double residual_tolerance,
                                    double limit_tolerance, std::optional<double> expected_rate,
                                    double rate_tolerance) {
  Verdict v;
  v.name = "convergence_to_constant";
  v.tolerance = residual_tolerance;
  if (traj.empty()) throw ConfigError("fit_convergence_to_constant: empty trajectory");
  const double expected = std::sqrt(mean_square(traj.front()));
  const double c_inf = traj.back().mean();
  v.set("limit", c_inf);
  v.set("expected_limit", expected);
  const bool limit_ok = std::abs(c_inf - expected) <= limit_tolerance;
  const double osc0 = traj.front().max() - traj.front().min();
  if (osc0 == 0.0) {
    v.set("rate", kUnset);
    v.set("residual", 0.0);
    v.pass = limit_ok;
    v.details = "constant initial data: rate undefined";
    return v;
  }
  std::vector<double> ts, logs;
  for (const Field& f : traj.snapshots()) {
    const double osc = f.max() - f.min();
    if (osc >= 1e-8 && osc <= 0.5 * osc0) {
      ts.push_back(f.time());
      logs.push_back(std::log(osc));
    }
  }
  v.set("fit_points", static_cast<double>(ts.size()));
  if (ts.size() < 3) {
    v.set("rate", kUnset);
    v.set("residual", kUnset);
    v.pass = false;
    v.details = "fewer than 3 snapshots inside the fit window";
    return v;
  }
  const LineFit fit = fit_line(ts, logs);
  v.set("rate", -fit.slope);
  v.set("amplitude", std::exp(fit.intercept));
  v.set("residual", fit.residual);
  v.set("t_window_begin", ts.front());
  v.set("t_window_end", ts.back());
  bool rate_ok = true;
  if (expected_rate) {
    v.target = *expected_rate;
    v.set("expected_rate", *expected_rate);
    rate_ok = std::abs(-fit.slope - *expected_rate) <= rate_tolerance * std::abs(*expected_rate);
  }
  v.pass = fit.residual <= residual_tolerance && limit_ok && rate_ok;
  return v;
}

Verdict measure_smoothing(const Trajectory& traj, double alpha, double slope_tolerance) {
  Verdict v;
  v.name = "smoothing";
  v.target = 0.0;
  v.tolerance = slope_tolerance;
  if (traj.empty()) throw ConfigError("measure_smoothing: empty trajectory");
  const double t0 = traj.t_begin();
  const double norm0 = traj.front().sup_norm();
  if (norm0 == 0.0) {
    v.set("sup", 0.0);
    v.set("slope", 0.0);
    v.pass = true;
    v.details = "zero initial data";
    return v;
  }
  const double floor_t = 4.0 * traj.grid().spacing();
  // Past 90% oscillation decay the global exponential decay, not smoothing,
  // shapes the estimator; those times are left out of the fit.
  const double osc0 = traj.front().max() - traj.front().min();
  double t_cut = 1.0;
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const double t = traj.times()[k] - t0;
    if (t > 0.0 && traj[k].max() - traj[k].min() <= 0.1 * osc0) {
      t_cut = std::min(t_cut, t);
      break;
    }
  }
  // Band m covers (2^{-m-1}, 2^{-m}]; the lowest band is cut at the floor.
  std::vector<double> band_max;
  std::vector<double> band_t;
  double sup = 0.0, sup_t = kUnset;
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const double t = traj.times()[k] - t0;
    if (t < floor_t || t > t_cut + 1e-12) continue;
    const double value = std::pow(t, alpha) * holder_seminorm_space(traj[k], alpha) / norm0;
    if (value > sup) {
      sup = value;
      sup_t = t;
    }
    const int m = static_cast<int>(std::floor(-std::log2(t) + 1e-12));
    const double right = std::ldexp(1.0, -m);
    if (band_t.empty() || band_t.back() != right) {
      band_t.push_back(right);
      band_max.push_back(value);
    } else {
      band_max.back() = std::max(band_max.back(), value);
    }
  }
  v.set("sup", sup);
  v.set("t_at_sup", sup_t);
  v.set("bands", static_cast<double>(band_t.size()));
  v.set("resolution_floor", floor_t);
  v.set("fit_end", t_cut);
  if (band_t.size() < 3) {
    v.set("slope", kUnset);
    v.pass = false;
    v.details = "fewer than 3 dyadic bands inside [4h, 1]";
    return v;
  }
  std::vector<double> x, y;
  std::ostringstream os;
  for (std::size_t b = 0; b < band_t.size(); ++b) {
    x.push_back(std::log(band_t[b]));
    y.push_back(std::log(band_max[b]));
    os << (b ? "; " : "band maxima: ") << fmt2("t<=%.4g: %.6g", band_t[b], band_max[b]);
  }
  const LineFit fit = fit_line(x, y);
  v.set("slope", fit.slope);
  // Between the two bands closest to the floor.
  const std::size_t nb = band_t.size();
  v.set("near_floor_slope", (y[nb - 1] - y[nb - 2]) / (x[nb - 1] - x[nb - 2]));
  v.pass = std::isfinite(sup) && fit.slope <= slope_tolerance;
  v.details = os.str();
  return v;
}

Verdict schauder_ratio(const Trajectory& u, const Trajectory* f, double alpha, double beta) {
  if (!(beta > 0.0 && beta < alpha)) throw ConfigError("schauder_ratio: need 0 < beta < alpha");
  if (u.empty() || u.t_end() - u.t_begin() < 6.0 - 1e-9) {
    throw ConfigError("schauder_ratio: trajectory must span at least 6 time units");
  }
  Verdict v;
  v.name = "schauder_ratio";
  const TimeWindow last{u.t_end() - 1.0, u.t_end()};
  const NormReport num = c1beta_norm(u, beta, last);
  double sup = 0.0;
  for (const Field& s : u.snapshots()) sup = std::max(sup, s.sup_norm());
  const double f_norm = f ? holder_norm_spacetime(*f, beta, full_window(*f)) : 0.0;
  const double den = sup + f_norm;
  v.set("numerator", num.c1beta);
  v.set("sup_u", sup);
  v.set("f_holder_norm", f_norm);
  v.set("ratio", den > 0.0 ? num.c1beta / den : 0.0);
  v.pass = std::isfinite(v.value("ratio"));
  return v;
}

Verdict bootstrap_smoothness(const Trajectory& traj, int k, std::size_t mode_cutoff,
                             double tail_tolerance) {
  if (traj.empty()) throw ConfigError("bootstrap_smoothness: empty trajectory");
  Verdict v;
  v.name = "bootstrap_smoothness";
  v.tolerance = tail_tolerance;
  const Field& u = traj.back();
  const SpectrumView spec = dft(u);
  const double tail = spec.tail_max(mode_cutoff);
  v.set("t", u.time());
  v.set("tail_max", tail);
  // Slopes of log|u_k| vs log k over dyadic bands [2^j, 2^{j+1}] above the
  // rounding floor; super-polynomial decay makes them steepen.
  const std::size_t n = u.size();
  const double floor = 1e-13 * std::max(1.0, u.sup_norm());
  std::vector<double> slopes;
  for (std::size_t lo = 2; 2 * lo <= n / 2; lo *= 2) {
    std::vector<double> x, y;
    bool above = true;
    for (std::size_t kk = lo; kk <= 2 * lo; ++kk) {
      const double m = spec.magnitude(kk);
      if (!(m > floor)) {
        above = false;
        break;
      }
      x.push_back(std::log(static_cast<double>(kk)));
      y.push_back(std::log(m));
    }
    if (!above) break;
    slopes.push_back(fit_line(x, y).slope);
  }
  bool steepening = true;
  std::ostringstream os;
  for (std::size_t b = 0; b < slopes.size(); ++b) {
    v.set("band_slope_" + std::to_string(b), slopes[b]);
    if (b > 0 && !(slopes[b] < slopes[b - 1])) steepening = false;
  }
  for (int j = 0; j <= k; ++j) {
    const Field d = j == 0 ? u : spectral_derivative(u, j);
    v.set("sup_d" + std::to_string(j), d.sup_norm());
  }
  v.set("ck_norm", ck_norm(u, k));
  v.pass = tail <= tail_tolerance && steepening;
  if (!steepening) v.details = "band decay slopes do not steepen";
  return v;
}

double operator_ratio(const Trajectory& u, const Coefficient& m, double alpha) {
  const Trajectory lu = apply_snapshotwise(u, [&](const Field& f) { return pv_apply(f, m, f.time()); });
  const TimeWindow w = full_window(u);
  double sup = 0.0;
  for (const Field& s : u.snapshots()) sup = std::max(sup, s.sup_norm());
  const double den = sup + c1beta_norm(u, alpha, w).c1beta;
  return den > 0.0 ? holder_norm_spacetime(lu, alpha, full_window(lu)) / den : 0.0;
}

double operator_ratio(const Trajectory& u, const OddKernel& g, double beta) {
  const Trajectory gu = apply_snapshotwise(u, [&](const Field& f) { return g_apply(f, g, f.time()); });
  const double den = lip_norm(u, full_window(u));
  return den > 0.0 ? holder_norm_spacetime(gu, beta, full_window(gu)) / den : 0.0;
}

Verdict check_assumptions(const AssumptionReport& report,
                          std::optional<std::pair<double, double>> u_bounds) {
  Verdict v;
  v.name = "assumptions";
  v.tolerance = 0.0;
  std::ostringstream os;
  for (const AssumptionCheck& c : report.checks) {
    v.set(c.name + "_pass", c.pass ? 1.0 : 0.0);
    v.set(c.name + "_estimate", c.estimate);
    v.set(c.name + "_declared", c.declared);
    if (c.witness) {
      os << c.name << " witness (t1=" << c.witness->t1 << ", x1=" << c.witness->x1
         << ", t2=" << c.witness->t2 << ", x2=" << c.witness->x2 << ", y=" << c.witness->y << "); ";
    }
  }
  v.set("estimated_lambda", report.estimated_lambda);
  v.set("estimated_Lambda", report.estimated_Lambda);
  v.pass = report.all_pass();
  if (u_bounds) {
    const double lo = 0.5 * kBurgersC * u_bounds->first;
    const double hi = 0.5 * kBurgersC * u_bounds->second;
    v.set("bracket_lo", lo);
    v.set("bracket_hi", hi);
    const double slack = 1e-12 * hi;
    const bool inside = report.estimated_lambda >= lo - slack && report.estimated_Lambda <= hi + slack;
    if (!inside) os << "estimated [lambda, Lambda] leaves the harmonic-mean bracket; ";
    v.pass = v.pass && inside;
  }
  v.details = os.str();
  return v;
}

Verdict check_operator_equivalence(const std::vector<std::size_t>& ns, int k_max,
                                   double error_tolerance, double min_order) {
  if (ns.size() < 2) throw ConfigError("check_operator_equivalence: need >= 2 grids");
  Verdict v;
  v.name = "operator_equivalence";
  v.tolerance = error_tolerance;
  v.target = min_order;
  const CoefficientPtr one = constant_coefficient(1.0);
  std::vector<double> errors;
  for (std::size_t n : ns) {
    const TorusGrid grid = make_grid(n);
    double worst = 0.0;
    for (int k = 1; k <= k_max; ++k) {
      const Field f = sample(grid, [k](double x) { return std::cos(k * x); });
      const Field q = pv_apply(f, *one, 0.0);
      const Field s = frac_laplacian_half(f);
      double e = 0.0, scale = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        e = std::max(e, std::abs(q[i] + std::numbers::pi * s[i]));
        scale = std::max(scale, std::abs(std::numbers::pi * s[i]));
      }
      worst = std::max(worst, e / scale);
    }
    errors.push_back(worst);
    v.set("rel_error_N" + std::to_string(n), worst);
  }
  double order = INFINITY;
  for (std::size_t i = 1; i < ns.size(); ++i) {
    const double o = std::log(errors[i - 1] / errors[i]) /
                     std::log(static_cast<double>(ns[i]) / static_cast<double>(ns[i - 1]));
    v.set("order_" + std::to_string(ns[i - 1]) + "_" + std::to_string(ns[i]), o);
    order = std::min(order, o);
  }
  v.set("min_order", order);
  const double err_ref = errors[std::min<std::size_t>(1, errors.size() - 1)];
  v.pass = err_ref <= error_tolerance && order >= min_order;
  return v;
}

Verdict check_form_equivalence(const Field& u0, double t_final, double dt, double tolerance) {
  Verdict v;
  v.name = "form_equivalence";
  v.tolerance = tolerance;
  v.target = 0.0;
  SolverConfig cfg;
  cfg.dt = dt;
  cfg.cfl_safety.reset();
  cfg.snapshot_interval = std::max(dt, t_final);
  std::vector<Field> finals;
  for (Form form : {Form::USpectral, Form::UQuadrature, Form::WDivergence}) {
    cfg.form = form;
    finals.push_back(solve_burgers(u0, t_final, cfg).trajectory.back());
  }
  auto diff = [](const Field& a, const Field& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
  };
  const double sq = diff(finals[0], finals[1]);
  const double sw = diff(finals[0], finals[2]);
  const double qw = diff(finals[1], finals[2]);
  v.set("spectral_vs_quadrature", sq);
  v.set("spectral_vs_w_divergence", sw);
  v.set("quadrature_vs_w_divergence", qw);
  v.pass = std::max({sq, sw, qw}) <= tolerance;
  return v;
}

SchauderSweepResult schauder_sweep(const SchauderSweepSpec& spec) {
  const TorusGrid grid = make_grid(spec.n);
  SolverConfig cfg;
  cfg.dt = spec.dt;
  cfg.cfl_safety.reset();
  cfg.snapshot_interval = spec.snapshot_interval;
  cfg.form = Form::Linear;

  // The source is the same for every kernel; its norm is computed once.
  auto source_traj = [&](double scale) {
    Trajectory f(grid);
    const auto count = static_cast<std::size_t>(std::llround(spec.t_final / spec.snapshot_interval));
    for (std::size_t k = 0; k <= count; ++k) {
      const double t = k == count ? spec.t_final : static_cast<double>(k) * spec.snapshot_interval;
      f.append(sample(grid, [=](double x) { return scale * std::cos(x - t); }, t));
    }
    return f;
  };
  const Trajectory f1 = source_traj(1.0);

  auto run = [&](double a, double b, double scale, const Trajectory& f) {
    SyntheticCoefficientSpec cs;
    cs.a = a;
    cs.alpha = spec.alpha;
    cs.lambda = spec.lambda;
    cs.Lambda = spec.Lambda;
    cs.t_max = spec.t_final;
    SyntheticOddSpec gs;
    gs.b = b;
    gs.alpha = spec.alpha;
    gs.t_max = spec.t_final;
    LinearProblem prob;
    prob.even = synthetic_coefficient(cs);
    if (b != 0.0) prob.odd = synthetic_odd_kernel(gs);
    prob.source = [scale](double t, double x) { return scale * std::cos(x - t); };
    prob.u0 = sample(grid, [scale](double x) { return scale * std::cos(x); });
    const RunResult r = solve_linear(prob, spec.t_final, cfg);
    Verdict v = schauder_ratio(r.trajectory, &f, spec.alpha, spec.beta);
    v.name = "schauder_ratio a=" + fmt("%.4g", a) + " b=" + fmt("%.4g", b);
    v.set("a", a);
    v.set("b", b);
    return v;
  };

  SchauderSweepResult out;
  std::vector<double> ratios;
  for (double a : spec.a_values) {
    for (double b : spec.b_values) {
      out.runs.push_back(run(a, b, 1.0, f1));
      ratios.push_back(out.runs.back().value("ratio"));
    }
  }
  out.family = spread_verdict("schauder_family", ratios, spec.spread);
  out.family.set("lambda", spec.lambda);
  out.family.set("Lambda", spec.Lambda);
  out.family.set("alpha", spec.alpha);
  out.family.set("beta", spec.beta);

  // Homogeneity on the last family member.
  const double a = spec.a_values.back(), b = spec.b_values.back();
  const Trajectory f2 = source_traj(2.0);
  const double r1 = out.runs.back().value("ratio");
  const double r2 = run(a, b, 2.0, f2).value("ratio");
  Verdict& h = out.homogeneity;
  h.name = "schauder_homogeneity";
  h.target = 0.0;
  h.tolerance = 0.0;
  h.set("ratio", r1);
  h.set("ratio_doubled", r2);
  h.set("difference", r2 - r1);
  h.pass = r1 == r2;
  return out;
}

namespace {

template <typename Op>
Verdict operator_family(const std::string& name, const OperatorBoundSpec& spec, Op ratio_of) {
  const TorusGrid grid = make_grid(spec.n);
  std::vector<double> ratios;
  Verdict v;
  for (int k : spec.ks) {
    for (double amp : spec.amplitudes) {
      Trajectory u(grid);
      const auto count = static_cast<std::size_t>(std::llround(spec.t_final / spec.snapshot_interval));
      for (std::size_t s = 0; s <= count; ++s) {
        const double t = static_cast<double>(s) * spec.snapshot_interval;
        u.append(sample(grid, [=](double x) { return amp * std::cos(k * x) * std::exp(-t); }, t));
      }
      ratios.push_back(ratio_of(u));
    }
  }
  v = spread_verdict(name, ratios, spec.spread);
  for (std::size_t i = 0; i < spec.ks.size(); ++i) {
    v.set("ratio_k" + std::to_string(spec.ks[i]), ratios[i * spec.amplitudes.size()]);
  }
  return v;
}

}  // namespace

Verdict operator_holder_bound(const Coefficient& m, const OperatorBoundSpec& spec) {
  return operator_family("operator_bound_L", spec,
                         [&](const Trajectory& u) { return operator_ratio(u, m, spec.alpha); });
}

Verdict operator_holder_bound(const OddKernel& g, const OperatorBoundSpec& spec) {
  return operator_family("operator_bound_g", spec,
                         [&](const Trajectory& u) { return operator_ratio(u, g, spec.beta); });
}

Verdict bootstrap_sweep(const std::vector<Trajectory>& runs, int k, double spread,
                        std::size_t mode_cutoff, double tail_tolerance) {
  if (runs.empty()) throw ConfigError("bootstrap_sweep: no runs");
  std::vector<double> norms;
  bool each = true;
  double worst_tail = 0.0;
  for (const Trajectory& t : runs) {
    const Verdict b = bootstrap_smoothness(t, k, mode_cutoff, tail_tolerance);
    each = each && b.pass;
    worst_tail = std::max(worst_tail, b.value("tail_max"));
    norms.push_back(b.value("ck_norm"));
  }
  Verdict v;
  v.name = "bootstrap_sweep";
  const double mx = *std::max_element(norms.begin(), norms.end());
  const double mn = *std::min_element(norms.begin(), norms.end());
  v.set("ck_max", mx);
  v.set("ck_min", mn);
  v.set("ck_spread", mn > 0.0 ? mx / mn : (mx == 0.0 ? 1.0 : kUnset));
  v.set("worst_tail", worst_tail);
  v.set("k", k);
  v.tolerance = spread;
  v.pass = each && (mx <= spread * mn || mx == 0.0);
  if (!each) v.details = "a run failed the spectral decay check";
  return v;
}

namespace {

constexpr double kMmsB = 0.3;

double mms_exact(double t, double x) { return std::exp(-t) * (1.0 + kMmsB * std::cos(x)); }

LinearProblem mms_problem(const TorusGrid& grid, double b) {
  CoefficientTraits ct;
  ct.lambda = 0.4;
  ct.Lambda = 1.6;
  ct.alpha = 1.0;
  ct.holder = 0.6;
  ct.symmetric = false;
  ct.t_max = 10.0;
  LinearProblem p;
  p.even = frozen_coefficient([](double t, double x) { return 1.0 + 0.6 * std::sin(x) * std::cos(t); }, ct);
  SyntheticOddSpec gs;
  gs.b = b;
  gs.alpha = 1.0;
  gs.profile = OddProfile::Smooth;
  gs.t_max = 10.0;
  if (b != 0.0) p.odd = synthetic_odd_kernel(gs);
  p.u0 = sample(grid, [](double x) { return mms_exact(0.0, x); });
  return p;
}

double mms_error(const Trajectory& traj) {
  double e = 0.0;
  for (const Field& f : traj.snapshots()) {
    const TorusGrid& g = f.grid();
    for (std::size_t i = 0; i < f.size(); ++i) {
      e = std::max(e, std::abs(f[i] - mms_exact(f.time(), g.node(static_cast<std::ptrdiff_t>(i)))));
    }
  }
  return e;
}

}  // namespace

Verdict mms_convergence(const MmsSpec& spec) {
  Verdict v;
  v.name = "mms_convergence";
  v.target = spec.min_spatial_order;
  SolverConfig cfg;
  cfg.form = Form::Linear;
  cfg.cfl_safety.reset();

  // Spatial: continuum source, small dt.
  std::vector<double> errs;
  for (std::size_t n : spec.ns) {
    const TorusGrid grid = make_grid(n);
    LinearProblem p = mms_problem(grid, spec.b);
    const double b = spec.b;
    // u*_t - (continuum operator applied to u*) in closed form.
    p.source = [b](double t, double x) {
      const double kd = 1.0 + 0.6 * std::sin(x) * std::cos(t);
      return -mms_exact(t, x) +
             std::numbers::pi * kMmsB * std::exp(-t) * (kd * std::cos(x) + b * std::sin(x + t) * std::sin(x));
    };
    cfg.dt = spec.spatial_dt;
    cfg.snapshot_interval = spec.t_final / 5.0;
    errs.push_back(mms_error(solve_linear(p, spec.t_final, cfg).trajectory));
    v.set("spatial_error_N" + std::to_string(n), errs.back());
  }
  double s_order = INFINITY;
  bool monotone = true;
  for (std::size_t i = 1; i < errs.size(); ++i) {
    const double o = std::log(errs[i - 1] / errs[i]) /
                     std::log(static_cast<double>(spec.ns[i]) / static_cast<double>(spec.ns[i - 1]));
    s_order = std::min(s_order, o);
    monotone = monotone && errs[i] < errs[i - 1];
  }
  v.set("spatial_order", s_order);

  // Temporal: discrete source so that u* solves the semi-discrete system.
  const TorusGrid grid = make_grid(spec.temporal_n);
  std::vector<double> terrs;
  for (double dt : spec.temporal_dts) {
    LinearProblem p = mms_problem(grid, spec.b);
    const LinearProblem bare = p;
    // Cache: the solver queries the source node by node at one time.
    auto cache_t = std::make_shared<double>(kUnset);
    auto cache_v = std::make_shared<std::vector<double>>();
    p.source = [bare, grid, cache_t, cache_v](double t, double x) {
      if (!(*cache_t == t)) {
        const Field us = sample(grid, [t](double y) { return mms_exact(t, y); }, t);
        const Field r = linear_rhs(bare, us);
        cache_v->assign(grid.size(), 0.0);
        for (std::size_t i = 0; i < grid.size(); ++i) (*cache_v)[i] = -us[i] - r[i];
        *cache_t = t;
      }
      const auto i = static_cast<std::size_t>(std::llround(x / grid.spacing())) % grid.size();
      return (*cache_v)[i];
    };
    cfg.dt = dt;
    cfg.snapshot_interval = spec.temporal_t_final;
    terrs.push_back(mms_error(solve_linear(p, spec.temporal_t_final, cfg).trajectory));
    v.set("temporal_error_dt" + fmt("%.4g", dt), terrs.back());
  }
  double t_order = INFINITY;
  std::size_t used = 0;
  for (std::size_t i = 1; i < terrs.size(); ++i) {
    if (terrs[i] < 1e-13) break;  // rounding floor
    const double o = std::log(terrs[i - 1] / terrs[i]) / std::log(spec.temporal_dts[i - 1] / spec.temporal_dts[i]);
    t_order = std::min(t_order, o);
    ++used;
  }
  v.set("temporal_order", used ? t_order : kUnset);
  v.tolerance = spec.min_temporal_order;
  v.pass = s_order >= spec.min_spatial_order && monotone && used > 0 && t_order >= spec.min_temporal_order;
  if (!monotone) v.details = "spatial errors not monotone in N";
  return v;
}

}  // namespace fracburgers
