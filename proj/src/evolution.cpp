#include "fracburgers/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "fracburgers/errors.hpp"
#include "fracburgers/quadrature.hpp"
#include "fracburgers/spectral.hpp"

namespace fracburgers {

std::string to_string(Scheme s) {
  return s == Scheme::Imex ? "imex" : "explicit-rk4";
}

std::string to_string(Form f) {
  switch (f) {
    case Form::USpectral: return "u-spectral";
    case Form::UQuadrature: return "u-quadrature";
    case Form::WDivergence: return "w-divergence";
    case Form::Linear: return "linear";
  }
  return "?";
}

Scheme parse_scheme(const std::string& s) {
  if (s == "explicit-rk4" || s == "rk4") return Scheme::ExplicitRk4;
  if (s == "imex") return Scheme::Imex;
  throw ConfigError("unknown scheme '" + s + "'");
}

Form parse_form(const std::string& s) {
  if (s == "u-spectral") return Form::USpectral;
  if (s == "u-quadrature") return Form::UQuadrature;
  if (s == "w-divergence") return Form::WDivergence;
  if (s == "linear") return Form::Linear;
  throw ConfigError("unknown form '" + s + "'");
}

void SolverConfig::validate() const {
  if (dt.has_value() == cfl_safety.has_value()) {
    throw ConfigError("solver: set exactly one of dt and cfl_safety");
  }
  if (dt && !(*dt > 0.0 && std::isfinite(*dt))) throw ConfigError("solver: dt must be positive");
  if (cfl_safety && !(*cfl_safety > 0.0 && *cfl_safety <= 1.0)) {
    throw ConfigError("solver: cfl_safety must lie in (0, 1]");
  }
  if (!(snapshot_interval > 0.0 && std::isfinite(snapshot_interval))) {
    throw ConfigError("solver: snapshot_interval must be positive");
  }
  if (dt && snapshot_interval < *dt) {
    throw ConfigError("solver: snapshot_interval must be >= dt");
  }
}

double cfl_dt(const TorusGrid& grid, double Lambda, double safety) {
  if (!(Lambda > 0.0)) return std::numeric_limits<double>::infinity();
  const double n = static_cast<double>(grid.size());
  return safety * grid.spacing() / (std::numbers::pi * Lambda * (1.0 + std::log(n)));
}

namespace {

std::vector<double> axpy(const std::vector<double>& x, double a, const std::vector<double>& y) {
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + a * y[i];
  return out;
}

void require_finite(const std::vector<double>& v, double t) {
  for (double x : v) {
    if (!std::isfinite(x)) throw BlowupError("non-finite stage value", t);
  }
}

// Evaluates rhs on raw stage values; non-finite data is reported as blowup.
std::vector<double> eval(const FieldRhs& rhs, const TorusGrid& grid, double t,
                         std::vector<double> v) {
  require_finite(v, t);
  Field out = [&] {
    try {
      return rhs(Field(grid, t, std::move(v)));
    } catch (const DataError& e) {
      throw BlowupError(std::string("non-finite right-hand side: ") + e.what(), t);
    }
  }();
  require_finite(out.data(), t);
  return out.data();
}

const std::vector<double>& cached_symbol(const TorusGrid& grid) {
  static std::mutex mu;
  static std::map<std::pair<std::size_t, double>, std::vector<double>> cache;
  std::lock_guard lock(mu);
  const auto key = std::make_pair(grid.size(), grid.period());
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, quadrature_symbol(grid)).first;
  return it->second;
}

}  // namespace

Field step_rk4(const Field& state, const FieldRhs& rhs, double dt) {
  if (!(dt > 0.0)) throw ConfigError("step_rk4: dt must be positive");
  const TorusGrid& g = state.grid();
  const double t = state.time();
  const std::vector<double>& u = state.data();
  const auto k1 = eval(rhs, g, t, u);
  const auto k2 = eval(rhs, g, t + 0.5 * dt, axpy(u, 0.5 * dt, k1));
  const auto k3 = eval(rhs, g, t + 0.5 * dt, axpy(u, 0.5 * dt, k2));
  const auto k4 = eval(rhs, g, t + dt, axpy(u, dt, k3));
  std::vector<double> out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    out[i] = u[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  require_finite(out, t + dt);
  return Field(g, t + dt, std::move(out));
}

Field imex_step(const Field& state, const DiagFn& frozen_diag, const FieldRhs& full_rhs,
                double dt, bool midpoint) {
  if (!(dt > 0.0)) throw ConfigError("imex_step: dt must be positive");
  const TorusGrid& g = state.grid();
  const double t = state.time();
  const std::vector<double> diag = frozen_diag(state);
  double mbar = 0.0;
  for (double d : diag) mbar += d;
  mbar /= static_cast<double>(diag.size());
  if (!(mbar > 0.0)) throw DomainError("imex_step: frozen diagonal must be positive", t);

  const std::vector<double>& sigma = cached_symbol(g);
  auto symbol = [&](double scale) {
    std::vector<double> s(sigma.size());
    for (std::size_t k = 0; k < s.size(); ++k) s[k] = scale * mbar * sigma[k];
    return s;
  };
  auto resolvent = [&](double step) {
    std::vector<double> s(sigma.size());
    for (std::size_t k = 0; k < s.size(); ++k) s[k] = 1.0 / (1.0 - step * mbar * sigma[k]);
    return s;
  };
  // F(v) - mbar * S v at time tau.
  auto explicit_part = [&](double tau, const std::vector<double>& v) {
    std::vector<double> f = eval(full_rhs, g, tau, v);
    const std::vector<double> stiff = detail::apply_even_multiplier(g, v, symbol(1.0));
    for (std::size_t i = 0; i < f.size(); ++i) f[i] -= stiff[i];
    return f;
  };

  const std::vector<double>& u = state.data();
  std::vector<double> out;
  if (!midpoint) {
    out = detail::apply_even_multiplier(g, axpy(u, dt, explicit_part(t, u)), resolvent(dt));
  } else {
    const auto half = detail::apply_even_multiplier(
        g, axpy(u, 0.5 * dt, explicit_part(t, u)), resolvent(0.5 * dt));
    const auto e_mid = explicit_part(t + 0.5 * dt, half);
    const auto forward = detail::apply_even_multiplier(g, u, symbol(0.5 * dt));
    std::vector<double> rhs(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) rhs[i] = u[i] + forward[i] + dt * e_mid[i];
    out = detail::apply_even_multiplier(g, rhs, resolvent(0.5 * dt));
  }
  require_finite(out, t + dt);
  return Field(g, t + dt, std::move(out));
}

namespace {

struct Driver {
  std::function<Field(const Field&, double)> step;
  // Maps the internal state to the stored field (identity or sqrt).
  std::function<Field(const Field&)> output;
  std::function<void(const Field&)> check;
};

std::vector<double> snapshot_times(double t0, double t_final, double interval) {
  std::vector<double> ts{t0};
  const double span = t_final - t0;
  const auto count = static_cast<std::size_t>(std::floor(span / interval * (1.0 + 1e-12)));
  for (std::size_t k = 1; k <= count; ++k) ts.push_back(t0 + static_cast<double>(k) * interval);
  if (t_final - ts.back() > 1e-9 * interval) {
    ts.push_back(t_final);
  } else {
    ts.back() = t_final;
  }
  if (ts.size() > 1 && ts[0] == ts[1]) ts.erase(ts.begin() + 1);
  return ts;
}

RunResult integrate(const Field& s0, double t_final, const SolverConfig& cfg, double dt_max,
                    const Driver& drv, const SnapshotSink& sink) {
  cfg.validate();
  if (!(t_final >= s0.time())) throw ConfigError("t_final precedes the initial time");
  const double sup0 = std::max(drv.output(s0).sup_norm(), 1e-300);

  RunResult res{Trajectory(s0.grid()), RunInfo{}};
  Field first = drv.output(s0);
  res.info.min_value = first.min();
  res.info.max_value = first.max();
  res.trajectory.append(first);
  if (sink) sink(first);

  const std::vector<double> ts = snapshot_times(s0.time(), t_final, cfg.snapshot_interval);
  Field state = s0;
  for (std::size_t k = 1; k < ts.size(); ++k) {
    const double a = ts[k - 1], b = ts[k];
    const auto n = static_cast<std::size_t>(std::max(1.0, std::ceil((b - a) / dt_max * (1.0 - 1e-12))));
    const double dt = (b - a) / static_cast<double>(n);
    res.info.dt = std::max(res.info.dt, dt);
    for (std::size_t s = 0; s < n; ++s) {
      const double t_next = s + 1 == n ? b : a + static_cast<double>(s + 1) * dt;
      state = drv.step(state, dt).with_time(t_next);
      if (drv.check) drv.check(state);
      const Field out = drv.output(state);
      if (out.sup_norm() > 1e3 * sup0) throw BlowupError("sup norm exceeded 1e3 times its initial value", t_next);
      res.info.min_value = std::min(res.info.min_value, out.min());
      res.info.max_value = std::max(res.info.max_value, out.max());
      ++res.info.steps;
    }
    Field snap = drv.output(state);
    res.trajectory.append(snap);
    if (sink) sink(snap);
  }
  return res;
}

double max_dt(const TorusGrid& grid, const SolverConfig& cfg, double Lambda) {
  if (cfg.dt) return *cfg.dt;
  return std::min(cfl_dt(grid, Lambda, *cfg.cfl_safety), cfg.snapshot_interval);
}

Field sqrt_field(const Field& w) {
  std::vector<double> u(w.size());
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = std::sqrt(w[i]);
  return Field(w.grid(), w.time(), std::move(u));
}

}  // namespace

RunResult solve_burgers(const Field& u0, double t_final, const SolverConfig& cfg,
                        const SnapshotSink& sink) {
  cfg.validate();
  const TorusGrid& grid = u0.grid();
  const double dt_max = max_dt(grid, cfg, kC1 * u0.sup_norm());
  const bool imex = cfg.scheme == Scheme::Imex;

  Driver drv;
  drv.output = [](const Field& s) { return s; };
  DiagFn diag = [](const Field& u) {
    std::vector<double> d(u.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = kC1 * u[i];
    return d;
  };

  FieldRhs rhs;
  switch (cfg.form) {
    case Form::USpectral: {
      const bool dealias = cfg.dealias;
      rhs = [dealias](const Field& u) { return burgers_rhs_spectral(u, dealias); };
      break;
    }
    case Form::UQuadrature:
      rhs = [](const Field& u) { return burgers_rhs_quadrature(u); };
      break;
    case Form::WDivergence: {
      u0.require_positive("solve_burgers (w-divergence form)");
      std::vector<double> w0(u0.size());
      for (std::size_t i = 0; i < w0.size(); ++i) w0[i] = u0[i] * u0[i];
      const Field w_init(grid, u0.time(), std::move(w0));
      drv.output = sqrt_field;
      drv.check = [](const Field& w) {
        if (!w.is_positive()) throw DomainError("w-divergence form lost positivity", w.time());
      };
      diag = [](const Field& w) {
        std::vector<double> d(w.size());
        for (std::size_t i = 0; i < d.size(); ++i) d[i] = kC1 * std::sqrt(std::max(w[i], 0.0));
        return d;
      };
      auto fresh = [](const Field& w) {
        try {
          return divergence_rhs_quadrature(w);
        } catch (const DomainError& e) {
          throw DomainError(e.what(), w.time());
        }
      };
      if (cfg.lag_coefficient) {
        drv.step = [=, &cfg](const Field& w, double dt) {
          w.require_positive("solve_burgers");
          const CoefficientPtr m = coefficient_from_state(w);
          FieldRhs lagged = [m](const Field& v) {
            try {
              return divergence_rhs_quadrature(v, *m, v.time());
            } catch (const DomainError& e) {
              throw DomainError(e.what(), v.time());
            }
          };
          return imex ? imex_step(w, diag, lagged, dt, cfg.imex_midpoint) : step_rk4(w, lagged, dt);
        };
      } else {
        rhs = fresh;
      }
      if (!drv.step) {
        drv.step = [=, &cfg](const Field& w, double dt) {
          return imex ? imex_step(w, diag, rhs, dt, cfg.imex_midpoint) : step_rk4(w, rhs, dt);
        };
      }
      return integrate(w_init, t_final, cfg, dt_max, drv, sink);
    }
    case Form::Linear:
      throw ConfigError("solve_burgers: form 'linear' needs solve_linear");
  }
  drv.step = [=, &cfg](const Field& u, double dt) {
    return imex ? imex_step(u, diag, rhs, dt, cfg.imex_midpoint) : step_rk4(u, rhs, dt);
  };
  return integrate(u0, t_final, cfg, dt_max, drv, sink);
}

Field linear_rhs(const LinearProblem& prob, const Field& u) {
  const double t = u.time();
  Field out = pv_apply(u, *prob.even, t);
  if (!prob.odd && !prob.source) return out;
  std::vector<double> v = out.data();
  if (prob.odd) {
    const Field g = g_apply(u, *prob.odd, t);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += g[i];
  }
  if (prob.source) {
    const TorusGrid& grid = u.grid();
    for (std::size_t i = 0; i < v.size(); ++i) {
      v[i] += prob.source(t, grid.node(static_cast<std::ptrdiff_t>(i)));
    }
  }
  return Field(u.grid(), t, std::move(v));
}

RunResult solve_linear(const LinearProblem& prob, double t_final, const SolverConfig& cfg,
                       const SnapshotSink& sink) {
  cfg.validate();
  if (!prob.even) throw ConfigError("solve_linear: missing even coefficient");
  if (!prob.u0) throw ConfigError("solve_linear: missing initial data");
  const Field& u0 = *prob.u0;
  double Lambda = prob.even->traits().Lambda;
  if (prob.odd) Lambda += prob.odd->traits().Lambda;
  const double dt_max = max_dt(u0.grid(), cfg, Lambda);

  const FieldRhs rhs = [&prob](const Field& u) { return linear_rhs(prob, u); };
  const DiagFn diag = [&prob](const Field& u) {
    std::vector<double> d(u.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
      const double x = u.grid().node(static_cast<std::ptrdiff_t>(i));
      d[i] = prob.even->evaluate(u.time(), x, x);
    }
    return d;
  };
  const bool imex = cfg.scheme == Scheme::Imex;
  Driver drv;
  drv.output = [](const Field& s) { return s; };
  drv.step = [&](const Field& u, double dt) {
    return imex ? imex_step(u, diag, rhs, dt, cfg.imex_midpoint) : step_rk4(u, rhs, dt);
  };
  RunResult res = integrate(u0, t_final, cfg, dt_max, drv, sink);
  res.info.certified = prob.certified;
  return res;
}

}  // namespace fracburgers
