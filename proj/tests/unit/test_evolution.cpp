#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "fracburgers/errors.hpp"
#include "fracburgers/evolution.hpp"
#include "fracburgers/quadrature.hpp"
#include "fracburgers/spectral.hpp"

namespace fb = fracburgers;
using std::numbers::pi;

namespace {

double max_err(const fb::Field& u, const std::function<double(double)>& f) {
  double e = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    e = std::max(e, std::abs(u[i] - f(u.grid().node(static_cast<std::ptrdiff_t>(i)))));
  }
  return e;
}

fb::LinearProblem constant_problem(const fb::Field& u0, double c) {
  fb::LinearProblem p;
  p.even = fb::constant_coefficient(c);
  p.u0 = u0;
  return p;
}

}  // namespace

TEST(Cfl, Formula) {
  const auto g = fb::make_grid(256);
  const double dt = fb::cfl_dt(g, 2.0, 0.5);
  EXPECT_GT(dt, 0.0);
  EXPECT_LE(dt, g.spacing() / (2 * pi));
  EXPECT_DOUBLE_EQ(fb::cfl_dt(fb::make_grid(256, pi), 2.0, 0.5), dt / 2);
  EXPECT_TRUE(std::isinf(fb::cfl_dt(g, 0.0, 0.5)));
}

TEST(Cfl, Rk4StableAtCflStep) {
  const auto g = fb::make_grid(256);
  const auto u0 = fb::sample(g, [](double x) { return std::cos(x) + 0.1 * std::cos(100 * x); });
  fb::SolverConfig cfg;
  cfg.snapshot_interval = 0.1;
  const auto r = fb::solve_linear(constant_problem(u0, 1.0), 1.0, cfg);
  for (const auto& s : r.trajectory.snapshots()) EXPECT_LE(s.sup_norm(), u0.sup_norm() + 1e-6);
}

TEST(Rk4, ZeroRhsIsIdentity) {
  const auto g = fb::make_grid(16);
  const auto u = fb::sample(g, [](double x) { return std::sin(x); });
  const auto z = fb::step_rk4(u, [](const fb::Field& s) {
    return fb::Field(s.grid(), s.time(), std::vector<double>(s.size(), 0.0));
  }, 0.1);
  for (std::size_t i = 0; i < 16; ++i) EXPECT_EQ(z[i], u[i]);
  EXPECT_DOUBLE_EQ(z.time(), 0.1);
}

TEST(Rk4, ScalarDecayLocalOrderFive) {
  const auto g = fb::make_grid(8);
  const auto u = fb::sample(g, [](double) { return 1.0; });
  auto minus = [](const fb::Field& s) {
    auto v = s.data();
    for (double& x : v) x = -x;
    return fb::Field(s.grid(), s.time(), v);
  };
  const double e1 = std::abs(fb::step_rk4(u, minus, 0.1)[0] - std::exp(-0.1));
  const double e2 = std::abs(fb::step_rk4(u, minus, 0.05)[0] - std::exp(-0.05));
  EXPECT_NEAR(std::log2(e1 / e2), 5.0, 0.15);
}

TEST(Rk4, HalfLaplacianGlobalOrderFour) {
  const auto g = fb::make_grid(32);
  const auto u0 = fb::sample(g, [](double x) { return std::cos(x); });
  auto rhs = [](const fb::Field& s) {
    auto v = fb::frac_laplacian_half(s).data();
    for (double& x : v) x = -x;
    return fb::Field(s.grid(), s.time(), v);
  };
  auto run = [&](int steps) {
    fb::Field u = u0;
    for (int k = 0; k < steps; ++k) u = fb::step_rk4(u, rhs, 1.0 / steps);
    return max_err(u, [](double x) { return std::exp(-1.0) * std::cos(x); });
  };
  EXPECT_NEAR(std::log2(run(10) / run(20)), 4.0, 0.2);
}

TEST(SolveBurgers, ConstantIsFixedPointForEveryForm) {
  const auto g = fb::make_grid(64);
  const auto u0 = fb::sample(g, [](double) { return 1.3; });
  for (auto form : {fb::Form::USpectral, fb::Form::UQuadrature, fb::Form::WDivergence}) {
    fb::SolverConfig cfg;
    cfg.form = form;
    cfg.snapshot_interval = 0.25;
    const auto r = fb::solve_burgers(u0, 1.0, cfg);
    EXPECT_EQ(r.trajectory.size(), 5u);
    EXPECT_LT(max_err(r.trajectory.back(), [](double) { return 1.3; }), 1e-13) << fb::to_string(form);
  }
}

TEST(SolveBurgers, SnapshotGridAndSink) {
  const auto g = fb::make_grid(32);
  const auto u0 = fb::sample(g, [](double x) { return 1.5 + 0.5 * std::cos(x); });
  fb::SolverConfig cfg;
  cfg.snapshot_interval = 0.3;
  int calls = 0;
  const auto r = fb::solve_burgers(u0, 1.0, cfg, [&](const fb::Field&) { ++calls; });
  ASSERT_EQ(r.trajectory.size(), 5u);  // 0, 0.3, 0.6, 0.9, 1.0
  EXPECT_EQ(calls, 5);
  EXPECT_DOUBLE_EQ(r.trajectory.t_end(), 1.0);
  EXPECT_GE(r.info.min_value, 1.0 - 1e-9);
  EXPECT_LE(r.info.max_value, 2.0 + 1e-9);
}

TEST(SolveBurgers, SpectralAndQuadratureAgree) {
  const auto g = fb::make_grid(128);
  const auto u0 = fb::sample(g, [](double x) { return 1.5 + 0.5 * std::cos(x); });
  fb::SolverConfig a, b;
  a.dt = b.dt = 2e-3;
  a.cfl_safety = b.cfl_safety = std::nullopt;
  b.form = fb::Form::UQuadrature;
  a.snapshot_interval = b.snapshot_interval = 0.5;
  const auto ua = fb::solve_burgers(u0, 1.0, a).trajectory.back();
  const auto ub = fb::solve_burgers(u0, 1.0, b).trajectory.back();
  double d = 0.0;
  for (std::size_t i = 0; i < ua.size(); ++i) d = std::max(d, std::abs(ua[i] - ub[i]));
  EXPECT_LE(d, 1e-4);
}

TEST(SolveBurgers, RejectsBadConfig) {
  const auto g = fb::make_grid(16);
  const auto u0 = fb::sample(g, [](double) { return 1.0; });
  fb::SolverConfig both;
  both.dt = 0.01;
  EXPECT_THROW(fb::solve_burgers(u0, 1.0, both), fb::ConfigError);
  fb::SolverConfig lin;
  lin.form = fb::Form::Linear;
  EXPECT_THROW(fb::solve_burgers(u0, 1.0, lin), fb::ConfigError);
  fb::SolverConfig wform;
  wform.form = fb::Form::WDivergence;
  EXPECT_THROW(fb::solve_burgers(fb::sample(g, [](double x) { return std::cos(x); }), 1.0, wform),
               fb::DomainError);
  EXPECT_THROW(fb::parse_form("nope"), fb::ConfigError);
  EXPECT_EQ(fb::parse_scheme("imex"), fb::Scheme::Imex);
}

TEST(SolveLinear, ConstantCoefficientDecay) {
  // pv with m == c acts on cos x as -pi c.
  const auto g = fb::make_grid(128);
  const auto u0 = fb::sample(g, [](double x) { return std::cos(x); });
  const double c = 1.0 / pi;
  fb::SolverConfig cfg;
  cfg.snapshot_interval = 0.5;
  const auto r = fb::solve_linear(constant_problem(u0, c), 1.0, cfg);
  EXPECT_LT(max_err(r.trajectory.back(), [](double x) { return std::exp(-1.0) * std::cos(x); }), 1e-5);
}

TEST(SolveLinear, ConstantDataStaysConstant) {
  const auto g = fb::make_grid(64);
  fb::LinearProblem p;
  p.even = fb::synthetic_coefficient({.a = 0.4});
  p.odd = fb::synthetic_odd_kernel({.b = 1.0});
  p.u0 = fb::sample(g, [](double) { return 0.8; });
  fb::SolverConfig cfg;
  cfg.snapshot_interval = 0.5;
  const auto r = fb::solve_linear(p, 1.0, cfg);
  EXPECT_LT(max_err(r.trajectory.back(), [](double) { return 0.8; }), 1e-14);
}

TEST(SolveLinear, AntiDiffusionBlowsUp) {
  const auto g = fb::make_grid(64);
  fb::LinearProblem p;
  p.even = std::make_shared<fb::FunctionCoefficient>(
      [](double, double, double) { return -1.0; }, fb::CoefficientTraits{.lambda = 1.0, .Lambda = 1.0});
  p.u0 = fb::sample(g, [](double x) { return std::cos(x); });
  fb::SolverConfig cfg;
  EXPECT_THROW(fb::solve_linear(p, 5.0, cfg), fb::BlowupError);
}

TEST(Imex, BackwardEulerOnConstantCoefficient) {
  // With constant m the whole operator is implicit: one step is
  // (1 - dt sigma_k)^{-1}, which tracks exp(sigma_k dt) to O(dt^2).
  const auto g = fb::make_grid(64);
  const auto u0 = fb::sample(g, [](double x) { return std::cos(x); });
  const auto prob = constant_problem(u0, 1.0);
  const double sigma = fb::quadrature_symbol(g)[1];
  const fb::DiagFn diag = [](const fb::Field& s) { return std::vector<double>(s.size(), 1.0); };
  const fb::FieldRhs rhs = [&](const fb::Field& s) { return fb::linear_rhs(prob, s); };
  for (double dt : {0.1, 0.01}) {
    const auto u1 = fb::imex_step(u0, diag, rhs, dt);
    EXPECT_LT(max_err(u1, [&](double x) { return std::cos(x) / (1 - dt * sigma); }), 1e-12);
    EXPECT_LT(max_err(u1, [&](double x) { return std::exp(sigma * dt) * std::cos(x); }), 6 * dt * dt);
  }
}

TEST(Imex, StableFarBeyondCfl) {
  const auto g = fb::make_grid(256);
  const auto u0 = fb::sample(g, [](double x) { return std::cos(x) + 0.5 * std::cos(120 * x); });
  fb::SolverConfig cfg;
  cfg.scheme = fb::Scheme::Imex;
  cfg.cfl_safety = std::nullopt;
  cfg.dt = 10 * fb::cfl_dt(g, 1.0, 0.5);
  cfg.snapshot_interval = 0.25;
  const auto r = fb::solve_linear(constant_problem(u0, 1.0), 1.0, cfg);
  double prev = u0.sup_norm();
  for (const auto& s : r.trajectory.snapshots()) {
    EXPECT_LE(s.sup_norm(), prev + 1e-12);
    prev = s.sup_norm();
  }
}

namespace {

std::vector<double> imex_errors(bool midpoint) {
  const auto g = fb::make_grid(64);
  const auto u0 = fb::sample(g, [](double x) { return 1.5 + 0.5 * std::cos(x); });
  fb::SolverConfig ref;
  ref.snapshot_interval = 0.5;
  const auto exact = fb::solve_burgers(u0, 0.5, ref).trajectory.back();
  std::vector<double> errs;
  for (double dt : {0.01, 0.005}) {
    fb::SolverConfig c;
    c.scheme = fb::Scheme::Imex;
    c.imex_midpoint = midpoint;
    c.cfl_safety = std::nullopt;
    c.dt = dt;
    c.snapshot_interval = 0.5;
    const auto u = fb::solve_burgers(u0, 0.5, c).trajectory.back();
    double e = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) e = std::max(e, std::abs(u[i] - exact[i]));
    errs.push_back(e);
  }
  return errs;
}

}  // namespace

TEST(Imex, FirstOrderAgreementWithRk4) {
  const auto errs = imex_errors(false);
  EXPECT_NEAR(std::log2(errs[0] / errs[1]), 1.0, 0.2);
}

TEST(Imex, MidpointVariantIsSecondOrder) {
  const auto errs = imex_errors(true);
  EXPECT_NEAR(std::log2(errs[0] / errs[1]), 2.0, 0.3);
}
