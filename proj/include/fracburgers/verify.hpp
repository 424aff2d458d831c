#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fracburgers/evolution.hpp"
#include "fracburgers/grid.hpp"
#include "fracburgers/kernels.hpp"

namespace fracburgers {

inline constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();

struct Verdict {
  std::string name;
  bool pass = false;
  // Insertion-ordered so reports are stable.
  std::vector<std::pair<std::string, double>> measured;
  double target = kUnset;
  double tolerance = kUnset;
  std::string details;

  void set(const std::string& key, double value);
  // Throws ConfigError for an unknown key.
  double value(std::string_view key) const;
};

// Least squares y = intercept + slope * x; residual is the RMS misfit.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

// ---------------------------------------------------------------------------
// Single-trajectory checks.

// Worst excursion of any snapshot outside [min u0, max u0].
Verdict check_extremum_principles(const Trajectory& traj, double tolerance = 1e-6);

// Relative drift of mean(u^2); decreases of mean(u) between snapshots; and
// the match between the total change of mean(u) and the time integral of
// the mean-growth identity.
Verdict check_energy_law(const Trajectory& traj, double drift_tolerance = 1e-6,
                         double monotone_tolerance = 1e-8, double identity_tolerance = 0.01);

// Fits osc(t) = A exp(-r t) where 1e-8 <= osc <= osc(0)/2.
Verdict fit_convergence_to_constant(const Trajectory& traj, double residual_tolerance = 0.05,
                                    double limit_tolerance = 1e-3,
                                    std::optional<double> expected_rate = std::nullopt,
                                    double rate_tolerance = 0.1);

// t^alpha [u(t)]_alpha / |u0|_inf over t in [4h, 1], maximized per dyadic
// band; slope = d log(band max) / d log t. Data that never smooths keeps
// [u]_alpha roughly fixed, so the estimator grows like t^alpha (slope alpha).
// Times after the oscillation has decayed by 90% are excluded from the fit.
Verdict measure_smoothing(const Trajectory& traj, double alpha, double slope_tolerance = 0.1);

// |u|_{C^{1+beta}} on the last unit window over |u|_inf + |f|_{C^beta} on
// the full window. f may be null (zero source).
Verdict schauder_ratio(const Trajectory& u, const Trajectory* f, double alpha, double beta);

// Spectral tail beyond mode_cutoff at the final snapshot, dyadic-band decay
// slopes, and derivative norms up to order k.
Verdict bootstrap_smoothness(const Trajectory& traj, int k, std::size_t mode_cutoff = 40,
                             double tail_tolerance = 1e-12);

// |L u|_{C^alpha} / |u|_{C^{1+alpha}} with L = pv_apply(., m).
double operator_ratio(const Trajectory& u, const Coefficient& m, double alpha);
// |g|_{C^beta} / |u|_{Lip} with g = g_apply(., G).
double operator_ratio(const Trajectory& u, const OddKernel& g, double beta);

// Wraps a validator report; for Burgers-derived data pass u bounds to also
// check the harmonic-mean bracket of the estimated lambda, Lambda.
Verdict check_assumptions(const AssumptionReport& report,
                          std::optional<std::pair<double, double>> u_bounds = std::nullopt);

// ---------------------------------------------------------------------------
// Experiments that run the solver.

// pv_apply(m == 1) against -pi * frac_laplacian_half on cos kx, k = 1..k_max.
// Relative error at ns[1]; order = min over consecutive refinements.
Verdict check_operator_equivalence(const std::vector<std::size_t>& ns = {128, 256, 512},
                                   int k_max = 8, double error_tolerance = 1e-3,
                                   double min_order = 1.9);

// The three Burgers forms from u0 at matched dt, compared at t_final.
Verdict check_form_equivalence(const Field& u0, double t_final, double dt,
                               double tolerance = 1e-4);

struct SchauderSweepSpec {
  std::size_t n = 128;
  double t_final = 6.0;
  double snapshot_interval = 0.02;
  double dt = 2e-3;
  double lambda = 0.2;
  double Lambda = 1.8;
  double alpha = 0.5;
  double beta = 0.4;
  std::vector<double> a_values{0.0, 0.4 / 3.0, 0.8 / 3.0, 0.4};
  std::vector<double> b_values{0.0, 1.0};
  double spread = 3.0;  // max <= spread * median
};

struct SchauderSweepResult {
  std::vector<Verdict> runs;
  Verdict family;
  Verdict homogeneity;
};

// Linear problems with u0 = cos x and the travelling source cos(x - t).
SchauderSweepResult schauder_sweep(const SchauderSweepSpec& spec = {});

struct OperatorBoundSpec {
  std::size_t n = 128;
  double t_final = 1.0;
  double snapshot_interval = 0.05;
  std::vector<int> ks{1, 2, 3, 4, 5};
  std::vector<double> amplitudes{1.0, 2.0};
  double alpha = 0.5;
  double beta = 0.4;
  double spread = 2.0;
};

// Ratios over the family A cos(kx) e^{-t}; pass when max <= spread * median.
Verdict operator_holder_bound(const Coefficient& m, const OperatorBoundSpec& spec = {});
Verdict operator_holder_bound(const OddKernel& g, const OperatorBoundSpec& spec = {});

// C^k norms at the final time across runs sharing (min u0, max u0):
// pass when max <= spread * min and every run passes bootstrap_smoothness.
Verdict bootstrap_sweep(const std::vector<Trajectory>& runs, int k = 3, double spread = 2.0,
                        std::size_t mode_cutoff = 40, double tail_tolerance = 1e-12);

struct MmsSpec {
  std::vector<std::size_t> ns{64, 128, 256, 512};
  double t_final = 0.5;
  double spatial_dt = 1e-3;
  std::size_t temporal_n = 64;
  double temporal_t_final = 1.0;
  std::vector<double> temporal_dts{0.016, 0.008, 0.004, 0.002};
  double b = 0.5;
  double min_spatial_order = 1.9;
  double min_temporal_order = 3.8;
};

// Manufactured solution u* = e^{-t}(1 + 0.3 cos x) with K_diag = 1 + 0.6 sin x cos t
// and G_reduced = b sin(x + t) sin y.
Verdict mms_convergence(const MmsSpec& spec = {});

}  // namespace fracburgers
