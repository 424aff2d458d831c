#pragma once

#include "fracburgers/grid.hpp"

namespace fracburgers {

struct TimeWindow {
  double begin = 0.0;
  double end = 0.0;
};

TimeWindow full_window(const Trajectory& traj);

// Exact enumerates every (snapshot, node) pair; Stratified uses every second
// snapshot and node.
enum class PairMode { Exact, Stratified };

struct NormReport {
  double sup_norm = 0.0;
  // Space-time Hoelder seminorm of u with exponent `beta`.
  double holder_seminorm = 0.0;
  double beta = 0.0;
  double sup_grad = 0.0;
  double sup_dt = 0.0;
  double grad_seminorm = 0.0;
  double dt_seminorm = 0.0;
  // sup|grad u| + sup|u_t| + [grad u]_beta + [u_t]_beta
  double c1beta = 0.0;
  // sup|u| + sup|u_t| + sup|grad u|
  double lip_norm = 0.0;
  TimeWindow window;
  PairMode mode = PairMode::Exact;
};

// max_{i != j} |f_i - f_j| / d(i, j)^alpha with the torus distance.
double holder_seminorm_space(const Field& f, double alpha);

// max over (snapshot, node) pairs of |increment| / (|dx|^alpha + |dt|^alpha).
double holder_seminorm_spacetime(const Trajectory& traj, double alpha,
                                 TimeWindow window,
                                 PairMode mode = PairMode::Exact);
// sup norm plus the seminorm above.
double holder_norm_spacetime(const Trajectory& traj, double alpha,
                             TimeWindow window, PairMode mode = PairMode::Exact);

// Snapshots of the spectral x-derivative (applied as a circulant convolution
// so that the result commutes exactly with node shifts).
Trajectory gradient_trajectory(const Trajectory& traj, TimeWindow window);
// u_t by three-point differences over the whole trajectory (one-sided at the
// trajectory ends), restricted to the window.
Trajectory time_derivative_trajectory(const Trajectory& traj, TimeWindow window);

NormReport c1beta_norm(const Trajectory& traj, double beta, TimeWindow window,
                       PairMode mode = PairMode::Exact);
double lip_norm(const Trajectory& traj, TimeWindow window);

// sum_{j <= k} sup |d^j u / dx^j|
double ck_norm(const Field& u, int k);

}  // namespace fracburgers
