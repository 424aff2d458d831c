#include "fracburgers/norms.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "fracburgers/errors.hpp"
#include "fracburgers/spectral.hpp"

namespace fracburgers {
namespace {

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw ConfigError("Hoelder exponent must lie in (0, 1], got " +
                      std::to_string(alpha));
  }
}

double window_slack(TimeWindow w) {
  return 1e-9 * std::max({1.0, std::abs(w.begin), std::abs(w.end)});
}

// Indices of snapshots inside the window.
std::vector<std::size_t> window_indices(const Trajectory& traj, TimeWindow w) {
  if (traj.empty()) throw ConfigError("empty trajectory");
  const double eps = window_slack(w);
  if (w.begin > w.end || w.begin < traj.t_begin() - eps ||
      w.end > traj.t_end() + eps) {
    throw ConfigError("time window [" + std::to_string(w.begin) + ", " +
                      std::to_string(w.end) + "] outside trajectory [" +
                      std::to_string(traj.t_begin()) + ", " +
                      std::to_string(traj.t_end()) + "]");
  }
  std::vector<std::size_t> idx;
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const double t = traj.times()[k];
    if (t >= w.begin - eps && t <= w.end + eps) idx.push_back(k);
  }
  if (idx.empty()) throw ConfigError("no snapshots inside the time window");
  return idx;
}

// Circulant form of the spectral first derivative: (Du)_i = sum_j r_j u_{i-j}.
std::vector<double> derivative_stencil(const TorusGrid& grid) {
  std::vector<double> impulse(grid.size(), 0.0);
  impulse[0] = 1.0;
  return spectral_derivative(Field(grid, 0.0, impulse), 1).data();
}

std::vector<double> apply_stencil(const std::vector<double>& stencil,
                                  const std::vector<double>& u) {
  const std::size_t n = u.size();
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      s += stencil[j] * u[(i + n - j) % n];
    }
    out[i] = s;
  }
  return out;
}

double sup_over(const Trajectory& traj, const std::vector<std::size_t>& idx) {
  double s = 0.0;
  for (std::size_t k : idx) s = std::max(s, traj[k].sup_norm());
  return s;
}

}  // namespace

TimeWindow full_window(const Trajectory& traj) {
  if (traj.empty()) throw ConfigError("empty trajectory");
  return {traj.t_begin(), traj.t_end()};
}

double holder_seminorm_space(const Field& f, double alpha) {
  check_alpha(alpha);
  const std::size_t n = f.size();
  const TorusGrid& g = f.grid();
  std::vector<double> inv_pow(n / 2 + 1, 0.0);
  for (std::size_t d = 1; d <= n / 2; ++d) {
    inv_pow[d] = 1.0 / std::pow(static_cast<double>(d) * g.spacing(), alpha);
  }
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const std::size_t d = std::min(j - i, n - (j - i));
      best = std::max(best, std::abs(f[i] - f[j]) * inv_pow[d]);
    }
  }
  return best;
}

double holder_seminorm_spacetime(const Trajectory& traj, double alpha,
                                 TimeWindow window, PairMode mode) {
  check_alpha(alpha);
  std::vector<std::size_t> idx = window_indices(traj, window);
  const std::size_t stride = mode == PairMode::Stratified ? 2 : 1;
  if (stride > 1) {
    std::vector<std::size_t> thin;
    for (std::size_t k = 0; k < idx.size(); k += stride) thin.push_back(idx[k]);
    idx = std::move(thin);
  }
  const TorusGrid& g = traj.grid();
  const std::size_t n = g.size();
  std::vector<double> dist_pow(n, 0.0);
  for (std::size_t o = 0; o < n; ++o) {
    dist_pow[o] = std::pow(static_cast<double>(std::min(o, n - o)) * g.spacing(), alpha);
  }
  const std::size_t s = idx.size();
  std::vector<double> lo(s), hi(s);
  for (std::size_t a = 0; a < s; ++a) {
    lo[a] = traj[idx[a]].min();
    hi[a] = traj[idx[a]].max();
  }

  double best = 0.0;
  // Pairs ordered by snapshot gap so large values appear early and the
  // range bound prunes most distant pairs.
  for (std::size_t gap = 0; gap < s; ++gap) {
    for (std::size_t a = 0; a + gap < s; ++a) {
      const std::size_t b = a + gap;
      const double dt_pow =
          gap == 0 ? 0.0 : std::pow(std::abs(traj.times()[idx[b]] - traj.times()[idx[a]]), alpha);
      const double range = std::max(hi[a], hi[b]) - std::min(lo[a], lo[b]);
      // Skipped candidates satisfy |du| * inv <= range * inv <= best exactly
      // (rounding is monotone), so pruning never changes the result.
      if (gap > 0 && range * (1.0 / dt_pow) <= best) continue;
      const auto ua = traj[idx[a]].values();
      const auto ub = traj[idx[b]].values();
      for (std::size_t o = (gap == 0 ? stride : 0); o < n; o += stride) {
        const double inv = 1.0 / (dist_pow[o] + dt_pow);
        if (range * inv <= best) continue;
        for (std::size_t i = 0; i < n; i += stride) {
          const std::size_t j = (i + o) % n;
          best = std::max(best, std::abs(ua[i] - ub[j]) * inv);
        }
      }
    }
  }
  return best;
}

double holder_norm_spacetime(const Trajectory& traj, double alpha,
                             TimeWindow window, PairMode mode) {
  const double semi = holder_seminorm_spacetime(traj, alpha, window, mode);
  return sup_over(traj, window_indices(traj, window)) + semi;
}

Trajectory gradient_trajectory(const Trajectory& traj, TimeWindow window) {
  const std::vector<std::size_t> idx = window_indices(traj, window);
  const std::vector<double> stencil = derivative_stencil(traj.grid());
  Trajectory out(traj.grid());
  for (std::size_t k : idx) {
    out.append(Field(traj.grid(), traj.times()[k], apply_stencil(stencil, traj[k].data())));
  }
  return out;
}

Trajectory time_derivative_trajectory(const Trajectory& traj, TimeWindow window) {
  if (traj.size() < 3) {
    throw ConfigError("time derivative needs at least 3 snapshots");
  }
  const std::vector<std::size_t> idx = window_indices(traj, window);
  const auto& t = traj.times();
  const std::size_t last = traj.size() - 1;
  const std::size_t n = traj.grid().size();
  Trajectory out(traj.grid());
  for (std::size_t k : idx) {
    double c0, c1, c2;
    std::size_t k0;
    if (k == 0) {
      const double h1 = t[1] - t[0], h2 = t[2] - t[1];
      k0 = 0;
      c0 = -(2.0 * h1 + h2) / (h1 * (h1 + h2));
      c1 = (h1 + h2) / (h1 * h2);
      c2 = -h1 / (h2 * (h1 + h2));
    } else if (k == last) {
      const double h1 = t[last - 1] - t[last - 2], h2 = t[last] - t[last - 1];
      k0 = last - 2;
      c0 = h2 / (h1 * (h1 + h2));
      c1 = -(h1 + h2) / (h1 * h2);
      c2 = (h1 + 2.0 * h2) / (h2 * (h1 + h2));
    } else {
      const double h1 = t[k] - t[k - 1], h2 = t[k + 1] - t[k];
      k0 = k - 1;
      c0 = -h2 / (h1 * (h1 + h2));
      c1 = (h2 - h1) / (h1 * h2);
      c2 = h1 / (h2 * (h1 + h2));
    }
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
      v[i] = c0 * traj[k0][i] + c1 * traj[k0 + 1][i] + c2 * traj[k0 + 2][i];
    }
    out.append(Field(traj.grid(), t[k], std::move(v)));
  }
  return out;
}

NormReport c1beta_norm(const Trajectory& traj, double beta, TimeWindow window,
                       PairMode mode) {
  check_alpha(beta);
  const std::vector<std::size_t> idx = window_indices(traj, window);
  if (idx.size() < 3) {
    throw ConfigError("C^{1+beta} norm needs at least 3 snapshots in the window");
  }
  const Trajectory grad = gradient_trajectory(traj, window);
  const Trajectory dt = time_derivative_trajectory(traj, window);
  const TimeWindow gw = full_window(grad);

  NormReport r;
  r.beta = beta;
  r.window = window;
  r.mode = mode;
  r.sup_norm = sup_over(traj, idx);
  r.holder_seminorm = holder_seminorm_spacetime(traj, beta, window, mode);
  for (const Field& f : grad.snapshots()) r.sup_grad = std::max(r.sup_grad, f.sup_norm());
  for (const Field& f : dt.snapshots()) r.sup_dt = std::max(r.sup_dt, f.sup_norm());
  r.grad_seminorm = holder_seminorm_spacetime(grad, beta, gw, mode);
  r.dt_seminorm = holder_seminorm_spacetime(dt, beta, gw, mode);
  r.c1beta = r.sup_grad + r.sup_dt + r.grad_seminorm + r.dt_seminorm;
  r.lip_norm = r.sup_norm + r.sup_dt + r.sup_grad;
  return r;
}

double lip_norm(const Trajectory& traj, TimeWindow window) {
  const std::vector<std::size_t> idx = window_indices(traj, window);
  const Trajectory grad = gradient_trajectory(traj, window);
  const Trajectory dt = time_derivative_trajectory(traj, window);
  double sg = 0.0, sd = 0.0;
  for (const Field& f : grad.snapshots()) sg = std::max(sg, f.sup_norm());
  for (const Field& f : dt.snapshots()) sd = std::max(sd, f.sup_norm());
  return sup_over(traj, idx) + sd + sg;
}

double ck_norm(const Field& u, int k) {
  double total = u.sup_norm();
  for (int j = 1; j <= k; ++j) total += spectral_derivative(u, j).sup_norm();
  return total;
}

}  // namespace fracburgers
