#pragma once

#include <cstddef>
#include <vector>

#include "fracburgers/grid.hpp"
#include "fracburgers/kernels.hpp"

namespace fracburgers {

// Periodized kernel weights W[j] = sum_k 1/(j h + k L)^2 for j = 1..N-1.
// Index 0 is unused and stored as 0.
struct PeriodizedWeights {
  TorusGrid grid;
  std::vector<double> raw;
  // Added to W[1] and W[N-1]: stands in for the j = 0 trapezoid node, whose
  // value is the second difference (u(x+h) + u(x-h) - 2u(x)) / (2 h^2).
  double near_field = 0.0;

  double operator[](std::size_t j) const { return raw[j]; }
  double effective(std::size_t j) const {
    const std::size_t n = raw.size();
    return (j == 1 || j == n - 1) ? raw[j] + near_field : raw[j];
  }
};

PeriodizedWeights build_weights(const TorusGrid& grid);

// Truncated lattice sum over |k| <= k_max (reference for build_weights).
double lattice_weight(const TorusGrid& grid, std::size_t j, long k_max);

// p.v. int (w(y) - w(x)) m(t, x, y) / |x - y|^2 dy at the grid nodes.
Field pv_apply(const Field& w, const Coefficient& m, double t);

// int (u(x + y) - u(x)) G(t, x, y) dy with G given in reduced form.
Field g_apply(const Field& u, const OddKernel& g, double t);

// c1 * p.v. int (u(y) - u(x)) u(y) / |x - y|^2 dy.
Field burgers_rhs_quadrature(const Field& u);

enum class EvalPath { Direct, FrozenSplit };

// Right-hand side of w_t = p.v. int (w(y) - w(x)) m / |x - y|^2 dy for a
// positive w. The frozen split evaluates K_diag * pv(w) + g_apply(remainder).
Field divergence_rhs_quadrature(const Field& w, const Coefficient& m, double t,
                                EvalPath path = EvalPath::Direct);
// Same with the Burgers coefficient built from w itself.
Field divergence_rhs_quadrature(const Field& w, EvalPath path = EvalPath::Direct);

// h * sum_i rhs_i of burgers_rhs_quadrature, computed from its
// antisymmetrized form (c1 / 2) h^2 sum_{i != j} (u_j - u_i)^2 W~[i - j].
// Divide by L for the rate of change of the grid mean of u.
double mean_growth_identity(const Field& u);

// Discrete symbol of the m == 1 quadrature operator, indexed by |k| in
// 0..N/2: sigma(k) = h * sum_j (cos(k x_j) - 1) W~[j] (close to -pi |k|).
std::vector<double> quadrature_symbol(const TorusGrid& grid);

}  // namespace fracburgers
