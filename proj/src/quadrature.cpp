#include "fracburgers/quadrature.hpp"

#include <cmath>
#include <memory>
#include <numbers>
#include <string>

#include "fracburgers/errors.hpp"
#include "fracburgers/parallel.hpp"

namespace fracburgers {
namespace {

// Neumaier's variant of Kahan summation.
class Compensated {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      c_ += (sum_ - t) + x;
    } else {
      c_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const noexcept { return sum_ + c_; }

 private:
  double sum_ = 0.0;
  double c_ = 0.0;
};

// h * sum_{j != 0} (v[i+j] - v[i]) * row[j] * W[j], pairs (j, N-j) first.
// With full_near_field the j = +-1 weights carry the near-field term;
// otherwise it is applied to the diagonal value row[0] only.
double pair_sum(std::span<const double> v, std::size_t i, std::span<const double> row,
                const PeriodizedWeights& wts, bool full_near_field) {
  const std::size_t n = v.size();
  const double vi = v[i];
  Compensated acc;
  for (std::size_t j = 1; j < n / 2; ++j) {
    const double wj = full_near_field ? wts.effective(j) : wts.raw[j];
    const double plus = (v[(i + j) % n] - vi) * row[j];
    const double minus = (v[(i + n - j) % n] - vi) * row[n - j];
    acc.add((plus + minus) * wj);
  }
  acc.add((v[(i + n / 2) % n] - vi) * row[n / 2] * wts.raw[n / 2]);
  if (!full_near_field && row[0] != 0.0) {
    const double second = (v[(i + 1) % n] - vi) + (v[(i + n - 1) % n] - vi);
    acc.add(wts.near_field * second * row[0]);
  }
  return wts.grid.spacing() * acc.value();
}

Field apply_rows(const Field& v, const RowSampler& sampler, double t, bool lipschitz,
                 const std::function<void(std::size_t, std::span<const double>)>& check) {
  const TorusGrid& grid = v.grid();
  const PeriodizedWeights wts = build_weights(grid);
  const std::size_t n = grid.size();
  std::vector<double> out(n);
  parallel_for(n, [&](std::size_t i) {
    std::vector<double> row(n);
    sampler.row(t, i, row);
    if (check) check(i, row);
    out[i] = pair_sum(v.values(), i, row, wts, lipschitz);
  });
  return Field(grid, v.time(), std::move(out));
}

}  // namespace

PeriodizedWeights build_weights(const TorusGrid& grid) {
  const std::size_t n = grid.size();
  const double scale = std::numbers::pi / grid.period();
  PeriodizedWeights w{grid, std::vector<double>(n, 0.0), 0.0};
  for (std::size_t j = 1; j < n; ++j) {
    const double s = std::sin(std::numbers::pi * static_cast<double>(j) / static_cast<double>(n));
    w.raw[j] = scale * scale / (s * s);
  }
  // Symmetrize explicitly so the pair structure is exact in floating point.
  for (std::size_t j = 1; j < n / 2; ++j) w.raw[n - j] = w.raw[j];
  const double h = grid.spacing();
  w.near_field = 0.5 / (h * h);
  return w;
}

double lattice_weight(const TorusGrid& grid, std::size_t j, long k_max) {
  const double y = static_cast<double>(j) * grid.spacing();
  const double L = grid.period();
  Compensated acc;
  // Smallest terms first.
  for (long k = k_max; k >= 1; --k) {
    const double a = y + static_cast<double>(k) * L;
    const double b = y - static_cast<double>(k) * L;
    acc.add(1.0 / (a * a) + 1.0 / (b * b));
  }
  acc.add(1.0 / (y * y));
  return acc.value();
}

Field pv_apply(const Field& w, const Coefficient& m, double t) {
  const auto sampler = m.sampler(w.grid());
  return apply_rows(w, *sampler, t, m.traits().lipschitz_offset,
                    [&](std::size_t i, std::span<const double> row) {
                      for (double v : row) {
                        if (!std::isfinite(v)) {
                          throw KernelError("coefficient is non-finite at node " +
                                            std::to_string(i));
                        }
                      }
                    });
}

Field g_apply(const Field& u, const OddKernel& g, double t) {
  const TorusGrid& grid = u.grid();
  const std::size_t n = grid.size();
  const OddKernelTraits& tr = g.traits();
  std::vector<double> cap(n, 0.0);
  for (std::size_t j = 1; j < n; ++j) {
    const double r = std::abs(grid.offset(j));
    cap[j] = tr.Lambda * std::min(1.0, std::pow(r, tr.alpha));
  }
  const auto sampler = g.sampler(grid);
  return apply_rows(u, *sampler, t, tr.lipschitz_offset,
                    [&](std::size_t i, std::span<const double> row) {
                      for (std::size_t j = 1; j < n; ++j) {
                        const double v = row[j];
                        if (!std::isfinite(v)) {
                          throw KernelError("odd kernel is non-finite at node " + std::to_string(i));
                        }
                        if (std::abs(v) > cap[j] * (1.0 + 1e-9) + 1e-12 * tr.Lambda) {
                          throw KernelError("odd kernel exceeds its declared magnitude bound at node " +
                                            std::to_string(i) + ", offset " +
                                            std::to_string(grid.offset(j)));
                        }
                      }
                    });
}

Field burgers_rhs_quadrature(const Field& u) {
  const TorusGrid& grid = u.grid();
  const PeriodizedWeights wts = build_weights(grid);
  const std::size_t n = grid.size();
  std::vector<double> out(n);
  parallel_for(n, [&](std::size_t i) {
    std::vector<double> row(n);
    for (std::size_t j = 0; j < n; ++j) row[j] = u[(i + j) % n];
    out[i] = kC1 * pair_sum(u.values(), i, row, wts, true);
  });
  return Field(grid, u.time(), std::move(out));
}

Field divergence_rhs_quadrature(const Field& w, const Coefficient& m, double t, EvalPath path) {
  w.require_positive("divergence_rhs_quadrature");
  if (path == EvalPath::Direct) return pv_apply(w, m, t);
  // Non-owning handle: the pair does not outlive this call.
  const KernelPair pair = freeze_decompose(CoefficientPtr(CoefficientPtr(), &m));
  const Field even = pv_apply(w, *pair.even, t);
  const Field odd = g_apply(w, *pair.odd, t);
  std::vector<double> out(w.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = even[i] + odd[i];
  return Field(w.grid(), w.time(), std::move(out));
}

Field divergence_rhs_quadrature(const Field& w, EvalPath path) {
  w.require_positive("divergence_rhs_quadrature");
  const CoefficientPtr m = coefficient_from_state(w);
  return divergence_rhs_quadrature(w, *m, w.time(), path);
}

double mean_growth_identity(const Field& u) {
  const TorusGrid& grid = u.grid();
  const PeriodizedWeights wts = build_weights(grid);
  const std::size_t n = grid.size();
  Compensated acc;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 1; j < n; ++j) {
      const double d = u[(i + j) % n] - u[i];
      acc.add(d * d * wts.effective(j));
    }
  }
  const double h = grid.spacing();
  return 0.5 * kC1 * h * h * acc.value();
}

std::vector<double> quadrature_symbol(const TorusGrid& grid) {
  const PeriodizedWeights wts = build_weights(grid);
  const std::size_t n = grid.size();
  std::vector<double> sigma(n / 2 + 1, 0.0);
  for (std::size_t k = 1; k <= n / 2; ++k) {
    Compensated acc;
    for (std::size_t j = 1; j < n; ++j) {
      const std::size_t phase = (k * j) % n;
      const double c = std::cos(2.0 * std::numbers::pi * static_cast<double>(phase) /
                                static_cast<double>(n));
      acc.add((c - 1.0) * wts.effective(j));
    }
    sigma[k] = grid.spacing() * acc.value();
  }
  return sigma;
}

}  // namespace fracburgers
