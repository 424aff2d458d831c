#include "fracburgers/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "fracburgers/errors.hpp"

namespace fracburgers {
namespace {

class GenericCoefficientSampler final : public RowSampler {
 public:
  GenericCoefficientSampler(const Coefficient& m, const TorusGrid& grid)
      : m_(m), grid_(grid) {}
  void row(double t, std::size_t i, std::span<double> out) const override {
    const double x = grid_.node(static_cast<std::ptrdiff_t>(i));
    for (std::size_t j = 0; j < grid_.size(); ++j) {
      out[j] = m_.evaluate(t, x, x + grid_.offset(j));
    }
  }

 private:
  const Coefficient& m_;
  TorusGrid grid_;
};

class GenericOddSampler final : public RowSampler {
 public:
  GenericOddSampler(const OddKernel& g, const TorusGrid& grid) : g_(g), grid_(grid) {}
  void row(double t, std::size_t i, std::span<double> out) const override {
    const double x = grid_.node(static_cast<std::ptrdiff_t>(i));
    out[0] = 0.0;
    for (std::size_t j = 1; j < grid_.size(); ++j) {
      out[j] = g_.evaluate_reduced(t, x, grid_.offset(j));
    }
  }

 private:
  const OddKernel& g_;
  TorusGrid grid_;
};

// ---------------------------------------------------------------------------
// Burgers coefficient built from a w-trajectory.

class StateCoefficient final : public Coefficient {
 public:
  StateCoefficient(const Trajectory& w, CoefficientTraits traits)
      : Coefficient(traits), grid_(w.grid()), times_(w.times()) {
    roots_.reserve(w.size());
    for (const Field& f : w.snapshots()) {
      std::vector<double> r(f.size());
      for (std::size_t i = 0; i < r.size(); ++i) r[i] = std::sqrt(f[i]);
      roots_.push_back(std::move(r));
    }
  }

  double evaluate(double t, double x, double y) const override {
    const double a = root_at(t, x);
    const double b = root_at(t, y);
    return kBurgersC * (a * b) / (a + b);
  }

  std::unique_ptr<RowSampler> sampler(const TorusGrid& grid) const override;

  // sqrt(w) at node i, linear in t between snapshots (clamped at the ends).
  double node_root(double t, std::size_t i) const {
    const auto [k, frac] = locate(t);
    if (frac == 0.0) return roots_[k][i];
    return (1.0 - frac) * roots_[k][i] + frac * roots_[k + 1][i];
  }

  const TorusGrid& grid() const noexcept { return grid_; }

 private:
  std::pair<std::size_t, double> locate(double t) const {
    if (times_.size() == 1 || t <= times_.front()) return {0, 0.0};
    if (t >= times_.back()) return {times_.size() - 1, 0.0};
    const auto it = std::upper_bound(times_.begin(), times_.end(), t);
    const std::size_t k = static_cast<std::size_t>(it - times_.begin()) - 1;
    return {k, (t - times_[k]) / (times_[k + 1] - times_[k])};
  }

  double root_at(double t, double x) const {
    const double xi = x / grid_.spacing();
    const double fl = std::floor(xi);
    const double frac = xi - fl;
    const std::size_t i0 = grid_.wrap(static_cast<std::ptrdiff_t>(fl));
    const std::size_t i1 = grid_.wrap(static_cast<std::ptrdiff_t>(fl) + 1);
    const double r0 = node_root(t, i0);
    if (frac == 0.0) return r0;
    return (1.0 - frac) * r0 + frac * node_root(t, i1);
  }

  TorusGrid grid_;
  std::vector<double> times_;
  std::vector<std::vector<double>> roots_;
};

class StateSampler final : public RowSampler {
 public:
  explicit StateSampler(const StateCoefficient& m) : m_(m) {}
  void row(double t, std::size_t i, std::span<double> out) const override {
    const std::size_t n = m_.grid().size();
    const double a = m_.node_root(t, i);
    for (std::size_t j = 0; j < n; ++j) {
      const double b = m_.node_root(t, (i + j) % n);
      out[j] = kBurgersC * (a * b) / (a + b);
    }
  }

 private:
  const StateCoefficient& m_;
};

std::unique_ptr<RowSampler> StateCoefficient::sampler(const TorusGrid& grid) const {
  if (grid == grid_) return std::make_unique<StateSampler>(*this);
  return Coefficient::sampler(grid);
}

// ---------------------------------------------------------------------------
// Frozen decomposition.

class FrozenCoefficient final : public Coefficient {
 public:
  FrozenCoefficient(std::function<double(double, double)> k_diag,
                    CoefficientTraits traits)
      : Coefficient(traits), k_diag_(std::move(k_diag)) {}
  double evaluate(double t, double x, double) const override { return k_diag_(t, x); }

  std::unique_ptr<RowSampler> sampler(const TorusGrid& grid) const override;

  double diag(double t, double x) const { return k_diag_(t, x); }

 private:
  std::function<double(double, double)> k_diag_;
};

class FrozenSampler final : public RowSampler {
 public:
  FrozenSampler(const FrozenCoefficient& m, const TorusGrid& grid) : m_(m), grid_(grid) {}
  void row(double t, std::size_t i, std::span<double> out) const override {
    std::fill(out.begin(), out.end(), m_.diag(t, grid_.node(static_cast<std::ptrdiff_t>(i))));
  }

 private:
  const FrozenCoefficient& m_;
  TorusGrid grid_;
};

std::unique_ptr<RowSampler> FrozenCoefficient::sampler(const TorusGrid& grid) const {
  return std::make_unique<FrozenSampler>(*this, grid);
}

// The frozen diagonal of a coefficient that is kept alive by the pair.
class DiagonalOf final : public Coefficient {
 public:
  explicit DiagonalOf(CoefficientPtr m)
      : Coefficient(diag_traits(m->traits())), m_(std::move(m)) {}
  double evaluate(double t, double x, double) const override {
    return m_->evaluate(t, x, x);
  }
  std::unique_ptr<RowSampler> sampler(const TorusGrid& grid) const override;

  const Coefficient& base() const noexcept { return *m_; }

 private:
  static CoefficientTraits diag_traits(CoefficientTraits t) {
    t.lipschitz_offset = true;  // constant in y
    return t;
  }
  CoefficientPtr m_;
};

class DiagonalSampler final : public RowSampler {
 public:
  explicit DiagonalSampler(std::unique_ptr<RowSampler> base) : base_(std::move(base)) {}
  void row(double t, std::size_t i, std::span<double> out) const override {
    base_->row(t, i, out);
    std::fill(out.begin() + 1, out.end(), out[0]);
  }

 private:
  std::unique_ptr<RowSampler> base_;
};

std::unique_ptr<RowSampler> DiagonalOf::sampler(const TorusGrid& grid) const {
  return std::make_unique<DiagonalSampler>(m_->sampler(grid));
}

class RemainderKernel final : public OddKernel {
 public:
  explicit RemainderKernel(CoefficientPtr m)
      : OddKernel(remainder_traits(m->traits())), m_(std::move(m)) {}
  double evaluate_reduced(double t, double x, double y) const override {
    return m_->evaluate(t, x, x + y) - m_->evaluate(t, x, x);
  }
  std::unique_ptr<RowSampler> sampler(const TorusGrid& grid) const override;

 private:
  static OddKernelTraits remainder_traits(const CoefficientTraits& c) {
    OddKernelTraits t;
    t.alpha = c.alpha;
    t.Lambda = c.holder;
    t.holder = c.holder;
    t.lipschitz_offset = c.lipschitz_offset;
    t.t_min = c.t_min;
    t.t_max = c.t_max;
    return t;
  }
  CoefficientPtr m_;
};

class RemainderSampler final : public RowSampler {
 public:
  explicit RemainderSampler(std::unique_ptr<RowSampler> base) : base_(std::move(base)) {}
  void row(double t, std::size_t i, std::span<double> out) const override {
    base_->row(t, i, out);
    const double diag = out[0];
    for (double& v : out) v -= diag;
  }

 private:
  std::unique_ptr<RowSampler> base_;
};

std::unique_ptr<RowSampler> RemainderKernel::sampler(const TorusGrid& grid) const {
  return std::make_unique<RemainderSampler>(m_->sampler(grid));
}

// ---------------------------------------------------------------------------
// Synthetic families.

class SyntheticCoefficient final : public Coefficient {
 public:
  SyntheticCoefficient(double a, double period, CoefficientTraits traits)
      : Coefficient(traits), a_(a), k_(2.0 * std::numbers::pi / period) {}
  double evaluate(double t, double x, double y) const override {
    return 1.0 + a_ * std::cos(t) * (std::sin(k_ * x) + std::sin(k_ * y));
  }
  std::unique_ptr<RowSampler> sampler(const TorusGrid& grid) const override;

  double a() const noexcept { return a_; }
  double angular() const noexcept { return k_; }

 private:
  double a_;
  double k_;
};

class SyntheticSampler final : public RowSampler {
 public:
  SyntheticSampler(const SyntheticCoefficient& m, const TorusGrid& grid)
      : a_(m.a()), sines_(grid.size()) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
      sines_[i] = std::sin(m.angular() * grid.node(static_cast<std::ptrdiff_t>(i)));
    }
  }
  void row(double t, std::size_t i, std::span<double> out) const override {
    const std::size_t n = sines_.size();
    const double amp = a_ * std::cos(t);
    for (std::size_t j = 0; j < n; ++j) {
      out[j] = 1.0 + amp * (sines_[i] + sines_[(i + j) % n]);
    }
  }

 private:
  double a_;
  std::vector<double> sines_;
};

std::unique_ptr<RowSampler> SyntheticCoefficient::sampler(const TorusGrid& grid) const {
  if (std::abs(grid.period() * angular() - 2.0 * std::numbers::pi) > 1e-12) {
    return Coefficient::sampler(grid);
  }
  return std::make_unique<SyntheticSampler>(*this, grid);
}

class SyntheticOdd final : public OddKernel {
 public:
  SyntheticOdd(const SyntheticOddSpec& spec, OddKernelTraits traits)
      : OddKernel(traits), spec_(spec), k_(2.0 * std::numbers::pi / spec.period) {}

  double evaluate_reduced(double t, double x, double y) const override {
    return spec_.b * std::sin(k_ * x + t) * profile(y);
  }

  double profile(double y) const {
    if (spec_.profile == OddProfile::Smooth) return std::sin(k_ * y);
    const double r = std::abs(y);
    if (r == 0.0) return 0.0;
    return std::min(1.0, std::pow(r, spec_.alpha)) * (y > 0.0 ? 1.0 : -1.0);
  }

  std::unique_ptr<RowSampler> sampler(const TorusGrid& grid) const override;

  double angular() const noexcept { return k_; }
  double b() const noexcept { return spec_.b; }

 private:
  SyntheticOddSpec spec_;
  double k_;
};

class SyntheticOddSampler final : public RowSampler {
 public:
  SyntheticOddSampler(const SyntheticOdd& g, const TorusGrid& grid)
      : b_(g.b()), angles_(grid.size()), profile_(grid.size()) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
      angles_[i] = g.angular() * grid.node(static_cast<std::ptrdiff_t>(i));
      profile_[i] = g.profile(grid.offset(i));
    }
  }
  void row(double t, std::size_t i, std::span<double> out) const override {
    const double amp = b_ * std::sin(angles_[i] + t);
    for (std::size_t j = 0; j < profile_.size(); ++j) out[j] = amp * profile_[j];
  }

 private:
  double b_;
  std::vector<double> angles_;
  std::vector<double> profile_;
};

std::unique_ptr<RowSampler> SyntheticOdd::sampler(const TorusGrid& grid) const {
  if (std::abs(grid.period() * angular() - 2.0 * std::numbers::pi) > 1e-12) {
    return OddKernel::sampler(grid);
  }
  return std::make_unique<SyntheticOddSampler>(*this, grid);
}

}  // namespace

std::unique_ptr<RowSampler> Coefficient::sampler(const TorusGrid& grid) const {
  return std::make_unique<GenericCoefficientSampler>(*this, grid);
}

std::unique_ptr<RowSampler> OddKernel::sampler(const TorusGrid& grid) const {
  return std::make_unique<GenericOddSampler>(*this, grid);
}

CoefficientPtr constant_coefficient(double value) {
  CoefficientTraits t;
  t.lambda = value;
  t.Lambda = value;
  t.alpha = 1.0;
  t.holder = 0.0;
  t.symmetric = true;
  t.lipschitz_offset = true;
  return std::make_shared<FrozenCoefficient>([value](double, double) { return value; }, t);
}

CoefficientPtr frozen_coefficient(std::function<double(double, double)> k_diag,
                                  CoefficientTraits traits) {
  traits.lipschitz_offset = true;
  return std::make_shared<FrozenCoefficient>(std::move(k_diag), traits);
}

CoefficientPtr coefficient_from_state(const Trajectory& w_traj) {
  if (w_traj.empty()) throw ConfigError("coefficient_from_state: empty trajectory");
  double lo = INFINITY, hi = -INFINITY;
  for (const Field& w : w_traj.snapshots()) {
    w.require_positive("coefficient_from_state");
    lo = std::min(lo, w.min());
    hi = std::max(hi, w.max());
  }
  const double u_min = std::sqrt(lo);
  const double u_max = std::sqrt(hi);

  // |H(a,b) - H(a,b')| <= (1/2)(M/m)^2 |b - b'| for the harmonic mean H on
  // [m, M]; this bounds the (K3), (G1), (G2) constants by the data of u.
  // For alpha = 1 the l1-Lipschitz constant of the piecewise-linear
  // interpolant is the largest slope between adjacent nodes or snapshots.
  const double alpha = 1.0;
  const TorusGrid& g = w_traj.grid();
  double h_u = 0.0;
  for (std::size_t k = 0; k < w_traj.size(); ++k) {
    const Field& w = w_traj[k];
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double d = std::abs(std::sqrt(w[(i + 1) % g.size()]) - std::sqrt(w[i]));
      h_u = std::max(h_u, d / g.spacing());
      if (k + 1 < w_traj.size()) {
        const double dt = w_traj.times()[k + 1] - w_traj.times()[k];
        h_u = std::max(h_u, std::abs(std::sqrt(w_traj[k + 1][i]) - std::sqrt(w[i])) / dt);
      }
    }
  }
  const double ratio = u_max / u_min;

  CoefficientTraits t;
  t.lambda = 0.5 * kBurgersC * u_min;
  t.Lambda = 0.5 * kBurgersC * u_max;
  t.alpha = alpha;
  t.holder = 0.5 * kBurgersC * (ratio * ratio + 1.0) * std::max(h_u, u_max - u_min);
  t.symmetric = true;
  t.lipschitz_offset = true;
  t.t_min = w_traj.t_begin();
  t.t_max = w_traj.t_end();
  return std::make_shared<StateCoefficient>(w_traj, t);
}

CoefficientPtr coefficient_from_state(const Field& w) {
  Trajectory traj(w.grid());
  traj.append(w);
  return coefficient_from_state(traj);
}

KernelPair freeze_decompose(CoefficientPtr m) {
  KernelPair pair;
  pair.even = std::make_shared<DiagonalOf>(m);
  pair.odd = std::make_shared<RemainderKernel>(std::move(m));
  return pair;
}

CoefficientPtr synthetic_coefficient(const SyntheticCoefficientSpec& spec) {
  const double true_lo = 1.0 - 2.0 * std::abs(spec.a);
  const double true_hi = 1.0 + 2.0 * std::abs(spec.a);
  if (!(true_lo > 0.0)) {
    throw ConfigError("synthetic coefficient: amplitude a must satisfy |a| < 1/2");
  }
  if (!(spec.alpha > 0.0 && spec.alpha <= 1.0)) {
    throw ConfigError("synthetic coefficient: alpha must lie in (0, 1]");
  }
  CoefficientTraits t;
  t.lambda = spec.lambda.value_or(true_lo);
  t.Lambda = spec.Lambda.value_or(true_hi);
  if (!(t.lambda > 0.0)) throw ConfigError("synthetic coefficient: lambda must be positive");
  if (t.lambda > true_lo * (1.0 + 1e-12) || t.Lambda < true_hi * (1.0 - 1e-12)) {
    throw ConfigError("synthetic coefficient: declared [lambda, Lambda] does not contain the range of m");
  }
  t.alpha = spec.alpha;
  // |sin a - sin b| <= min(2, |a - b|) <= 2^{1-alpha} |a - b|^alpha, once in x
  // and once in t, each with amplitude 2a.
  t.holder = 2.0 * std::abs(spec.a) * std::pow(2.0, 1.0 - spec.alpha) *
             std::max(1.0, 2.0 * std::numbers::pi / spec.period);
  t.symmetric = true;
  t.lipschitz_offset = true;
  t.t_min = spec.t_min;
  t.t_max = spec.t_max;
  return std::make_shared<SyntheticCoefficient>(spec.a, spec.period, t);
}

OddKernelPtr synthetic_odd_kernel(const SyntheticOddSpec& spec) {
  if (!(spec.alpha > 0.0 && spec.alpha <= 1.0)) {
    throw ConfigError("synthetic odd kernel: alpha must lie in (0, 1]");
  }
  OddKernelTraits t;
  t.alpha = spec.alpha;
  const double slope = std::max(1.0, 2.0 * std::numbers::pi / spec.period);
  t.Lambda = std::abs(spec.b) * (spec.profile == OddProfile::Smooth ? slope : 1.0);
  t.holder = 2.0 * t.Lambda * slope;
  t.lipschitz_offset = spec.profile == OddProfile::Smooth;
  t.t_min = spec.t_min;
  t.t_max = spec.t_max;
  return std::make_shared<SyntheticOdd>(spec, t);
}

// ---------------------------------------------------------------------------
// Validation.

bool AssumptionReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const AssumptionCheck& c) { return c.pass; });
}

const AssumptionCheck& AssumptionReport::check(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return c;
  }
  throw ConfigError("unknown assumption " + name);
}

namespace {

struct KernelView {
  std::function<double(double, double, double)> even;  // reduced K
  std::function<double(double, double, double)> odd;   // reduced G, may be empty
  double lambda, Lambda, holder_K;
  double odd_Lambda, odd_holder;
  double alpha;
  double t_min, t_max;
};

// Values on a (t, x, y) lattice stored as [a][b][c].
struct Table {
  std::size_t nt, nx, ny;
  std::vector<double> v;
  double& at(std::size_t a, std::size_t b, std::size_t c) { return v[(a * nx + b) * ny + c]; }
  double at(std::size_t a, std::size_t b, std::size_t c) const { return v[(a * nx + b) * ny + c]; }
};

std::vector<double> offset_samples(std::size_t n_y, double period) {
  // Symmetric set excluding 0: a uniform lattice plus geometric offsets that
  // resolve the y -> 0 behaviour.
  std::vector<double> pos;
  const double half = 0.5 * period;
  for (std::size_t c = 0; c < n_y / 2; ++c) {
    pos.push_back(half * (static_cast<double>(c) + 0.5) / static_cast<double>(n_y / 2));
  }
  const std::size_t n_geo = std::max<std::size_t>(n_y / 8, 2);
  const double y_lo = 1e-3, y_hi = pos.front();
  for (std::size_t c = 0; c < n_geo; ++c) {
    pos.push_back(y_lo * std::pow(y_hi / y_lo, static_cast<double>(c) / static_cast<double>(n_geo)));
  }
  std::sort(pos.begin(), pos.end());
  std::vector<double> ys;
  for (auto it = pos.rbegin(); it != pos.rend(); ++it) ys.push_back(-*it);
  for (double p : pos) ys.push_back(p);
  return ys;
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

AssumptionReport run_validation(const KernelView& k, const SamplingSpec& s) {
  if (s.n_t < 32 || s.n_x < 32 || s.n_y < 32) {
    throw ConfigError("assumption sampling density must be >= 32 per axis");
  }
  const double alpha = s.alpha.value_or(k.alpha);
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ConfigError("sampling alpha must lie in (0, 1]");
  const double t_lo = s.t_min.value_or(k.t_min);
  const double t_hi = s.t_max.value_or(k.t_max);
  const double L = s.period;

  std::vector<double> ts(s.n_t), xs(s.n_x);
  for (std::size_t a = 0; a < s.n_t; ++a) {
    ts[a] = t_hi > t_lo ? t_lo + (t_hi - t_lo) * static_cast<double>(a) / static_cast<double>(s.n_t - 1)
                        : t_lo;
  }
  for (std::size_t b = 0; b < s.n_x; ++b) {
    xs[b] = L * static_cast<double>(b) / static_cast<double>(s.n_x);
  }
  const std::vector<double> ys = offset_samples(s.n_y, L);
  const std::size_t ny = ys.size();

  Table K{s.n_t, s.n_x, ny, std::vector<double>(s.n_t * s.n_x * ny)};
  Table G{s.n_t, s.n_x, ny, std::vector<double>(s.n_t * s.n_x * ny, 0.0)};
  for (std::size_t a = 0; a < s.n_t; ++a) {
    for (std::size_t b = 0; b < s.n_x; ++b) {
      for (std::size_t c = 0; c < ny; ++c) {
        const double kv = k.even(ts[a], xs[b], ys[c]);
        const double gv = k.odd ? k.odd(ts[a], xs[b], ys[c]) : 0.0;
        if (!std::isfinite(kv) || !std::isfinite(gv)) {
          throw KernelError("kernel evaluation is non-finite during validation");
        }
        K.at(a, b, c) = kv;
        G.at(a, b, c) = gv;
      }
    }
  }

  AssumptionReport rep;
  rep.alpha = alpha;
  const char* names[] = {"K1", "K2", "K3", "G1", "G2"};
  for (std::size_t c = 0; c < rep.checks.size(); ++c) rep.checks[c].name = names[c];
  auto& k1 = rep.checks[0];
  auto& k2 = rep.checks[1];
  auto& k3 = rep.checks[2];
  auto& g1 = rep.checks[3];
  auto& g2 = rep.checks[4];

  // K1: ys is symmetric, ys[c] = -ys[ny - 1 - c].
  double lam = INFINITY, Lam = -INFINITY;
  SampleTuple lam_at, Lam_at;
  double g1_best = 0.0;
  for (std::size_t a = 0; a < s.n_t; ++a) {
    for (std::size_t b = 0; b < s.n_x; ++b) {
      for (std::size_t c = 0; c < ny; ++c) {
        const double kv = K.at(a, b, c);
        const double asym = std::abs(kv - K.at(a, b, ny - 1 - c));
        if (asym > k1.estimate) {
          k1.estimate = asym;
          k1.witness = SampleTuple{ts[a], xs[b], ts[a], xs[b], ys[c]};
        }
        if (kv < lam) {
          lam = kv;
          lam_at = SampleTuple{ts[a], xs[b], ts[a], xs[b], ys[c]};
        }
        if (kv > Lam) {
          Lam = kv;
          Lam_at = SampleTuple{ts[a], xs[b], ts[a], xs[b], ys[c]};
        }
        const double cap = std::min(1.0, std::pow(std::abs(ys[c]), alpha));
        const double r = std::abs(G.at(a, b, c)) / cap;
        if (r > g1_best) {
          g1_best = r;
          g1.witness = SampleTuple{ts[a], xs[b], ts[a], xs[b], ys[c]};
        }
      }
    }
  }
  rep.estimated_lambda = lam;
  rep.estimated_Lambda = Lam;
  const double tol = s.rel_tol;
  k1.declared = 0.0;
  k1.pass = k1.estimate <= tol * std::max(1.0, std::abs(Lam));
  if (k1.pass) k1.witness.reset();
  k2.estimate = lam;
  k2.declared = k.lambda;
  k2.pass = lam > 0.0 && lam >= k.lambda * (1.0 - tol) && Lam <= k.Lambda * (1.0 + tol);
  if (!k2.pass) k2.witness = lam < k.lambda * (1.0 - tol) || !(lam > 0.0) ? lam_at : Lam_at;
  g1.estimate = g1_best;
  g1.declared = k.odd_Lambda;
  g1.pass = g1_best <= k.odd_Lambda * (1.0 + tol) + tol;
  if (g1.pass) g1.witness.reset();

  // Hoelder-type checks over pairs of (t, x) lattice points.
  std::vector<double> ypow(ny);
  for (std::size_t c = 0; c < ny; ++c) ypow[c] = std::pow(std::abs(ys[c]), alpha);
  double k3_best = 0.0, g2_best = 0.0;
  auto visit = [&](std::size_t a1, std::size_t b1, std::size_t a2, std::size_t b2) {
    const double dx = torus_abs(xs[b1] - xs[b2], L);
    const double dt = std::abs(ts[a1] - ts[a2]);
    const double d = std::pow(dx, alpha) + std::pow(dt, alpha);
    if (d == 0.0) return;
    for (std::size_t c = 0; c < ny; ++c) {
      const double rk = std::abs(K.at(a1, b1, c) - K.at(a2, b2, c)) / d;
      if (rk > k3_best) {
        k3_best = rk;
        k3.witness = SampleTuple{ts[a1], xs[b1], ts[a2], xs[b2], ys[c]};
      }
      const double rg = std::abs(G.at(a1, b1, c) - G.at(a2, b2, c)) / std::min(d, ypow[c]);
      if (rg > g2_best) {
        g2_best = rg;
        g2.witness = SampleTuple{ts[a1], xs[b1], ts[a2], xs[b2], ys[c]};
      }
    }
  };
  for (std::size_t a = 0; a < s.n_t; ++a) {
    for (std::size_t b1 = 0; b1 < s.n_x; ++b1) {
      for (std::size_t b2 = b1 + 1; b2 < s.n_x; ++b2) visit(a, b1, a, b2);
    }
  }
  for (std::size_t b = 0; b < s.n_x; ++b) {
    for (std::size_t a1 = 0; a1 < s.n_t; ++a1) {
      for (std::size_t a2 = a1 + 1; a2 < s.n_t; ++a2) visit(a1, b, a2, b);
    }
  }
  std::mt19937_64 rng(s.seed);
  for (std::size_t p = 0; p < s.mixed_pairs; ++p) {
    const auto pick = [&](std::size_t n) {
      return std::min(n - 1, static_cast<std::size_t>(uniform01(rng) * static_cast<double>(n)));
    };
    const std::size_t a1 = pick(s.n_t), b1 = pick(s.n_x), a2 = pick(s.n_t), b2 = pick(s.n_x);
    visit(a1, b1, a2, b2);
  }
  k3.estimate = k3_best;
  k3.declared = k.holder_K;
  k3.pass = k3_best <= k.holder_K * (1.0 + tol) + tol;
  if (k3.pass) k3.witness.reset();
  g2.estimate = g2_best;
  g2.declared = k.odd_holder;
  g2.pass = g2_best <= k.odd_holder * (1.0 + tol) + tol;
  if (g2.pass) g2.witness.reset();

  rep.tuples = s.n_t * s.n_x * ny;
  return rep;
}

}  // namespace

AssumptionReport validate_assumptions(const KernelPair& pair, const SamplingSpec& sampling) {
  const CoefficientTraits& ct = pair.even->traits();
  KernelView v;
  const CoefficientPtr even = pair.even;
  v.even = [even](double t, double x, double) { return even->evaluate(t, x, x); };
  if (pair.odd) {
    const OddKernelPtr odd = pair.odd;
    v.odd = [odd](double t, double x, double y) { return odd->evaluate_reduced(t, x, y); };
    v.odd_Lambda = odd->traits().Lambda;
    v.odd_holder = odd->traits().holder;
  } else {
    v.odd_Lambda = 0.0;
    v.odd_holder = 0.0;
  }
  v.lambda = ct.lambda;
  v.Lambda = ct.Lambda;
  v.holder_K = ct.holder;
  v.alpha = ct.alpha;
  v.t_min = ct.t_min;
  v.t_max = ct.t_max;
  return run_validation(v, sampling);
}

AssumptionReport validate_assumptions(const Coefficient& m, const SamplingSpec& sampling) {
  const CoefficientTraits& ct = m.traits();
  KernelView v;
  v.even = [&m](double t, double x, double y) { return m.evaluate(t, x, x + y); };
  v.lambda = ct.lambda;
  v.Lambda = ct.Lambda;
  v.holder_K = ct.holder;
  v.odd_Lambda = 0.0;
  v.odd_holder = 0.0;
  v.alpha = ct.alpha;
  v.t_min = ct.t_min;
  v.t_max = ct.t_max;
  return run_validation(v, sampling);
}

}  // namespace fracburgers
