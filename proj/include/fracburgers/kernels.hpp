#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <numbers>
#include <optional>
#include <span>
#include <string>

#include "fracburgers/grid.hpp"

namespace fracburgers {

// Normalization of the 1-D half-Laplacian as a principal-value integral:
// (-Delta)^{1/2} f(x) = kC1 * p.v. int (f(x) - f(y)) / |x - y|^2 dy.
inline constexpr double kC1 = 1.0 / std::numbers::pi;
// Dimensional constant of the Burgers coefficient for w = u^2; 2*kC1 makes the
// w-equation equivalent to the integral form of the u-equation.
inline constexpr double kBurgersC = 2.0 * kC1;

// Declared structural data of a coefficient m(t, x, y).
struct CoefficientTraits {
  double lambda = 1.0;
  double Lambda = 1.0;
  double alpha = 1.0;
  // Constant in the Hoelder-type inequalities (K3); the bounds use lambda/Lambda.
  double holder = 1.0;
  bool symmetric = false;
  // m(t, x, x + y) has one-sided y-derivatives at y = 0. Enables the full
  // near-field quadrature term.
  bool lipschitz_offset = true;
  double t_min = 0.0;
  double t_max = 0.0;
};

struct OddKernelTraits {
  double alpha = 1.0;
  double Lambda = 0.0;  // (G1) constant
  double holder = 0.0;  // (G2) constant
  bool lipschitz_offset = true;
  double t_min = 0.0;
  double t_max = 0.0;
};

// Grid-bound evaluator of one row of a kernel: out[j] is the value at
// (t, x_i, offset(j)) for j = 0..N-1. Immutable once built, so rows may be
// requested concurrently.
class RowSampler {
 public:
  virtual ~RowSampler() = default;
  virtual void row(double t, std::size_t i, std::span<double> out) const = 0;
};

// m(t, x, y); the kernel of the linear equation is m(t, x, y) / |x - y|^2.
class Coefficient {
 public:
  explicit Coefficient(CoefficientTraits traits) : traits_(traits) {}
  virtual ~Coefficient() = default;

  virtual double evaluate(double t, double x, double y) const = 0;
  // Row j holds m(t, x_i, x_i + offset(j)).
  virtual std::unique_ptr<RowSampler> sampler(const TorusGrid& grid) const;

  const CoefficientTraits& traits() const noexcept { return traits_; }

 private:
  CoefficientTraits traits_;
};

// G(t, x, y) carried in reduced form G * |y|^2, which stays bounded as y -> 0.
class OddKernel {
 public:
  explicit OddKernel(OddKernelTraits traits) : traits_(traits) {}
  virtual ~OddKernel() = default;

  virtual double evaluate_reduced(double t, double x, double y_offset) const = 0;
  virtual std::unique_ptr<RowSampler> sampler(const TorusGrid& grid) const;

  const OddKernelTraits& traits() const noexcept { return traits_; }

 private:
  OddKernelTraits traits_;
};

using CoefficientPtr = std::shared_ptr<const Coefficient>;
using OddKernelPtr = std::shared_ptr<const OddKernel>;

class FunctionCoefficient final : public Coefficient {
 public:
  using Fn = std::function<double(double, double, double)>;
  FunctionCoefficient(Fn fn, CoefficientTraits traits)
      : Coefficient(traits), fn_(std::move(fn)) {}
  double evaluate(double t, double x, double y) const override {
    return fn_(t, x, y);
  }

 private:
  Fn fn_;
};

class FunctionOddKernel final : public OddKernel {
 public:
  using Fn = std::function<double(double, double, double)>;
  FunctionOddKernel(Fn fn, OddKernelTraits traits)
      : OddKernel(traits), fn_(std::move(fn)) {}
  double evaluate_reduced(double t, double x, double y) const override {
    return fn_(t, x, y);
  }

 private:
  Fn fn_;
};

CoefficientPtr constant_coefficient(double value);

// Frozen decomposition m(t,x,x+y) = K_diag(t,x) + G_reduced(t,x,y).
struct KernelPair {
  // Even part: coefficient independent of y, equal to m(t, x, x).
  CoefficientPtr even;
  // Remainder m(t, x, x + y) - m(t, x, x) in reduced form.
  OddKernelPtr odd;

  double K_diag(double t, double x) const { return even->evaluate(t, x, x); }
};

// m = C sqrt(w(x) w(y)) / (sqrt(w(x)) + sqrt(w(y))), interpolated linearly in
// t between snapshots and in x between nodes (on sqrt(w)).
CoefficientPtr coefficient_from_state(const Trajectory& w_traj);
// Single-snapshot convenience.
CoefficientPtr coefficient_from_state(const Field& w);

KernelPair freeze_decompose(CoefficientPtr m);

// m(t,x,y) = 1 + a cos t (sin(2 pi x / L) + sin(2 pi y / L)), symmetric in x,y.
struct SyntheticCoefficientSpec {
  double a = 0.0;
  double alpha = 1.0;
  double period = 2.0 * std::numbers::pi;
  std::optional<double> lambda;  // declared; defaults to 1 - 2a
  std::optional<double> Lambda;  // declared; defaults to 1 + 2a
  double t_min = 0.0;
  double t_max = 6.0;
};

enum class OddProfile {
  Holder,  // min(1, |y|^alpha) sign(y)
  Smooth,  // sin(2 pi y / L)
};

// G_reduced(t,x,y) = b sin(2 pi x / L + t) * profile(y).
struct SyntheticOddSpec {
  double b = 0.0;
  double alpha = 0.5;
  OddProfile profile = OddProfile::Holder;
  double period = 2.0 * std::numbers::pi;
  double t_min = 0.0;
  double t_max = 6.0;
};

CoefficientPtr synthetic_coefficient(const SyntheticCoefficientSpec& spec);
OddKernelPtr synthetic_odd_kernel(const SyntheticOddSpec& spec);

// Wraps y-independent K_diag(t, x) as an even coefficient.
CoefficientPtr frozen_coefficient(std::function<double(double, double)> k_diag,
                                  CoefficientTraits traits);

// ---------------------------------------------------------------------------
// Assumption validation by dense sampling.

struct SampleTuple {
  double t1 = 0.0, x1 = 0.0, t2 = 0.0, x2 = 0.0, y = 0.0;
};

struct AssumptionCheck {
  std::string name;
  bool pass = true;
  // Tightest constant making every sampled inequality hold (K1: worst
  // asymmetry; K2: reported via estimated_lambda/Lambda).
  double estimate = 0.0;
  double declared = 0.0;
  std::optional<SampleTuple> witness;
};

struct AssumptionReport {
  std::array<AssumptionCheck, 5> checks;  // K1, K2, K3, G1, G2
  double estimated_lambda = 0.0;
  double estimated_Lambda = 0.0;
  double alpha = 0.0;
  std::size_t tuples = 0;

  bool all_pass() const;
  const AssumptionCheck& check(const std::string& name) const;
};

struct SamplingSpec {
  std::size_t n_t = 64;
  std::size_t n_x = 64;
  std::size_t n_y = 64;
  std::size_t mixed_pairs = 4096;
  std::optional<double> alpha;
  std::optional<double> t_min;
  std::optional<double> t_max;
  double period = 2.0 * std::numbers::pi;
  double rel_tol = 1e-9;
  std::uint64_t seed = 1;
};

AssumptionReport validate_assumptions(const KernelPair& pair,
                                      const SamplingSpec& sampling = {});
// Treats m(t, x, x + y) / |y|^2 as the kernel K with G = 0.
AssumptionReport validate_assumptions(const Coefficient& m,
                                      const SamplingSpec& sampling = {});

}  // namespace fracburgers
