#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "fracburgers/errors.hpp"
#include "fracburgers/kernels.hpp"

namespace fb = fracburgers;
using std::numbers::pi;

namespace {

fb::Field bump_w(const fb::TorusGrid& g) {
  return fb::sample(g, [](double x) { return std::pow(1.5 + 0.5 * std::cos(x), 2); });
}

fb::SamplingSpec light() {
  fb::SamplingSpec s;
  s.n_t = 32;
  s.n_x = 32;
  s.n_y = 32;
  s.mixed_pairs = 512;
  return s;
}

}  // namespace

TEST(BurgersCoefficient, ConstantState) {
  const auto g = fb::make_grid(32);
  const auto m = fb::coefficient_from_state(fb::sample(g, [](double) { return 9.0; }));
  EXPECT_DOUBLE_EQ(m->evaluate(0.0, 0.3, 2.0), fb::kBurgersC * 3.0 / 2.0);
  EXPECT_DOUBLE_EQ(m->evaluate(0.0, 1.0, 1.0), fb::kBurgersC * 1.5);
}

TEST(BurgersCoefficient, HarmonicMeanBracketAndSymmetry) {
  const auto g = fb::make_grid(128);
  const auto m = fb::coefficient_from_state(bump_w(g));
  const double lo = fb::kBurgersC / 2 * 1.0, hi = fb::kBurgersC / 2 * 2.0;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> pos(0.0, 2 * pi);
  for (int k = 0; k < 10000; ++k) {
    const double x = pos(rng), y = pos(rng);
    const double v = m->evaluate(0.0, x, y);
    EXPECT_GE(v, lo * (1 - 1e-14));
    EXPECT_LE(v, hi * (1 + 1e-14));
    ASSERT_EQ(v, m->evaluate(0.0, y, x));
  }
  EXPECT_TRUE(m->traits().symmetric);
}

TEST(BurgersCoefficient, RejectsNonPositiveState) {
  const auto g = fb::make_grid(16);
  EXPECT_THROW(fb::coefficient_from_state(fb::sample(g, [](double x) { return std::cos(x); })),
               fb::DomainError);
}

TEST(FreezeDecompose, ConstantHasNoRemainder) {
  const auto pair = fb::freeze_decompose(fb::constant_coefficient(0.7));
  EXPECT_EQ(pair.K_diag(0.0, 1.0), 0.7);
  for (double y : {-2.0, -1e-3, 0.5, 3.0}) EXPECT_EQ(pair.odd->evaluate_reduced(0.0, 1.0, y), 0.0);
}

TEST(FreezeDecompose, BurgersDiagonalIsHalfState) {
  const auto g = fb::make_grid(128);
  const auto pair = fb::freeze_decompose(fb::coefficient_from_state(bump_w(g)));
  for (std::size_t i = 0; i < 128; i += 9) {
    const double x = g.node(static_cast<std::ptrdiff_t>(i));
    EXPECT_NEAR(pair.K_diag(0.0, x), fb::kBurgersC / 2 * (1.5 + 0.5 * std::cos(x)), 1e-14);
  }
}

TEST(FreezeDecompose, RemainderVanishesLinearlyAtDiagonal) {
  // Smooth m gives |G_reduced| ~ |y|: the log-log slope over [h, L/4] is near 1.
  const auto pair = fb::freeze_decompose(fb::synthetic_coefficient({.a = 0.3}));
  std::vector<double> lx, ly;
  for (double y = 0.05; y <= pi / 2; y *= 1.5) {
    lx.push_back(std::log(y));
    ly.push_back(std::log(std::abs(pair.odd->evaluate_reduced(0.0, 0.0, y))));
  }
  const double slope = (ly.back() - ly.front()) / (lx.back() - lx.front());
  EXPECT_NEAR(slope, 1.0, 0.15);
}

TEST(Synthetic, RangesAndValidation) {
  auto zero = fb::synthetic_coefficient({.a = 0.0});
  EXPECT_EQ(zero->evaluate(1.0, 0.4, 2.0), 1.0);
  auto m = fb::synthetic_coefficient({.a = 0.4});
  EXPECT_NEAR(m->traits().lambda, 0.2, 1e-15);
  EXPECT_NEAR(m->traits().Lambda, 1.8, 1e-15);
  EXPECT_NEAR(m->evaluate(0.0, pi / 2, pi / 2), 1.8, 1e-14);
  EXPECT_THROW(fb::synthetic_coefficient({.a = 0.6}), fb::ConfigError);
  EXPECT_THROW(fb::synthetic_coefficient({.a = 0.4, .lambda = 0.5}), fb::ConfigError);
  EXPECT_THROW(fb::synthetic_coefficient({.a = 0.1, .alpha = 1.5}), fb::ConfigError);
}

TEST(Synthetic, OddKernelG1EstimateNearOne) {
  const auto odd = fb::synthetic_odd_kernel({.b = 1.0, .alpha = 0.5});
  const fb::KernelPair pair{fb::constant_coefficient(1.0), odd};
  fb::SamplingSpec s = light();
  s.alpha = 0.5;
  const auto rep = fb::validate_assumptions(pair, s);
  EXPECT_TRUE(rep.all_pass());
  EXPECT_NEAR(rep.check("G1").estimate, 1.0, 0.1);
}

TEST(Validator, ConstantPairPassesWithZeroOddConstants) {
  const fb::KernelPair pair = fb::freeze_decompose(fb::constant_coefficient(1.0));
  const auto rep = fb::validate_assumptions(pair, light());
  EXPECT_TRUE(rep.all_pass());
  EXPECT_EQ(rep.check("G1").estimate, 0.0);
  EXPECT_EQ(rep.check("G2").estimate, 0.0);
  EXPECT_DOUBLE_EQ(rep.estimated_lambda, 1.0);
  EXPECT_DOUBLE_EQ(rep.estimated_Lambda, 1.0);
}

TEST(Validator, BurgersPairPassesWithinDeclaredBounds) {
  const auto g = fb::make_grid(64);
  const auto pair = fb::freeze_decompose(fb::coefficient_from_state(bump_w(g)));
  const auto rep = fb::validate_assumptions(pair, light());
  for (const auto& c : rep.checks) EXPECT_TRUE(c.pass) << c.name;
  const auto& tr = pair.even->traits();
  EXPECT_GE(rep.estimated_lambda, tr.lambda);
  EXPECT_LE(rep.estimated_Lambda, tr.Lambda);
}

TEST(Validator, AsymmetricKernelFailsK1WithWitness) {
  // m = 1 + sign(y - x)/2 on the torus.
  const fb::FunctionCoefficient bad(
      [](double, double x, double y) {
        const double d = std::remainder(y - x, 2 * pi);
        return 1.0 + (d > 0 ? 0.5 : d < 0 ? -0.5 : 0.0);
      },
      {.lambda = 0.5, .Lambda = 1.5, .alpha = 1.0, .holder = 1.0, .t_max = 1.0});
  const auto rep = fb::validate_assumptions(bad, light());
  const auto& k1 = rep.check("K1");
  EXPECT_FALSE(k1.pass);
  ASSERT_TRUE(k1.witness.has_value());
  // The witness really is asymmetric.
  const auto w = *k1.witness;
  const double a = bad.evaluate(w.t1, w.x1, w.x1 + w.y);
  const double b = bad.evaluate(w.t1, w.x1, w.x1 - w.y);
  EXPECT_GT(std::abs(a - b), 0.5);
  EXPECT_FALSE(rep.all_pass());
}

TEST(Validator, DetectsUnderdeclaredBounds) {
  const fb::FunctionCoefficient m([](double, double, double) { return 2.0; },
                                  {.lambda = 0.5, .Lambda = 1.5, .alpha = 1.0, .holder = 1.0});
  const auto rep = fb::validate_assumptions(m, light());
  EXPECT_FALSE(rep.check("K2").pass);
  EXPECT_TRUE(rep.check("K1").pass);
}
