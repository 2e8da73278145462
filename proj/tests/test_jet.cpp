#include <gtest/gtest.h>

#include <random>

#include "nevlab/jet.hpp"

using namespace nevlab;

namespace {

Real factorial(std::size_t k) {
  Real f = 1;
  for (std::size_t i = 2; i <= k; ++i) f *= Real(i);
  return f;
}

JetSeries random_jet(std::mt19937_64& rng, Complex base, std::size_t order) {
  std::normal_distribution<double> g;
  std::vector<Complex> c(order + 1);
  for (auto& x : c) x = {Real(g(rng)), Real(g(rng))};
  return {base, c};
}

}  // namespace

TEST(Jet, ExpOfVariableHasInverseFactorials) {
  const auto e = exp(JetSeries::variable(0, 12) - JetSeries::constant(0, 0, 12));
  for (std::size_t k = 0; k <= 12; ++k) EXPECT_NEAR(std::abs(e[k] - 1 / factorial(k)), 0, 1e-15);
}

TEST(Jet, ExpAtShiftedBaseCarriesTheValue) {
  const Complex z0{0.3, -1.1};
  const auto e = exp(JetSeries::variable(z0, 6));
  for (std::size_t k = 0; k <= 6; ++k) EXPECT_LT(std::abs(e.derivative_value(k) - std::exp(z0)), 1e-13);
}

TEST(Jet, ProductMatchesPolynomialMultiplication) {
  // (1 + 2t)(3 - t + t^2) = 3 + 5t - t^2 + 2t^3
  const JetSeries a(0, {1, 2, 0, 0});
  const JetSeries b(0, {3, -1, 1, 0});
  const auto p = a * b;
  const std::vector<Complex> want{3, 5, -1, 2};
  for (std::size_t k = 0; k < 4; ++k) EXPECT_EQ(p[k], want[k]);
}

TEST(Jet, BinaryOpsTruncateToShorterOperand) {
  const JetSeries a(0, {1, 1, 1, 1, 1});
  const JetSeries b(0, {1, 1});
  EXPECT_EQ((a * b).order(), 1u);
  EXPECT_EQ((a + b).order(), 1u);
}

TEST(Jet, DivisionCancelsCommonVanishingOrder) {
  // t^2 (1 + t) / t^2 = 1 + t, order drops by two.
  const JetSeries num(0, {0, 0, 1, 1, 0, 0});
  const JetSeries den(0, {0, 0, 1, 0, 0, 0});
  const auto q = num / den;
  EXPECT_EQ(q.order(), 3u);
  EXPECT_EQ(q[0], Complex(1));
  EXPECT_EQ(q[1], Complex(1));
  EXPECT_EQ(q[2], Complex(0));
}

TEST(Jet, DivisionByHigherOrderVanishingThrows) {
  const JetSeries num(0, {0, 1, 0});
  const JetSeries den(0, {0, 0, 1});
  try {
    (void)(num / den);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DivisionByZeroSeries);
  }
}

TEST(Jet, MismatchedBasePointsThrow) {
  try {
    (void)(JetSeries::variable(0, 3) + JetSeries::variable(1, 3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::MismatchedBasePoint);
  }
}

TEST(Jet, PowMatchesRepeatedProduct) {
  std::mt19937_64 rng(11);
  const auto a = random_jet(rng, {0.2, 0.1}, 8);
  const auto p = pow(a, 5);
  const auto q = a * a * a * a * a;
  for (std::size_t k = 0; k <= 8; ++k) EXPECT_LT(std::abs(p[k] - q[k]), 1e-10 * (1 + std::abs(q[k])));
}

TEST(Jet, DerivativeAndRescale) {
  const JetSeries a(0, {1, 2, 3, 4});
  const auto d = a.derivative();
  EXPECT_EQ(d.order(), 2u);
  EXPECT_EQ(d[0], Complex(2));
  EXPECT_EQ(d[1], Complex(6));
  EXPECT_EQ(d[2], Complex(12));
  const auto s = a.rescale(2);
  EXPECT_EQ(s[3], Complex(32));
  EXPECT_EQ(a.derivative_value(3), Complex(24));
}

TEST(Jet, ComposeWithExpMatchesDirectSeries) {
  // exp(t^2) at 0: 1 + t^2 + t^4 / 2.
  const auto inner = JetSeries(0, {0, 0, 1, 0, 0, 0});
  const auto outer = exp(JetSeries::variable(0, 5));
  const auto c = compose(outer, inner);
  EXPECT_NEAR(std::abs(c[0] - Complex(1)), 0, 1e-15);
  EXPECT_NEAR(std::abs(c[2] - Complex(1)), 0, 1e-15);
  EXPECT_NEAR(std::abs(c[4] - Complex(0.5)), 0, 1e-15);
  EXPECT_NEAR(std::abs(c[1]) + std::abs(c[3]) + std::abs(c[5]), 0, 1e-15);
}

TEST(Jet, VanishingOrder) {
  EXPECT_EQ(vanishing_order(JetSeries(0, {0, 0, 0, 2, 1})), std::optional<std::size_t>(3));
  EXPECT_EQ(vanishing_order(JetSeries(0, {1e-14, 0, 1, 0})), std::optional<std::size_t>(2));
  EXPECT_FALSE(vanishing_order(JetSeries::zero(0, 6)).has_value());
}

TEST(JetProperty, QuotientInvertsProduct) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = random_jet(rng, {0.5, 0.5}, 10);
    // Keep the zeros of b far from the base point so the quotient is well conditioned.
    auto b = random_jet(rng, {0.5, 0.5}, 10);
    b *= Complex(0.2);
    b = b + Complex(3);
    const auto back = (a * b) / b;
    for (std::size_t k = 0; k <= 10; ++k) EXPECT_LT(std::abs(back[k] - a[k]), 1e-8 * (1 + std::abs(a[k])));
  }
}

TEST(JetProperty, LeibnizRuleForDerivatives) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_jet(rng, 0, 7);
    const auto b = random_jet(rng, 0, 7);
    const auto lhs = (a * b).derivative();
    const auto rhs = a.derivative() * b.truncated(6) + a.truncated(6) * b.derivative();
    for (std::size_t k = 0; k <= 6; ++k) EXPECT_LT(std::abs(lhs[k] - rhs[k]), 1e-10 * (1 + std::abs(lhs[k])));
  }
}
