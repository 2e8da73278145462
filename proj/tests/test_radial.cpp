#include <gtest/gtest.h>

#include <random>

#include "nevlab/radial.hpp"

using namespace nevlab;

namespace {

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::PreconditionViolation;
}

HoloCurve curve(std::initializer_list<const char*> coords) {
  std::vector<CurveExpr> c;
  for (auto s : coords) c.push_back(parse_curve_expr(s));
  return HoloCurve(std::move(c));
}

// Composite Simpson rule on [0, 2pi], normalised; independent of the
// library quadrature.
double simpson_mean(const std::function<double(double)>& g, int intervals = 20000) {
  const double h = 2 * M_PI / intervals;
  double s = g(0) + g(2 * M_PI);
  for (int i = 1; i < intervals; ++i) s += (i % 2 ? 4 : 2) * g(i * h);
  return s * h / 3 / (2 * M_PI);
}

}  // namespace

TEST(CircleIntegral, TrigonometricAndJensen) {
  EXPECT_NEAR(double(circle_integral([](Real t) { return std::cos(t) * std::cos(t); })), 0.5, 1e-13);
  const auto jensen = [](Real a) {
    return circle_integral([a](Real t) { return std::log(std::abs(Real(1) - a * std::polar(Real(1), t))); });
  };
  EXPECT_NEAR(double(jensen(0.5)), 0.0, 1e-10);
  EXPECT_NEAR(double(jensen(2.0)), std::log(2.0), 1e-10);
}

TEST(Characteristic, LineClosedForm) {
  const auto g = linear_grid(1, 10, 16);
  const auto T = characteristic_T(curve({"1", "z"}), 1, g);
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_NEAR(double(T.values[i]), 0.5 * std::log(1 + g[i] * g[i]), 1e-9);
}

TEST(Characteristic, ExponentialAgainstSimpson) {
  const auto g = std::vector<Real>{2, 5, 9};
  const auto T = characteristic_T(curve({"1", "exp(z)"}), 2, g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double r = double(g[i]);
    const double want = 2 * (simpson_mean([r](double t) { return 0.5 * std::log1p(std::exp(2 * r * std::cos(t))); }) -
                             0.5 * std::log(2.0));
    EXPECT_NEAR(double(T.values[i]), want, 1e-8);
  }
}

TEST(Characteristic, TwistScalesLinearly) {
  const auto f = curve({"1", "z^2 - 3"});
  const std::vector<Real> g{1.5, 4};
  const auto T1 = characteristic_T(f, 1, g);
  const auto T3 = characteristic_T(f, 3, g);
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_NEAR(double(T3.values[i]), 3 * double(T1.values[i]), 1e-12);
}

TEST(ZeroSet, ExpPlusOne) {
  const auto zs = zero_set_of(parse_curve_expr("exp(z) + 1"), 20);
  ASSERT_EQ(zs.records.size(), 6u);
  for (const auto& z : zs.records) {
    EXPECT_EQ(z.order, 1u);
    EXPECT_NEAR(double(z.location.real()), 0.0, 1e-10);
    const double k = (z.location.imag() / M_PI - 1) / 2;
    EXPECT_NEAR(k, std::round(k), 1e-10);
  }
}

TEST(ZeroSet, MultipleZerosAndOrigin) {
  const auto zs = zero_set_of(parse_curve_expr("(exp(z) - 1)^2"), 10);
  EXPECT_EQ(zs.origin_order, 2u);
  ASSERT_EQ(zs.records.size(), 2u);
  for (const auto& z : zs.records) {
    EXPECT_EQ(z.order, 2u);
    EXPECT_NEAR(std::abs(double(z.location.imag())), 2 * M_PI, 1e-7);
  }
}

TEST(ZeroSet, HighOrderTranscendentalZero) {
  // exp(z) - 1 - z - z^2/2 vanishes to order 3 at the origin.
  const auto zs = zero_set_of(parse_curve_expr("exp(z) - 1 - z - 0.5*z^2"), 3);
  EXPECT_EQ(zs.origin_order, 3u);
}

TEST(ZeroSet, CompletenessAgainstWinding) {
  const auto psi = parse_curve_expr("exp(z^2) - 2 + z");
  const auto zs = zero_set_of(psi, 4.3);
  EXPECT_EQ(long(zs.total_order()), winding_number(psi, 4.3));
}

TEST(ZeroSet, WindingNumber) {
  EXPECT_EQ(winding_number(parse_curve_expr("exp(z) + 1"), 10), 4);
  EXPECT_EQ(winding_number(parse_curve_expr("z^5 - 1"), 2), 5);
  EXPECT_EQ(kind_of([] { winding_number(parse_curve_expr("z - 2"), 2); }), ErrorKind::BoundaryZero);
}

TEST(ZeroSet, BoundaryZero) {
  EXPECT_EQ(kind_of([] { zero_set_of(parse_curve_expr("z - 2"), 2); }), ErrorKind::BoundaryZero);
  EXPECT_EQ(kind_of([] { zero_set_of(parse_curve_expr("exp(z) + 1"), double(M_PI)); }), ErrorKind::BoundaryZero);
}

TEST(Counting, ExplicitSum) {
  ZeroSet zs;
  zs.r_max = 10;
  zs.origin_order = 2;
  zs.records = {{Complex(0.5, 0), 3}, {Complex(0, 4), 1}};
  const auto N = counting_N(zs, {1, 5});
  EXPECT_NEAR(double(N.values[0]), 3 * std::log(2.0), 1e-14);
  EXPECT_NEAR(double(N.values[1]), 2 * std::log(5.0) + 3 * std::log(10.0) + std::log(1.25), 1e-14);
  const auto N1 = counting_N(zs, {5}, 1);
  EXPECT_NEAR(double(N1.values[0]), std::log(5.0) + std::log(10.0) + std::log(1.25), 1e-14);
}

TEST(Counting, Errors) {
  ZeroSet zs;
  zs.r_max = 5;
  EXPECT_EQ(kind_of([&] { counting_N(zs, {6}); }), ErrorKind::GridExceedsScan);
  EXPECT_EQ(kind_of([&] { counting_N(zs, {0.5}); }), ErrorKind::InvalidGrid);
  EXPECT_EQ(kind_of([&] { counting_N(zs, {3, 2}); }), ErrorKind::InvalidGrid);
}

TEST(Profile, InterpolationAndRange) {
  RadialProfile p{{1, 2, 4}, {0, 10, 30}, "x"};
  EXPECT_NEAR(double(p.at(3)), 20, 1e-14);
  EXPECT_EQ(kind_of([&] { p.at(5); }), ErrorKind::RadiusOutsideProfile);
}

TEST(Fmt, ResidualVanishesOnCorpus) {
  const auto g = linear_grid(2, 20, 19);
  struct Case {
    HoloCurve f;
    Hypersurface Q;
  };
  std::vector<Case> cases{{curve({"1", "z"}), Hypersurface::parse(1, "x1")},
                          {curve({"1", "z^2 - 1"}), Hypersurface::parse(1, "x1")},
                          {curve({"1", "exp(z)"}), Hypersurface::parse(1, "x0 + x1")},
                          {curve({"1", "z", "exp(z)"}), Hypersurface::parse(2, "x0*x2 - x1^2 + x0^2")}};
  for (const auto& c : cases) {
    const auto res = fmt_residual(c.f, c.Q, g);
    EXPECT_EQ(res.residual.values.front(), 0);
    for (Real v : res.residual.values) EXPECT_LT(std::abs(double(v)), 1e-6);
  }
}

TEST(FmtProperty, JensenForRandomPolynomials) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Complex> c(6);
    for (auto& x : c) x = {g(rng), g(rng)};
    const auto P = CurveExpr::polynomial(c);
    const Real r = 3.37;
    const auto zs = zero_set_of(P, r);
    const Real N = counting_N(zs, {r}).values[0];
    const Real mean = circle_integral([&](Real t) { return std::log(std::abs(P.eval(std::polar(r, t)))); });
    EXPECT_NEAR(double(N), double(mean - std::log(std::abs(c[0]))), 1e-8);
  }
}

TEST(LogLemma, ParameterChecks) {
  const auto phi = parse_curve_expr("exp(z)");
  EXPECT_EQ(kind_of([&] { logderiv_bound_check(phi, 2, 0.3, 0.5, 1, 2); }), ErrorKind::ParameterViolation);
  EXPECT_EQ(kind_of([&] { logderiv_bound_check(phi, 1, 0.3, 0.5, 2, 1); }), ErrorKind::ParameterViolation);
  const auto c = logderiv_bound_check(phi, 1, 0.2, 0.5, 3, 4);
  EXPECT_NEAR(double(c.lhs), 1.0, 1e-12);  // |phi' / phi| = 1
  EXPECT_GT(c.rhs_core, 0);
}

TEST(LogLemma, MainLemmaOnLogWronskian) {
  const auto c = main_lemma_check(log_wronskian_p1(), curve({"1", "z^2 - 1"}), 0.2, 0.5, 3, 4);
  EXPECT_TRUE(std::isfinite(c.ratio));
  EXPECT_GT(c.ratio, 0);
  EXPECT_EQ(kind_of([&] { main_lemma_check(log_wronskian_p1(), curve({"1", "z"}), 0.6, 0.5, 3, 4); }),
            ErrorKind::ParameterViolation);
}
