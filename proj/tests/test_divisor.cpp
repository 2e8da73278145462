#include <gtest/gtest.h>

#include "nevlab/divisor.hpp"

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

}  // namespace

TEST(Hypersurface, ParsesAndEvaluates) {
  const auto Q = Hypersurface::parse(2, "x0^2 - 3*x1*x2 + (1+2i)*x2^2");
  EXPECT_EQ(Q.degree(), 2u);
  EXPECT_EQ(Q.terms().size(), 3u);
  const std::vector<Complex> x{1, Complex(0, 1), 2};
  const Complex want = Real(1) - Real(3) * x[1] * x[2] + Complex(1, 2) * Real(4);
  EXPECT_LT(std::abs(Q.eval(x) - want), 1e-14);
  EXPECT_NEAR(double(Q.coeff_norm()), 3.0, 1e-15);
}

TEST(Hypersurface, MergesLikeTerms) {
  const auto Q = Hypersurface::parse(1, "x0*x1 + 2*x1*x0 - x0^2");
  EXPECT_EQ(Q.terms().size(), 2u);
}

TEST(Hypersurface, Errors) {
  EXPECT_EQ(kind_of([] { Hypersurface::parse(1, "x0 + x1^2"); }), ErrorKind::ParameterViolation);
  EXPECT_EQ(kind_of([] { Hypersurface::parse(1, "x0 + x3"); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { Hypersurface::parse(1, "x0 - x0"); }), ErrorKind::IdenticallyZero);
  EXPECT_EQ(kind_of([] { Hypersurface::parse(1, "x0 $ x1"); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { Hypersurface::parse(1, "x0^2").linear_coeffs(); }), ErrorKind::NotHyperplanes);
}

TEST(Hypersurface, HyperplaneRoundTrip) {
  const std::vector<Complex> a{1, -2, Complex(0, 3)};
  const auto H = Hypersurface::hyperplane(a);
  const auto back = H.linear_coeffs();
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(back[i], a[i]);
}

TEST(GeneralPosition, DetectsDependentTriples) {
  Arrangement good{Hypersurface::parse(2, "x0"), Hypersurface::parse(2, "x1"), Hypersurface::parse(2, "x2"),
                   Hypersurface::parse(2, "x0 + x1 + x2")};
  EXPECT_TRUE(general_position(good));
  auto bad = good;
  bad.push_back(Hypersurface::parse(2, "x0 + x1"));  // dependent on x0, x1
  EXPECT_FALSE(general_position(bad));
}

TEST(GeneralPosition, FewerThanNPlusOne) {
  EXPECT_TRUE(general_position({Hypersurface::parse(3, "x0 + x1"), Hypersurface::parse(3, "x2")}));
  EXPECT_FALSE(general_position({Hypersurface::parse(3, "x0 + x1"), Hypersurface::parse(3, "2*x0 + 2*x1")}));
}

TEST(Pullback, ComposesWithCurve) {
  HoloCurve f({parse_curve_expr("1"), parse_curve_expr("z"), parse_curve_expr("exp(z)")});
  const auto Q = Hypersurface::parse(2, "x0*x2 - x1^2");
  const auto psi = pullback(f, Q);
  const Complex z{0.4, 1.3};
  EXPECT_LT(std::abs(psi.eval(z) - (std::exp(z) - z * z)), 1e-13);
}

TEST(Pullback, Errors) {
  HoloCurve f({parse_curve_expr("1"), parse_curve_expr("z")});
  EXPECT_EQ(kind_of([&] { pullback(f, Hypersurface::parse(2, "x0")); }), ErrorKind::DimensionMismatch);
  HoloCurve g({parse_curve_expr("1"), parse_curve_expr("z"), parse_curve_expr("z^2")});
  EXPECT_EQ(kind_of([&] { pullback(g, Hypersurface::parse(2, "x0*x2 - x1^2")); }), ErrorKind::IdenticallyZero);
}

TEST(Gamma, RatioOfDegrees) {
  const auto g = gamma(LineBundleO{3}, LineBundleO{-1});
  ASSERT_TRUE(g);
  EXPECT_EQ(*g, mpq_class(1, 3));
  EXPECT_EQ(*gamma(LineBundleO{4}, LineBundleO{2}), mpq_class(-1, 2));
  EXPECT_FALSE(gamma(LineBundleO{0}, LineBundleO{1}).has_value());
}
