#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <random>

#include "nevlab/jetdiff.hpp"

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

GGJetDifferential second_order_p1() {
  // (w1')^2 + w1 w1''
  GGJetDifferential P;
  P.k = 2;
  P.m = 2;
  P.n = 1;
  P.terms.push_back({parse_monomials("1", 'w', 1, 1), {{2}, {0}}, {}});
  P.terms.push_back({parse_monomials("w1", 'w', 1, 1), {{0}, {1}}, {}});
  return P;
}

}  // namespace

TEST(Wronskian, ClosedForms) {
  const Complex z{0.3, -0.7};
  EXPECT_LT(std::abs(wronskian_eval(curve({"1", "z", "z^2"}), z, 2) - Complex(2)), 1e-13);
  EXPECT_LT(std::abs(wronskian_eval(curve({"1", "exp(z)"}), z, 1) - std::exp(z)), 1e-13);
  // W(e^z, e^{2z}) = e^{3z}
  EXPECT_LT(std::abs(wronskian_eval(curve({"exp(z)", "exp(2*z)"}), z, 1) - std::exp(Real(3) * z)), 1e-12);
}

TEST(Wronskian, SeriesAgreesWithPointValues) {
  const auto f = curve({"1", "exp(z)", "z^3 + 1"});
  const Complex z0{0.2, 0.1};
  const auto W = wronskian_series(f, z0, 2, 10);
  for (Real t : {Real(0.01), Real(0.05)}) {
    Complex s{};
    for (std::size_t k = W.order() + 1; k-- > 0;) s = s * t + W[k];
    const Complex direct = wronskian_eval(f, z0 + t, 2);
    EXPECT_LT(std::abs(s - direct), 1e-10 * std::abs(direct));
  }
}

TEST(Wronskian, VanishesAtContactPoint) {
  // (1, z^3): W = 3z^2 vanishes to order 2 at 0.
  const auto W = wronskian_series(curve({"1", "z^3"}), 0, 1, 8);
  EXPECT_EQ(vanishing_order(W), std::optional<std::size_t>(2));
}

TEST(WronskianProperty, HomogeneityUnderReparametrisation) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-1, 1);
  const auto f = curve({"1", "exp(z)", "z^2 - z"});
  for (int trial = 0; trial < 20; ++trial) {
    const Complex lambda{Real(0.5 + 0.5 * u(rng)), Real(u(rng))};
    const Complex z0{Real(u(rng)), Real(u(rng))};
    const auto scaled = curve_jet_at(f, z0, 2);
    std::vector<JetSeries> r;
    for (const auto& j : scaled) r.push_back(j.rescale(lambda));
    const Complex lhs = wronskian_from_jets(r, 2);
    const Complex rhs = std::pow(lambda, 3) * wronskian_eval(f, z0, 2);
    EXPECT_LT(std::abs(lhs - rhs), 1e-10 * std::abs(rhs));
  }
}

TEST(WronskianProperty, LinearChange) {
  std::mt19937_64 rng(23);
  std::normal_distribution<double> g;
  const std::vector<std::string> base{"1", "exp(z)", "z^2"};
  for (int trial = 0; trial < 10; ++trial) {
    Eigen::Matrix<Complex, 3, 3> A;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) A(i, j) = {g(rng), g(rng)};
    std::vector<CurveExpr> coords;
    for (int i = 0; i < 3; ++i) {
      CurveExpr row = CurveExpr::constant(0);
      for (int j = 0; j < 3; ++j) row = row + CurveExpr::constant(A(i, j)) * parse_curve_expr(base[j]);
      coords.push_back(row);
    }
    const Complex z0{0.4, 0.2};
    const Complex lhs = wronskian_eval(HoloCurve(coords), z0, 2);
    const Complex rhs = A.determinant() * wronskian_eval(curve({"1", "exp(z)", "z^2"}), z0, 2);
    EXPECT_LT(std::abs(lhs - rhs), 1e-10 * std::abs(rhs));
  }
}

TEST(JetDiff, LogWronskianValuesAndPole) {
  const auto P = log_wronskian_p1();
  // d log(e^z) = 1, d log(z - 2) = 1 / (z - 2).
  EXPECT_LT(std::abs(jetdiff_eval(P, curve({"1", "exp(z)"}), Complex(0.5, 2)) - Complex(1)), 1e-13);
  const Complex z{0.5, 0.5};
  EXPECT_LT(std::abs(jetdiff_eval(P, curve({"1", "z - 2"}), z) - Real(1) / (z - Real(2))), 1e-13);
  EXPECT_EQ(jetdiff_order_at(P, curve({"1", "z - 2"}), 2), std::optional<long>(-1));
  EXPECT_EQ(jetdiff_order_at(P, curve({"1", "(z - 2)^3"}), 2), std::optional<long>(-1));
}

TEST(JetDiff, SecondOrderPolynomialDifferential) {
  const auto P = second_order_p1();
  P.validate();
  // w = z^2: (2z)^2 + z^2 * 2 = 6 z^2.
  const auto f = curve({"1", "z^2"});
  const Complex z{0.5, -0.25};
  EXPECT_LT(std::abs(jetdiff_eval(P, f, z) - Real(6) * z * z), 1e-13);
  EXPECT_EQ(jetdiff_order_at(P, curve({"1", "(z - 1)^2"}), 1), std::optional<long>(2));
}

TEST(JetDiff, IdenticallyZeroIsSaturated) {
  // (w1')^2 - w1'' w1 ... on w = e^z gives e^{2z} - e^{2z} = 0.
  GGJetDifferential P = second_order_p1();
  P.terms[1].coeff = parse_monomials("-w1", 'w', 1, 1);
  EXPECT_FALSE(jetdiff_order_at(P, curve({"1", "exp(z)"}), 0.3).has_value());
}

TEST(JetDiff, ValidationErrors) {
  auto P = second_order_p1();
  P.terms[0].alpha = {{1}, {0}};
  EXPECT_EQ(kind_of([&] { P.validate(); }), ErrorKind::WeightedDegreeViolation);
  auto Q = log_wronskian_p1();
  Q.log_components.clear();
  EXPECT_EQ(kind_of([&] { Q.validate(); }), ErrorKind::ParameterViolation);
}

TEST(JetDiff, PoleOfChartCoordinate) {
  EXPECT_EQ(kind_of([] { jetdiff_eval(log_wronskian_p1(), curve({"z - 1", "1"}), 1); }),
            ErrorKind::PoleAtEvaluationPoint);
}

TEST(JetDiff, MetricNormUsesFubiniStudyWeight) {
  const auto P = log_wronskian_p1();
  const auto f = curve({"1", "z"});
  // |1/z| * |f_0| / |f| at z = 2: 0.5 / sqrt(5).
  EXPECT_NEAR(double(metric_norm_eval(P, f, 2)), 0.5 / std::sqrt(5.0), 1e-14);
}

TEST(Truncation, MatchesFormulaForConstructedContact) {
  for (std::size_t nu = 1; nu <= 8; ++nu) {
    // w = (z - 0.5)^nu (z + 3)
    CurveExpr w = parse_curve_expr("z + 3") * parse_curve_expr("z - 0.5").pow(static_cast<unsigned>(nu));
    HoloCurve f({CurveExpr::constant(1), w});
    for (std::size_t k = 1; k <= 4; ++k) {
      EXPECT_EQ(truncation_order(f, Hypersurface::parse(1, "x1"), 0.5, k), nu - std::min(k, nu));
    }
  }
}

TEST(Truncation, NotOnDivisor) {
  EXPECT_EQ(kind_of([] { truncation_order(curve({"1", "z"}), Hypersurface::parse(1, "x1"), 1, 2); }),
            ErrorKind::NotOnDivisor);
}
