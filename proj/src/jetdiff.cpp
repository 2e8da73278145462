#include "nevlab/jetdiff.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

namespace nevlab {
namespace {

bool has_flag(const JetDiffTerm& t, std::size_t i) {
  return std::find(t.log_flags.begin(), t.log_flags.end(), i) != t.log_flags.end();
}

std::size_t column_degree(const JetDiffTerm& t, std::size_t i) {
  std::size_t s = 0;
  for (const auto& row : t.alpha) s += row[i - 1];
  return s;
}

Complex eval_coeff(const std::vector<Monomial>& coeff, std::span<const Complex> w) {
  Complex s{};
  for (const auto& mono : coeff) {
    Complex v = mono.coeff;
    for (std::size_t i = 0; i < mono.exponents.size(); ++i)
      for (unsigned e = 0; e < mono.exponents[i]; ++e) v *= w[i];
    s += v;
  }
  return s;
}

JetSeries series_coeff(const std::vector<Monomial>& coeff, std::span<const JetSeries> w, std::size_t order) {
  const Complex z0 = w.front().base_point();
  JetSeries s = JetSeries::zero(z0, order);
  for (const auto& mono : coeff) {
    JetSeries v = JetSeries::constant(z0, mono.coeff, order);
    for (std::size_t i = 0; i < mono.exponents.size(); ++i)
      if (mono.exponents[i] > 0) v = v * pow(w[i], mono.exponents[i]);
    s = s + v;
  }
  return s;
}

JetSeries nth_derivative(JetSeries s, std::size_t j) {
  for (std::size_t i = 0; i < j; ++i) s = s.derivative();
  return s;
}

}  // namespace

void GGJetDifferential::validate() const {
  if (k == 0 || n == 0) raise(ErrorKind::ParameterViolation, "jet order and dimension must be positive");
  if (chart > n) raise(ErrorKind::ParameterViolation, "chart index exceeds n");
  for (auto c : log_components) {
    if (c == 0 || c > n) raise(ErrorKind::ParameterViolation, "log component outside 1..n");
  }
  for (std::size_t t = 0; t < terms.size(); ++t) {
    const auto& term = terms[t];
    if (term.alpha.size() != k) {
      raise(ErrorKind::ParameterViolation, "term " + std::to_string(t) + " needs k rows of exponents");
    }
    std::size_t weight = 0;
    for (std::size_t j = 1; j <= k; ++j) {
      if (term.alpha[j - 1].size() != n) {
        raise(ErrorKind::ParameterViolation, "term " + std::to_string(t) + " needs n exponents per row");
      }
      for (auto a : term.alpha[j - 1]) weight += j * a;
    }
    if (weight != m) {
      raise(ErrorKind::WeightedDegreeViolation, "term " + std::to_string(t) + " has weighted degree " +
                                                    std::to_string(weight) + ", expected " + std::to_string(m));
    }
    for (auto i : term.log_flags) {
      if (std::find(log_components.begin(), log_components.end(), i) == log_components.end()) {
        raise(ErrorKind::ParameterViolation,
              "log pole on w" + std::to_string(i) + " which is not a divisor component");
      }
    }
    for (const auto& mono : term.coeff) {
      if (mono.exponents.size() != n) raise(ErrorKind::ParameterViolation, "coefficient monomial arity != n");
    }
  }
}

std::vector<JetSeries> chart_jets(const HoloCurve& f, std::size_t chart, Complex z0, std::size_t K) {
  if (chart > f.n()) raise(ErrorKind::ParameterViolation, "chart index exceeds n");
  const auto jets = curve_jet_at(f, z0, K);
  const JetSeries& denom = jets[chart];
  Real scale = 0;
  for (const auto& j : jets) scale = std::max(scale, std::abs(j[0]));
  if (std::abs(denom[0]) <= Real(1e-14) * scale) {
    std::ostringstream os;
    os << "chart coordinate z" << chart << " vanishes at " << z0;
    raise(ErrorKind::PoleAtEvaluationPoint, os.str());
  }
  std::vector<JetSeries> w;
  for (std::size_t i = 0; i < jets.size(); ++i) {
    if (i != chart) w.push_back(jets[i] / denom);
  }
  return w;
}

Complex wronskian_from_jets(std::span<const JetSeries> jets, std::size_t k) {
  if (jets.size() < k + 1) raise(ErrorKind::ParameterViolation, "Wronskian needs k+1 coordinates");
  const auto dim = static_cast<Eigen::Index>(k + 1);
  Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic> M(dim, dim);
  for (std::size_t i = 0; i <= k; ++i)
    for (std::size_t j = 0; j <= k; ++j)
      M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = jets[j].derivative_value(i);
  return M.determinant();
}

Complex wronskian_eval(const HoloCurve& f, Complex z0, std::size_t k) {
  if (k > f.n()) raise(ErrorKind::ParameterViolation, "Wronskian order exceeds n");
  return wronskian_from_jets(curve_jet_at(f, z0, k), k);
}

JetSeries wronskian_series(const HoloCurve& f, Complex z0, std::size_t k, std::size_t order) {
  if (k > f.n()) raise(ErrorKind::ParameterViolation, "Wronskian order exceeds n");
  if (k + 1 > 20) raise(ErrorKind::ParameterViolation, "Wronskian series limited to 20 columns");
  const auto jets = curve_jet_at(f, z0, order + k);
  // entry[i][j] is the series of f_j^{(i)}.
  std::vector<std::vector<JetSeries>> entry(k + 1);
  for (std::size_t i = 0; i <= k; ++i)
    for (std::size_t j = 0; j <= k; ++j) entry[i].push_back(nth_derivative(jets[j], i).truncated(order));

  // Leibniz expansion by dynamic programming over the set of used columns.
  const std::size_t full = (std::size_t{1} << (k + 1)) - 1;
  std::vector<std::optional<JetSeries>> dp(full + 1);
  dp[0] = JetSeries::constant(z0, 1, order);
  for (std::size_t mask = 0; mask < full; ++mask) {
    if (!dp[mask]) continue;
    const auto row = static_cast<std::size_t>(std::popcount(mask));
    for (std::size_t c = 0; c <= k; ++c) {
      if (mask & (std::size_t{1} << c)) continue;
      const auto above = static_cast<unsigned>(std::popcount(mask >> (c + 1)));
      JetSeries term = *dp[mask] * entry[row][c];
      if (above % 2 == 1) term = -term;
      auto& slot = dp[mask | (std::size_t{1} << c)];
      slot = slot ? *slot + term : term;
    }
  }
  return *dp[full];
}

Complex jetdiff_eval_jets(const GGJetDifferential& P, std::span<const JetSeries> w) {
  P.validate();
  if (w.size() != P.n) raise(ErrorKind::DimensionMismatch, "expected n chart-coordinate jets");
  std::vector<Complex> w0(P.n);
  for (std::size_t i = 0; i < P.n; ++i) {
    if (w[i].order() < P.k) raise(ErrorKind::ParameterViolation, "chart jets are shorter than k");
    w0[i] = w[i][0];
  }
  Complex total{};
  for (const auto& term : P.terms) {
    Complex v = eval_coeff(term.coeff, w0);
    for (std::size_t i = 1; i <= P.n; ++i) {
      const bool log = has_flag(term, i);
      if (log && column_degree(term, i) > 0 && w0[i - 1] == Complex{}) {
        std::ostringstream os;
        os << "log pole of w" << i << " at " << w[i - 1].base_point();
        raise(ErrorKind::PoleAtEvaluationPoint, os.str());
      }
      for (std::size_t j = 1; j <= P.k; ++j) {
        const unsigned a = term.alpha[j - 1][i - 1];
        if (a == 0) continue;
        Complex factor = w[i - 1].derivative_value(j);
        if (log) factor /= w0[i - 1];
        for (unsigned e = 0; e < a; ++e) v *= factor;
      }
    }
    total += v;
  }
  return total;
}

Complex jetdiff_eval(const GGJetDifferential& P, const HoloCurve& f, Complex z0) {
  if (P.n != f.n()) raise(ErrorKind::DimensionMismatch, "differential and curve live in different P^n");
  return jetdiff_eval_jets(P, chart_jets(f, P.chart, z0, P.k));
}

std::optional<long> jetdiff_order_at(const GGJetDifferential& P, const HoloCurve& f, Complex z0,
                                     std::size_t depth) {
  P.validate();
  if (P.n != f.n()) raise(ErrorKind::DimensionMismatch, "differential and curve live in different P^n");
  const auto w = chart_jets(f, P.chart, z0, depth + P.k);

  // Clear the log denominators with a common power of each w_i.
  std::vector<std::size_t> clear(P.n + 1, 0);
  for (const auto& term : P.terms)
    for (auto i : term.log_flags) clear[i] = std::max(clear[i], column_degree(term, i));

  std::vector<std::vector<JetSeries>> deriv(P.n);
  for (std::size_t i = 0; i < P.n; ++i)
    for (std::size_t j = 0; j <= P.k; ++j) deriv[i].push_back(nth_derivative(w[i], j).truncated(depth));

  std::vector<JetSeries> w_trunc;
  for (const auto& wi : w) w_trunc.push_back(wi.truncated(depth));

  JetSeries numerator = JetSeries::zero(z0, depth);
  Real scale = 0;  // size of the individual terms, to recognise cancellation
  for (const auto& term : P.terms) {
    JetSeries v = series_coeff(term.coeff, w_trunc, depth);
    for (std::size_t i = 1; i <= P.n; ++i) {
      for (std::size_t j = 1; j <= P.k; ++j) {
        const unsigned a = term.alpha[j - 1][i - 1];
        if (a > 0) v = v * pow(deriv[i - 1][j], a);
      }
      const std::size_t own = has_flag(term, i) ? column_degree(term, i) : 0;
      if (clear[i] > own) v = v * pow(w_trunc[i - 1], static_cast<unsigned>(clear[i] - own));
    }
    for (const auto& c : v.coeffs()) scale = std::max(scale, std::abs(c));
    numerator = numerator + v;
  }

  long denominator_order = 0;
  for (std::size_t i = 1; i <= P.n; ++i) {
    if (clear[i] == 0) continue;
    const auto ord = vanishing_order(w_trunc[i - 1]);
    if (!ord) raise(ErrorKind::PoleAtEvaluationPoint, "log-flagged chart coordinate vanishes identically");
    denominator_order += static_cast<long>(clear[i] * *ord);
  }
  std::optional<std::size_t> num_order;
  for (std::size_t k = 0; k <= numerator.order() && !num_order; ++k) {
    if (std::abs(numerator[k]) > kDefaultVanishingTol * scale) num_order = k;
  }
  if (!num_order) return std::nullopt;
  return static_cast<long>(*num_order) - denominator_order;
}

std::size_t truncation_order(const HoloCurve& f, const Hypersurface& H, Complex z0, std::size_t k) {
  const CurveExpr psi = pullback(f, H);
  constexpr std::size_t kDepth = 64;
  const JetSeries jet = psi.jet(z0, kDepth + k);
  const auto nu = vanishing_order(jet);
  if (!nu) raise(ErrorKind::NoConvergence, "pullback vanishes beyond the probed depth");
  if (*nu == 0) {
    std::ostringstream os;
    os << "the curve does not meet {" << H.to_string() << " = 0} at " << z0;
    raise(ErrorKind::NotOnDivisor, os.str());
  }
  const std::size_t formula = *nu - std::min(k, *nu);

  // Independent route: minimum over l <= k of the vanishing order of psi^{(l)}.
  std::size_t derivative_min = SIZE_MAX;
  JetSeries d = jet;
  for (std::size_t l = 0; l <= k; ++l) {
    if (l > 0) d = d.derivative();
    if (const auto o = vanishing_order(d)) derivative_min = std::min(derivative_min, *o);
  }
  if (derivative_min != formula) {
    raise(ErrorKind::BoundViolation, "derivative route gives " + std::to_string(derivative_min) +
                                         " but nu - min(k, nu) = " + std::to_string(formula));
  }
  return formula;
}

Real metric_norm_eval(const GGJetDifferential& P, const HoloCurve& f, Complex z0) {
  const Complex value = jetdiff_eval(P, f, z0);
  const Real a = -Real(P.twist.a);
  if (a == 0) return std::abs(value);
  const Real log_ratio = std::log(std::abs(f.coords()[P.chart].eval(z0))) - curve_norm_log(f, z0);
  return std::abs(value) * std::exp(a * log_ratio);
}

GGJetDifferential log_wronskian_p1() {
  GGJetDifferential P;
  P.k = 1;
  P.m = 1;
  P.n = 1;
  P.chart = 0;
  P.twist = LineBundleO{-1};
  P.log_components = {1};
  P.terms.push_back({{Monomial{1, {0}}}, {{1}}, {1}});
  return P;
}

}  // namespace nevlab
