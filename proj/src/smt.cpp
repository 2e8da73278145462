#include "nevlab/smt.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>

namespace nevlab {
namespace {

Real log_plus(Real x) { return x > 1 ? std::log(x) : 0; }

std::size_t tail_start(const std::vector<Real>& r) {
  const Real cut = r.front() + Real(0.8) * (r.back() - r.front());
  std::size_t i = 0;
  while (i + 1 < r.size() && r[i] < cut) ++i;
  return i;
}

// |W| against the Hadamard bound of the derivative matrix at a few points.
bool wronskian_vanishes(const HoloCurve& f, std::size_t k) {
  std::mt19937_64 rng(0x77a1);
  std::uniform_real_distribution<double> u(-1, 1);
  const Real rad = std::isfinite(f.radius()) ? f.radius() / 2 : Real(1);
  for (int trial = 0; trial < 3; ++trial) {
    const Complex z{Real(u(rng)) * rad / 2, Real(u(rng)) * rad / 2};
    const auto jets = curve_jet_at(f, z, k);
    Real hadamard = 1;
    for (std::size_t i = 0; i <= k; ++i) {
      Real row = 0;
      for (std::size_t j = 0; j <= k; ++j) row += std::norm(jets[j].derivative_value(i));
      hadamard *= std::sqrt(row);
    }
    if (std::abs(wronskian_from_jets(jets, k)) > Real(1e-9) * hadamard) return false;
  }
  return true;
}

std::optional<FiniteCase> case_of(const HoloCurve& f) {
  if (std::isfinite(f.radius())) return FiniteCase{f.radius(), 1};
  return std::nullopt;
}

SMTReport finish(const HoloCurve& f, RadialProfile raw) {
  SMTReport rep;
  rep.error_case = std::isfinite(f.radius()) ? ErrorCase::FiniteRadius : ErrorCase::InfiniteRadius;
  rep.offset = std::max<Real>(0, -raw.values.front());
  for (auto& v : raw.values) v += rep.offset;
  raw.label = "margin";
  rep.margin = std::move(raw);
  summarize_margin(rep);
  return rep;
}

}  // namespace

Real error_term_S(const RadialProfile& T, std::size_t m, Real eps, const std::optional<FiniteCase>& finite, Real r) {
  if (!(eps > 0)) raise(ErrorKind::ParameterViolation, "epsilon must be positive");
  const Real lp = log_plus(T.at(r));
  if (finite) {
    if (!(r < finite->R0)) raise(ErrorKind::ParameterViolation, "finite-radius error term needs r < R0");
    return finite->K * (std::log(1 / (finite->R0 - r)) + lp);
  }
  return Real(m) * ((1 + eps) * lp + (1 + eps) * (1 + eps) * log_plus(lp));
}

void summarize_margin(SMTReport& report) {
  const auto& r = report.margin.r;
  const auto& v = report.margin.values;
  report.violating_measure = 0;
  for (std::size_t i = 0; i + 1 < r.size(); ++i) {
    const Real a = v[i] < 0 ? 1 : 0;
    const Real b = v[i + 1] < 0 ? 1 : 0;
    report.violating_measure += (r[i + 1] - r[i]) * (a + b) / 2;
  }
  report.tail_clean = true;
  for (std::size_t i = tail_start(r); i < r.size(); ++i) {
    if (v[i] < 0) report.tail_clean = false;
  }
}

SMTReport smt_margin(const HoloCurve& f, const SMTSpec& spec, const std::vector<Real>& r_grid, Real eps) {
  if (r_grid.empty()) raise(ErrorKind::InvalidGrid, "empty radius grid");
  if (f.is_constant()) raise(ErrorKind::DegenerateInput, "the curve is constant");
  const auto T = characteristic_T(f, 1, r_grid);
  const auto fin = case_of(f);

  if (const auto* c = std::get_if<CartanWronskian>(&spec)) {
    const std::size_t n = f.n();
    const std::size_t q = c->hyperplanes.size();
    if (q < n + 2) raise(ErrorKind::ParameterViolation, "Cartan margin needs q >= n + 2 hyperplanes");
    if (!general_position(c->hyperplanes)) raise(ErrorKind::DegenerateInput, "hyperplanes are not in general position");
    if (wronskian_vanishes(f, n)) raise(ErrorKind::DegenerateInput, "the Wronskian of f vanishes identically");
    RadialProfile raw{r_grid, std::vector<Real>(r_grid.size(), 0), "margin"};
    for (const auto& H : c->hyperplanes) {
      const auto N = counting_N(zero_set(f, H, r_grid.back()), r_grid, n);
      for (std::size_t i = 0; i < r_grid.size(); ++i) raw.values[i] += N.values[i];
    }
    const std::size_t m = n * (n + 1) / 2;
    for (std::size_t i = 0; i < r_grid.size(); ++i) {
      raw.values[i] += error_term_S(T, m, eps, fin, r_grid[i]) - Real(q - n - 1) * T.values[i];
    }
    return finish(f, std::move(raw));
  }

  const auto& g = std::get<GeneralJetDiff>(spec);
  g.P.validate();
  const Complex probe{Real(0.37), Real(0.23)};
  std::optional<long> ord;
  try {
    ord = jetdiff_order_at(g.P, f, probe);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::PoleAtEvaluationPoint) throw;
    ord = jetdiff_order_at(g.P, f, probe * Real(1.7));
  }
  if (!ord) raise(ErrorKind::DegenerateInput, "P(j_k f) vanishes identically");
  const auto N1 = counting_N(zero_set(f, g.D, r_grid.back()), r_grid, 1);
  RadialProfile raw{r_grid, {}, "margin"};
  for (std::size_t i = 0; i < r_grid.size(); ++i) {
    raw.values.push_back(Real(g.m) * N1.values[i] + error_term_S(T, g.m, eps, fin, r_grid[i]) -
                         g.m_tilde * T.values[i]);
  }
  return finish(f, std::move(raw));
}

DefectEstimate defect_estimate(const HoloCurve& f, const Hypersurface& Q, long A_twist, std::size_t mu0,
                               const std::vector<Real>& r_grid) {
  if (mu0 == 0 || A_twist <= 0) raise(ErrorKind::ParameterViolation, "need mu0 >= 1 and a positive twist");
  const auto T = characteristic_T(f, 1, r_grid);
  if (!(T.values.back() > T.values.front() + 1)) {
    raise(ErrorKind::BoundedCharacteristic, "T grows by less than 1 over the grid");
  }
  const auto N = counting_N(zero_set(f, Q, r_grid.back()), r_grid, mu0);
  const Real d = Real(Q.degree());
  DefectEstimate est;
  est.mu0 = mu0;
  est.ratio_profile = {r_grid, {}, "defect_ratio"};
  for (std::size_t i = 0; i < r_grid.size(); ++i) {
    if (!(T.values[i] > 0)) raise(ErrorKind::InvalidGrid, "characteristic is not positive at a grid radius");
    est.ratio_profile.values.push_back((d * T.values[i] - N.values[i]) / (Real(A_twist) * T.values[i]));
  }
  const auto& v = est.ratio_profile.values;
  const std::size_t s = tail_start(r_grid);
  est.liminf_estimate = *std::min_element(v.begin() + static_cast<long>(s), v.end());
  bool up = true;
  bool down = true;
  for (std::size_t i = s + 1; i < v.size(); ++i) {
    if (v[i] < v[i - 1]) up = false;
    if (v[i] > v[i - 1]) down = false;
  }
  est.tail_monotone = up || down;
  return est;
}

Real defect_lower_bound(std::size_t mu0, std::optional<std::size_t> mu, const mpq_class& gamma) {
  if (mu0 < 1) raise(ErrorKind::ParameterViolation, "mu0 must be at least 1");
  if (mu && *mu < mu0) raise(ErrorKind::ParameterViolation, "need mu >= mu0");
  if (sgn(gamma) <= 0) raise(ErrorKind::ParameterViolation, "gamma must be positive");
  const Real g = Real(gamma.get_d());
  if (!mu) return 1 / g;
  return (1 - Real(mu0) / Real(*mu)) / g;
}

Real defect_relation_margin(const std::vector<Real>& defects, const BoundSpec& bound) {
  Real sum = 0;
  for (Real d : defects) {
    if (!(d >= 0) || !std::isfinite(d)) raise(ErrorKind::ParameterViolation, "defects must be finite and >= 0");
    sum += d;
  }
  return std::visit(
      [&](const auto& b) -> Real {
        using B = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<B, Fujimoto>) {
          if (b.rho < 0 || b.n < 1) raise(ErrorKind::ParameterViolation, "need n >= 1 and rho >= 0");
          const Real n = Real(b.n);
          return n + 1 + b.rho * n * (n + 1) - sum;
        } else if constexpr (std::is_same_v<B, GammaBound>) {
          if (b.rho < 0 || b.m < 1) raise(ErrorKind::ParameterViolation, "need m >= 1 and rho >= 0");
          return b.gamma_AL + 2 * b.rho * Real(b.m) - sum;
        } else if constexpr (std::is_same_v<B, BrotbekBound>) {
          if (b.rho < 0 || b.d <= 0) raise(ErrorKind::ParameterViolation, "need d > 0 and rho >= 0");
          return b.d - (b.c - 2 * b.rho) - sum;
        } else {
          if (!(b.m > 0) || b.m_tilde < 0) raise(ErrorKind::ParameterViolation, "need m > 0 and m_tilde >= 0");
          return b.gamma - b.m_tilde / b.m - sum;
        }
      },
      bound);
}

bool defect_consistency(const HoloCurve& f, const Hypersurface& Q, std::size_t mu0, std::optional<std::size_t> mu_claimed,
                        const mpq_class& gamma, const std::vector<Real>& r_grid) {
  const auto zs = zero_set(f, Q, r_grid.back());
  auto check = [&](std::size_t order) {
    if (!mu_claimed || order < *mu_claimed) {
      raise(ErrorKind::MultiplicityHypothesisFailed,
            "a zero of order " + std::to_string(order) + " is below the claimed multiplicity");
    }
  };
  if (zs.origin_order > 0) check(zs.origin_order);
  for (const auto& z : zs.records) check(z.order);
  const Real bound = defect_lower_bound(mu0, mu_claimed, gamma);
  const auto est = defect_estimate(f, Q, 1, mu0, r_grid);
  return bound <= est.liminf_estimate + Real(0.05);
}

}  // namespace nevlab
