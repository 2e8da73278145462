#include "nevlab/radial.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace nevlab {

Real RadialProfile::at(Real radius) const {
  if (r.empty()) raise(ErrorKind::RadiusOutsideProfile, "empty profile");
  const Real slack = Real(1e-12) * std::max<Real>(1, std::abs(radius));
  if (radius < r.front() - slack || radius > r.back() + slack) {
    std::ostringstream os;
    os << "radius " << radius << " outside [" << r.front() << ", " << r.back() << "]";
    raise(ErrorKind::RadiusOutsideProfile, os.str());
  }
  const auto it = std::lower_bound(r.begin(), r.end(), radius);
  if (it == r.begin()) return values.front();
  if (it == r.end()) return values.back();
  const auto i = static_cast<std::size_t>(it - r.begin());
  if (r[i] == radius) return values[i];
  const Real w = (radius - r[i - 1]) / (r[i] - r[i - 1]);
  return values[i - 1] + w * (values[i] - values[i - 1]);
}

std::vector<Real> linear_grid(Real r_min, Real r_max, std::size_t points) {
  if (points < 2 || !(r_max > r_min)) raise(ErrorKind::InvalidGrid, "grid needs r_max > r_min and >= 2 points");
  std::vector<Real> g(points);
  for (std::size_t i = 0; i < points; ++i) g[i] = r_min + (r_max - r_min) * Real(i) / Real(points - 1);
  return g;
}

std::size_t ZeroSet::total_order() const {
  std::size_t s = origin_order;
  for (const auto& z : records) s += z.order;
  return s;
}

Real circle_integral(const std::function<Real(Real)>& g, Real tol) {
  constexpr std::size_t kStart = 64;
  constexpr std::size_t kCap = std::size_t{1} << 20;
  const Real two_pi = 2 * kPi;

  auto sample = [&](Real theta, Real h) {
    Real v = g(theta);
    if (std::isfinite(v)) return v;
    v = g(theta + h / 2);
    if (std::isfinite(v)) return v;
    v = g(theta - h / 4);
    if (std::isfinite(v)) return v;
    raise(ErrorKind::NoConvergence, "integrand is not finite near a quadrature node");
  };

  std::size_t N = kStart;
  Real h = two_pi / Real(N);
  Real sum = 0;
  for (std::size_t k = 0; k < N; ++k) sum += sample(Real(k) * h, h);
  Real estimate = sum / Real(N);
  while (N < kCap) {
    Real mid = 0;
    for (std::size_t k = 0; k < N; ++k) mid += sample((Real(k) + Real(0.5)) * h, h / 2);
    sum += mid;
    N *= 2;
    h /= 2;
    const Real next = sum / Real(N);
    if (std::abs(next - estimate) < tol * std::max<Real>(1, std::abs(next))) return next;
    estimate = next;
  }
  raise(ErrorKind::NoConvergence, "trapezoid rule did not converge within 2^20 nodes");
}

namespace {

void require_grid(const std::vector<Real>& grid) {
  if (grid.empty()) raise(ErrorKind::InvalidGrid, "empty radius grid");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0) || !std::isfinite(grid[i])) raise(ErrorKind::InvalidGrid, "radii must be positive");
    if (i > 0 && !(grid[i] > grid[i - 1])) raise(ErrorKind::InvalidGrid, "radii must increase strictly");
  }
}

Real mean_on_circle(Real r, const std::function<Real(Complex)>& h) {
  return circle_integral([&](Real theta) { return h(std::polar(r, theta)); });
}

}  // namespace

RadialProfile characteristic_T(const HoloCurve& f, long d_twist, const std::vector<Real>& r_grid) {
  require_grid(r_grid);
  if (r_grid.back() >= f.radius()) raise(ErrorKind::OutsideDomain, "grid reaches the domain boundary");
  RadialProfile out{r_grid, {}, "T"};
  const Real at_origin = curve_norm_log(f, 0);
  for (Real r : r_grid) {
    const Real mean = mean_on_circle(r, [&](Complex z) { return curve_norm_log(f, z); });
    out.values.push_back(Real(d_twist) * (mean - at_origin));
  }
  return out;
}

RadialProfile counting_N(const ZeroSet& zs, const std::vector<Real>& r_grid, std::optional<std::size_t> trunc) {
  require_grid(r_grid);
  RadialProfile out{r_grid, {}, trunc ? "N_trunc(" + std::to_string(*trunc) + ")" : "N"};
  auto cap = [&](std::size_t nu) { return Real(trunc ? std::min(nu, *trunc) : nu); };
  for (Real r : r_grid) {
    if (r < 1) raise(ErrorKind::InvalidGrid, "counting functions use radii >= 1");
    if (r > zs.r_max * (1 + Real(1e-12))) {
      std::ostringstream os;
      os << "radius " << r << " exceeds the scanned disk " << zs.r_max;
      raise(ErrorKind::GridExceedsScan, os.str());
    }
    Real n = cap(zs.origin_order) * std::log(r);
    for (const auto& z : zs.records) {
      const Real a = std::abs(z.location);
      if (a <= r) n += cap(z.order) * std::log(r / a);
    }
    out.values.push_back(n);
  }
  return out;
}

RadialProfile proximity_m(const HoloCurve& f, const Hypersurface& Q, const std::vector<Real>& r_grid) {
  require_grid(r_grid);
  if (r_grid.back() >= f.radius()) raise(ErrorKind::OutsideDomain, "grid reaches the domain boundary");
  const CurveExpr psi = pullback(f, Q);
  const Real d = Real(Q.degree());
  const Real log_norm = std::log(Q.coeff_norm());
  RadialProfile out{r_grid, {}, "m"};
  for (Real r : r_grid) {
    out.values.push_back(mean_on_circle(r, [&](Complex z) {
      return d * curve_norm_log(f, z) + log_norm - std::log(std::abs(psi.eval(z)));
    }));
  }
  return out;
}

ZeroSet zero_set(const HoloCurve& f, const Hypersurface& Q, Real r_max) {
  if (!(r_max < f.radius())) raise(ErrorKind::OutsideDomain, "scan radius must stay inside the domain");
  return zero_set_of(pullback(f, Q), r_max, f.radius());
}

FmtResidual fmt_residual(const HoloCurve& f, const Hypersurface& Q, const std::vector<Real>& r_grid) {
  require_grid(r_grid);
  const auto T = characteristic_T(f, static_cast<long>(Q.degree()), r_grid);
  const auto m = proximity_m(f, Q, r_grid);
  const auto zs = zero_set(f, Q, r_grid.back());
  const auto N = counting_N(zs, r_grid);
  FmtResidual out;
  out.residual = {r_grid, {}, "residual"};
  for (std::size_t i = 0; i < r_grid.size(); ++i) out.residual.values.push_back(T.values[i] - m.values[i] - N.values[i]);
  out.offset = -out.residual.values.front();
  for (auto& v : out.residual.values) v += out.offset;
  return out;
}

RatioCheck logderiv_bound_check(const CurveExpr& phi, std::size_t l, Real t, Real p, Real r, Real R) {
  if (l == 0 || !(t > 0) || !(t * Real(l) < p) || !(p < 1)) {
    raise(ErrorKind::ParameterViolation, "need 0 < t*l < p < 1");
  }
  if (!(r > 0) || !(R > r)) raise(ErrorKind::ParameterViolation, "need 0 < r < R");
  RatioCheck out;
  out.lhs = circle_integral([&](Real theta) {
    const auto jet = phi.jet(std::polar(r, theta), l);
    if (jet[0] == Complex{}) return kInfinity;
    return std::pow(std::abs(jet.derivative_value(l) / jet[0]), t);
  });
  const HoloCurve curve({CurveExpr::constant(1), phi});
  const Real T = characteristic_T(curve, 1, {R}).values.front();
  out.rhs_core = std::pow(R / (r * (R - r)) * T, p);
  out.ratio = out.lhs / out.rhs_core;
  return out;
}

RatioCheck main_lemma_check(const GGJetDifferential& P, const HoloCurve& f, Real t, Real p, Real r, Real R,
                            bool twisted) {
  P.validate();
  if (!(t > 0) || !(t * Real(P.m) < p) || !(p < 1)) raise(ErrorKind::ParameterViolation, "need 0 < t*m < p < 1");
  if (!(r > 0) || !(R > r) || !(R < f.radius())) raise(ErrorKind::ParameterViolation, "need 0 < r < R < R0");
  RatioCheck out;
  out.lhs = circle_integral([&](Real theta) {
    const Complex z = std::polar(r, theta);
    try {
      const Real v = twisted ? metric_norm_eval(P, f, z) : std::abs(jetdiff_eval(P, f, z));
      return std::pow(v, t);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::PoleAtEvaluationPoint) return kInfinity;
      throw;
    }
  });
  const Real T = characteristic_T(f, 1, {R}).values.front();
  out.rhs_core = std::pow(R / (r * (R - r)) * T, p);
  out.ratio = out.lhs / out.rhs_core;
  return out;
}

}  // namespace nevlab
