#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nevlab/curve.hpp"
#include "nevlab/divisor.hpp"
#include "nevlab/jetdiff.hpp"

namespace nevlab {

/// A sampled function of the radius.
struct RadialProfile {
  std::vector<Real> r;
  std::vector<Real> values;
  std::string label;

  /// Linear interpolation inside the grid; RadiusOutsideProfile outside it.
  Real at(Real radius) const;
};

/// Increasing, evenly spaced grid of `points` radii on [r_min, r_max].
std::vector<Real> linear_grid(Real r_min, Real r_max, std::size_t points);

struct ZeroRecord {
  Complex location;
  std::size_t order;
};

/// Zeros of a pullback in the closed disk |z| <= r_max. A zero at the origin
/// is kept separately in origin_order.
struct ZeroSet {
  std::vector<ZeroRecord> records;
  Real r_max = 0;
  std::size_t origin_order = 0;

  std::size_t total_order() const;
};

inline constexpr Real kDefaultQuadTol = Real(1e-10);

/// (1/2pi) * integral over [0, 2pi) of g, by the periodic trapezoid rule with
/// node doubling until successive estimates differ by less than tol. Nodes
/// where g is not finite are shifted by half a step.
Real circle_integral(const std::function<Real(Real)>& g, Real tol = kDefaultQuadTol);

/// T_{f,O(d)}(r) = d * ( mean of log|f| on |z| = r  -  log|f(0)| ).
RadialProfile characteristic_T(const HoloCurve& f, long d_twist, const std::vector<Real>& r_grid);

/// Zeros of an entire function with multiplicities.
ZeroSet zero_set_of(const CurveExpr& psi, Real r_max, Real domain_radius = kInfinity);
ZeroSet zero_set(const HoloCurve& f, const Hypersurface& Q, Real r_max);

/// Winding number of psi around the circle |z| = radius, by argument tracking.
long winding_number(const CurveExpr& psi, Real radius);

/// N(r) = min(nu_0, trunc) log r + sum_{0<|a|<=r} min(nu_a, trunc) log(r/|a|).
RadialProfile counting_N(const ZeroSet& zs, const std::vector<Real>& r_grid,
                         std::optional<std::size_t> trunc = std::nullopt);

/// m(r) = mean of log( |f|^d * coeff_norm / |Q(f)| ) on |z| = r.
RadialProfile proximity_m(const HoloCurve& f, const Hypersurface& Q, const std::vector<Real>& r_grid);

/// d T(r) - m(r) - N(r), shifted so that it vanishes at the first grid radius.
struct FmtResidual {
  RadialProfile residual;
  Real offset = 0;
};
FmtResidual fmt_residual(const HoloCurve& f, const Hypersurface& Q, const std::vector<Real>& r_grid);

struct RatioCheck {
  Real lhs = 0;
  Real rhs_core = 0;
  Real ratio = 0;
};

/// Mean of |phi^{(l)} / phi|^t on |z| = r against (R / (r (R - r)) T_phi(R))^p,
/// with T_phi the characteristic of the curve (1, phi).
RatioCheck logderiv_bound_check(const CurveExpr& phi, std::size_t l, Real t, Real p, Real r, Real R);

/// Mean of |P(j_k f)|^t (or of its Fubini-Study norm when twisted) on |z| = r
/// against (R / (r (R - r)) T_{f,O(1)}(R))^p.
RatioCheck main_lemma_check(const GGJetDifferential& P, const HoloCurve& f, Real t, Real p, Real r, Real R,
                            bool twisted = false);

}  // namespace nevlab
