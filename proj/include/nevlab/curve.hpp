#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nevlab/jet.hpp"
#include "nevlab/types.hpp"

namespace nevlab {

/// Entire function of one complex variable z, held as an immutable expression
/// tree. exp() and compose() only accept polynomial arguments, so every tree
/// is entire and its Taylor jets are computed exactly by structural recursion.
class CurveExpr {
 public:
  enum class Kind { Constant, Variable, Add, Sub, Mul, Pow, Exp, Compose, DivZPow };

  CurveExpr();  // the constant 0

  static CurveExpr constant(Complex c);
  static CurveExpr variable();
  static CurveExpr exp(const CurveExpr& polynomial_argument);
  /// outer(inner(z)); inner must be a polynomial.
  static CurveExpr compose(const CurveExpr& outer, const CurveExpr& inner);
  /// Polynomial with ascending coefficients.
  static CurveExpr polynomial(const std::vector<Complex>& coeffs);
  /// g(z) / z^nu for a g vanishing to order >= nu at the origin.
  static CurveExpr divide_by_z_power(const CurveExpr& g, unsigned nu);

  CurveExpr pow(unsigned exponent) const;

  friend CurveExpr operator+(const CurveExpr& a, const CurveExpr& b);
  friend CurveExpr operator-(const CurveExpr& a, const CurveExpr& b);
  friend CurveExpr operator*(const CurveExpr& a, const CurveExpr& b);
  friend CurveExpr operator-(const CurveExpr& a);

  Kind kind() const noexcept;
  Complex eval(Complex z) const;
  JetSeries jet(Complex z0, std::size_t order) const;
  /// Coefficient-wise bound on the magnitudes that enter the jet computation.
  /// Round-off in jet(z0, K)[k] is a small multiple of eps * majorant[k].
  std::vector<Real> majorant_jet(Complex z0, std::size_t order) const;

  bool is_polynomial() const;
  /// Ascending coefficients with trailing zeros removed, or nullopt when the
  /// tree contains exp().
  std::optional<std::vector<Complex>> polynomial_coeffs() const;

  std::string to_string() const;

  struct Node;

 private:
  explicit CurveExpr(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

/// Parse `expr := num | z | i | pi | expr+expr | expr-expr | expr*expr |
/// expr^int | (expr) | exp(poly) | compose(expr, poly)`. Errors carry the
/// column of the offending character.
CurveExpr parse_curve_expr(std::string_view text);

/// True when the expression vanishes to order `order` (relative to its
/// majorant) at three pseudo-random points of the disk of radius
/// min(1, radius / 2).
bool is_identically_zero(const CurveExpr& e, Real radius = kInfinity, std::size_t order = 64);

/// A zero of a polynomial with its multiplicity.
struct PolynomialZero {
  Complex location;
  std::size_t order;
};

/// All zeros of a polynomial expression: companion-matrix eigenvalues,
/// grouped into clusters whose centroid is refined and whose size is
/// confirmed as the vanishing order of the local jet.
std::vector<PolynomialZero> polynomial_zeros(const CurveExpr& poly);

/// Holomorphic curve f = [f_0 : ... : f_n] from the disk B(R0) into P^n.
///
/// On construction the tuple is normalised so that f(0) != 0 (common powers of
/// z are divided out) and polynomial tuples are checked for common zeros.
class HoloCurve {
 public:
  explicit HoloCurve(std::vector<CurveExpr> coords, Real R0 = kInfinity);

  std::size_t n() const noexcept { return coords_.size() - 1; }
  const std::vector<CurveExpr>& coords() const noexcept { return coords_; }
  Real radius() const noexcept { return R0_; }
  /// Power of z divided out of every coordinate during normalisation.
  unsigned recentred_order() const noexcept { return recentred_; }
  bool is_polynomial() const;
  /// True when every coordinate ratio is constant, i.e. the image is a point.
  bool is_constant() const;

  std::vector<Complex> eval(Complex z) const;
  void require_in_domain(Complex z) const;

 private:
  std::vector<CurveExpr> coords_;
  Real R0_;
  unsigned recentred_ = 0;
};

/// Degree-K Taylor expansion of every coordinate at z0.
std::vector<JetSeries> curve_jet_at(const HoloCurve& f, Complex z0, std::size_t K);

/// log of the Euclidean norm of the coordinate vector at z.
Real curve_norm_log(const HoloCurve& f, Complex z);

}  // namespace nevlab
