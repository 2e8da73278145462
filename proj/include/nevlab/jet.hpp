#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "nevlab/types.hpp"

namespace nevlab {

/// Truncated Taylor series  sum_{k=0}^{K} c_k t^k  in a local parameter t
/// centred at base_point. This is the computational form of a k-jet.
///
/// Binary operations require a common base point and truncate to the shorter
/// operand; no coefficient is ever fabricated beyond the known order.
class JetSeries {
 public:
  JetSeries() = default;
  JetSeries(Complex base_point, std::vector<Complex> coeffs);

  static JetSeries constant(Complex base_point, Complex value, std::size_t order);
  /// The identity map z = base_point + t.
  static JetSeries variable(Complex base_point, std::size_t order);
  static JetSeries zero(Complex base_point, std::size_t order);

  Complex base_point() const noexcept { return base_; }
  std::size_t order() const noexcept { return coeffs_.size() - 1; }
  std::span<const Complex> coeffs() const noexcept { return coeffs_; }
  const Complex& operator[](std::size_t k) const { return coeffs_.at(k); }

  /// Copy keeping only the coefficients up to `order`.
  JetSeries truncated(std::size_t order) const;

  /// k-th derivative of the underlying function at the base point.
  Complex derivative_value(std::size_t k) const;

  /// Series of d/dt; the order drops by one (order 0 maps to the zero series of order 0).
  JetSeries derivative() const;

  /// Reparametrisation t -> lambda t: the coefficient of t^k is multiplied by lambda^k.
  JetSeries rescale(Complex lambda) const;

  JetSeries operator-() const;
  JetSeries& operator*=(Complex s);

  friend JetSeries operator+(const JetSeries& a, const JetSeries& b);
  friend JetSeries operator-(const JetSeries& a, const JetSeries& b);
  friend JetSeries operator*(const JetSeries& a, const JetSeries& b);
  /// Quotient after cancelling the common vanishing order of numerator and
  /// divisor; the result order drops by that vanishing order.
  friend JetSeries operator/(const JetSeries& a, const JetSeries& b);
  friend JetSeries operator*(Complex s, const JetSeries& a);
  friend JetSeries operator+(const JetSeries& a, Complex s);

 private:
  Complex base_{};
  std::vector<Complex> coeffs_{Complex{}};
};

JetSeries pow(const JetSeries& a, unsigned exponent);
JetSeries exp(const JetSeries& a);

/// Taylor expansion of outer(inner(t)) where outer is expanded at inner[0].
/// Requires outer.base_point() == inner[0] up to rounding; the result lives at
/// inner.base_point().
JetSeries compose(const JetSeries& outer, const JetSeries& inner);

/// Default relative threshold separating genuine vanishing from round-off.
inline constexpr Real kDefaultVanishingTol = Real(1e-9);

/// Smallest k with |c_k| > tol_rel * max_j |c_j|. std::nullopt means the
/// series is saturated: it vanishes to every computed order and should be
/// re-expanded deeper.
std::optional<std::size_t> vanishing_order(const JetSeries& a,
                                           Real tol_rel = kDefaultVanishingTol);

}  // namespace nevlab
