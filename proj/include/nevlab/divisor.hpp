#pragma once

#include <gmpxx.h>

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nevlab/curve.hpp"
#include "nevlab/types.hpp"

namespace nevlab {

/// Sparse polynomial: a list of (coefficient, exponent vector) terms.
struct Monomial {
  Complex coeff;
  std::vector<unsigned> exponents;
};

/// Parse a sum of terms `c * v0^a0 * v1^a1 ...` over the variables
/// `letter<first_index>` .. `letter<first_index + nvars - 1>`. Coefficients may
/// be real, `i`, `2i`, or parenthesised such as `(1-2i)`.
std::vector<Monomial> parse_monomials(std::string_view text, char letter, unsigned first_index,
                                      std::size_t nvars);

/// Degree-d hypersurface {Q = 0} in P^n with Q homogeneous.
class Hypersurface {
 public:
  Hypersurface(std::size_t n, std::vector<Monomial> terms);
  static Hypersurface parse(std::size_t n, std::string_view text);
  /// Linear form sum_i a_i x_i.
  static Hypersurface hyperplane(std::span<const Complex> coeffs);

  std::size_t n() const noexcept { return n_; }
  unsigned degree() const noexcept { return d_; }
  const std::vector<Monomial>& terms() const noexcept { return terms_; }
  /// Maximum coefficient magnitude; calibrates the proximity function.
  Real coeff_norm() const noexcept { return coeff_norm_; }

  Complex eval(std::span<const Complex> x) const;
  /// Coefficient vector of a degree-1 form (throws NotHyperplanes otherwise).
  std::vector<Complex> linear_coeffs() const;
  std::string to_string() const;

 private:
  std::size_t n_;
  unsigned d_ = 0;
  std::vector<Monomial> terms_;
  Real coeff_norm_ = 0;
};

using Arrangement = std::vector<Hypersurface>;

/// Line bundle O(a) on P^n.
struct LineBundleO {
  long a = 0;
};

/// Every min(q, n+1) of the hyperplanes have linearly independent coefficient
/// vectors (relative pivot threshold 1e-10).
bool general_position(const Arrangement& arrangement);

/// The entire function Q(f_0, ..., f_n). Throws IdenticallyZero when f lies in {Q = 0}.
CurveExpr pullback(const HoloCurve& f, const Hypersurface& Q);

/// inf { t : t*c1(D1) + c1(D2) > 0 }, or nullopt when the infimum is not finite.
std::optional<mpq_class> gamma(LineBundleO D1, LineBundleO D2);

}  // namespace nevlab
