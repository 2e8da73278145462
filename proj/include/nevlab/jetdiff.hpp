#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "nevlab/curve.hpp"
#include "nevlab/divisor.hpp"
#include "nevlab/jet.hpp"

namespace nevlab {

/// One monomial  coeff(w) * prod_{j,i} (d^j w_i)^{alpha[j-1][i-1]}, where each
/// factor of a log-flagged coordinate i is replaced by (d^j w_i / w_i).
struct JetDiffTerm {
  std::vector<Monomial> coeff;               ///< polynomial in w_1..w_n
  std::vector<std::vector<unsigned>> alpha;  ///< alpha[j-1][i-1], 1 <= j <= k, 1 <= i <= n
  std::vector<unsigned> log_flags;           ///< 1-based chart coordinates with a log pole
};

/// Green-Griffiths jet differential of order k and weighted degree m written in
/// the affine chart {z_chart != 0} with coordinates w_i = z_{sigma(i)} / z_chart,
/// sigma enumerating {0..n} \ {chart} in increasing order.
///
/// `twist` is the bundle L with the differential taking values in L^{-1}; for
/// twist O(-a) the Fubini-Study weight of a value is (|f_chart| / |f|)^a.
struct GGJetDifferential {
  std::size_t k = 1;
  std::size_t m = 1;
  std::size_t n = 1;
  std::size_t chart = 0;
  LineBundleO twist{};
  std::vector<unsigned> log_components;  ///< chart coordinates that are divisor components
  std::vector<JetDiffTerm> terms;

  /// Throws WeightedDegreeViolation / ParameterViolation on malformed data.
  void validate() const;
};

/// Jets of the chart coordinates w_i = f_{sigma(i)} / f_chart at z0.
std::vector<JetSeries> chart_jets(const HoloCurve& f, std::size_t chart, Complex z0, std::size_t K);

/// det( d^i z_j ), 0 <= i, j <= k, on the first k+1 coordinate jets. Entry
/// (i, j) is the i-th derivative, i.e. i! times the jet coefficient.
Complex wronskian_from_jets(std::span<const JetSeries> jets, std::size_t k);

Complex wronskian_eval(const HoloCurve& f, Complex z0, std::size_t k);

/// Taylor series of z -> W(f)(z) at z0 up to `order`, computed in the jet ring.
JetSeries wronskian_series(const HoloCurve& f, Complex z0, std::size_t k, std::size_t order);

/// Evaluate P on chart-coordinate jets (at least k-th order each).
Complex jetdiff_eval_jets(const GGJetDifferential& P, std::span<const JetSeries> chart_coords);

Complex jetdiff_eval(const GGJetDifferential& P, const HoloCurve& f, Complex z0);

/// Order of z -> P(j_k f)(z) at z0: negative for a pole, nullopt when the
/// function vanishes to every computed order.
std::optional<long> jetdiff_order_at(const GGJetDifferential& P, const HoloCurve& f, Complex z0,
                                     std::size_t depth = 24);

/// nu - min(k, nu) where nu is the vanishing order of Q(f) at z0; cross-checked
/// against min_{0<=l<=k} ord (Q(f))^{(l)}.
std::size_t truncation_order(const HoloCurve& f, const Hypersurface& H, Complex z0, std::size_t k);

/// |P(j_k f)(z0)| times the Fubini-Study weight of the twist.
Real metric_norm_eval(const GGJetDifferential& P, const HoloCurve& f, Complex z0);

/// The logarithmic Wronskian on P^1 along {w_1 = 0}: dw_1 / w_1, k = m = 1,
/// chart 0, twist O(-1).
GGJetDifferential log_wronskian_p1();

}  // namespace nevlab
