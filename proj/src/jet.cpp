#include "nevlab/jet.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace nevlab {
namespace {

void require_same_base(const JetSeries& a, const JetSeries& b) {
  const Real scale = std::max<Real>(1, std::max(std::abs(a.base_point()), std::abs(b.base_point())));
  if (std::abs(a.base_point() - b.base_point()) > Real(1e-12) * scale) {
    raise(ErrorKind::MismatchedBasePoint, "series expanded at different points");
  }
}

std::size_t common_order(const JetSeries& a, const JetSeries& b) {
  return std::min(a.order(), b.order());
}

std::size_t leading_exact_zeros(std::span<const Complex> c) {
  std::size_t v = 0;
  while (v < c.size() && c[v] == Complex{}) ++v;
  return v;
}

}  // namespace

JetSeries::JetSeries(Complex base_point, std::vector<Complex> coeffs)
    : base_(base_point), coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) coeffs_.push_back(Complex{});
}

JetSeries JetSeries::constant(Complex base_point, Complex value, std::size_t order) {
  std::vector<Complex> c(order + 1);
  c[0] = value;
  return {base_point, std::move(c)};
}

JetSeries JetSeries::variable(Complex base_point, std::size_t order) {
  std::vector<Complex> c(order + 1);
  c[0] = base_point;
  if (order >= 1) c[1] = 1;
  return {base_point, std::move(c)};
}

JetSeries JetSeries::zero(Complex base_point, std::size_t order) {
  return {base_point, std::vector<Complex>(order + 1)};
}

JetSeries JetSeries::truncated(std::size_t order) const {
  const std::size_t k = std::min(order, this->order());
  return {base_, std::vector<Complex>(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(k + 1))};
}

Complex JetSeries::derivative_value(std::size_t k) const {
  Real factorial = 1;
  for (std::size_t i = 2; i <= k; ++i) factorial *= Real(i);
  return coeffs_.at(k) * factorial;
}

JetSeries JetSeries::derivative() const {
  if (order() == 0) return zero(base_, 0);
  std::vector<Complex> c(order());
  for (std::size_t k = 1; k <= order(); ++k) c[k - 1] = coeffs_[k] * Real(k);
  return {base_, std::move(c)};
}

JetSeries JetSeries::rescale(Complex lambda) const {
  std::vector<Complex> c(coeffs_);
  Complex power = 1;
  for (auto& ck : c) {
    ck *= power;
    power *= lambda;
  }
  return {base_, std::move(c)};
}

JetSeries JetSeries::operator-() const {
  std::vector<Complex> c(coeffs_);
  for (auto& ck : c) ck = -ck;
  return {base_, std::move(c)};
}

JetSeries& JetSeries::operator*=(Complex s) {
  for (auto& ck : coeffs_) ck *= s;
  return *this;
}

JetSeries operator+(const JetSeries& a, const JetSeries& b) {
  require_same_base(a, b);
  const std::size_t K = common_order(a, b);
  std::vector<Complex> c(K + 1);
  for (std::size_t k = 0; k <= K; ++k) c[k] = a.coeffs_[k] + b.coeffs_[k];
  return {a.base_, std::move(c)};
}

JetSeries operator-(const JetSeries& a, const JetSeries& b) { return a + (-b); }

JetSeries operator*(const JetSeries& a, const JetSeries& b) {
  require_same_base(a, b);
  const std::size_t K = common_order(a, b);
  std::vector<Complex> c(K + 1);
  for (std::size_t k = 0; k <= K; ++k) {
    Complex s{};
    for (std::size_t j = 0; j <= k; ++j) s += a.coeffs_[j] * b.coeffs_[k - j];
    c[k] = s;
  }
  return {a.base_, std::move(c)};
}

JetSeries operator/(const JetSeries& a, const JetSeries& b) {
  require_same_base(a, b);
  const std::size_t v = leading_exact_zeros(b.coeffs_);
  if (v == b.coeffs_.size()) {
    raise(ErrorKind::DivisionByZeroSeries, "divisor vanishes to order " + std::to_string(b.order()));
  }
  if (leading_exact_zeros(a.coeffs_) < v) {
    raise(ErrorKind::DivisionByZeroSeries,
          "divisor vanishes to order " + std::to_string(v) + " but the numerator does not");
  }
  const std::size_t K = common_order(a, b) - std::min(v, common_order(a, b));
  // Shifted series: numerator and divisor with the common factor t^v removed.
  const Complex* num = a.coeffs_.data() + v;
  const Complex* den = b.coeffs_.data() + v;
  const std::size_t den_len = b.coeffs_.size() - v;
  std::vector<Complex> q(K + 1);
  for (std::size_t k = 0; k <= K; ++k) {
    Complex s = num[k];
    for (std::size_t j = 1; j <= k && j < den_len; ++j) s -= den[j] * q[k - j];
    q[k] = s / den[0];
  }
  return {a.base_, std::move(q)};
}

JetSeries operator*(Complex s, const JetSeries& a) {
  JetSeries r(a);
  r *= s;
  return r;
}

JetSeries operator+(const JetSeries& a, Complex s) {
  JetSeries r(a);
  r.coeffs_[0] += s;
  return r;
}

JetSeries pow(const JetSeries& a, unsigned exponent) {
  JetSeries result = JetSeries::constant(a.base_point(), 1, a.order());
  JetSeries base = a;
  while (exponent > 0) {
    if (exponent & 1u) result = result * base;
    exponent >>= 1;
    if (exponent > 0) base = base * base;
  }
  return result;
}

JetSeries exp(const JetSeries& a) {
  // e' = a' e  gives  k e_k = sum_{j=1}^{k} j a_j e_{k-j}.
  const auto c = a.coeffs();
  std::vector<Complex> e(c.size());
  e[0] = std::exp(c[0]);
  for (std::size_t k = 1; k < c.size(); ++k) {
    Complex s{};
    for (std::size_t j = 1; j <= k; ++j) s += Real(j) * c[j] * e[k - j];
    e[k] = s / Real(k);
  }
  return {a.base_point(), std::move(e)};
}

JetSeries compose(const JetSeries& outer, const JetSeries& inner) {
  const Complex w0 = inner[0];
  const Real scale = std::max<Real>(1, std::abs(w0));
  if (std::abs(outer.base_point() - w0) > Real(1e-12) * scale) {
    raise(ErrorKind::MismatchedBasePoint, "outer series is not expanded at inner(0)");
  }
  const std::size_t K = std::min(outer.order(), inner.order());
  // Horner in the shifted inner series delta = inner - inner(0).
  std::vector<Complex> dc(inner.coeffs().begin(), inner.coeffs().begin() + static_cast<std::ptrdiff_t>(K + 1));
  dc[0] = 0;
  const JetSeries delta(inner.base_point(), std::move(dc));
  JetSeries acc = JetSeries::constant(inner.base_point(), outer[K], K);
  for (std::size_t k = K; k-- > 0;) acc = acc * delta + outer[k];
  return acc;
}

std::optional<std::size_t> vanishing_order(const JetSeries& a, Real tol_rel) {
  Real max_abs = 0;
  for (const auto& c : a.coeffs()) max_abs = std::max(max_abs, std::abs(c));
  if (max_abs == 0) return std::nullopt;
  for (std::size_t k = 0; k <= a.order(); ++k) {
    if (std::abs(a[k]) > tol_rel * max_abs) return k;
  }
  return std::nullopt;
}

}  // namespace nevlab
