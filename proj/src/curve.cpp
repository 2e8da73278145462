#include "nevlab/curve.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace nevlab {

struct CurveExpr::Node {
  Kind kind;
  Complex value{};
  unsigned exponent = 0;
  std::shared_ptr<const Node> a;
  std::shared_ptr<const Node> b;
  bool polynomial = true;
};

namespace {

using NodePtr = std::shared_ptr<const CurveExpr::Node>;

// Taylor coefficients at z0 (up to `order`) of the polynomial with ascending
// coefficients `a`.
std::vector<Complex> taylor_shift(const std::vector<Complex>& a, Complex z0, std::size_t order) {
  std::vector<Complex> b(a);
  const std::size_t m = b.size();
  // Repeated synthetic division by (z - z0).
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t j = m - 1; j > k; --j) b[j - 1] += z0 * b[j];
  }
  b.resize(order + 1);
  return b;
}

std::vector<Real> taylor_shift_abs(const std::vector<Real>& a, Real z0, std::size_t order) {
  std::vector<Real> b(a);
  const std::size_t m = b.size();
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t j = m - 1; j > k; --j) b[j - 1] += z0 * b[j];
  }
  b.resize(order + 1);
  return b;
}

std::vector<Real> conv(const std::vector<Real>& a, const std::vector<Real>& b) {
  const std::size_t K = std::min(a.size(), b.size());
  std::vector<Real> c(K);
  for (std::size_t k = 0; k < K; ++k) {
    Real s = 0;
    for (std::size_t j = 0; j <= k; ++j) s += a[j] * b[k - j];
    c[k] = s;
  }
  return c;
}

std::vector<Complex> poly_add(std::vector<Complex> a, const std::vector<Complex>& b, Real sign) {
  if (a.size() < b.size()) a.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += sign * b[i];
  return a;
}

std::vector<Complex> poly_mul(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  std::vector<Complex> c(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

void trim(std::vector<Complex>& p) {
  while (p.size() > 1 && p.back() == Complex{}) p.pop_back();
}

// Number of Taylor terms beyond the requested order used when a quotient
// g / z^nu is evaluated near the origin from its expansion at 0.
constexpr std::size_t kDivTail = 48;
constexpr Real kDivSwitchRadius = Real(0.25);

Complex eval_node(const NodePtr& n, Complex z);
JetSeries jet_node(const NodePtr& n, Complex z0, std::size_t K);
std::vector<Real> majorant_node(const NodePtr& n, Complex z0, std::size_t K);
std::optional<std::vector<Complex>> poly_node(const NodePtr& n);

Complex eval_node(const NodePtr& n, Complex z) {
  using K = CurveExpr::Kind;
  switch (n->kind) {
    case K::Constant: return n->value;
    case K::Variable: return z;
    case K::Add: return eval_node(n->a, z) + eval_node(n->b, z);
    case K::Sub: return eval_node(n->a, z) - eval_node(n->b, z);
    case K::Mul: return eval_node(n->a, z) * eval_node(n->b, z);
    case K::Pow: {
      Complex base = eval_node(n->a, z), r = 1;
      for (unsigned e = n->exponent; e > 0; e >>= 1) {
        if (e & 1u) r *= base;
        base *= base;
      }
      return r;
    }
    case K::Exp: return std::exp(eval_node(n->a, z));
    case K::Compose: return eval_node(n->a, eval_node(n->b, z));
    case K::DivZPow: {
      if (std::abs(z) >= kDivSwitchRadius) {
        Complex zp = 1;
        for (unsigned i = 0; i < n->exponent; ++i) zp *= z;
        return eval_node(n->a, z) / zp;
      }
      const auto g = jet_node(n->a, 0, n->exponent + kDivTail);
      Complex acc{};
      for (std::size_t k = g.order() + 1; k-- > n->exponent;) acc = acc * z + g[k];
      return acc;
    }
  }
  return {};
}

JetSeries jet_node(const NodePtr& n, Complex z0, std::size_t K) {
  using Kd = CurveExpr::Kind;
  switch (n->kind) {
    case Kd::Constant: return JetSeries::constant(z0, n->value, K);
    case Kd::Variable: return JetSeries::variable(z0, K);
    case Kd::Add: return jet_node(n->a, z0, K) + jet_node(n->b, z0, K);
    case Kd::Sub: return jet_node(n->a, z0, K) - jet_node(n->b, z0, K);
    case Kd::Mul: return jet_node(n->a, z0, K) * jet_node(n->b, z0, K);
    case Kd::Pow: return pow(jet_node(n->a, z0, K), n->exponent);
    case Kd::Exp: return exp(jet_node(n->a, z0, K));
    case Kd::Compose: {
      const JetSeries inner = jet_node(n->b, z0, K);
      const JetSeries outer = jet_node(n->a, inner[0], K);
      return compose(outer, inner);
    }
    case Kd::DivZPow: {
      const unsigned nu = n->exponent;
      if (std::abs(z0) >= kDivSwitchRadius) {
        return jet_node(n->a, z0, K) / pow(JetSeries::variable(z0, K), nu);
      }
      const auto g = jet_node(n->a, 0, K + nu + kDivTail);
      std::vector<Complex> h(g.coeffs().begin() + nu, g.coeffs().end());
      return {z0, taylor_shift(h, z0, K)};
    }
  }
  return JetSeries::zero(z0, K);
}

std::vector<Real> majorant_node(const NodePtr& n, Complex z0, std::size_t K) {
  using Kd = CurveExpr::Kind;
  std::vector<Real> m(K + 1, 0);
  switch (n->kind) {
    case Kd::Constant: m[0] = std::abs(n->value); return m;
    case Kd::Variable:
      m[0] = std::abs(z0);
      if (K >= 1) m[1] = 1;
      return m;
    case Kd::Add:
    case Kd::Sub: {
      const auto a = majorant_node(n->a, z0, K), b = majorant_node(n->b, z0, K);
      for (std::size_t k = 0; k <= K; ++k) m[k] = a[k] + b[k];
      return m;
    }
    case Kd::Mul: return conv(majorant_node(n->a, z0, K), majorant_node(n->b, z0, K));
    case Kd::Pow: {
      std::vector<Real> r(K + 1, 0);
      r[0] = 1;
      const auto a = majorant_node(n->a, z0, K);
      for (unsigned e = 0; e < n->exponent; ++e) r = conv(r, a);
      return r;
    }
    case Kd::Exp: {
      auto a = majorant_node(n->a, z0, K);
      const Real head = std::abs(std::exp(eval_node(n->a, z0)));
      a[0] = 0;
      std::vector<Real> e(K + 1, 0);
      e[0] = 1;
      for (std::size_t k = 1; k <= K; ++k) {
        Real s = 0;
        for (std::size_t j = 1; j <= k; ++j) s += Real(j) * a[j] * e[k - j];
        e[k] = s / Real(k);
      }
      for (auto& v : e) v *= head;
      return e;
    }
    case Kd::Compose: {
      auto inner = majorant_node(n->b, z0, K);
      const auto outer = majorant_node(n->a, eval_node(n->b, z0), K);
      inner[0] = 0;
      std::vector<Real> acc(K + 1, 0);
      acc[0] = outer[K];
      for (std::size_t k = K; k-- > 0;) {
        acc = conv(acc, inner);
        acc[0] += outer[k];
      }
      return acc;
    }
    case Kd::DivZPow: {
      const unsigned nu = n->exponent;
      const auto g = majorant_node(n->a, 0, K + nu + kDivTail);
      std::vector<Real> h(g.begin() + nu, g.end());
      return taylor_shift_abs(h, std::abs(z0), K);
    }
  }
  return m;
}

std::optional<std::vector<Complex>> poly_node(const NodePtr& n) {
  using Kd = CurveExpr::Kind;
  switch (n->kind) {
    case Kd::Constant: return std::vector<Complex>{n->value};
    case Kd::Variable: return std::vector<Complex>{0, 1};
    case Kd::Add:
    case Kd::Sub: {
      auto a = poly_node(n->a), b = poly_node(n->b);
      if (!a || !b) return std::nullopt;
      return poly_add(std::move(*a), *b, n->kind == Kd::Add ? 1 : -1);
    }
    case Kd::Mul: {
      auto a = poly_node(n->a), b = poly_node(n->b);
      if (!a || !b) return std::nullopt;
      return poly_mul(*a, *b);
    }
    case Kd::Pow: {
      auto a = poly_node(n->a);
      if (!a) return std::nullopt;
      std::vector<Complex> r{1};
      for (unsigned e = 0; e < n->exponent; ++e) r = poly_mul(r, *a);
      return r;
    }
    case Kd::Exp: return std::nullopt;
    case Kd::Compose: {
      auto outer = poly_node(n->a), inner = poly_node(n->b);
      if (!outer || !inner) return std::nullopt;
      std::vector<Complex> acc{outer->back()};
      for (std::size_t k = outer->size() - 1; k-- > 0;) {
        acc = poly_mul(acc, *inner);
        acc[0] += (*outer)[k];
      }
      return acc;
    }
    case Kd::DivZPow: {
      auto a = poly_node(n->a);
      if (!a) return std::nullopt;
      if (a->size() <= n->exponent) return std::vector<Complex>{0};
      return std::vector<Complex>(a->begin() + n->exponent, a->end());
    }
  }
  return std::nullopt;
}

std::string format_complex(Complex c) {
  std::ostringstream os;
  os.precision(17);
  if (c.imag() == 0) {
    os << c.real();
  } else if (c.real() == 0) {
    os << c.imag() << "*i";
  } else {
    os << "(" << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "*i)";
  }
  return os.str();
}

std::string to_string_node(const NodePtr& n) {
  using Kd = CurveExpr::Kind;
  switch (n->kind) {
    case Kd::Constant: return format_complex(n->value);
    case Kd::Variable: return "z";
    case Kd::Add: return "(" + to_string_node(n->a) + "+" + to_string_node(n->b) + ")";
    case Kd::Sub: return "(" + to_string_node(n->a) + "-" + to_string_node(n->b) + ")";
    case Kd::Mul: return to_string_node(n->a) + "*" + to_string_node(n->b);
    case Kd::Pow: return "(" + to_string_node(n->a) + ")^" + std::to_string(n->exponent);
    case Kd::Exp: return "exp(" + to_string_node(n->a) + ")";
    case Kd::Compose: return "compose(" + to_string_node(n->a) + "," + to_string_node(n->b) + ")";
    case Kd::DivZPow:
      return "(" + to_string_node(n->a) + ")/z^" + std::to_string(n->exponent);
  }
  return "?";
}

std::shared_ptr<CurveExpr::Node> make(CurveExpr::Kind kind, NodePtr a = nullptr, NodePtr b = nullptr) {
  auto n = std::make_shared<CurveExpr::Node>();
  n->kind = kind;
  n->polynomial = kind != CurveExpr::Kind::Exp && (!a || a->polynomial) && (!b || b->polynomial);
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

}  // namespace

CurveExpr::CurveExpr() : CurveExpr(constant(0)) {}

CurveExpr::CurveExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

CurveExpr CurveExpr::constant(Complex c) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Constant;
  n->value = c;
  return CurveExpr(n);
}

CurveExpr CurveExpr::variable() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Variable;
  return CurveExpr(n);
}

CurveExpr CurveExpr::exp(const CurveExpr& arg) {
  if (!arg.is_polynomial()) {
    raise(ErrorKind::ParameterViolation, "exp() argument must be a polynomial");
  }
  return CurveExpr(make(Kind::Exp, arg.node_));
}

CurveExpr CurveExpr::compose(const CurveExpr& outer, const CurveExpr& inner) {
  if (!inner.is_polynomial()) {
    raise(ErrorKind::ParameterViolation, "compose() inner argument must be a polynomial");
  }
  return CurveExpr(make(Kind::Compose, outer.node_, inner.node_));
}

CurveExpr CurveExpr::polynomial(const std::vector<Complex>& coeffs) {
  if (coeffs.empty()) return constant(0);
  CurveExpr acc = constant(coeffs.back());
  const CurveExpr z = variable();
  for (std::size_t k = coeffs.size() - 1; k-- > 0;) acc = acc * z + constant(coeffs[k]);
  return acc;
}

CurveExpr CurveExpr::divide_by_z_power(const CurveExpr& g, unsigned nu) {
  if (nu == 0) return g;
  if (auto p = g.polynomial_coeffs()) {
    if (p->size() <= nu) return constant(0);
    return polynomial(std::vector<Complex>(p->begin() + nu, p->end()));
  }
  auto n = make(Kind::DivZPow, g.node_);
  n->exponent = nu;
  return CurveExpr(n);
}

CurveExpr CurveExpr::pow(unsigned exponent) const {
  auto n = make(Kind::Pow, node_);
  n->exponent = exponent;
  return CurveExpr(n);
}

CurveExpr operator+(const CurveExpr& a, const CurveExpr& b) {
  return CurveExpr(make(CurveExpr::Kind::Add, a.node_, b.node_));
}
CurveExpr operator-(const CurveExpr& a, const CurveExpr& b) {
  return CurveExpr(make(CurveExpr::Kind::Sub, a.node_, b.node_));
}
CurveExpr operator*(const CurveExpr& a, const CurveExpr& b) {
  return CurveExpr(make(CurveExpr::Kind::Mul, a.node_, b.node_));
}
CurveExpr operator-(const CurveExpr& a) { return CurveExpr::constant(-1) * a; }

CurveExpr::Kind CurveExpr::kind() const noexcept { return node_->kind; }
Complex CurveExpr::eval(Complex z) const { return eval_node(node_, z); }
JetSeries CurveExpr::jet(Complex z0, std::size_t order) const { return jet_node(node_, z0, order); }
std::vector<Real> CurveExpr::majorant_jet(Complex z0, std::size_t order) const {
  return majorant_node(node_, z0, order);
}
bool CurveExpr::is_polynomial() const { return node_->polynomial; }

std::optional<std::vector<Complex>> CurveExpr::polynomial_coeffs() const {
  auto p = poly_node(node_);
  if (p) trim(*p);
  return p;
}

std::string CurveExpr::to_string() const { return to_string_node(node_); }

bool is_identically_zero(const CurveExpr& e, Real radius, std::size_t order) {
  if (auto p = e.polynomial_coeffs()) {
    Real scale = 0;
    for (const auto& c : *p) scale = std::max(scale, std::abs(c));
    if (scale == 0) return true;
  }
  std::mt19937_64 rng(0x5eed1234u);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const Real r = std::min<Real>(1, radius / 2);
  for (int trial = 0; trial < 3; ++trial) {
    const Complex z0(Real(u(rng)) * r * Real(0.7), Real(u(rng)) * r * Real(0.7));
    const auto jet = e.jet(z0, order);
    const auto maj = e.majorant_jet(z0, order);
    for (std::size_t k = 0; k <= order; ++k) {
      if (std::abs(jet[k]) > Real(1e-9) * maj[k] + std::numeric_limits<Real>::min()) return false;
    }
  }
  return true;
}

HoloCurve::HoloCurve(std::vector<CurveExpr> coords, Real R0) : coords_(std::move(coords)), R0_(R0) {
  if (coords_.size() < 2) {
    raise(ErrorKind::ParameterViolation, "a curve into P^n needs n+1 >= 2 coordinates");
  }
  if (!(R0_ > 0)) raise(ErrorKind::ParameterViolation, "domain radius must be positive");

  constexpr std::size_t kProbe = 64;
  std::size_t nu = kProbe + 1;
  for (const auto& c : coords_) {
    if (is_identically_zero(c, R0_)) continue;
    const auto jet = c.jet(0, kProbe);
    const auto maj = c.majorant_jet(0, kProbe);
    for (std::size_t k = 0; k <= kProbe; ++k) {
      if (std::abs(jet[k]) > Real(1e-9) * maj[k]) {
        nu = std::min(nu, k);
        break;
      }
    }
  }
  if (nu > kProbe) raise(ErrorKind::AllCoordinatesVanish, "every coordinate is identically zero");
  if (nu > 0) {
    recentred_ = static_cast<unsigned>(nu);
    for (auto& c : coords_) c = CurveExpr::divide_by_z_power(c, recentred_);
  }

  if (is_polynomial()) {
    // Common zeros of a polynomial tuple are zeros of the lowest-degree
    // nonzero coordinate that every other coordinate shares.
    const CurveExpr* pivot = nullptr;
    std::size_t best = SIZE_MAX;
    for (const auto& c : coords_) {
      const auto p = *c.polynomial_coeffs();
      if (p.size() == 1 && p[0] == Complex{}) continue;
      if (p.size() < best) {
        best = p.size();
        pivot = &c;
      }
    }
    if (pivot != nullptr && best > 1) {
      for (const auto& zero : polynomial_zeros(*pivot)) {
        bool common = true;
        for (const auto& c : coords_) {
          const Real maj = c.majorant_jet(zero.location, 0)[0];
          if (std::abs(c.eval(zero.location)) > Real(1e-8) * std::max<Real>(maj, 1e-300)) {
            common = false;
            break;
          }
        }
        if (common) {
          std::ostringstream os;
          os << "coordinates share a zero near " << zero.location;
          raise(ErrorKind::NotReduced, os.str());
        }
      }
    }
  }
}

bool HoloCurve::is_polynomial() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const auto& c) { return c.is_polynomial(); });
}

bool HoloCurve::is_constant() const {
  std::mt19937_64 rng(0xc0ffeeu);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const Real r = std::min<Real>(1, R0_ / 2);
  for (int trial = 0; trial < 3; ++trial) {
    const Complex z0(Real(u(rng)) * r * Real(0.7), Real(u(rng)) * r * Real(0.7));
    const auto jets = curve_jet_at(*this, z0, 1);
    for (std::size_t i = 0; i < jets.size(); ++i) {
      for (std::size_t j = i + 1; j < jets.size(); ++j) {
        const Complex w = jets[i][0] * jets[j][1] - jets[j][0] * jets[i][1];
        const Real scale = std::abs(jets[i][0] * jets[j][1]) + std::abs(jets[j][0] * jets[i][1]);
        if (std::abs(w) > Real(1e-9) * scale) return false;
      }
    }
  }
  return true;
}

void HoloCurve::require_in_domain(Complex z) const {
  if (!(std::abs(z) < R0_)) {
    std::ostringstream os;
    os << "|z| = " << std::abs(z) << " is not below R0 = " << R0_;
    raise(ErrorKind::OutsideDomain, os.str());
  }
}

std::vector<Complex> HoloCurve::eval(Complex z) const {
  require_in_domain(z);
  std::vector<Complex> v;
  v.reserve(coords_.size());
  for (const auto& c : coords_) v.push_back(c.eval(z));
  return v;
}

std::vector<JetSeries> curve_jet_at(const HoloCurve& f, Complex z0, std::size_t K) {
  f.require_in_domain(z0);
  std::vector<JetSeries> jets;
  jets.reserve(f.coords().size());
  for (const auto& c : f.coords()) jets.push_back(c.jet(z0, K));
  return jets;
}

Real curve_norm_log(const HoloCurve& f, Complex z) {
  const auto v = f.eval(z);
  Real m = 0;
  for (const auto& c : v) m = std::max(m, std::abs(c));
  if (!(m > 0) || !std::isfinite(m)) {
    std::ostringstream os;
    os << "coordinate vector vanishes or overflows at z = " << z;
    raise(ErrorKind::AllCoordinatesVanish, os.str());
  }
  Real s = 0;
  for (const auto& c : v) s += std::norm(c / m);
  return std::log(m) + std::log(s) / 2;
}

}  // namespace nevlab
