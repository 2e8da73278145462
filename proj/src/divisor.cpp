#include "nevlab/divisor.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <sstream>

namespace nevlab {
namespace {

class MonomialParser {
 public:
  MonomialParser(std::string_view s, char letter, unsigned first, std::size_t nvars)
      : s_(s), letter_(letter), first_(first), nvars_(nvars) {}

  std::vector<Monomial> parse() {
    std::map<std::vector<unsigned>, Complex> merged;
    skip_ws();
    if (pos_ == s_.size()) fail("empty polynomial");
    bool first_term = true;
    while (pos_ < s_.size()) {
      Real sign = 1;
      if (peek('+')) {
        ++pos_;
      } else if (peek('-')) {
        ++pos_;
        sign = -1;
      } else if (!first_term) {
        fail("expected '+' or '-' between terms");
      }
      auto [coeff, exps] = term();
      merged[exps] += sign * coeff;
      first_term = false;
      skip_ws();
    }
    std::vector<Monomial> out;
    for (auto& [exps, c] : merged) {
      if (c != Complex{}) out.push_back({c, exps});
    }
    return out;
  }

 private:
  std::string_view s_;
  char letter_;
  unsigned first_;
  std::size_t nvars_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    raise(ErrorKind::ParseError, "line 1, column " + std::to_string(pos_ + 1) + ": " + msg);
  }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip_ws();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  unsigned integer() {
    unsigned v = 0;
    auto [ptr, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
    if (ec != std::errc{}) fail("expected an integer");
    pos_ = static_cast<std::size_t>(ptr - s_.data());
    return v;
  }

  std::pair<Complex, std::vector<unsigned>> term() {
    Complex coeff = 1;
    std::vector<unsigned> exps(nvars_, 0);
    bool have_factor = false;
    for (;;) {
      skip_ws();
      if (pos_ >= s_.size()) break;
      const char c = s_[pos_];
      if (c == letter_) {
        ++pos_;
        const std::size_t at = pos_;
        const unsigned idx = integer();
        if (idx < first_ || idx >= first_ + nvars_) {
          pos_ = at;
          fail(std::string("variable index out of range for ") + letter_);
        }
        unsigned e = 1;
        if (peek('^')) {
          ++pos_;
          skip_ws();
          e = integer();
        }
        exps[idx - first_] += e;
      } else if (c == '(') {
        const std::size_t close = s_.find(')', pos_);
        if (close == std::string_view::npos) fail("unbalanced parenthesis");
        const auto inner = parse_curve_expr(s_.substr(pos_ + 1, close - pos_ - 1));
        const auto p = inner.polynomial_coeffs();
        if (!p || p->size() != 1) fail("parenthesised coefficient must be a constant");
        coeff *= (*p)[0];
        pos_ = close + 1;
      } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
        double v = 0;
        auto [ptr, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
        if (ec != std::errc{}) fail("malformed number");
        pos_ = static_cast<std::size_t>(ptr - s_.data());
        if (pos_ < s_.size() && s_[pos_] == 'i') {
          ++pos_;
          coeff *= Complex(0, Real(v));
        } else {
          coeff *= Real(v);
        }
      } else if (c == 'i') {
        ++pos_;
        coeff *= Complex(0, 1);
      } else {
        fail("unexpected character '" + std::string(1, c) + "'");
      }
      have_factor = true;
      skip_ws();
      if (peek('*')) {
        ++pos_;
        continue;
      }
      if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) break;
    }
    if (!have_factor) fail("empty term");
    return {coeff, exps};
  }
};

std::size_t count_rank(const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>& m) {
  Eigen::FullPivLU<Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>> lu(m);
  lu.setThreshold(Real(1e-10));
  return static_cast<std::size_t>(lu.rank());
}

}  // namespace

std::vector<Monomial> parse_monomials(std::string_view text, char letter, unsigned first_index,
                                      std::size_t nvars) {
  return MonomialParser(text, letter, first_index, nvars).parse();
}

Hypersurface::Hypersurface(std::size_t n, std::vector<Monomial> terms) : n_(n), terms_(std::move(terms)) {
  std::erase_if(terms_, [](const Monomial& m) { return m.coeff == Complex{}; });
  if (terms_.empty()) raise(ErrorKind::IdenticallyZero, "hypersurface polynomial is zero");
  bool first = true;
  for (const auto& t : terms_) {
    if (t.exponents.size() != n + 1) {
      raise(ErrorKind::DimensionMismatch, "monomial has " + std::to_string(t.exponents.size()) +
                                              " exponents, expected " + std::to_string(n + 1));
    }
    unsigned deg = 0;
    for (auto e : t.exponents) deg += e;
    if (first) {
      d_ = deg;
      first = false;
    } else if (deg != d_) {
      raise(ErrorKind::ParameterViolation, "polynomial is not homogeneous");
    }
    coeff_norm_ = std::max(coeff_norm_, std::abs(t.coeff));
  }
  if (d_ == 0) raise(ErrorKind::ParameterViolation, "hypersurface degree must be positive");
}

Hypersurface Hypersurface::parse(std::size_t n, std::string_view text) {
  return {n, parse_monomials(text, 'x', 0, n + 1)};
}

Hypersurface Hypersurface::hyperplane(std::span<const Complex> coeffs) {
  if (coeffs.size() < 2) raise(ErrorKind::DimensionMismatch, "hyperplane needs n+1 >= 2 coefficients");
  std::vector<Monomial> terms;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    std::vector<unsigned> e(coeffs.size(), 0);
    e[i] = 1;
    terms.push_back({coeffs[i], e});
  }
  return {coeffs.size() - 1, std::move(terms)};
}

Complex Hypersurface::eval(std::span<const Complex> x) const {
  if (x.size() != n_ + 1) raise(ErrorKind::DimensionMismatch, "point has the wrong number of coordinates");
  Complex s{};
  for (const auto& t : terms_) {
    Complex m = t.coeff;
    for (std::size_t i = 0; i <= n_; ++i)
      for (unsigned e = 0; e < t.exponents[i]; ++e) m *= x[i];
    s += m;
  }
  return s;
}

std::vector<Complex> Hypersurface::linear_coeffs() const {
  if (d_ != 1) raise(ErrorKind::NotHyperplanes, "degree " + std::to_string(d_) + " is not a hyperplane");
  std::vector<Complex> a(n_ + 1);
  for (const auto& t : terms_) {
    for (std::size_t i = 0; i <= n_; ++i)
      if (t.exponents[i] == 1) a[i] += t.coeff;
  }
  return a;
}

std::string Hypersurface::to_string() const {
  std::ostringstream os;
  os.precision(17);
  bool first = true;
  for (const auto& t : terms_) {
    if (!first) os << " + ";
    first = false;
    if (t.coeff.imag() == 0) {
      os << t.coeff.real();
    } else {
      os << "(" << t.coeff.real() << (t.coeff.imag() < 0 ? "-" : "+") << std::abs(t.coeff.imag()) << "i)";
    }
    for (std::size_t i = 0; i < t.exponents.size(); ++i) {
      if (t.exponents[i] == 0) continue;
      os << "*x" << i;
      if (t.exponents[i] > 1) os << "^" << t.exponents[i];
    }
  }
  return os.str();
}

bool general_position(const Arrangement& arrangement) {
  if (arrangement.empty()) raise(ErrorKind::ParameterViolation, "empty arrangement");
  const std::size_t n = arrangement.front().n();
  std::vector<Eigen::Matrix<Complex, Eigen::Dynamic, 1>> rows;
  for (const auto& h : arrangement) {
    if (h.n() != n) raise(ErrorKind::DimensionMismatch, "hyperplanes live in different P^n");
    const auto a = h.linear_coeffs();
    Eigen::Matrix<Complex, Eigen::Dynamic, 1> v(static_cast<Eigen::Index>(n + 1));
    for (std::size_t i = 0; i <= n; ++i) v(static_cast<Eigen::Index>(i)) = a[i];
    rows.push_back(v / v.norm());
  }
  const std::size_t q = rows.size();
  const std::size_t s = std::min(q, n + 1);
  // Enumerate all s-subsets in lexicographic order.
  std::vector<std::size_t> idx(s);
  for (std::size_t i = 0; i < s; ++i) idx[i] = i;
  for (;;) {
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic> m(static_cast<Eigen::Index>(s),
                                                             static_cast<Eigen::Index>(n + 1));
    for (std::size_t r = 0; r < s; ++r) m.row(static_cast<Eigen::Index>(r)) = rows[idx[r]].transpose();
    if (count_rank(m) < s) return false;
    std::size_t i = s;
    while (i > 0 && idx[i - 1] == q - s + i - 1) --i;
    if (i == 0) return true;
    ++idx[i - 1];
    for (std::size_t j = i; j < s; ++j) idx[j] = idx[j - 1] + 1;
  }
}

CurveExpr pullback(const HoloCurve& f, const Hypersurface& Q) {
  if (f.n() != Q.n()) {
    raise(ErrorKind::DimensionMismatch,
          "curve maps to P^" + std::to_string(f.n()) + " but Q lives in P^" + std::to_string(Q.n()));
  }
  CurveExpr sum;
  bool first = true;
  for (const auto& t : Q.terms()) {
    CurveExpr m = CurveExpr::constant(t.coeff);
    for (std::size_t i = 0; i <= f.n(); ++i) {
      if (t.exponents[i] == 1) {
        m = m * f.coords()[i];
      } else if (t.exponents[i] > 1) {
        m = m * f.coords()[i].pow(t.exponents[i]);
      }
    }
    sum = first ? m : sum + m;
    first = false;
  }
  if (is_identically_zero(sum, f.radius())) {
    raise(ErrorKind::IdenticallyZero, "the curve lies inside {" + Q.to_string() + " = 0}");
  }
  return sum;
}

std::optional<mpq_class> gamma(LineBundleO D1, LineBundleO D2) {
  // Positivity of O(t a1 + a2) on P^n means t a1 + a2 > 0.
  if (D1.a > 0) {
    mpq_class g(mpz_class(-D2.a), mpz_class(D1.a));
    g.canonicalize();
    return g;
  }
  return std::nullopt;
}

}  // namespace nevlab
