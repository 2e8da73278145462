#include <cctype>
#include <charconv>
#include <string>

#include "nevlab/curve.hpp"

namespace nevlab {
namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  CurveExpr parse() {
    CurveExpr e = sum();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    raise(ErrorKind::ParseError, "line 1, column " + std::to_string(pos_ + 1) + ": " + msg);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  bool accept_word(std::string_view w) {
    skip_ws();
    if (s_.substr(pos_, w.size()) != w) return false;
    const std::size_t end = pos_ + w.size();
    if (end < s_.size() && std::isalnum(static_cast<unsigned char>(s_[end]))) return false;
    pos_ = end;
    return true;
  }

  CurveExpr sum() {
    CurveExpr e = product();
    for (;;) {
      if (accept('+')) {
        e = e + product();
      } else if (accept('-')) {
        e = e - product();
      } else {
        return e;
      }
    }
  }

  CurveExpr product() {
    CurveExpr e = unary();
    while (accept('*')) e = e * unary();
    return e;
  }

  CurveExpr unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  CurveExpr power() {
    CurveExpr base = primary();
    if (accept('^')) {
      skip_ws();
      const std::size_t start = pos_;
      unsigned value = 0;
      auto [ptr, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), value);
      if (ec != std::errc{} || ptr == s_.data() + start) fail("expected a nonnegative integer exponent");
      pos_ = static_cast<std::size_t>(ptr - s_.data());
      return base.pow(value);
    }
    return base;
  }

  CurveExpr primary() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of expression");
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (accept('(')) {
      CurveExpr e = sum();
      expect(')');
      return e;
    }
    if (accept_word("exp")) {
      expect('(');
      const std::size_t at = pos_;
      CurveExpr arg = sum();
      expect(')');
      if (!arg.is_polynomial()) {
        pos_ = at;
        fail("exp() argument must be a polynomial in z");
      }
      return CurveExpr::exp(arg);
    }
    if (accept_word("compose")) {
      expect('(');
      CurveExpr outer = sum();
      expect(',');
      const std::size_t at = pos_;
      CurveExpr inner = sum();
      expect(')');
      if (!inner.is_polynomial()) {
        pos_ = at;
        fail("compose() inner argument must be a polynomial in z");
      }
      return CurveExpr::compose(outer, inner);
    }
    if (accept_word("pi")) return CurveExpr::constant(kPi);
    if (accept_word("z")) return CurveExpr::variable();
    if (accept_word("i")) return CurveExpr::constant(Complex(0, 1));
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  CurveExpr number() {
    double value = 0;
    auto [ptr, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), value);
    if (ec != std::errc{}) fail("malformed number");
    pos_ = static_cast<std::size_t>(ptr - s_.data());
    // Imaginary literal such as 2i or 0.5i.
    if (pos_ < s_.size() && s_[pos_] == 'i' &&
        (pos_ + 1 >= s_.size() || !std::isalnum(static_cast<unsigned char>(s_[pos_ + 1])))) {
      ++pos_;
      return CurveExpr::constant(Complex(0, Real(value)));
    }
    return CurveExpr::constant(Real(value));
  }
};

}  // namespace

CurveExpr parse_curve_expr(std::string_view text) { return Parser(text).parse(); }

}  // namespace nevlab
