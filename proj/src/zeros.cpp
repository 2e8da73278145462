#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <optional>

#include "nevlab/radial.hpp"

namespace nevlab {
namespace {

constexpr std::size_t kMaxZeros = 10000;
constexpr Real kMaxScanRadius = 50;

struct Sample {
  Complex z;
  Complex v;
  Complex dv;
};

Sample probe(const CurveExpr& psi, Complex z) {
  const auto j = psi.jet(z, 1);
  return {z, j[0], j[1]};
}

bool usable(const Sample& s) {
  return s.v != Complex{} && std::isfinite(s.v.real()) && std::isfinite(s.v.imag()) &&
         std::isfinite(s.dv.real()) && std::isfinite(s.dv.imag());
}

// Continuous change of arg psi along path(s), s in [s0, s1]. Steps are
// bisected until the phase moves little and the logarithmic derivative
// cannot hide a full turn; nullopt when the path runs into a zero.
class ArgTracker {
 public:
  ArgTracker(const CurveExpr& psi, std::function<Complex(Real)> path) : psi_(psi), path_(std::move(path)) {}

  std::optional<Real> change(Real s0, Real s1, std::size_t pieces) {
    Real total = 0;
    Sample a = probe(psi_, path_(s0));
    if (!usable(a)) return std::nullopt;
    for (std::size_t i = 1; i <= pieces; ++i) {
      const Real t0 = s0 + (s1 - s0) * Real(i - 1) / Real(pieces);
      const Real t1 = s0 + (s1 - s0) * Real(i) / Real(pieces);
      Sample b = probe(psi_, path_(t1));
      if (!usable(b)) return std::nullopt;
      const auto d = segment(t0, t1, a, b, 0);
      if (!d) return std::nullopt;
      total += *d;
      a = b;
    }
    return total;
  }

 private:
  const CurveExpr& psi_;
  std::function<Complex(Real)> path_;

  std::optional<Real> segment(Real s0, Real s1, const Sample& a, const Sample& b, int depth) {
    const Real step = std::abs(b.z - a.z);
    const Real d = std::arg(b.v / a.v);
    if (std::abs(d) < Real(0.5) && std::abs(a.dv / a.v) * step < Real(0.5) &&
        std::abs(b.dv / b.v) * step < Real(0.5)) {
      return d;
    }
    if (depth > 60) return std::nullopt;
    const Real sm = (s0 + s1) / 2;
    const Sample m = probe(psi_, path_(sm));
    if (!usable(m)) return std::nullopt;
    const auto left = segment(s0, sm, a, m, depth + 1);
    if (!left) return std::nullopt;
    const auto right = segment(sm, s1, m, b, depth + 1);
    if (!right) return std::nullopt;
    return *left + *right;
  }
};

std::optional<long> to_turns(std::optional<Real> phase) {
  if (!phase) return std::nullopt;
  const Real turns = *phase / (2 * kPi);
  const Real rounded = std::round(turns);
  if (std::abs(turns - rounded) > Real(0.05)) return std::nullopt;
  return static_cast<long>(rounded);
}

struct Rect {
  Real x0, y0, x1, y1;
  Real size() const { return std::max(x1 - x0, y1 - y0); }
  Complex centre() const { return {(x0 + x1) / 2, (y0 + y1) / 2}; }
  Real min_modulus() const {
    const Real dx = x0 > 0 ? x0 : (x1 < 0 ? -x1 : 0);
    const Real dy = y0 > 0 ? y0 : (y1 < 0 ? -y1 : 0);
    return std::hypot(dx, dy);
  }
  bool contains(Complex z, Real slack) const {
    return z.real() >= x0 - slack && z.real() <= x1 + slack && z.imag() >= y0 - slack && z.imag() <= y1 + slack;
  }
};

std::optional<long> rect_count(const CurveExpr& psi, const Rect& r) {
  const std::array<Complex, 5> c{Complex{r.x0, r.y0}, Complex{r.x1, r.y0}, Complex{r.x1, r.y1}, Complex{r.x0, r.y1},
                                 Complex{r.x0, r.y0}};
  Real total = 0;
  for (std::size_t e = 0; e < 4; ++e) {
    const Complex a = c[e];
    const Complex b = c[e + 1];
    ArgTracker tr(psi, [a, b](Real s) { return a + s * (b - a); });
    const auto d = tr.change(0, 1, 8);
    if (!d) return std::nullopt;
    total += *d;
  }
  return to_turns(total);
}

class RectScanner {
 public:
  RectScanner(const CurveExpr& psi, Real r_max) : psi_(psi), r_max_(r_max), scale_(std::max<Real>(1, r_max)) {}

  void run(const Rect& r, long count, std::vector<ZeroRecord>& out) {
    if (count == 0) return;
    if (count < 0) raise(ErrorKind::NoConvergence, "negative zero count: psi is not holomorphic here");
    if (r.min_modulus() > r_max_ * (1 + Real(1e-6)) + Real(1e-6)) return;
    if (out.size() > kMaxZeros) raise(ErrorKind::NoConvergence, "more than 10000 zeros in the scan disk");

    const std::size_t c = static_cast<std::size_t>(count);
    if (r.size() < Real(0.25) * scale_) {
      if (auto z = refine(r.centre(), c); z && r.contains(*z, Real(1e-9) * scale_)) {
        out.push_back({*z, c});
        return;
      }
    }
    if (r.size() < Real(1e-9) * scale_) {
      // Zeros closer than the merge radius are reported as one.
      out.push_back({r.centre(), c});
      return;
    }
    for (Real frac : kSplits) {
      const Real xm = r.x0 + frac * (r.x1 - r.x0);
      const Real ym = r.y0 + frac * (r.y1 - r.y0);
      const std::array<Rect, 4> kids{Rect{r.x0, r.y0, xm, ym}, Rect{xm, r.y0, r.x1, ym}, Rect{r.x0, ym, xm, r.y1},
                                     Rect{xm, ym, r.x1, r.y1}};
      std::array<long, 4> counts{};
      bool ok = true;
      long sum = 0;
      for (std::size_t i = 0; i < 4 && ok; ++i) {
        const auto n = rect_count(psi_, kids[i]);
        ok = n.has_value();
        if (ok) {
          counts[i] = *n;
          sum += *n;
        }
      }
      if (!ok || sum != count) continue;
      for (std::size_t i = 0; i < 4; ++i) run(kids[i], counts[i], out);
      return;
    }
    // Near a high-order zero round-off can defeat the argument tracking of
    // the children; the parent count is still trustworthy.
    if (auto z = refine(r.centre(), c); z && r.contains(*z, Real(1e-6) * scale_)) {
      out.push_back({*z, c});
      return;
    }
    raise(ErrorKind::NoConvergence, "could not separate zeros by subdivision");
  }

 private:
  static constexpr std::array<Real, 5> kSplits{Real(0.5137), Real(0.4709), Real(0.5419), Real(0.4431), Real(0.5873)};
  const CurveExpr& psi_;
  Real r_max_;
  Real scale_;

  // Newton iteration on psi^{(c-1)}, whose zero is simple when psi has a
  // zero of order c; accepted only when the local jet vanishes to order
  // exactly c at the limit.
  std::optional<Complex> refine(Complex z, std::size_t c) const {
    for (int it = 0; it < 80; ++it) {
      const auto j = psi_.jet(z, c);
      const Complex num = j.derivative_value(c - 1);
      const Complex den = j.derivative_value(c);
      if (num == Complex{}) break;
      if (den == Complex{}) return std::nullopt;
      const Complex step = num / den;
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) return std::nullopt;
      z -= step;
      if (std::abs(step) < Real(1e-15) * scale_) break;
    }
    const auto order = vanishing_order(psi_.jet(z, c + 8));
    if (!order || *order != c) return std::nullopt;
    return z;
  }
};

}  // namespace

long winding_number(const CurveExpr& psi, Real radius) {
  if (!(radius > 0)) raise(ErrorKind::ParameterViolation, "winding radius must be positive");
  ArgTracker tr(psi, [radius](Real t) { return std::polar(radius, t); });
  const auto n = to_turns(tr.change(0, 2 * kPi, 64));
  if (!n) raise(ErrorKind::BoundaryZero, "a zero lies on the circle |z| = " + std::to_string(double(radius)));
  return *n;
}

ZeroSet zero_set_of(const CurveExpr& psi, Real r_max, Real domain_radius) {
  if (!(r_max > 0)) raise(ErrorKind::ParameterViolation, "scan radius must be positive");
  if (!(r_max < domain_radius)) raise(ErrorKind::OutsideDomain, "scan radius must stay inside the domain");
  const Real scale = std::max<Real>(1, r_max);

  std::vector<ZeroRecord> raw;
  if (psi.is_polynomial()) {
    for (const auto& z : polynomial_zeros(psi)) raw.push_back({z.location, z.order});
  } else {
    if (r_max > kMaxScanRadius) raise(ErrorKind::ParameterViolation, "transcendental scans are limited to r <= 50");
    // Offset square so that symmetric zero patterns do not sit on the edges.
    const Real half = r_max * Real(1.0137) + Real(0.0071);
    const Complex c0{Real(0.00311), Real(-0.00233)};
    Rect outer{c0.real() - half, c0.imag() - half, c0.real() + half, c0.imag() + half};
    std::optional<long> count = rect_count(psi, outer);
    for (int tries = 0; !count && tries < 4; ++tries) {
      outer.x1 += Real(0.0013) * scale;
      outer.y1 += Real(0.0017) * scale;
      count = rect_count(psi, outer);
    }
    if (!count) raise(ErrorKind::NoConvergence, "the scan square keeps meeting zeros");
    RectScanner(psi, r_max).run(outer, *count, raw);
  }

  ZeroSet zs;
  zs.r_max = r_max;
  const Real tol = Real(1e-8) * scale;
  for (const auto& z : raw) {
    const Real a = std::abs(z.location);
    if (std::abs(a - r_max) <= tol) {
      raise(ErrorKind::BoundaryZero, "a zero lies on the scan circle |z| = " + std::to_string(double(r_max)));
    }
    if (a > r_max) continue;
    if (a < tol) {
      zs.origin_order += z.order;
    } else {
      zs.records.push_back(z);
    }
  }
  std::sort(zs.records.begin(), zs.records.end(), [](const ZeroRecord& a, const ZeroRecord& b) {
    const Real ma = std::abs(a.location), mb = std::abs(b.location);
    if (ma != mb) return ma < mb;
    return std::arg(a.location) < std::arg(b.location);
  });
  if (!psi.is_polynomial()) {
    const long w = winding_number(psi, r_max);
    if (w != static_cast<long>(zs.total_order())) {
      raise(ErrorKind::NoConvergence, "zero scan found " + std::to_string(zs.total_order()) +
                                          " zeros but the winding number is " + std::to_string(w));
    }
  }
  return zs;
}

}  // namespace nevlab
