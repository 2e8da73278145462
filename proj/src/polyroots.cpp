#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "nevlab/curve.hpp"

namespace nevlab {
namespace {

using CMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;

std::vector<Complex> companion_roots(const std::vector<Complex>& p) {
  const auto deg = static_cast<Eigen::Index>(p.size() - 1);
  CMatrix C = CMatrix::Zero(deg, deg);
  for (Eigen::Index i = 1; i < deg; ++i) C(i, i - 1) = 1;
  for (Eigen::Index i = 0; i < deg; ++i) C(i, deg - 1) = -p[static_cast<std::size_t>(i)] / p.back();
  Eigen::ComplexEigenSolver<CMatrix> solver(C, false);
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

struct Cluster {
  std::vector<std::size_t> members;
  Complex center;
};

std::vector<Cluster> single_linkage(const std::vector<Complex>& roots, Real threshold) {
  std::vector<std::size_t> parent(roots.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < roots.size(); ++i)
    for (std::size_t j = i + 1; j < roots.size(); ++j)
      if (std::abs(roots[i] - roots[j]) < threshold) parent[find(i)] = find(j);

  std::vector<Cluster> clusters;
  std::vector<std::ptrdiff_t> slot(roots.size(), -1);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const std::size_t r = find(i);
    if (slot[r] < 0) {
      slot[r] = static_cast<std::ptrdiff_t>(clusters.size());
      clusters.push_back({});
    }
    clusters[static_cast<std::size_t>(slot[r])].members.push_back(i);
  }
  for (auto& c : clusters) {
    Complex s{};
    for (auto i : c.members) s += roots[i];
    c.center = s / Real(c.members.size());
  }
  return clusters;
}

// Newton on the (s-1)-th derivative, whose zero at an s-fold root is simple.
Complex refine(const CurveExpr& poly, Complex z, std::size_t s) {
  for (int it = 0; it < 40; ++it) {
    const auto j = poly.jet(z, s);
    if (j[s] == Complex{}) break;
    const Complex step = j[s - 1] / (Real(s) * j[s]);
    z -= step;
    if (std::abs(step) <= Real(4) * std::numeric_limits<Real>::epsilon() * std::max<Real>(1, std::abs(z))) {
      break;
    }
  }
  return z;
}

}  // namespace

std::vector<PolynomialZero> polynomial_zeros(const CurveExpr& poly) {
  auto coeffs = poly.polynomial_coeffs();
  if (!coeffs) raise(ErrorKind::ParameterViolation, "polynomial_zeros needs a polynomial expression");
  std::vector<Complex> p = *coeffs;
  Real cmax = 0;
  for (const auto& c : p) cmax = std::max(cmax, std::abs(c));
  if (cmax == 0) raise(ErrorKind::IdenticallyZero, "zero polynomial has no isolated zeros");
  while (p.size() > 1 && std::abs(p.back()) <= Real(1e-13) * cmax) p.pop_back();

  std::vector<PolynomialZero> zeros;
  std::size_t origin = 0;
  while (origin + 1 < p.size() && p[origin] == Complex{}) ++origin;
  if (origin > 0) {
    zeros.push_back({Complex{}, origin});
    p.erase(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(origin));
  }
  if (p.size() <= 1) return zeros;

  const auto roots = companion_roots(p);
  Real scale = 1;
  for (const auto& r : roots) scale = std::max(scale, std::abs(r));

  for (Real theta = Real(1e-11); theta < Real(0.5); theta *= 10) {
    const auto clusters = single_linkage(roots, theta * scale);
    std::vector<PolynomialZero> found;
    bool valid = true;
    for (const auto& c : clusters) {
      const std::size_t s = c.members.size();
      const Complex z = refine(poly, c.center, s);
      const auto order = vanishing_order(poly.jet(z, s + 8));
      if (!order || *order != s) {
        valid = false;
        break;
      }
      for (const auto& other : found) {
        if (std::abs(other.location - z) < Real(1e-8) * scale) valid = false;
      }
      if (!valid) break;
      found.push_back({z, s});
    }
    if (valid) {
      zeros.insert(zeros.end(), found.begin(), found.end());
      return zeros;
    }
  }
  raise(ErrorKind::NoConvergence, "could not resolve root multiplicities of " + poly.to_string());
}

}  // namespace nevlab
