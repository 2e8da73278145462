#include "nevlab/brotbek.hpp"

#include "nevlab/types.hpp"

namespace nevlab {
namespace {

mpz_class ipow(const mpz_class& b, unsigned long e) {
  mpz_class out;
  mpz_pow_ui(out.get_mpz_t(), b.get_mpz_t(), e);
  return out;
}

mpq_class qpow(const mpq_class& b, unsigned long e) {
  mpq_class out = 1;
  for (unsigned long i = 0; i < e; ++i) out *= b;
  return out;
}

mpz_class ceil_q(const mpq_class& q) {
  mpz_class out;
  mpz_cdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

mpz_class floor_q(const mpq_class& q) {
  mpz_class out;
  mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

void require(long n, long c) {
  if (n < 2) raise(ErrorKind::ParameterViolation, "need n >= 2");
  if (c < 3) raise(ErrorKind::ParameterViolation, "need c >= 3");
}

// delta^{k-1} k (eps + k delta)
mpz_class theta(const BrotbekParams& p, const mpz_class& eps) {
  return ipow(p.delta, p.k.get_ui() - 1) * p.k * (eps + p.k * p.delta);
}

}  // namespace

BrotbekParams params(long n, long c) {
  require(n, c);
  BrotbekParams p;
  p.n = n;
  p.c = c;
  p.k = p.n + 1;
  p.kp = p.k * (p.k + 1) / 2;
  p.delta = (p.k + 1) * p.n + p.k;
  const mpz_class dk = ipow(p.delta, p.k.get_ui() - 1);
  p.r0 = mpq_class(p.c * dk * p.kp + dk * (p.delta + 1) * (p.delta + 1));
  p.r0_alt = mpq_class(dk * (p.delta + 1)) * (mpq_class(p.delta + 1) + mpq_class(p.c, 2));
  p.r0_alt.canonicalize();
  if (p.r0 != p.r0_alt) raise(ErrorKind::BoundViolation, "the two closed forms of r0 disagree");
  if (2 * p.kp != p.delta + 1) raise(ErrorKind::BoundViolation, "k' != (delta + 1) / 2");
  return p;
}

mpq_class degree_bound(long n, long c) {
  require(n, c);
  const auto e = static_cast<unsigned long>(n + 3);
  mpq_class half_c(c, 2);
  half_c.canonicalize();
  return mpq_class(ipow(n + 1, e)) * qpow(mpq_class(n + 1) + half_c, e);
}

mpz_class degree_threshold(const BrotbekParams& p) { return ceil_q((p.r0 + p.k) * p.delta + 2 * p.delta); }

Decomposition decompose(const mpz_class& d, long n, long c) {
  const auto p = params(n, c);
  if (d < degree_threshold(p)) raise(ErrorKind::BelowThreshold, "d is below (r0 + k) delta + 2 delta");
  Decomposition out;
  mpz_class rem;
  mpz_class shifted = d - p.k;
  mpz_fdiv_r(rem.get_mpz_t(), shifted.get_mpz_t(), p.delta.get_mpz_t());
  out.eps = p.k + rem;
  out.r = (d - out.eps) / p.delta - p.k;
  const mpz_class th = theta(p, out.eps);
  out.r_bound = p.c * ipow(p.delta, p.k.get_ui() - 1) * p.kp + th;
  if (out.eps < p.k || out.eps > p.k + p.delta - 1) raise(ErrorKind::BoundViolation, "eps out of range");
  if (out.eps + (out.r + p.k) * p.delta != d) raise(ErrorKind::BoundViolation, "decomposition does not add up");
  if (!(out.r > out.r_bound)) raise(ErrorKind::BoundViolation, "r does not exceed its lower bound");
  if (!(out.r > th)) raise(ErrorKind::BoundViolation, "r does not exceed delta^{k-1} k (eps + k delta)");
  return out;
}

std::vector<ChainCheck> verify_chain(long n, long c) {
  const auto p = params(n, c);
  const mpq_class half_c = mpq_class(c, 2);
  const mpq_class nq(n);
  std::vector<ChainCheck> out;

  ChainCheck a{"a", "<", mpq_class(p.k * (p.k + p.delta - 1 + p.k * p.delta)), mpq_class((p.delta + 1) * (p.delta + 1))};
  a.pass = a.lhs < a.rhs;
  out.push_back(a);

  const mpq_class thr = (p.r0 + p.k) * p.delta + 2 * p.delta;
  const mpq_class base = nq * nq + 3 * nq + 2;
  ChainCheck b{"b", "<=", thr, qpow(base, static_cast<unsigned long>(n + 2)) * (base + half_c)};
  b.pass = b.lhs <= b.rhs;
  out.push_back(b);

  ChainCheck cc{"c", ">", (nq + 1) * (nq + 1 + half_c), base + half_c};
  cc.pass = cc.lhs > cc.rhs;
  out.push_back(cc);

  ChainCheck d{"d", "<", thr, degree_bound(n, c)};
  d.pass = d.lhs < d.rhs;
  out.push_back(d);
  for (auto& ch : out) {
    ch.lhs.canonicalize();
    ch.rhs.canonicalize();
  }
  return out;
}

mpz_class m_of_alpha(const BrotbekParams& p, const mpz_class& alpha, const mpz_class& beta) {
  return beta + alpha * ipow(p.delta, p.k.get_ui() - 1) * p.kp;
}

mpz_class m_tilde_of_alpha(const BrotbekParams& p, const mpz_class& eps, const mpz_class& r, const mpz_class& alpha,
                           const mpz_class& beta_tilde) {
  return alpha * (r - theta(p, eps)) - beta_tilde;
}

AlphaThreshold alpha_threshold(const BrotbekParams& p, const mpz_class& eps, const mpz_class& r, const mpz_class& beta,
                               const mpz_class& beta_tilde) {
  if (beta < 0 || beta_tilde < 0) raise(ErrorKind::ParameterViolation, "beta and beta~ must be nonnegative");
  const mpz_class B = ipow(p.delta, p.k.get_ui() - 1) * p.kp;
  const mpz_class A = r - theta(p, eps);
  if (!(r > p.c * B + theta(p, eps))) raise(ErrorKind::PreconditionViolation, "r is too small for any alpha");
  AlphaThreshold out;
  out.ratio_limit = mpq_class(A, B);
  out.ratio_limit.canonicalize();
  if (!(out.ratio_limit > mpq_class(p.c))) raise(ErrorKind::BoundViolation, "ratio limit does not exceed c");
  // alpha (A - c B) > beta~ + c beta  and  alpha A > beta~.
  const mpz_class a1 = floor_q(mpq_class(beta_tilde + p.c * beta, A - p.c * B)) + 1;
  const mpz_class a2 = floor_q(mpq_class(beta_tilde, A)) + 1;
  out.alpha_min = a1 > a2 ? a1 : a2;
  if (out.alpha_min < 0) out.alpha_min = 0;
  out.m_alpha = m_of_alpha(p, out.alpha_min, beta);
  out.m_tilde_alpha = m_tilde_of_alpha(p, eps, r, out.alpha_min, beta_tilde);
  return out;
}

}  // namespace nevlab
