#pragma once

#include <string>
#include <vector>

#include <gmpxx.h>

namespace nevlab {

/// Parameters of the degree bound for hypersurfaces with hyperbolic
/// complement. Everything is exact.
struct BrotbekParams {
  mpz_class n;
  mpz_class c;
  mpz_class k;      ///< n + 1
  mpz_class kp;     ///< k (k + 1) / 2
  mpz_class delta;  ///< (k + 1) n + k
  mpq_class r0;
  mpq_class r0_alt;  ///< the factored closed form, equal to r0
};

BrotbekParams params(long n, long c);

/// (n+1)^{n+3} (n+1+c/2)^{n+3}.
mpq_class degree_bound(long n, long c);

/// Smallest admissible degree: ceil((r0 + k) delta + 2 delta).
mpz_class degree_threshold(const BrotbekParams& p);

struct Decomposition {
  mpz_class eps;
  mpz_class r;
  mpz_class r_bound;  ///< r must exceed this
};

/// d = eps + (r + k) delta with k <= eps <= k + delta - 1.
Decomposition decompose(const mpz_class& d, long n, long c);

struct ChainCheck {
  std::string name;
  std::string relation;  ///< "<", "<=" or ">"
  mpq_class lhs;
  mpq_class rhs;
  bool pass = false;
};

std::vector<ChainCheck> verify_chain(long n, long c);

struct AlphaThreshold {
  mpz_class alpha_min;
  mpz_class m_alpha;        ///< m(alpha_min)
  mpz_class m_tilde_alpha;  ///< m~(alpha_min)
  mpq_class ratio_limit;
};

AlphaThreshold alpha_threshold(const BrotbekParams& p, const mpz_class& eps, const mpz_class& r,
                               const mpz_class& beta = 0, const mpz_class& beta_tilde = 0);

/// m(alpha) and m~(alpha) for a given alpha.
mpz_class m_of_alpha(const BrotbekParams& p, const mpz_class& alpha, const mpz_class& beta);
mpz_class m_tilde_of_alpha(const BrotbekParams& p, const mpz_class& eps, const mpz_class& r, const mpz_class& alpha,
                           const mpz_class& beta_tilde);

}  // namespace nevlab
