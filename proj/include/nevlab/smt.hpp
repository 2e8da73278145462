#pragma once

#include <optional>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "nevlab/divisor.hpp"
#include "nevlab/jetdiff.hpp"
#include "nevlab/radial.hpp"

namespace nevlab {

enum class ErrorCase { InfiniteRadius, FiniteRadius };

struct SMTReport {
  RadialProfile margin;
  Real violating_measure = 0;
  bool tail_clean = true;
  ErrorCase error_case = ErrorCase::InfiniteRadius;
  Real offset = 0;  ///< O(1) calibration added to the raw margin
};

struct DefectEstimate {
  RadialProfile ratio_profile;
  Real liminf_estimate = 0;
  std::size_t mu0 = 1;
  bool tail_monotone = true;  ///< false flags an oscillating tail
};

struct FiniteCase {
  Real R0 = 1;
  Real K = 1;
};

/// Error term S(r); `finite` selects the finite-radius form.
Real error_term_S(const RadialProfile& T, std::size_t m, Real eps, const std::optional<FiniteCase>& finite, Real r);

struct CartanWronskian {
  Arrangement hyperplanes;
};

struct GeneralJetDiff {
  GGJetDifferential P;
  Hypersurface D;
  std::size_t m = 1;
  Real m_tilde = 1;
};

using SMTSpec = std::variant<CartanWronskian, GeneralJetDiff>;

inline constexpr Real kDefaultEps = Real(0.5);

SMTReport smt_margin(const HoloCurve& f, const SMTSpec& spec, const std::vector<Real>& r_grid,
                     Real eps = kDefaultEps);

/// Tail summary of an already computed margin: trapezoid measure of the
/// radii where it is negative and whether the top 20% of the grid is clean.
void summarize_margin(SMTReport& report);

DefectEstimate defect_estimate(const HoloCurve& f, const Hypersurface& Q, long A_twist, std::size_t mu0,
                               const std::vector<Real>& r_grid);

/// (1 - mu0/mu) / gamma; mu = nullopt stands for an infinite multiplicity.
Real defect_lower_bound(std::size_t mu0, std::optional<std::size_t> mu, const mpq_class& gamma);

struct Fujimoto {
  std::size_t n;
  Real rho = 0;
};
struct GammaBound {
  Real gamma_AL;
  Real rho = 0;
  std::size_t m = 1;
};
struct BrotbekBound {
  Real d;
  Real c;
  Real rho = 0;
};
struct XieBound {
  Real gamma;
  Real m;
  Real m_tilde;
};
using BoundSpec = std::variant<Fujimoto, GammaBound, BrotbekBound, XieBound>;

Real defect_relation_margin(const std::vector<Real>& defects, const BoundSpec& bound);

bool defect_consistency(const HoloCurve& f, const Hypersurface& Q, std::size_t mu0, std::optional<std::size_t> mu_claimed,
                        const mpq_class& gamma, const std::vector<Real>& r_grid);

}  // namespace nevlab
