#pragma once

#include "json.hpp"
#include <string>
#include <vector>

#include "nevlab/brotbek.hpp"
#include "nevlab/smt.hpp"

namespace nevlab {

using Json = nlohmann::ordered_json;

/// Reads a whole file; ParseError when it cannot be opened or is not JSON.
Json load_json(const std::string& path);

/// {n, R0, coords: [expression strings]}; R0 may be omitted or "inf".
HoloCurve curve_from_json(const Json& j);

/// {n, d, terms}: terms is one polynomial string or a list of term strings.
Hypersurface hypersurface_from_json(const Json& j);

/// A single hypersurface object, an array of them, or {"divisors": [...]}.
std::vector<Hypersurface> divisors_from_json(const Json& j);

/// {k, m, n, chart, twist, log_components, terms: [{coeff_poly, alpha, log_flags}]}.
GGJetDifferential jetdiff_from_json(const Json& j);

/// Deterministic %.{digits}g formatting.
std::string format_real(Real x, int digits = 17);
/// x rounded to `digits` significant digits (identity for digits >= 17).
double rounded(Real x, int digits);

/// CSV with header `r,value,label`, one row per grid point per profile.
std::string profiles_to_csv(const std::vector<RadialProfile>& profiles, int digits = 17);

Json to_json(const RadialProfile& p, int digits = 17);
Json to_json(const ZeroSet& zs, int digits = 17);
Json to_json(const SMTReport& rep, int digits = 17);
Json to_json(const DefectEstimate& est, int digits = 17);
Json to_json(const FmtResidual& res, int digits = 17);

RadialProfile profile_from_json(const Json& j);
SMTReport smt_report_from_json(const Json& j);
DefectEstimate defect_estimate_from_json(const Json& j);

/// Exact rationals as "p/q" strings (plain integers when q = 1).
std::string to_string(const mpq_class& q);

}  // namespace nevlab
