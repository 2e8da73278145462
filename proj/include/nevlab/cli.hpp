#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "nevlab/types.hpp"

namespace nevlab {

struct RunConfig {
  std::string command;
  std::string curve_path;
  std::string divisor_path;
  std::string jetdiff_path;
  Real r_min = 1;
  Real r_max = 10;
  std::size_t grid_points = 64;
  std::optional<std::size_t> k_jet;
  Real eps = Real(0.5);
  std::size_t mu0 = 1;
  std::optional<std::size_t> trunc;
  int precision = 17;
  std::string format = "csv";
  std::uint64_t seed = 0;

  // smt
  bool cartan = false;
  Real m_tilde = 1;
  // defect
  long twist = 1;
  std::string mu;  ///< claimed multiplicity, "inf" or empty
  // loglemma
  std::string phi;
  std::size_t l = 1;
  Real t = Real(0.1);
  Real p = Real(0.5);
  Real gap = 1;
  bool twisted = false;
  // degree-bound
  long n = 2;
  long c = 3;
  std::string d;
  std::string beta = "0";
  std::string beta_tilde = "0";
};

/// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitHypothesis = 2;
inline constexpr int kExitNumeric = 3;

/// Throws ParameterViolation unless r_min >= 1, grid_points >= 8, r_max > r_min.
void validate(const RunConfig& cfg);

/// Runs one subcommand, writing the artifact to `out` and diagnostics to `err`.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses argv into a RunConfig and runs it.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nevlab
