#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tdnls/field.hpp"

// Named verification cases: exact-solution residuals, the reduced equations
// and the numerical conjugation between the F = 1 and F = 1/t equations.
namespace tdnls::verify {

struct CheckResult {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct CaseReport {
  std::string name;
  std::vector<CheckResult> checks;
  /// Sampled fields worth plotting (written as CSV by the CLI).
  std::vector<ComplexField> dumps;

  bool pass() const;
};

struct CaseOptions {
  std::uint64_t seed = 20240611;
  int points = 100;
};

/// standing, travelling, td-soliton, ansatz, ode-g, theorem2.
const std::vector<std::string>& case_names();

/// Throws ConfigError for an unknown name.
CaseReport run_case(const std::string& name, const CaseOptions& opts = {});

/// Max |forward route - backward route| over the central 80% of the grid:
/// psi data at t' = -1 evolved under F = 1 to t' = -1/2 and then mapped to
/// t = 2, against the data mapped to t = 1 and evolved under F = 1/t to t = 2.
struct CommutingSquare {
  double linf = 0.0;
  /// Largest relative mass drift over both numerical legs.
  double mass_drift = 0.0;
  /// Relative energy drift of the F = 1 leg.
  double energy_drift = 0.0;
  ComplexField evolve_then_map;
  ComplexField map_then_evolve;
};
CommutingSquare commuting_square(int n = 1024, double dt = 1e-3);

} // namespace tdnls::verify
