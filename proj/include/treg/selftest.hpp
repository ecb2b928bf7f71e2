#pragma once

#include <string>
#include <vector>

namespace treg {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

/// The full exact-arithmetic acceptance suite (criteria 1-12). Every verdict
/// is exact except the quadrature criterion, which is float64 by nature.
std::vector<CriterionResult> run_acceptance_suite();

/// Float64 health checks with tolerance-tagged detail lines: element laws,
/// decomposition round trips and the quadrature criterion.
std::vector<CriterionResult> run_float_selftest(double tol);

}  // namespace treg
