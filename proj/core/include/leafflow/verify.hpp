#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "leafflow/family.hpp"

namespace leafflow {

struct SuiteResult {
  std::string name;
  double max_residual = 0.0;
  double threshold = 0.0;
  Point3 worst_point;
  bool passed() const { return max_residual < threshold; }
};

struct VerifyReport {
  std::string family_name;
  std::vector<SuiteResult> suites;
  bool all_passed() const {
    for (const auto& s : suites)
      if (!s.passed()) return false;
    return true;
  }
};

// Runs the full identity suite on seeded random points: chain identity,
// closed-form metriplectic matrix, Casimir tangency, induced-metric
// determinant, double-bracket metric relation, gradient identity, and
// (linear preset only) the matrix-flow reduction.
VerifyReport run_verification(const Family& family, const AmbientMetric& g,
                              int n_points, std::uint64_t seed);

}  // namespace leafflow
