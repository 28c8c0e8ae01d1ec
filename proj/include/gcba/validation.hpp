#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gcba/cone_space.hpp"

namespace gcba {

struct CheckResult {
  std::string name;
  bool passed = false;
  double margin = 0.0;  // signed: >= 0 passes
  std::string detail;
};

struct ValidationReport {
  std::string kind;  // "graph" or "cone"
  std::vector<CheckResult> checks;
  int quadruples = 0;
  double worst_four_point = 0.0;

  bool passed() const;
  /// First failed check, or nullptr.
  const CheckResult* failure() const;
};

/// Length of the shortest embedded cycle; +inf for forests.
double girth(const SphericalGraph& g);

/// Connectivity, minimum degree >= 2, girth >= 2pi.
ValidationReport validate_space(const SphericalGraph& g);

/// Base checks plus the CAT(0) four-point condition
/// |xv|^2 + |yu|^2 - |xu|^2 - |yv|^2 <= 2|xy||uv| on random quadruples.
ValidationReport validate_space(const ConeSpace& k, int quadruples = 10000, std::uint64_t seed = 1);

}  // namespace gcba
