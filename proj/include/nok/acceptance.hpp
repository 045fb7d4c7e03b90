#pragma once

#include "nok/rootsys.hpp"

#include <functional>
#include <string>
#include <vector>

// The acceptance suite: eight criteria, each with its own time limit.

namespace nok {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool correct = false;
  double seconds = 0;
  double limit_seconds = 0;
  std::string detail;
  bool pass() const { return correct && seconds < limit_seconds; }
};

struct AcceptanceOptions {
  unsigned seed = 20240611;
  unsigned jobs = 1;
  /// Independent representation dimension, compared alongside weyl_dim.
  std::function<Integer(const RootSystem&, const Vec&)> dimension_oracle;
};

CriterionResult run_criterion(int id, const AcceptanceOptions& opts = {});
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts = {});
/// "[PASS] 1 name (0.12 s < 5 s): detail"
std::string format(const CriterionResult& r);

}  // namespace nok
