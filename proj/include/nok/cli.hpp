#pragma once

#include "nok/ghflow.hpp"

#include <iosfwd>
#include <string>

namespace nok {

/// Settings shared by every subcommand. Defaults come from FlowOptions and
/// the NOK_* environment variables; a --config JSON file overrides them.
struct RunConfig {
  std::string subcommand;
  std::string input;
  std::string output;
  FlowOptions flow;
  unsigned seed = 20240611;
  unsigned jobs = 1;

  /// Applies a JSON object with keys rtol, atol, newton_tol, blowup, epsilon,
  /// seed, jobs. Unknown keys and non-positive tolerances are rejected.
  void apply_file(const std::string& path);
  void validate() const;
};

/// Exit codes: 0 success, 1 failed acceptance criteria, 2 validation,
/// 3 numerical failure, 4 inconclusive search.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nok
