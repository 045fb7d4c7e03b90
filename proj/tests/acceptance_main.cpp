// Acceptance runner: one line per criterion, nonzero exit on any failure.

#include "nok/acceptance.hpp"
#include "support/gt_patterns.hpp"

#include <iostream>

int main() {
  nok::AcceptanceOptions opts;
  opts.dimension_oracle = [](const nok::RootSystem&, const nok::Vec& lambda) {
    return nok::Integer(static_cast<unsigned long>(oracle::gt_count(nok::to_int64(lambda))));
  };
  bool all = true;
  for (const auto& r : nok::run_acceptance(opts)) {
    std::cout << nok::format(r) << std::endl;
    all = all && r.pass();
  }
  return all ? 0 : 1;
}
