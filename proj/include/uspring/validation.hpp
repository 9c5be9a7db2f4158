#pragma once

#include <string>
#include <vector>

namespace uspring {

struct CriterionResult {
  int index = 0;
  std::string name;
  bool pass = false;
  bool skipped = false;
  std::string measured;
  std::string expected;
  double seconds = 0.0;
};

// The acceptance suite.  quick runs only the fast smoke subset and marks the
// rest skipped; the full suite runs everything at the pinned tolerances.
std::vector<CriterionResult> run_acceptance(bool quick);

}  // namespace uspring
