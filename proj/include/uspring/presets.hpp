#pragma once

#include <string>
#include <vector>

#include "uspring/system.hpp"

namespace uspring {

// Named reference systems.  The multi-mass chains are unit masses joined by
// unit springs with both ends fixed, reduced to modal coordinates with the
// unilateral defect injected on one eigenvector (row `defect` of A carries
// the first components of every eigenvector, the gap sits in B there).
//
//   1dof      single oscillator, omega0 = 1, unit coupling, gap
//   1dof_gap  same with gap defaulting to 0.5
//   chain2, chain3, chain5, chain20
//   modal3    lambdas (1, sqrt2, sqrt5), rank-one symmetric A = w w^T, B = 0
//   coupled3  lambdas (1, sqrt2, sqrt5), full A with distinct diagonal, B = 0
OscillatorSystem preset_system(const std::string& name, double eps, double gap = 0.0);

std::vector<std::string> preset_names();

// Fixed-fixed chain of n unit masses with unit springs, defect on the given
// mode.
OscillatorSystem chain_system(int n, int defect_mode, double gap, double eps);

}  // namespace uspring
