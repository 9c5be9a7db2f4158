#pragma once

#include <string>
#include <vector>

#include "uspring/integrator.hpp"
#include "uspring/system.hpp"

namespace uspring {

// Periodic orbit of prescribed energy, found by shooting with zero initial
// velocities: unknowns (X0, T), residual [X(T) - X0, E(X0, 0) - c eps].
struct NNMResult {
  std::vector<double> x0;
  double T = 0.0;
  double energy = 0.0;
  double eps = 0.0;
  double residual_norm = 0.0;
  double velocity_return = 0.0;  // |X'(T)|, monitored, not solved
  int iterations = 0;
  int branch_id = 0;
};

// Residual vector of length N+1; the trajectory is integrated at tol/10.
std::vector<double> shoot_residual(const OscillatorSystem& sys,
                                   const std::vector<double>& x0, double T,
                                   double c, double tol,
                                   EnergyFunctional ef = EnergyFunctional::linear);

// Trust-region dogleg on a forward-difference Jacobian (difference step
// sqrt(tol) * scale).  Throws no_convergence past max_iter (carrying the best
// iterate in the message) and a degenerate-orbit error when the Jacobian
// condition estimate exceeds 1e12.  After convergence the period is sharpened
// to the symmetric return time (the velocity-zero crossing of the dominant
// component near T).
NNMResult solve_nnm(const OscillatorSystem& sys, const std::vector<double>& x0_guess,
                    double T_guess, double c, double tol, int max_iter,
                    EnergyFunctional ef = EnergyFunctional::linear);

struct ContinuationResult {
  std::vector<NNMResult> points;
  bool completed = false;
  std::string diagnostic;
};

// Monotone eps sweep from eps_start to eps_end seeded on linear mode shapes,
// previous solutions re-used as predictors (secant-extrapolated once two
// points exist); failed steps halve delta and retry, aborting below
// 1e-6 * delta0.
ContinuationResult continue_nnm(const OscillatorSystem& sys, int mode, double c,
                                double eps_start, double eps_end, double delta0,
                                double tol,
                                EnergyFunctional ef = EnergyFunctional::linear);

}  // namespace uspring
