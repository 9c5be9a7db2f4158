#pragma once

#include <functional>
#include <vector>

namespace uspring {

// Adaptive Dormand-Prince 5(4) pair with switching-surface localization.
// The right-hand side must be continuous; kinks in its derivative are kept
// at step boundaries by cutting accepted steps at event times.

using RhsFn = std::function<void(double t, const double* y, double* dydt)>;
using SwitchFn = std::function<double(double t, const double* y)>;

struct RkEvent {
  double t;
  int index;  // which switching function crossed zero
};

// One accepted step, enough for 4th-order Hermite dense output.
struct RkStepView {
  double t0, t1;
  const double* y0;
  const double* y1;
  const double* f0;
  const double* f1;
  int dim;
};

// Cubic Hermite interpolation of the step state at t in [t0, t1].
void hermite_eval(const RkStepView& step, double t, double* out);

struct Rk45Options {
  double tol = 1e-10;          // local error per step, also event tolerance
  double event_scale = 1.0;    // events localized to |g| <= tol * event_scale
  int max_steps = 50'000'000;
};

// Integrates from (t0, y) to t_end.  on_accept is called for every accepted
// step (event-cut steps included).  Events, if any, are appended.
void integrate_rk45(const RhsFn& rhs, int dim, double t0, double t_end,
                    std::vector<double>& y, const Rk45Options& opts,
                    const std::vector<SwitchFn>& switching,
                    const std::function<void(const RkStepView&)>& on_accept,
                    std::vector<RkEvent>* events);

}  // namespace uspring
