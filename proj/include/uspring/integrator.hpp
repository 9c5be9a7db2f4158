#pragma once

#include <vector>

#include "uspring/rk45.hpp"
#include "uspring/system.hpp"

namespace uspring {

// Sampled trajectory at the integrator's accepted steps.  Positions and
// velocities are stored row-major (sample-major); between consecutive events
// the active contact set is constant.
struct TimeSeries {
  int n_dof = 0;
  std::vector<double> times;      // strictly increasing
  std::vector<double> positions;  // size times.size() * n_dof
  std::vector<double> velocities;
  std::vector<RkEvent> events;    // switching times of (A U - B)_k
  double tol = 0.0;

  int samples() const { return static_cast<int>(times.size()); }
  const double* u(int i) const { return positions.data() + static_cast<size_t>(i) * n_dof; }
  const double* v(int i) const { return velocities.data() + static_cast<size_t>(i) * n_dof; }
};

// Adaptive RK5(4) with localized switching events; local error per step
// bounded by tol.  Requires t_end > 0 and tol in [1e-13, 1e-3].
TimeSeries simulate(const OscillatorSystem& sys, const std::vector<double>& u0,
                    const std::vector<double>& v0, double t_end, double tol);

// Hermite interpolation of the stored trajectory at time t.  Accelerations
// are recomputed from the system, so velocity interpolation keeps the
// integrator's dense-output order.
void sample_state(const OscillatorSystem& sys, const TimeSeries& ts, double t,
                  double* u, double* v);

// Uniform resampling of one position component on [t0, t1].
std::vector<double> resample_component(const OscillatorSystem& sys,
                                       const TimeSeries& ts, int component,
                                       double t0, double t1, int n);

enum class EnergyFunctional { linear, with_contact_potential };

// linear: (|V|^2 + U' Lambda^2 U) / 2.  with_contact_potential adds
// eps/2 * sum_k ((A U - B)_k+)^2, exactly conserved only when the contact
// force is the gradient of that potential.
double energy(const OscillatorSystem& sys, const std::vector<double>& u,
              const std::vector<double>& v, EnergyFunctional functional);

}  // namespace uspring
