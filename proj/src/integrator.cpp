#include "uspring/integrator.hpp"

#include <algorithm>
#include <cmath>

#include "uspring/errors.hpp"

namespace uspring {

namespace {

void rhs_oscillator(const OscillatorSystem& sys, double /*t*/, const double* y,
                    double* dydt) {
  const int n = sys.size();
  const double* u = y;
  const double* v = y + n;
  for (int k = 0; k < n; ++k) dydt[k] = v[k];
  for (int k = 0; k < n; ++k) {
    double f = -sys.lambdas[k] * sys.lambdas[k] * u[k];
    const double g = sys.gap_function(k, u);
    if (g > 0.0) f -= sys.eps * g;
    dydt[n + k] = f;
  }
}

int locate_step(const TimeSeries& ts, double t) {
  // index i with times[i] <= t <= times[i+1]
  const auto it = std::upper_bound(ts.times.begin(), ts.times.end(), t);
  int i = static_cast<int>(it - ts.times.begin()) - 1;
  return std::clamp(i, 0, ts.samples() - 2);
}

}  // namespace

TimeSeries simulate(const OscillatorSystem& sys, const std::vector<double>& u0,
                    const std::vector<double>& v0, double t_end, double tol) {
  const int n = sys.size();
  if (static_cast<int>(u0.size()) != n || static_cast<int>(v0.size()) != n)
    raise(ErrorKind::invalid_argument, "simulate: state dimension mismatch");
  if (!(t_end > 0.0)) raise(ErrorKind::invalid_argument, "simulate: t_end <= 0");
  if (!(tol >= 1e-13 && tol <= 1e-3))
    raise(ErrorKind::invalid_argument, "simulate: tol outside [1e-13, 1e-3]");

  TimeSeries ts;
  ts.n_dof = n;
  ts.tol = tol;

  std::vector<double> y(2 * n);
  std::copy(u0.begin(), u0.end(), y.begin());
  std::copy(v0.begin(), v0.end(), y.begin() + n);

  std::vector<SwitchFn> switching;
  if (sys.eps > 0.0) {
    for (int k = 0; k < n; ++k) {
      bool nonzero_row = false;
      for (int j = 0; j < n; ++j) nonzero_row |= sys.a(k, j) != 0.0;
      if (!nonzero_row && sys.B[k] == 0.0) continue;
      switching.push_back(
          [&sys, k](double, const double* yy) { return sys.gap_function(k, yy); });
    }
  }

  auto push = [&](double t, const double* yy) {
    ts.times.push_back(t);
    ts.positions.insert(ts.positions.end(), yy, yy + n);
    ts.velocities.insert(ts.velocities.end(), yy + n, yy + 2 * n);
  };
  push(0.0, y.data());

  // Internal safety margin: the step controller runs well below the contract
  // tolerance so accumulated drift (energy in particular) stays within a
  // small multiple of tol over long horizons.  Events are still localized to
  // the user tolerance.
  constexpr double kSafety = 32.0;
  Rk45Options opts;
  opts.tol = std::max(tol / kSafety, 2e-14);
  opts.event_scale = tol / opts.tol;
  integrate_rk45(
      [&sys](double t, const double* yy, double* dydt) {
        rhs_oscillator(sys, t, yy, dydt);
      },
      2 * n, 0.0, t_end, y, opts, switching,
      [&](const RkStepView& step) { push(step.t1, step.y1); }, &ts.events);
  return ts;
}

void sample_state(const OscillatorSystem& sys, const TimeSeries& ts, double t,
                  double* u, double* v) {
  const int n = ts.n_dof;
  if (ts.samples() < 2) raise(ErrorKind::insufficient_data, "sample_state: empty series");
  const int i = locate_step(ts, t);

  // Rebuild the Hermite data of the step: derivatives of u are the stored
  // velocities, derivatives of v are recomputed accelerations.
  std::vector<double> y0(2 * n), y1(2 * n), f0(2 * n), f1(2 * n);
  std::copy(ts.u(i), ts.u(i) + n, y0.begin());
  std::copy(ts.v(i), ts.v(i) + n, y0.begin() + n);
  std::copy(ts.u(i + 1), ts.u(i + 1) + n, y1.begin());
  std::copy(ts.v(i + 1), ts.v(i + 1) + n, y1.begin() + n);
  rhs_oscillator(sys, ts.times[i], y0.data(), f0.data());
  rhs_oscillator(sys, ts.times[i + 1], y1.data(), f1.data());

  RkStepView step{ts.times[i], ts.times[i + 1], y0.data(), y1.data(),
                  f0.data(), f1.data(), 2 * n};
  std::vector<double> out(2 * n);
  hermite_eval(step, t, out.data());
  if (u) std::copy(out.begin(), out.begin() + n, u);
  if (v) std::copy(out.begin() + n, out.end(), v);
}

std::vector<double> resample_component(const OscillatorSystem& sys,
                                       const TimeSeries& ts, int component,
                                       double t0, double t1, int n) {
  std::vector<double> out(n);
  std::vector<double> u(ts.n_dof);
  for (int i = 0; i < n; ++i) {
    const double t = t0 + (t1 - t0) * i / n;
    sample_state(sys, ts, t, u.data(), nullptr);
    out[i] = u[component];
  }
  return out;
}

double energy(const OscillatorSystem& sys, const std::vector<double>& u,
              const std::vector<double>& v, EnergyFunctional functional) {
  const int n = sys.size();
  if (static_cast<int>(u.size()) != n || static_cast<int>(v.size()) != n)
    raise(ErrorKind::invalid_argument, "energy: state dimension mismatch");
  double e = 0.0;
  for (int k = 0; k < n; ++k)
    e += 0.5 * (v[k] * v[k] + sys.lambdas[k] * sys.lambdas[k] * u[k] * u[k]);
  if (functional == EnergyFunctional::with_contact_potential) {
    for (int k = 0; k < n; ++k) {
      const double g = sys.gap_function(k, u.data());
      if (g > 0.0) e += 0.5 * sys.eps * g * g;
    }
  }
  return e;
}

}  // namespace uspring
