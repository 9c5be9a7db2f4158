#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "uspring/errors.hpp"
#include "uspring/integrator.hpp"
#include "uspring/linalg.hpp"
#include "uspring/presets.hpp"
#include "uspring/analysis.hpp"

using namespace uspring;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("linear limit reproduces the closed form") {
  OscillatorSystem sys = make_system({1.0, std::sqrt(2.0)},
                                     {0.4, 0.1, 0.1, 0.7}, {0.0, 0.0}, 0.0);
  const double tol = 1e-10;
  const TimeSeries ts = simulate(sys, {0.7, -0.3}, {0.2, 0.5}, 25.0, tol);
  double worst = 0.0;
  for (int i = 0; i < ts.samples(); ++i) {
    const double t = ts.times[i];
    for (int k = 0; k < 2; ++k) {
      const double lam = sys.lambdas[k];
      const double u0 = (k == 0) ? 0.7 : -0.3;
      const double v0 = (k == 0) ? 0.2 : 0.5;
      const double exact = u0 * std::cos(lam * t) + v0 * std::sin(lam * t) / lam;
      worst = std::max(worst, std::abs(ts.u(i)[k] - exact));
    }
  }
  CHECK(worst <= 10.0 * tol * 25.0);  // linear-in-time accumulation allowed
  CHECK(ts.events.empty());
}

TEST_CASE("period of the homogeneous contact oscillator at eps = 0.1") {
  const double tol = 1e-10;
  OscillatorSystem sys = preset_system("1dof", 0.1);
  const TimeSeries ts = simulate(sys, {1.0}, {0.0}, 100.0, tol);
  const double expected = (1.0 + 1.0 / std::sqrt(1.1)) * kPi;
  CHECK(std::abs(measure_period(sys, ts, 0).period - expected) <= 10.0 * tol);
  // two switching events per period
  CHECK(static_cast<int>(ts.events.size()) >= 2 * 15);
}

TEST_CASE("energy is conserved along gradient trajectories") {
  const double tol = 1e-11;
  OscillatorSystem sys = make_system({1.0}, {1.0}, {0.3}, 0.4);
  const double t_end = 100.0 * 2.0 * kPi;
  const TimeSeries ts = simulate(sys, {1.1}, {0.0}, t_end, tol);
  const double e0 = energy(sys, {1.1}, {0.0}, EnergyFunctional::with_contact_potential);
  double worst = 0.0;
  for (int i = 0; i < ts.samples(); ++i) {
    const double e = energy(sys, {ts.u(i)[0]}, {ts.v(i)[0]},
                            EnergyFunctional::with_contact_potential);
    worst = std::max(worst, std::abs(e - e0) / e0);
  }
  CHECK(worst <= 100.0 * tol);
}

TEST_CASE("energy functional values") {
  OscillatorSystem sys = make_system({2.0}, {1.0}, {0.0}, 0.3);
  CHECK(energy(sys, {0.0}, {0.0}, EnergyFunctional::with_contact_potential) == 0.0);
  const double a0 = 1.5;
  CHECK(energy(sys, {a0}, {0.0}, EnergyFunctional::with_contact_potential) ==
        doctest::Approx(0.5 * (4.0 + 0.3) * a0 * a0).epsilon(1e-15));
  CHECK(energy(sys, {a0}, {0.0}, EnergyFunctional::linear) ==
        doctest::Approx(0.5 * 4.0 * a0 * a0).epsilon(1e-15));
}

TEST_CASE("convergence order against a tight reference") {
  OscillatorSystem sys = make_system({1.0}, {1.0}, {0.2}, 0.2);
  const double t_end = 30.0;
  const TimeSeries ref = simulate(sys, {1.0}, {0.0}, t_end, 1e-12);
  const double u_ref = ref.u(ref.samples() - 1)[0];
  const double v_ref = ref.v(ref.samples() - 1)[0];

  std::vector<double> hbar, err;
  for (double tol : {1e-5, 1e-6, 1e-7, 1e-8}) {
    const TimeSeries ts = simulate(sys, {1.0}, {0.0}, t_end, tol);
    const double e = std::hypot(ts.u(ts.samples() - 1)[0] - u_ref,
                                ts.v(ts.samples() - 1)[0] - v_ref);
    hbar.push_back(t_end / ts.samples());
    err.push_back(std::max(e, 1e-15));
  }
  CHECK(fit_loglog_slope(hbar, err) >= 4.0);
}

TEST_CASE("time reversibility") {
  std::mt19937 gen(7);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  const double tol = 1e-10;
  OscillatorSystem sys =
      make_system({1.0, std::sqrt(3.0)}, {0.9, 0.3, 0.3, 1.2}, {0.1, -0.2}, 0.3);
  for (int trial = 0; trial < 3; ++trial) {
    std::vector<double> u0 = {dist(gen), dist(gen)}, v0 = {dist(gen), dist(gen)};
    const double t_end = 20.0;
    const TimeSeries fwd = simulate(sys, u0, v0, t_end, tol);
    std::vector<double> u1(fwd.u(fwd.samples() - 1), fwd.u(fwd.samples() - 1) + 2);
    std::vector<double> v1(fwd.v(fwd.samples() - 1), fwd.v(fwd.samples() - 1) + 2);
    for (auto& v : v1) v = -v;
    const TimeSeries back = simulate(sys, u1, v1, t_end, tol);
    for (int k = 0; k < 2; ++k) {
      CHECK(std::abs(back.u(back.samples() - 1)[k] - u0[k]) <= 100.0 * tol);
      CHECK(std::abs(back.v(back.samples() - 1)[k] + v0[k]) <= 100.0 * tol);
    }
  }
}

TEST_CASE("events sit on the switching surface") {
  const double tol = 1e-10;
  OscillatorSystem sys =
      make_system({1.0, std::sqrt(2.0)}, {1.0, 0.4, 0.0, 0.0}, {0.3, 0.0}, 0.5);
  const TimeSeries ts = simulate(sys, {1.0, 0.4}, {0.0, 0.0}, 50.0, tol);
  REQUIRE(!ts.events.empty());
  std::vector<double> u(2), v(2);
  for (const auto& ev : ts.events) {
    sample_state(sys, ts, ev.t, u.data(), v.data());
    const double g = sys.gap_function(ev.index, u.data());
    const double scale = std::max(1.0, std::max(std::abs(u[0]), std::abs(u[1])));
    CHECK(std::abs(g) <= tol * scale);
  }
  // between consecutive events the active set is constant: strictly
  // increasing event times at least
  for (size_t i = 1; i < ts.events.size(); ++i)
    CHECK(ts.events[i].t > ts.events[i - 1].t);
}

TEST_CASE("argument validation") {
  OscillatorSystem sys = preset_system("1dof", 0.1);
  CHECK_THROWS_AS(simulate(sys, {1.0}, {0.0}, -1.0, 1e-10), Error);
  CHECK_THROWS_AS(simulate(sys, {1.0}, {0.0}, 1.0, 1e-2), Error);
  CHECK_THROWS_AS(simulate(sys, {1.0}, {0.0}, 1.0, 1e-14), Error);
  CHECK_THROWS_AS(simulate(sys, {1.0, 0.0}, {0.0}, 1.0, 1e-10), Error);
}

TEST_CASE("dense sampling matches stored nodes") {
  OscillatorSystem sys = preset_system("1dof", 0.2, 0.1);
  const TimeSeries ts = simulate(sys, {1.0}, {0.0}, 10.0, 1e-10);
  double u, v;
  sample_state(sys, ts, ts.times[5], &u, &v);
  CHECK(u == doctest::Approx(ts.u(5)[0]).epsilon(1e-12));
  CHECK(v == doctest::Approx(ts.v(5)[0]).epsilon(1e-12));
  // interpolated mid-step state obeys the energy to interpolation accuracy
  const double tm = 0.5 * (ts.times[5] + ts.times[6]);
  sample_state(sys, ts, tm, &u, &v);
  const double e0 = energy(sys, {1.0}, {0.0}, EnergyFunctional::with_contact_potential);
  const double em = energy(sys, {u}, {v}, EnergyFunctional::with_contact_potential);
  CHECK(std::abs(em - e0) / e0 < 1e-8);
}
