// Exercises the shared-library C API surface.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <numbers>
#include <vector>

#include "uspring.h"

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("error reporting") {
  usp_system* sys = nullptr;
  CHECK(usp_system_preset("no_such_preset", 0.1, 0.0, &sys) == USP_ERR_INVALID);
  CHECK(std::strlen(usp_last_error()) > 0);
  double w = 0.0;
  CHECK(usp_exact_frequency(1.0, -2.0, &w) == USP_ERR_DOMAIN);
  CHECK(usp_exact_frequency(1.0, 0.1, nullptr) == USP_ERR_INVALID);
}

TEST_CASE("fourier surface") {
  std::vector<double> c(9);
  REQUIRE(usp_abs_cos_coeffs(8, c.data()) == USP_OK);
  CHECK(c[0] == doctest::Approx(2.0 / kPi));
  CHECK(c[1] == 0.0);

  double beta = 0.0;
  std::vector<double> rc(17);
  REQUIRE(usp_rectified_cos_coeffs(0.0, 16, &beta, rc.data()) == USP_OK);
  CHECK(beta == doctest::Approx(kPi / 2));
  CHECK(rc[1] == doctest::Approx(0.5));
  CHECK(usp_rectified_cos_coeffs(1.7, 4, &beta, rc.data()) == USP_ERR_DOMAIN);

  std::vector<double> nc(17);
  REQUIRE(usp_rectified_neg_cos_coeffs(0.0, 16, &beta, nc.data()) == USP_OK);
  CHECK(nc[1] == doctest::Approx(-0.5));

  const double v = usp_eval_cosine_series(rc.data(), 17, 0.3);
  CHECK(v == doctest::Approx(std::max(std::cos(0.3), 0.0)).epsilon(0.05));
}

TEST_CASE("one-dof expansion handles") {
  usp_expansion1* e = nullptr;
  REQUIRE(usp_expand1_homogeneous(1.0, 1.0, 0.0, 300, &e) == USP_OK);
  usp_expansion1_info info;
  REQUIRE(usp_expansion1_get(e, &info) == USP_OK);
  CHECK(info.omega1 == doctest::Approx(0.25));
  CHECK(info.omega2 == doctest::Approx(-0.125));
  CHECK(info.case_tag == 0);

  std::vector<double> d(info.n_coeffs);
  REQUIRE(usp_expansion1_coeffs(e, d.data(), info.n_coeffs) == USP_OK);
  CHECK(usp_expansion1_coeffs(e, d.data(), 2) == USP_ERR_INVALID);

  double a2 = 0.0;
  int warn = -1;
  REQUIRE(usp_alpha2_quadrature(e, 1600, &a2, &warn) == USP_OK);
  CHECK(std::abs(a2 + 3.0 / 16.0) < 1e-4);
  CHECK(warn == 0);
  usp_expansion1_free(e);

  usp_expansion1* crit = nullptr;
  CHECK(usp_expand1_critical(1.0, 1.0, 0.7, 1.0, 0.0, &crit) == USP_ERR_INVALID);
  CHECK(usp_expand1_offset(1.0, 1.0, 1.0, 1.0, 0.0, 100, &crit) == USP_ERR_INVALID);
}

TEST_CASE("system, simulation and period measurement") {
  usp_system* sys = nullptr;
  REQUIRE(usp_system_preset("1dof", 0.1, 0.0, &sys) == USP_OK);
  int n = 0;
  usp_system_size(sys, &n);
  REQUIRE(n == 1);

  const double u0 = 1.0, v0 = 0.0;
  usp_series* ts = nullptr;
  REQUIRE(usp_simulate(sys, &u0, &v0, 80.0, 1e-10, &ts) == USP_OK);

  double period = 0.0, se = 0.0;
  REQUIRE(usp_measure_period(sys, ts, 0, &period, &se) == USP_OK);
  CHECK(period ==
        doctest::Approx((1.0 + 1.0 / std::sqrt(1.1)) * kPi).epsilon(1e-9));

  int n_samples = 0, n_dof = 0, n_events = 0;
  usp_series_size(ts, &n_samples, &n_dof, &n_events);
  CHECK(n_samples > 100);
  CHECK(n_events > 10);

  double um = 0.0, vm = 0.0;
  REQUIRE(usp_series_sample(ts, 1.234, &um, &vm) == USP_OK);
  CHECK(std::abs(um) <= 1.2);

  double e = 0.0;
  REQUIRE(usp_energy(sys, &u0, &v0, 1, &e) == USP_OK);
  CHECK(e == doctest::Approx(0.5 * 1.1));

  usp_series_free(ts);
  usp_system_free(sys);
}

TEST_CASE("n-dof expansion and amplitudes") {
  usp_system* sys = nullptr;
  REQUIRE(usp_system_preset("modal3", 0.02, 0.0, &sys) == USP_OK);

  usp_expansion_n* e = nullptr;
  REQUIRE(usp_expand_mode(sys, 0, 1.0, 0.0, 200, &e) == USP_OK);
  usp_expansion_n_info info;
  REQUIRE(usp_expansion_n_get(e, &info) == USP_OK);
  CHECK(info.n_dof == 3);
  CHECK(info.omega1 == doctest::Approx(1.0 / 4.0).epsilon(1e-12));  // a00 = 1

  std::vector<double> ak_exp(3), ak_direct(3);
  REQUIRE(usp_expansion_n_amplitudes(e, ak_exp.data()) == USP_OK);
  REQUIRE(usp_periodic_initial_amplitudes(sys, 0, 1.0, 200, ak_direct.data()) ==
          USP_OK);
  for (int k = 1; k < 3; ++k) CHECK(ak_exp[k] == ak_direct[k]);  // same code path
  usp_expansion_n_free(e);

  std::vector<double> l1(3), leps(3);
  std::vector<int> conv(3);
  REQUIRE(usp_first_order_all_modes(sys, std::vector<double>{1, 0.5, 0.25}.data(),
                                    0.0, l1.data(), leps.data(), conv.data()) ==
          USP_OK);
  CHECK(l1[0] == doctest::Approx(1.0 / 4.0));
  usp_system_free(sys);
}

TEST_CASE("nnm branch through the C surface") {
  usp_system* sys = nullptr;
  REQUIRE(usp_system_preset("1dof", 0.0, 0.0, &sys) == USP_OK);
  usp_branch* branch = nullptr;
  REQUIRE(usp_continue_nnm(sys, 0, 0.5, 0.02, 0.06, 0.02, 1e-9, &branch) == USP_OK);
  int points = 0, n = 0, completed = 0;
  usp_branch_size(branch, &points, &n, &completed);
  CHECK(completed == 1);
  REQUIRE(points >= 3);
  double x0 = 0.0;
  usp_nnm_point info;
  REQUIRE(usp_branch_point(branch, points - 1, &x0, &info) == USP_OK);
  double w_exact = 0.0;
  usp_exact_frequency(1.0, info.eps, &w_exact);
  CHECK(2.0 * kPi / info.T == doctest::Approx(w_exact).epsilon(1e-8));
  usp_branch_free(branch);
  usp_system_free(sys);
}

TEST_CASE("analysis helpers through the C surface") {
  // chi
  const double u[3] = {0.0, 1.0, -1.0};
  const double v[3] = {1.0, 1.0, 1.0};
  double chi[3];
  REQUIRE(usp_chi_remainder(u, v, 3, 0.1, chi) == USP_OK);
  CHECK(chi[0] == doctest::Approx(1.0));
  CHECK(chi[1] == doctest::Approx(0.0));
  CHECK(chi[2] == doctest::Approx(0.0));

  // sampled small-set measure of a triangle wave dip
  std::vector<double> t, s;
  for (int i = 0; i <= 2000; ++i) {
    t.push_back(i / 1000.0);
    s.push_back(std::abs(i / 1000.0 - 1.0));  // |t - 1|
  }
  double mu = 0.0;
  REQUIRE(usp_small_set_measure(t.data(), s.data(), 2001, 0.25, &mu) == USP_OK);
  CHECK(mu == doctest::Approx(0.5).epsilon(1e-2));

  double cT[2], c2T[2], c0 = 0.0;
  const double lambdas[2] = {1.0, std::sqrt(2.0)};
  const double amps[2] = {1.0, 1.0};
  REQUIRE(usp_abs_spectrum_gap(lambdas, amps, 2, 500.0, cT, c2T, &c0) == USP_OK);
  CHECK(c0 > 0.5);
}
