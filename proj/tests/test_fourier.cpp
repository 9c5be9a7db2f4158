#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include "uspring/errors.hpp"
#include "uspring/fourier.hpp"

using namespace uspring;

namespace {

constexpr double kPi = std::numbers::pi;

double rectified(double s, double c) { return std::max(std::cos(s) - c, 0.0); }

// Test-only adaptive Simpson oracle, independent of the closed forms.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int depth = 0) {
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double left = (m - a) / 6.0 * (fa + 4.0 * f(lm) + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * f(rm) + fb);
  if (depth > 40 || std::abs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson(f, a, m, 0.5 * tol, depth + 1) +
         adaptive_simpson(f, m, b, 0.5 * tol, depth + 1);
}

// L2 truncation error of the rectified series against the pointwise function,
// measured by brute-force sampling.
double l2_error(double c, int n_max, int grid = 4096) {
  const auto rc = rectified_cos_coeffs(c, n_max);
  double acc = 0.0;
  for (int i = 0; i < grid; ++i) {
    const double s = 2.0 * kPi * i / grid;
    const double d = eval_series(rc.series, s) - rectified(s, c);
    acc += d * d;
  }
  return std::sqrt(acc * 2.0 * kPi / grid);
}

}  // namespace

TEST_CASE("abs_cos constant term and odd harmonics") {
  const auto s0 = abs_cos_coeffs(0);
  CHECK(s0.coefficients.size() == 1);
  CHECK(s0.coefficients[0] == doctest::Approx(2.0 / kPi).epsilon(1e-15));

  const auto s5 = abs_cos_coeffs(5);
  CHECK(s5.coefficients[1] == 0.0);
  CHECK(s5.coefficients[3] == 0.0);
  CHECK(s5.coefficients[5] == 0.0);
  CHECK(s5.coefficients[2] == doctest::Approx(4.0 / (3.0 * kPi)));
  CHECK(s5.coefficients[4] == doctest::Approx(-4.0 / (15.0 * kPi)));
}

TEST_CASE("abs_cos partial sum at s=0") {
  const auto s = abs_cos_coeffs(200);
  CHECK(std::abs(eval_series(s, 0.0) - 1.0) < 2e-3);
  // The alternating tail makes the actual error far smaller than the crude
  // tail bound sum_{k>100} 4/(pi (4k^2-1)).
  CHECK(std::abs(eval_series(s, 0.0) - 1.0) < 1e-4);
}

TEST_CASE("rectified coefficients at reference gaps") {
  SUBCASE("c = 0") {
    const auto rc = rectified_cos_coeffs(0.0, 8);
    CHECK(rc.beta == doctest::Approx(kPi / 2).epsilon(1e-15));
    CHECK(rc.series.coefficients[1] == doctest::Approx(0.5).epsilon(1e-14));
  }
  SUBCASE("c = 1: identically zero") {
    const auto rc = rectified_cos_coeffs(1.0, 16);
    CHECK(rc.beta == doctest::Approx(0.0));
    for (double v : rc.series.coefficients) CHECK(std::abs(v) < 1e-15);
  }
  SUBCASE("c = -1: full contact, cos s + 1") {
    const auto rc = rectified_cos_coeffs(-1.0, 16);
    CHECK(rc.beta == doctest::Approx(kPi));
    CHECK(rc.series.coefficients[0] == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(rc.series.coefficients[1] == doctest::Approx(1.0).epsilon(1e-13));
    for (size_t k = 2; k < rc.series.coefficients.size(); ++k)
      CHECK(std::abs(rc.series.coefficients[k]) < 1e-13);
  }
  SUBCASE("|c| > 1 is a domain error") {
    CHECK_THROWS_AS(rectified_cos_coeffs(1.5, 4), Error);
    CHECK_THROWS_AS(rectified_neg_cos_coeffs(-1.0001, 4), Error);
  }
}

TEST_CASE("rectified_neg coefficients") {
  SUBCASE("c = 0 projects to -1/2 on cos") {
    const auto rc = rectified_neg_cos_coeffs(0.0, 8);
    CHECK(rc.series.coefficients[1] == doctest::Approx(-0.5).epsilon(1e-14));
  }
  SUBCASE("c = 1: identically zero") {
    const auto rc = rectified_neg_cos_coeffs(1.0, 12);
    for (double v : rc.series.coefficients) CHECK(std::abs(v) < 1e-13);
  }
  SUBCASE("half-turn identity against rectified_cos") {
    // (-cos s - c)_+ = (cos(s+pi) - c)_+, so coefficients match with
    // alternating signs.  Both sides come from independent closed forms.
    for (double c : {-0.9, -0.5, -0.1, 0.0, 0.3, 0.7, 0.99}) {
      const auto pos = rectified_cos_coeffs(c, 32);
      const auto neg = rectified_neg_cos_coeffs(c, 32);
      for (int k = 0; k <= 32; ++k) {
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        CHECK(neg.series.coefficients[k] ==
              doctest::Approx(sign * pos.series.coefficients[k]).epsilon(1e-12));
      }
    }
  }
  SUBCASE("pointwise against the rectifier") {
    const auto rc = rectified_neg_cos_coeffs(0.4, 600);
    double worst = 0.0;
    for (int i = 0; i < 500; ++i) {
      const double s = 2.0 * kPi * i / 500;
      worst = std::max(worst, std::abs(eval_series(rc.series, s) -
                                       std::max(-std::cos(s) - 0.4, 0.0)));
    }
    CHECK(worst < 1e-2);
  }
}

TEST_CASE("eval_series basics") {
  CosineSeries zero{{0.0, 0.0, 0.0}};
  CHECK(eval_series(zero, 1.234) == 0.0);
  CosineSeries constant{{1.0}};
  CHECK(eval_series(constant, kPi) == doctest::Approx(1.0));
  CosineSeries s{{0.5, -0.25, 0.125}};
  const double x = 0.77;
  CHECK(eval_series(s, x) ==
        doctest::Approx(0.5 - 0.25 * std::cos(x) + 0.125 * std::cos(2 * x))
            .epsilon(1e-15));
  CHECK(eval_series_deriv(s, x) ==
        doctest::Approx(0.25 * std::sin(x) - 0.25 * std::sin(2 * x)).epsilon(1e-14));
  CHECK(eval_series_deriv2(s, x) ==
        doctest::Approx(0.25 * std::cos(x) - 0.5 * std::cos(2 * x)).epsilon(1e-14));
}

TEST_CASE("series evenness property") {
  std::mt19937 gen(12345);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  std::uniform_real_distribution<double> arg(-10.0, 10.0);
  for (int trial = 0; trial < 200; ++trial) {
    CosineSeries s;
    s.coefficients.resize(1 + gen() % 12);
    for (auto& c : s.coefficients) c = coeff(gen);
    const double x = arg(gen);
    CHECK(eval_series(s, x) == doctest::Approx(eval_series(s, -x)).epsilon(1e-12));
  }
}

TEST_CASE("rectified series converges pointwise, c = 0.3, n_max = 400") {
  const auto rc = rectified_cos_coeffs(0.3, 400);
  double max_err = 0.0, l2 = 0.0;
  const int n = 1000;
  for (int i = 0; i < n; ++i) {
    const double s = 2.0 * kPi * i / n;
    const double e = std::abs(eval_series(rc.series, s) - rectified(s, 0.3));
    max_err = std::max(max_err, e);
    l2 += e * e;
  }
  l2 = std::sqrt(l2 / n);
  CHECK(max_err <= 1e-2);
  CHECK(l2 <= 1e-3);
}

TEST_CASE("L2 error decreases as n_max doubles") {
  for (double c : {-0.8, -0.3, 0.0, 0.4, 0.9}) {
    double prev = l2_error(c, 50);
    for (int n : {100, 200, 400, 800}) {
      const double cur = l2_error(c, n);
      CHECK(cur <= 1.1 * prev);
      prev = cur;
    }
  }
}

TEST_CASE("Parseval against adaptive quadrature split at the kink") {
  for (double c : {-0.6, 0.0, 0.25, 0.8}) {
    const auto rc = rectified_cos_coeffs(c, 800);
    double sum = 2.0 * rc.series.coefficients[0] * rc.series.coefficients[0];
    for (size_t k = 1; k < rc.series.coefficients.size(); ++k)
      sum += rc.series.coefficients[k] * rc.series.coefficients[k];
    auto f = [c](double s) {
      const double v = rectified(s, c);
      return v * v;
    };
    const double beta = std::acos(c);
    const double integral = adaptive_simpson(f, 0.0, beta, 1e-12) +
                            adaptive_simpson(f, beta, 2.0 * kPi - beta, 1e-12) +
                            adaptive_simpson(f, 2.0 * kPi - beta, 2.0 * kPi, 1e-12);
    CHECK(std::abs(sum - integral / kPi) < 1e-4);
  }
}

TEST_CASE("rectified(0) equals half cos projection plus half abs_cos") {
  const int n = 64;
  const auto rc = rectified_cos_coeffs(0.0, n);
  const auto ac = abs_cos_coeffs(n);
  for (int k = 0; k <= n; ++k) {
    double expected = 0.5 * ac.coefficients[k];
    if (k == 1) expected += 0.5;
    CHECK(rc.series.coefficients[k] == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("tail bound dominates the dropped coefficients") {
  for (double c : {-0.7, 0.0, 0.5}) {
    const auto full = rectified_cos_coeffs(c, 4000);
    for (int n : {10, 50, 200}) {
      double dropped = 0.0;
      for (size_t k = n + 1; k < full.series.coefficients.size(); ++k)
        dropped += std::abs(full.series.coefficients[k]);
      CHECK(dropped <= rectified_tail_bound(c, n) * (1.0 + 1e-12));
    }
  }
}
