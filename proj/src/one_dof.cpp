#include "uspring/one_dof.hpp"

#include <cmath>
#include <numbers>

#include "uspring/errors.hpp"
#include "uspring/linalg.hpp"

namespace uspring {

namespace {
constexpr double kPi = std::numbers::pi;
}

double exact_frequency(double omega0, double eps) {
  if (!(omega0 > 0.0)) raise(ErrorKind::invalid_argument, "exact_frequency: omega0 <= 0");
  const double r = 1.0 + eps / (omega0 * omega0);
  if (!(r > 0.0))
    raise(ErrorKind::domain, "exact_frequency: eps <= -omega0^2 loses oscillation");
  return 2.0 * omega0 / (1.0 + 1.0 / std::sqrt(r));
}

double Expansion1Dof::reconstruct(double eps, double t) const {
  const double s = omega(eps) * t;
  return a0 * std::cos(s) + eps * eval_series(v1, s);
}

namespace {

// Shared by the homogeneous and offset cases: builds the series and the
// frequency coefficients once the forcing a (a0 cos s - b)_+ is expanded in
// cosines.  The a0 < 0 branch rectifies -cos; b < -|a0| never detaches and
// reduces to a two-term series.
Expansion1Dof expand_contact(double omega0, double a, double b, double a0,
                             double a1, int n_max, CaseTag tag) {
  Expansion1Dof e;
  e.omega0 = omega0;
  e.a = a;
  e.b = b;
  e.a0 = a0;
  e.a1 = a1;
  e.case_tag = tag;

  const double mag = std::abs(a0);
  const double alpha0 = omega0 * omega0;
  e.contact_at_zero = a0 > 0.0;

  // (a0 cos s - b)_+ = mag * sum r_k cos(k s)
  std::vector<double> r;
  double tail_r = 0.0;
  if (b <= -mag) {
    // permanent contact: (a0 cos - b)_+ = a0 cos - b
    r.assign(static_cast<size_t>(n_max) + 1, 0.0);
    r[0] = -b / mag;
    r[1] = a0 > 0.0 ? 1.0 : -1.0;
    e.contact_boundary = e.contact_at_zero ? kPi : 0.0;
  } else {
    RectifiedCosine rc = (a0 > 0.0) ? rectified_cos_coeffs(b / a0, n_max)
                                    : rectified_neg_cos_coeffs(b / mag, n_max);
    r = std::move(rc.series.coefficients);
    e.contact_boundary = rc.beta;
    tail_r = rectified_tail_bound(b / mag, n_max);
  }

  const double gain = a * mag;
  e.alpha1 = gain * r[1] / a0;
  e.omega1 = e.alpha1 / (2.0 * omega0);

  auto& d = e.v1.coefficients;
  d.assign(r.size(), 0.0);
  d[0] = -gain * r[0] / alpha0;
  double sum_dk = d[0];
  for (int k = 2; k <= n_max; ++k) {
    d[static_cast<size_t>(k)] =
        gain * r[static_cast<size_t>(k)] / (alpha0 * (static_cast<double>(k) * k - 1.0));
    sum_dk += d[static_cast<size_t>(k)];
  }
  d[1] = a1 - sum_dk;
  e.truncation_tail = std::abs(gain) / alpha0 * tail_r /
                      (static_cast<double>(n_max + 1) * (n_max + 1) - 1.0);

  const auto a2 = alpha2_quadrature(e, std::max(1024, 4 * n_max));
  e.alpha2 = a2.alpha2;
  e.omega2 = (e.alpha2 - e.omega1 * e.omega1) / (2.0 * omega0);
  e.horizon_exponent = 1.0;
  return e;
}

}  // namespace

Expansion1Dof expand_homogeneous(double omega0, double a0, double a1, int n_max) {
  if (!(omega0 > 0.0)) raise(ErrorKind::invalid_argument, "expand_homogeneous: omega0 <= 0");
  if (a0 == 0.0)
    raise(ErrorKind::invalid_argument, "expand_homogeneous: degenerate amplitude a0 = 0");
  if (n_max < 1) raise(ErrorKind::invalid_argument, "expand_homogeneous: n_max < 1");

  Expansion1Dof e = expand_contact(omega0, 1.0, 0.0, a0, a1, n_max,
                                   CaseTag::homogeneous);
  // Closed forms, independent of the amplitude.
  e.omega1 = 1.0 / (4.0 * omega0);
  e.alpha1 = 0.5;
  e.alpha2 = -3.0 / (16.0 * omega0 * omega0);
  e.omega2 = -1.0 / (8.0 * omega0 * omega0 * omega0);
  return e;
}

Expansion1Dof expand_offset(double omega0, double a, double b, double a0,
                            double a1, int n_max) {
  if (!(omega0 > 0.0)) raise(ErrorKind::invalid_argument, "expand_offset: omega0 <= 0");
  if (n_max < 1) raise(ErrorKind::invalid_argument, "expand_offset: n_max < 1");
  if (std::abs(a0) == std::abs(b))
    raise(ErrorKind::invalid_argument,
          "expand_offset: |a0| = |b| is the critical case; use expand_critical");
  if (a0 == 0.0 && b <= 0.0)
    raise(ErrorKind::invalid_argument, "expand_offset: degenerate amplitude a0 = 0");

  if (std::abs(a0) < b) {
    // Orbit stays below the gap; linear solution is exact.
    Expansion1Dof e;
    e.omega0 = omega0;
    e.a = a;
    e.b = b;
    e.a0 = a0;
    e.a1 = a1;
    e.case_tag = CaseTag::no_contact;
    e.v1.coefficients = {0.0, a1};
    e.horizon_infinite = true;
    e.horizon_exponent = 0.0;
    return e;
  }
  return expand_contact(omega0, a, b, a0, a1, n_max, CaseTag::offset);
}

Expansion1Dof expand_critical(double omega0, double a, double b, double a0,
                              double a1) {
  if (!(omega0 > 0.0)) raise(ErrorKind::invalid_argument, "expand_critical: omega0 <= 0");
  if (b == 0.0)
    raise(ErrorKind::invalid_argument,
          "expand_critical: b = 0 is the homogeneous case, not critical");
  if (std::abs(a0) != std::abs(b))
    raise(ErrorKind::invalid_argument, "expand_critical: requires |a0| = |b|");

  Expansion1Dof e;
  e.omega0 = omega0;
  e.a = a;
  e.b = b;
  e.a0 = a0;
  e.a1 = a1;
  e.case_tag = CaseTag::critical;
  e.v1.coefficients = {0.0, a1};
  // |a0 + eps a1| > |b| for small eps exactly when a0 a1 > 0.
  if (a0 * a1 > 0.0) {
    e.horizon_exponent = 0.5;
    e.horizon_infinite = false;
  } else {
    e.horizon_exponent = 0.0;
    e.horizon_infinite = true;
  }
  return e;
}

Alpha2Result alpha2_quadrature(const Expansion1Dof& e, int n_quad) {
  Alpha2Result out;
  if (e.case_tag == CaseTag::no_contact || e.case_tag == CaseTag::critical)
    return out;
  if (n_quad < 1) raise(ErrorKind::invalid_argument, "alpha2_quadrature: n_quad < 1");
  out.underresolved = n_quad < 4 * e.v1.n_max();

  // Contact panel on [0, pi]; the integrand is smooth inside it.
  double lo = e.contact_at_zero ? 0.0 : e.contact_boundary;
  double hi = e.contact_at_zero ? e.contact_boundary : kPi;
  double integral = 0.0;
  if (hi > lo) {
    const int panels = std::max(1, (n_quad + 15) / 16);
    integral = gauss_legendre(
        [&e](double s) { return eval_series(e.v1, s) * std::cos(s); }, lo, hi,
        panels);
  }
  const double d1 = e.v1.coefficients.size() > 1 ? e.v1.coefficients[1] : 0.0;
  out.alpha2 = 2.0 * e.a * integral / (kPi * e.a0) - e.alpha1 * d1 / e.a0;
  return out;
}

}  // namespace uspring
