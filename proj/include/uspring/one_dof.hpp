#pragma once

#include "uspring/fourier.hpp"

namespace uspring {

// Exact angular frequency of  u'' + omega0^2 u + eps u_+ = 0, from the
// half-ellipse period argument:  omega = 2 omega0 / (1 + (1+eps/omega0^2)^-1/2).
double exact_frequency(double omega0, double eps);

enum class CaseTag { homogeneous, offset, critical, no_contact };

// Strained-coordinate expansion of  u'' + omega0^2 u + eps a (u - b)_+ = 0
// with u(0) = a0 + eps a1, u'(0) = 0:
//   u(t) = a0 cos(w t) + eps v1(w t) + O(eps^2),   w = omega0 + eps omega1 + eps^2 omega2.
struct Expansion1Dof {
  double omega0 = 0, omega1 = 0, omega2 = 0;
  double alpha1 = 0, alpha2 = 0;  // alpha1 = 2 w0 w1, alpha2 = w1^2 + 2 w0 w2
  double a = 1.0, b = 0.0;        // unilateral coupling and gap
  double a0 = 0, a1 = 0;
  CosineSeries v1;                // d_k coefficients
  CaseTag case_tag = CaseTag::homogeneous;

  // Contact panel of the leading orbit on [0, pi]: [0, boundary] when
  // contact_at_zero, else [boundary, pi].  Empty panel => boundary < 0.
  double contact_boundary = -1.0;
  bool contact_at_zero = true;

  double truncation_tail = 0.0;   // bound on sum_{k>n_max} |d_k|
  double horizon_exponent = 1.0;  // validity time ~ gamma * eps^-exponent
  bool horizon_infinite = false;

  double omega(double eps) const { return omega0 + eps * omega1 + eps * eps * omega2; }
  // v0(w t) + eps v1(w t)
  double reconstruct(double eps, double t) const;
};

// Homogeneous case (a = 1, b = 0): omega1 = 1/(4 w0), omega2 = -1/(2 w0)^3,
// both closed-form; the even part of v1 is driven by |a0|.
Expansion1Dof expand_homogeneous(double omega0, double a0, double a1, int n_max);

// Offset gap b with |a0| != |b|.  |a0| < |b| returns the no-contact case
// (the linearized solution is exact).  omega2 is evaluated by panel
// quadrature of the secular condition.
Expansion1Dof expand_offset(double omega0, double a, double b, double a0,
                            double a1, int n_max);

// Grazing case |a0| = |b|, b != 0: the linear approximation with w = omega0.
// Validity is ~ eps^-1/2 when the perturbed amplitude penetrates the gap
// (a0 a1 > 0), unbounded otherwise.
Expansion1Dof expand_critical(double omega0, double a, double b, double a0,
                              double a1);

struct Alpha2Result {
  double alpha2 = 0.0;
  bool underresolved = false;  // n_quad < 4 * n_max
};

// alpha2 from the order-one secular condition
//   0 = int_0^2pi [ a H(v0 - b) v1 + alpha2 v0'' + alpha1 v1'' ] v0 ds,
// with the Heaviside panel integrated by composite Gauss-Legendre split at
// the contact boundary and the smooth projections taken in closed form.
Alpha2Result alpha2_quadrature(const Expansion1Dof& e, int n_quad);

}  // namespace uspring
