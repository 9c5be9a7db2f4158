#pragma once

#include <vector>

namespace uspring {

// Finite cosine expansion sum_{k=0..n_max} c_k cos(k s).  Even in s by
// construction.
struct CosineSeries {
  std::vector<double> coefficients;  // index = harmonic number

  int n_max() const { return static_cast<int>(coefficients.size()) - 1; }
};

// Truncated series of |cos s| = 2/pi - (4/pi) sum_k (-1)^k cos(2ks)/(4k^2-1).
// Coefficients at odd harmonics are exactly zero.
CosineSeries abs_cos_coeffs(int n_max);

struct RectifiedCosine {
  // Support boundary in [0, pi].  For (cos s - c)_+ the support on [0, pi]
  // is [0, beta] with beta = arccos(c); for (-cos s - c)_+ it is [beta, pi]
  // with beta = arccos(-c).
  double beta;
  CosineSeries series;
};

// Cosine coefficients of (cos s - c)_+, |c| <= 1.  c = +/-1 returns the
// analytic limit series instead of erroring.  The k = 1 coefficient is
// always computed from its dedicated formula; the generic expression has a
// removable singularity there.
RectifiedCosine rectified_cos_coeffs(double c, int n_max);

// Cosine coefficients of (-cos s - c)_+, |c| <= 1.  Coefficient-wise this
// equals rectified_cos_coeffs with alternating signs (substitute s -> s+pi),
// but it is computed from its own closed form.
RectifiedCosine rectified_neg_cos_coeffs(double c, int n_max);

double eval_series(const CosineSeries& series, double s);
double eval_series_deriv(const CosineSeries& series, double s);
double eval_series_deriv2(const CosineSeries& series, double s);

// Upper bound on sum_{k > n_max} |c_k| for the rectified series at gap c,
// valid for both orientations.  n_max >= 1.
double rectified_tail_bound(double c, int n_max);

}  // namespace uspring
