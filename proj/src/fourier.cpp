#include "uspring/fourier.hpp"

#include <cmath>
#include <numbers>

#include "uspring/errors.hpp"

namespace uspring {

namespace {
constexpr double kPi = std::numbers::pi;
}

CosineSeries abs_cos_coeffs(int n_max) {
  if (n_max < 0) raise(ErrorKind::invalid_argument, "abs_cos_coeffs: n_max < 0");
  CosineSeries out;
  out.coefficients.assign(static_cast<size_t>(n_max) + 1, 0.0);
  out.coefficients[0] = 2.0 / kPi;
  for (int k = 1; 2 * k <= n_max; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    out.coefficients[static_cast<size_t>(2 * k)] =
        -4.0 / kPi * sign / (4.0 * k * k - 1.0);
  }
  return out;
}

RectifiedCosine rectified_cos_coeffs(double c, int n_max) {
  if (n_max < 0) raise(ErrorKind::invalid_argument, "rectified_cos_coeffs: n_max < 0");
  if (!(c >= -1.0 && c <= 1.0))
    raise(ErrorKind::domain, "rectified_cos_coeffs: |c| > 1 (no contact)");
  const double beta = std::acos(c);
  RectifiedCosine out;
  out.beta = beta;
  auto& cs = out.series.coefficients;
  cs.assign(static_cast<size_t>(n_max) + 1, 0.0);
  cs[0] = (std::sin(beta) - c * beta) / kPi;
  if (n_max >= 1)
    cs[1] = (0.5 * std::sin(2.0 * beta) + beta - 2.0 * c * std::sin(beta)) / kPi;
  for (int k = 2; k <= n_max; ++k) {
    cs[static_cast<size_t>(k)] =
        (std::sin((k + 1) * beta) / (k + 1) + std::sin((k - 1) * beta) / (k - 1) -
         2.0 * c * std::sin(k * beta) / k) /
        kPi;
  }
  return out;
}

RectifiedCosine rectified_neg_cos_coeffs(double c, int n_max) {
  if (n_max < 0)
    raise(ErrorKind::invalid_argument, "rectified_neg_cos_coeffs: n_max < 0");
  if (!(c >= -1.0 && c <= 1.0))
    raise(ErrorKind::domain, "rectified_neg_cos_coeffs: |c| > 1 (no contact)");
  // Support on [0, pi] is [beta, pi] with beta = arccos(-c).
  const double beta = std::acos(-c);
  RectifiedCosine out;
  out.beta = beta;
  auto& cs = out.series.coefficients;
  cs.assign(static_cast<size_t>(n_max) + 1, 0.0);
  cs[0] = (std::sin(beta) + c * beta - c * kPi) / kPi;
  if (n_max >= 1)
    cs[1] = -1.0 + beta / kPi + 0.5 * std::sin(2.0 * beta) / kPi +
            2.0 * c * std::sin(beta) / kPi;
  for (int k = 2; k <= n_max; ++k) {
    cs[static_cast<size_t>(k)] =
        (std::sin((k + 1) * beta) / (k + 1) + std::sin((k - 1) * beta) / (k - 1) +
         2.0 * c * std::sin(k * beta) / k) /
        kPi;
  }
  return out;
}

double eval_series(const CosineSeries& series, double s) {
  const auto& c = series.coefficients;
  if (c.empty()) return 0.0;
  // Chebyshev-style recurrence: cos((k+1)s) = 2 cos(s) cos(ks) - cos((k-1)s).
  double acc = c[0];
  if (c.size() == 1) return acc;
  const double cs = std::cos(s);
  double prev = 1.0;   // cos(0 s)
  double cur = cs;     // cos(1 s)
  acc += c[1] * cur;
  for (size_t k = 2; k < c.size(); ++k) {
    const double next = 2.0 * cs * cur - prev;
    prev = cur;
    cur = next;
    acc += c[k] * cur;
  }
  return acc;
}

double eval_series_deriv(const CosineSeries& series, double s) {
  const auto& c = series.coefficients;
  double acc = 0.0;
  for (size_t k = 1; k < c.size(); ++k)
    acc -= c[k] * static_cast<double>(k) * std::sin(static_cast<double>(k) * s);
  return acc;
}

double eval_series_deriv2(const CosineSeries& series, double s) {
  const auto& c = series.coefficients;
  if (c.size() <= 1) return 0.0;
  const double cs = std::cos(s);
  double prev = 1.0;
  double cur = cs;
  double acc = -c[1] * cur;
  for (size_t k = 2; k < c.size(); ++k) {
    const double next = 2.0 * cs * cur - prev;
    prev = cur;
    cur = next;
    acc -= c[k] * static_cast<double>(k * k) * cur;
  }
  return acc;
}

double rectified_tail_bound(double c, int n_max) {
  if (n_max < 1) raise(ErrorKind::invalid_argument, "rectified_tail_bound: n_max < 1");
  // |c_k| <= (2/pi)(|c| / (k(k^2-1)) + sin(beta) / (k^2-1)) for k >= 2,
  // and both sums telescope.
  const double n = n_max;
  const double sb = std::sqrt(std::max(0.0, 1.0 - c * c));
  return (std::abs(c) / (n * (n + 1.0)) + sb * (1.0 / n + 1.0 / (n + 1.0))) / kPi;
}

}  // namespace uspring
