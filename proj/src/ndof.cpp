#include "uspring/ndof.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "uspring/errors.hpp"
#include "uspring/linalg.hpp"

namespace uspring {

namespace {

constexpr double kPi = std::numbers::pi;

// Cosine coefficients of (X cos s - b)_+ together with the contact panel on
// [0, pi] and a bound on the dropped tail.
struct ForcingSeries {
  std::vector<double> f;
  double tail = 0.0;
  double lo = 0.0, hi = -1.0;  // contact panel; empty when hi < lo
};

ForcingSeries rectified_forcing(double X, double b, int n_max) {
  ForcingSeries out;
  out.f.assign(static_cast<size_t>(n_max) + 1, 0.0);
  if (X == 0.0) {
    if (-b > 0.0) {
      out.f[0] = -b;
      out.lo = 0.0;
      out.hi = kPi;
    }
    return out;
  }
  const double mag = std::abs(X);
  const double c = b / mag;
  if (c >= 1.0) return out;  // never in contact
  if (c <= -1.0) {
    // never detaches: X cos - b
    out.f[0] = -b;
    out.f[1] = X;
    out.lo = 0.0;
    out.hi = kPi;
    return out;
  }
  const bool positive = X > 0.0;
  RectifiedCosine rc =
      positive ? rectified_cos_coeffs(c, n_max) : rectified_neg_cos_coeffs(c, n_max);
  for (int l = 0; l <= n_max; ++l) out.f[l] = mag * rc.series.coefficients[l];
  out.tail = mag * rectified_tail_bound(c, n_max);
  if (positive) {
    out.lo = 0.0;
    out.hi = rc.beta;
  } else {
    out.lo = rc.beta;
    out.hi = kPi;
  }
  return out;
}

void screen_or_throw(const OscillatorSystem& sys, int mode) {
  for (int k = 0; k < sys.size(); ++k) {
    if (k == mode) continue;
    if (!sys.z_independent(k, mode))
      raise(ErrorKind::resonance,
            "modes " + std::to_string(k) + " and " + std::to_string(mode) +
                " fail the Z-independence screen");
  }
}

}  // namespace

double ExpansionNDof::reconstruct(int k, double eps, double t) const {
  const double s = omega(eps) * t;
  double out = eps * eval_series(v1[k], s);
  if (k == mode) out += a0 * std::cos(s);
  return out;
}

ExpansionNDof expand_mode_second_order(const OscillatorSystem& sys, int mode,
                                       double a0, double a1, int n_max,
                                       double resonance_tol) {
  const int n = sys.size();
  if (mode < 0 || mode >= n)
    raise(ErrorKind::invalid_argument, "expand_mode_second_order: mode out of range");
  if (a0 == 0.0)
    raise(ErrorKind::invalid_argument, "expand_mode_second_order: a0 = 0");
  if (n_max < 2) raise(ErrorKind::invalid_argument, "expand_mode_second_order: n_max < 2");
  screen_or_throw(sys, mode);

  ExpansionNDof e;
  e.mode = mode;
  e.omega0 = sys.lambdas[mode];
  e.a0 = a0;
  e.a1 = a1;
  e.v1.resize(n);
  e.a_k.assign(n, 0.0);
  e.forcing_tail.assign(n, 0.0);

  const double alpha0 = e.omega0 * e.omega0;

  // Excited mode: same structure as the one-dof offset case.
  const ForcingSeries fm =
      rectified_forcing(sys.a(mode, mode) * a0, sys.B[mode], n_max);
  e.alpha1 = fm.f[1] / a0;
  e.omega1 = e.alpha1 / (2.0 * e.omega0);
  {
    auto& d = e.v1[mode].coefficients;
    d.assign(fm.f.size(), 0.0);
    d[0] = -fm.f[0] / alpha0;
    double sum = d[0];
    for (int l = 2; l <= n_max; ++l) {
      d[l] = fm.f[l] / (alpha0 * (static_cast<double>(l) * l - 1.0));
      sum += d[l];
    }
    d[1] = a1 - sum;
    e.a_k[mode] = a1;
    e.forcing_tail[mode] = fm.tail;
  }

  // Passive modes: unique 2pi-periodic response to -(a_km v0 - b_k)_+.
  for (int k = 0; k < n; ++k) {
    if (k == mode) continue;
    const ForcingSeries fk = rectified_forcing(sys.a(k, mode) * a0, sys.B[k], n_max);
    const double lk2 = sys.lambdas[k] * sys.lambdas[k];
    auto& g = e.v1[k].coefficients;
    g.assign(fk.f.size(), 0.0);
    double sum = 0.0;
    for (int l = 0; l <= n_max; ++l) {
      const double den = static_cast<double>(l) * l * alpha0 - lk2;
      if (std::abs(den) < resonance_tol * lk2)
        raise(ErrorKind::resonance, "near-resonance between mode " + std::to_string(k) +
                                        " and harmonic " + std::to_string(l) +
                                        " of the excited mode");
      g[l] = fk.f[l] / den;
      sum += g[l];
    }
    e.a_k[k] = sum;
    e.forcing_tail[k] = fk.tail;
  }

  // Second-order secular condition on the excited mode.
  double integral = 0.0;
  if (fm.hi > fm.lo) {
    const int n_quad = std::max(1024, 4 * n_max);
    integral = gauss_legendre(
        [&](double s) {
          double acc = 0.0;
          for (int k = 0; k < n; ++k)
            acc += sys.a(mode, k) * eval_series(e.v1[k], s);
          return acc * std::cos(s);
        },
        fm.lo, fm.hi, (n_quad + 15) / 16);
  }
  const double d1 = e.v1[mode].coefficients[1];
  e.alpha2 = 2.0 * integral / (kPi * a0) - e.alpha1 * d1 / a0;
  e.omega2 = (e.alpha2 - e.omega1 * e.omega1) / (2.0 * e.omega0);
  return e;
}

std::vector<double> periodic_initial_amplitudes(const OscillatorSystem& sys,
                                                int mode, double a0, int n_max) {
  const int n = sys.size();
  if (mode < 0 || mode >= n)
    raise(ErrorKind::invalid_argument, "periodic_initial_amplitudes: mode out of range");
  if (a0 == 0.0)
    raise(ErrorKind::invalid_argument, "periodic_initial_amplitudes: a0 = 0");
  screen_or_throw(sys, mode);

  std::vector<double> a_k(n, 0.0);
  const double alpha0 = sys.lambdas[mode] * sys.lambdas[mode];
  for (int k = 0; k < n; ++k) {
    if (k == mode) continue;
    const double X = sys.a(k, mode) * a0;
    const double b = sys.B[k];
    if (X == 0.0) {
      if (b < 0.0)
        raise(ErrorKind::unsupported_case,
              "periodic_initial_amplitudes: mode " + std::to_string(k) +
                  " has zero coupling but a negative gap; case not covered "
                  "(the remaining cases are less interesting)");
      a_k[k] = 0.0;
      continue;
    }
    const double ratio = b / std::abs(X);
    const bool covered = (ratio >= 1.0) ||        // never in contact
                         (b == 0.0) ||            // homogeneous coupling
                         (ratio > 0.0) ||         // partial contact, either sign
                         (X > 0.0 && ratio > -1.0);
    if (!covered)
      raise(ErrorKind::unsupported_case,
            "periodic_initial_amplitudes: mode " + std::to_string(k) +
                " falls outside the covered gap/coupling ranges (the "
                "remaining cases are less interesting)");
    if (ratio >= 1.0) {
      a_k[k] = 0.0;
      continue;
    }
    const ForcingSeries fk = rectified_forcing(X, b, n_max);
    const double lk2 = sys.lambdas[k] * sys.lambdas[k];
    double sum = 0.0;
    for (int l = 0; l <= n_max; ++l) {
      const double den = static_cast<double>(l) * l * alpha0 - lk2;
      if (std::abs(den) < 1e-8 * lk2)
        raise(ErrorKind::resonance, "near-resonance between mode " + std::to_string(k) +
                                        " and harmonic " + std::to_string(l));
      sum += fk.f[l] / den;
    }
    a_k[k] = sum;
  }
  return a_k;
}

FirstOrderFrequencies first_order_all_modes(const OscillatorSystem& sys,
                                            const std::vector<double>& amplitudes,
                                            double t_window, double avg_tol) {
  const int n = sys.size();
  if (static_cast<int>(amplitudes.size()) != n)
    raise(ErrorKind::invalid_argument, "first_order_all_modes: amplitude size mismatch");
  bool any = false;
  for (double a : amplitudes) any |= a != 0.0;
  if (!any)
    raise(ErrorKind::invalid_argument, "first_order_all_modes: all amplitudes zero");
  if (!sys.z_independent_all())
    raise(ErrorKind::resonance,
          "first_order_all_modes: frequencies fail the Z-independence screen");

  FirstOrderFrequencies out;
  out.lambda1.assign(n, 0.0);
  out.lambda_eps.assign(n, 0.0);
  out.converged.assign(n, true);
  out.estimate_T.assign(n, 0.0);
  out.estimate_2T.assign(n, 0.0);

  const double window =
      t_window > 0.0 ? t_window : 512.0 * 2.0 * kPi;  // in carrier phase units

  for (int k = 0; k < n; ++k) {
    if (sys.B[k] == 0.0) {
      out.lambda1[k] = sys.a(k, k) / (4.0 * sys.lambdas[k]);
      out.estimate_T[k] = out.estimate_2T[k] = out.lambda1[k];
    } else if (amplitudes[k] == 0.0) {
      // No carrier on this mode; nothing to correct at first order.
      out.lambda1[k] = 0.0;
    } else {
      // Mean of (sum_j a_kj a_j cos(lambda_j s / lambda_k) - b_k)_+ cos(s).
      auto integrand = [&](double s) {
        double acc = -sys.B[k];
        for (int j = 0; j < n; ++j)
          acc += sys.a(k, j) * amplitudes[j] *
                 std::cos(sys.lambdas[j] / sys.lambdas[k] * s);
        return std::max(acc, 0.0) * std::cos(s);
      };
      auto mean = [&](double T) {
        const int per_period = 2048;
        const long long steps =
            static_cast<long long>(std::ceil(T / (2.0 * kPi))) * per_period;
        const double h = T / static_cast<double>(steps);
        double acc = 0.5 * (integrand(0.0) + integrand(T));
        for (long long i = 1; i < steps; ++i) acc += integrand(h * i);
        return acc * h / T;
      };
      const double m1 = mean(window);
      const double m2 = mean(2.0 * window);
      const double denom = sys.lambdas[k] * amplitudes[k];
      out.estimate_T[k] = m1 / denom;
      out.estimate_2T[k] = m2 / denom;
      out.lambda1[k] = out.estimate_2T[k];
      if (std::abs(out.estimate_T[k] - out.estimate_2T[k]) >
          avg_tol * std::max(1.0, std::abs(out.estimate_2T[k])))
        out.converged[k] = false;
    }
    out.lambda_eps[k] = sys.lambdas[k] + sys.eps * out.lambda1[k];
  }
  return out;
}

}  // namespace uspring
