#include "uspring/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "uspring/errors.hpp"

namespace uspring {

namespace {

constexpr double kPi = std::numbers::pi;

// In-place radix-2 FFT.
void fft(std::vector<std::complex<double>>& a) {
  const size_t n = a.size();
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (size_t len = 2; len <= n; len <<= 1) {
    const double ang = -2.0 * kPi / static_cast<double>(len);
    const std::complex<double> wl(std::cos(ang), std::sin(ang));
    for (size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0);
      for (size_t j = 0; j < len / 2; ++j) {
        const std::complex<double> u = a[i + j];
        const std::complex<double> v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
        w *= wl;
      }
    }
  }
}

}  // namespace

PeriodEstimate measure_period(const OscillatorSystem& sys, const TimeSeries& ts,
                              int component) {
  const int n = ts.n_dof;
  if (component < 0 || component >= n)
    raise(ErrorKind::invalid_argument, "measure_period: component out of range");

  // Rising zero crossings of the velocity, refined on the interpolant.
  std::vector<double> crossings;
  std::vector<double> um(n), vm(n);
  for (int i = 1; i < ts.samples(); ++i) {
    const double v0 = ts.v(i - 1)[component];
    const double v1 = ts.v(i)[component];
    if (!(v0 < 0.0 && v1 >= 0.0)) continue;
    double lo = ts.times[i - 1], hi = ts.times[i];
    for (int it = 0; it < 80 && hi - lo > 1e-16 * (1.0 + hi); ++it) {
      const double mid = 0.5 * (lo + hi);
      sample_state(sys, ts, mid, um.data(), vm.data());
      if (vm[component] < 0.0)
        lo = mid;
      else
        hi = mid;
    }
    crossings.push_back(0.5 * (lo + hi));
  }
  if (crossings.size() < 2)
    raise(ErrorKind::insufficient_data,
          "measure_period: fewer than 2 same-direction velocity crossings");

  PeriodEstimate out;
  out.crossings = static_cast<int>(crossings.size());
  const size_t m = crossings.size() - 1;
  out.period = (crossings.back() - crossings.front()) / static_cast<double>(m);
  double var = 0.0;
  for (size_t i = 0; i + 1 < crossings.size(); ++i) {
    const double d = crossings[i + 1] - crossings[i] - out.period;
    var += d * d;
  }
  out.std_error = m > 1 ? std::sqrt(var / static_cast<double>(m - 1) /
                                    static_cast<double>(m))
                        : 0.0;
  return out;
}

FourierSpectrum spectrum_of_samples(const std::vector<double>& samples, double dt,
                                    Window window) {
  const size_t n = samples.size();
  if (n < 4 || (n & (n - 1)) != 0)
    raise(ErrorKind::invalid_argument, "spectrum: sample count must be a power of two");

  std::vector<std::complex<double>> a(n);
  double wsum = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const double w = window == Window::hann
                         ? 0.5 * (1.0 - std::cos(2.0 * kPi * i / n))
                         : 1.0;
    wsum += w;
    a[i] = samples[i] * w;
  }
  fft(a);

  FourierSpectrum sp;
  sp.window = window;
  sp.sample_count = static_cast<int>(n);
  sp.duration = dt * static_cast<double>(n);
  sp.frequencies.resize(n / 2 + 1);
  sp.amplitudes.resize(n / 2 + 1);
  for (size_t k = 0; k <= n / 2; ++k) {
    sp.frequencies[k] = 2.0 * kPi * static_cast<double>(k) / sp.duration;
    const double scale = (k == 0 || k == n / 2) ? 1.0 : 2.0;
    sp.amplitudes[k] = scale * std::abs(a[k]) / wsum;
  }
  return sp;
}

FourierSpectrum spectrum(const OscillatorSystem& sys, const TimeSeries& ts,
                         int component, Window window, int n_fft) {
  if (ts.samples() < 2) raise(ErrorKind::insufficient_data, "spectrum: empty series");
  const double t1 = ts.times.back();
  const std::vector<double> s = resample_component(sys, ts, component, 0.0, t1, n_fft);
  return spectrum_of_samples(s, t1 / n_fft, window);
}

std::vector<SpectralPeak> spectrum_peaks(const FourierSpectrum& sp,
                                         double floor_ratio) {
  std::vector<SpectralPeak> peaks;
  const auto& amp = sp.amplitudes;
  if (amp.size() < 3) return peaks;
  const double peak_max = *std::max_element(amp.begin(), amp.end());
  const double df = sp.frequencies[1] - sp.frequencies[0];
  for (size_t k = 1; k + 1 < amp.size(); ++k) {
    if (amp[k] < floor_ratio * peak_max) continue;
    if (!(amp[k] >= amp[k - 1] && amp[k] > amp[k + 1])) continue;
    SpectralPeak p;
    if (sp.window == Window::hann && amp[k] > 0.0) {
      // Grandke interpolation for the Hann window.
      const bool right = amp[k + 1] >= amp[k - 1];
      const double alpha = right ? amp[k + 1] / amp[k] : amp[k - 1] / amp[k];
      double delta = (2.0 * alpha - 1.0) / (alpha + 1.0);
      if (!right) delta = -delta;
      p.frequency = sp.frequencies[k] + delta * df;
      const double pd = kPi * delta;
      const double kernel =
          std::abs(pd) < 1e-12 ? 1.0 : std::sin(pd) / (pd * (1.0 - delta * delta));
      p.amplitude = amp[k] / std::abs(kernel);
    } else {
      // quadratic interpolation on the magnitudes
      const double y0 = amp[k - 1], y1 = amp[k], y2 = amp[k + 1];
      const double den = y0 - 2.0 * y1 + y2;
      const double delta = std::abs(den) > 1e-300 ? 0.5 * (y0 - y2) / den : 0.0;
      p.frequency = sp.frequencies[k] + delta * df;
      p.amplitude = y1 - 0.25 * (y0 - y2) * delta;
    }
    peaks.push_back(p);
  }
  std::sort(peaks.begin(), peaks.end(),
            [](const SpectralPeak& a, const SpectralPeak& b) {
              return a.amplitude > b.amplitude;
            });
  return peaks;
}

std::vector<double> chi_remainder(const std::vector<double>& u,
                                  const std::vector<double>& v, double eps) {
  if (u.size() != v.size())
    raise(ErrorKind::invalid_argument, "chi_remainder: grids differ");
  if (!(eps > 0.0)) raise(ErrorKind::invalid_argument, "chi_remainder: eps <= 0");
  std::vector<double> chi(u.size());
  for (size_t i = 0; i < u.size(); ++i) {
    // ((u + eps v)_+ - u_+ - eps H(u) v) / eps with H(0) = 0, written in its
    // cancellation-free piecewise form: |u + eps v| / eps where u and
    // u + eps v have opposite signs, (v)_+ on the jump set u = 0, else 0.
    const double w = u[i] + eps * v[i];
    if (u[i] == 0.0)
      chi[i] = std::max(v[i], 0.0);
    else if (u[i] > 0.0 && w < 0.0)
      chi[i] = -w / eps;
    else if (u[i] < 0.0 && w > 0.0)
      chi[i] = w / eps;
    else
      chi[i] = 0.0;
  }
  return chi;
}

namespace {

double measure_recurse(const std::function<double(double)>& u, double a, double b,
                       double fa, double fb, double threshold, double lip,
                       double min_len) {
  const double len = b - a;
  const double m = 0.5 * (a + b);
  const double fm = std::abs(u(m));
  const double slack = lip * 0.5 * len;
  const double lo = std::min(fm, std::min(fa, fb));
  const double hi = std::max(fm, std::max(fa, fb));
  if (lo - slack > threshold) return 0.0;               // provably outside
  if (hi + slack <= threshold) return len;              // provably inside
  if (len < min_len) return fm <= threshold ? len : 0.0;
  return measure_recurse(u, a, m, fa, fm, threshold, lip, min_len) +
         measure_recurse(u, m, b, fm, fb, threshold, lip, min_len);
}

}  // namespace

double small_set_measure(const std::function<double(double)>& u, double t0,
                         double t1, double threshold, int base_samples,
                         double lipschitz_hint) {
  if (!(t1 > t0)) raise(ErrorKind::invalid_argument, "small_set_measure: empty window");
  if (!(threshold >= 0.0))
    raise(ErrorKind::invalid_argument, "small_set_measure: negative threshold");
  const double h = (t1 - t0) / base_samples;
  double lip = lipschitz_hint;
  std::vector<double> f(base_samples + 1);
  for (int i = 0; i <= base_samples; ++i) f[i] = u(t0 + h * i);
  if (lip <= 0.0) {
    for (int i = 0; i < base_samples; ++i)
      lip = std::max(lip, std::abs(f[i + 1] - f[i]) / h);
    lip *= 2.0;
    if (lip == 0.0) lip = 1.0;
  }
  const double min_len = (t1 - t0) * 1e-8;
  double total = 0.0;
  for (int i = 0; i < base_samples; ++i)
    total += measure_recurse(u, t0 + h * i, t0 + h * (i + 1), std::abs(f[i]),
                             std::abs(f[i + 1]), threshold, lip, min_len);
  return total;
}

namespace {

template <class Expansion>
ExpansionErrorRecord expansion_error_impl(const OscillatorSystem& sys,
                                          const Expansion& e, double eps,
                                          double horizon_exponent, double gamma,
                                          double tol,
                                          const std::function<double(int, double)>& recon) {
  const int n = sys.size();
  ExpansionErrorRecord out;
  out.horizon = gamma * std::pow(eps, -horizon_exponent);
  OscillatorSystem work = sys;
  work.eps = eps;

  std::vector<double> u0(n, 0.0), v0(n, 0.0);
  for (int k = 0; k < n; ++k) u0[k] = recon(k, 0.0);
  (void)e;
  const TimeSeries ts = simulate(work, u0, v0, out.horizon, tol);
  out.sup_error.assign(n, 0.0);
  for (int i = 0; i < ts.samples(); ++i) {
    const double t = ts.times[i];
    for (int k = 0; k < n; ++k)
      out.sup_error[k] =
          std::max(out.sup_error[k], std::abs(ts.u(i)[k] - recon(k, t)));
  }
  return out;
}

}  // namespace

ExpansionErrorRecord expansion_error(const OscillatorSystem& sys,
                                     const Expansion1Dof& e, double eps,
                                     double horizon_exponent, double gamma,
                                     double tol) {
  return expansion_error_impl(
      sys, e, eps, horizon_exponent, gamma, tol,
      [&](int, double t) { return e.reconstruct(eps, t); });
}

ExpansionErrorRecord expansion_error(const OscillatorSystem& sys,
                                     const ExpansionNDof& e, double eps,
                                     double horizon_exponent, double gamma,
                                     double tol) {
  return expansion_error_impl(
      sys, e, eps, horizon_exponent, gamma, tol,
      [&](int k, double t) { return e.reconstruct(k, eps, t); });
}

SpectrumGapReport abs_spectrum_gap(const std::vector<double>& lambdas,
                                   const std::vector<double>& amplitudes,
                                   double t_avg) {
  if (lambdas.size() != amplitudes.size() || lambdas.empty())
    raise(ErrorKind::invalid_argument, "abs_spectrum_gap: size mismatch");
  if (!(t_avg > 0.0)) raise(ErrorKind::invalid_argument, "abs_spectrum_gap: t_avg <= 0");

  auto signal = [&](double t) {
    double s = 0.0;
    for (size_t k = 0; k < lambdas.size(); ++k)
      s += amplitudes[k] * std::cos(lambdas[k] * t);
    return s;
  };

  const double lam_max = *std::max_element(lambdas.begin(), lambdas.end());
  const double dt = 2.0 * kPi / lam_max / 256.0;

  SpectrumGapReport out;
  out.c_abs_T.assign(lambdas.size(), 0.0);
  out.c_abs_2T.assign(lambdas.size(), 0.0);
  out.ratio.assign(lambdas.size(), 0.0);

  for (int pass = 0; pass < 2; ++pass) {
    const double T = pass == 0 ? t_avg : 2.0 * t_avg;
    const long long steps = static_cast<long long>(std::ceil(T / dt));
    const double h = T / static_cast<double>(steps);
    std::vector<std::complex<double>> acc(lambdas.size(), 0.0);
    std::complex<double> c0_acc = 0.0;
    for (long long i = 0; i <= steps; ++i) {
      const double t = h * static_cast<double>(i);
      const double w = (i == 0 || i == steps) ? 0.5 : 1.0;
      const double su = std::abs(signal(t));
      c0_acc += w * su;
      for (size_t k = 0; k < lambdas.size(); ++k)
        acc[k] += w * su * std::exp(std::complex<double>(0.0, -lambdas[k] * t));
    }
    for (size_t k = 0; k < lambdas.size(); ++k) {
      const double val = std::abs(acc[k]) * h / T;
      if (pass == 0)
        out.c_abs_T[k] = val;
      else
        out.c_abs_2T[k] = val;
    }
    if (pass == 1) out.c0 = std::abs(c0_acc) * h / T;
  }
  for (size_t k = 0; k < lambdas.size(); ++k)
    out.ratio[k] = out.c_abs_T[k] > 0.0 ? out.c_abs_2T[k] / out.c_abs_T[k] : 0.0;
  return out;
}

double fit_mode_frequency(const OscillatorSystem& sys, const TimeSeries& ts,
                          int component, double omega_guess) {
  const int n_samp = 4096;
  const double t1 = ts.times.back();
  const std::vector<double> s =
      resample_component(sys, ts, component, 0.0, t1, n_samp);
  const double dt = t1 / n_samp;

  // Hann-weighted least squares of p cos(w t) + q sin(w t) + r; returns the
  // residual for a candidate frequency.
  auto misfit = [&](double w) {
    double a11 = 0, a12 = 0, a13 = 0, a22 = 0, a23 = 0, a33 = 0;
    double b1 = 0, b2 = 0, b3 = 0, ss = 0;
    for (int i = 0; i < n_samp; ++i) {
      const double t = dt * i;
      const double wt = 0.5 * (1.0 - std::cos(2.0 * kPi * i / n_samp));
      const double c = std::cos(w * t), sn = std::sin(w * t);
      a11 += wt * c * c;
      a12 += wt * c * sn;
      a13 += wt * c;
      a22 += wt * sn * sn;
      a23 += wt * sn;
      a33 += wt;
      b1 += wt * c * s[i];
      b2 += wt * sn * s[i];
      b3 += wt * s[i];
      ss += wt * s[i] * s[i];
    }
    // solve the 3x3 normal equations
    const double m[9] = {a11, a12, a13, a12, a22, a23, a13, a23, a33};
    const double det = m[0] * (m[4] * m[8] - m[5] * m[7]) -
                       m[1] * (m[3] * m[8] - m[5] * m[6]) +
                       m[2] * (m[3] * m[7] - m[4] * m[6]);
    if (std::abs(det) < 1e-300) return ss;
    const double inv[9] = {
        (m[4] * m[8] - m[5] * m[7]) / det, (m[2] * m[7] - m[1] * m[8]) / det,
        (m[1] * m[5] - m[2] * m[4]) / det, (m[5] * m[6] - m[3] * m[8]) / det,
        (m[0] * m[8] - m[2] * m[6]) / det, (m[2] * m[3] - m[0] * m[5]) / det,
        (m[3] * m[7] - m[4] * m[6]) / det, (m[1] * m[6] - m[0] * m[7]) / det,
        (m[0] * m[4] - m[1] * m[3]) / det};
    const double p = inv[0] * b1 + inv[1] * b2 + inv[2] * b3;
    const double q = inv[3] * b1 + inv[4] * b2 + inv[5] * b3;
    const double r = inv[6] * b1 + inv[7] * b2 + inv[8] * b3;
    return ss - (p * b1 + q * b2 + r * b3);
  };

  // Golden-section refinement around the guess.
  double lo = omega_guess * 0.97, hi = omega_guess * 1.03;
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  double f1 = misfit(x1), f2 = misfit(x2);
  for (int it = 0; it < 60; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = misfit(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = misfit(x2);
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace uspring
