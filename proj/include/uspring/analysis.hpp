#pragma once

#include <functional>
#include <vector>

#include "uspring/integrator.hpp"
#include "uspring/ndof.hpp"
#include "uspring/one_dof.hpp"
#include "uspring/system.hpp"

namespace uspring {

struct PeriodEstimate {
  double period = 0.0;
  double std_error = 0.0;
  int crossings = 0;
};

// Period from same-direction velocity zero crossings of one component,
// each crossing refined on the Hermite interpolant.  Needs at least two
// crossings (>= 3 oscillations recommended).
PeriodEstimate measure_period(const OscillatorSystem& sys, const TimeSeries& ts,
                              int component);

enum class Window { hann, rectangular };

struct FourierSpectrum {
  std::vector<double> frequencies;  // rad/time, increasing
  std::vector<double> amplitudes;   // window-corrected one-sided magnitudes
  int sample_count = 0;
  double duration = 0.0;
  Window window = Window::hann;
};

// Windowed FFT magnitude of one position component, uniformly resampled from
// the dense output.  n_fft must be a power of two.
FourierSpectrum spectrum(const OscillatorSystem& sys, const TimeSeries& ts,
                         int component, Window window = Window::hann,
                         int n_fft = 1 << 14);
// Same on a raw uniformly sampled signal with time step dt.
FourierSpectrum spectrum_of_samples(const std::vector<double>& samples, double dt,
                                    Window window = Window::hann);

struct SpectralPeak {
  double frequency = 0.0;  // quadratically interpolated around the bin
  double amplitude = 0.0;  // scalloping-corrected for the window in use
};
std::vector<SpectralPeak> spectrum_peaks(const FourierSpectrum& sp, double floor_ratio = 1e-3);

// chi(u, v) = ((u + eps v)_+ - u_+ - eps H(u) v) / eps with H(0) = 0,
// evaluated pointwise on a common grid.
std::vector<double> chi_remainder(const std::vector<double>& u,
                                  const std::vector<double>& v, double eps);

// Measure of {t in [t0, t1] : |u(t)| <= threshold} by recursive bisection
// with a Lipschitz prune; crossings are resolved to ~1e-8 of the interval.
double small_set_measure(const std::function<double(double)>& u, double t0,
                         double t1, double threshold, int base_samples = 4096,
                         double lipschitz_hint = 0.0);

struct ExpansionErrorRecord {
  std::vector<double> sup_error;  // per component
  double horizon = 0.0;           // gamma * eps^-horizon_exponent actually used
};

// Sup-norm of simulate minus the reconstructed expansion over
// [0, gamma eps^-horizon_exponent].
ExpansionErrorRecord expansion_error(const OscillatorSystem& sys,
                                     const Expansion1Dof& e, double eps,
                                     double horizon_exponent, double gamma = 1.0,
                                     double tol = 1e-10);
ExpansionErrorRecord expansion_error(const OscillatorSystem& sys,
                                     const ExpansionNDof& e, double eps,
                                     double horizon_exponent, double gamma = 1.0,
                                     double tol = 1e-10);

struct SpectrumGapReport {
  std::vector<double> c_abs_T;   // |c_lambda[|u|]| over window T
  std::vector<double> c_abs_2T;  // same over 2T
  std::vector<double> ratio;     // c_abs_2T / c_abs_T
  double c0 = 0.0;               // mean of |u| over 2T
};

// Almost-periodic Fourier coefficients of |u| at the carrier frequencies for
// u(t) = sum_k amplitudes[k] cos(lambdas[k] t), by trapezoid averaging over
// windows T_avg and 2 T_avg.
SpectrumGapReport abs_spectrum_gap(const std::vector<double>& lambdas,
                                   const std::vector<double>& amplitudes,
                                   double t_avg);

// Single-tone frequency fit for one component: least squares against
// cos/sin/constant with Hann weighting, refined around omega_guess.
double fit_mode_frequency(const OscillatorSystem& sys, const TimeSeries& ts,
                          int component, double omega_guess);

}  // namespace uspring
