#pragma once

#include <vector>

#include "uspring/fourier.hpp"
#include "uspring/system.hpp"

namespace uspring {

// Second-order expansion near one eigenmode:
//   u_m(t) = a0 cos(w t) + eps v1_m(w t) + O(eps^2)     (excited mode m)
//   u_k(t) =               eps v1_k(w t) + O(eps^2)     (k != m)
// with w = omega0 + eps omega1 + eps^2 omega2, omega0 = lambda_m, and each
// v1_k a finite cosine series.
struct ExpansionNDof {
  int mode = 0;
  double omega0 = 0, omega1 = 0, omega2 = 0;
  double alpha1 = 0, alpha2 = 0;
  double a0 = 0, a1 = 0;
  std::vector<CosineSeries> v1;   // one series per mode
  std::vector<double> a_k;        // v1_k(0); a_k[mode] = a1
  std::vector<double> forcing_tail;  // per-mode bound on the dropped forcing

  double omega(double eps) const { return omega0 + eps * omega1 + eps * eps * omega2; }
  // Component k of the reconstructed state at time t.
  double reconstruct(int k, double eps, double t) const;
};

// Requires a0 != 0 and pairwise Z-independence of (lambda_k, lambda_mode);
// per-harmonic near-resonances |lambda_k^2 - l^2 lambda_mode^2| below
// resonance_tol * lambda_k^2 abort with a resonance error naming (k, l).
ExpansionNDof expand_mode_second_order(const OscillatorSystem& sys, int mode,
                                       double a0, double a1, int n_max,
                                       double resonance_tol = 1e-8);

// Initial amplitudes a_k = phi_k(0) making the first-order solution periodic
// with the excited mode's frequency.  Covered parameter ranges per mode k:
// no contact at all, b_k = 0, or 0 < b_k / |a_k1 a0| < 1 (both coupling
// signs).  Everything else raises an unsupported-case error.
std::vector<double> periodic_initial_amplitudes(const OscillatorSystem& sys,
                                                int mode, double a0, int n_max);

struct FirstOrderFrequencies {
  std::vector<double> lambda1;     // first-order corrections
  std::vector<double> lambda_eps;  // lambda_k + eps * lambda1_k
  std::vector<bool> converged;     // averaging converged (always true for b_k = 0)
  std::vector<double> estimate_T;  // window-T and window-2T averages, for
  std::vector<double> estimate_2T; // diagnosing non-converged entries
};

// First-order frequency corrections with every mode excited (amplitudes a_k).
// b_k = 0 rows use the closed form a_kk / (4 lambda_k); the rest are
// long-time averages over t_window (default picks ~512 carrier periods),
// compared against the doubled window.
FirstOrderFrequencies first_order_all_modes(const OscillatorSystem& sys,
                                            const std::vector<double>& amplitudes,
                                            double t_window = 0.0,
                                            double avg_tol = 1e-3);

}  // namespace uspring
