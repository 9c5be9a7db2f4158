#include "uspring.h"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <functional>
#include <string>
#include <vector>

#include "uspring/analysis.hpp"
#include "uspring/errors.hpp"
#include "uspring/integrator.hpp"
#include "uspring/io.hpp"
#include "uspring/ndof.hpp"
#include "uspring/nnm.hpp"
#include "uspring/one_dof.hpp"
#include "uspring/presets.hpp"
#include "uspring/system.hpp"
#include "uspring/validation.hpp"

using namespace uspring;

/* thread-local error message */
static thread_local char tl_error[512] = "";

static void set_error(const char* msg) {
  std::strncpy(tl_error, msg, sizeof tl_error - 1);
  tl_error[sizeof tl_error - 1] = '\0';
}

extern "C" const char* usp_last_error(void) { return tl_error; }

namespace {

usp_status map_kind(ErrorKind k) {
  switch (k) {
    case ErrorKind::invalid_argument: return USP_ERR_INVALID;
    case ErrorKind::domain: return USP_ERR_DOMAIN;
    case ErrorKind::resonance: return USP_ERR_RESONANCE;
    case ErrorKind::integration: return USP_ERR_INTEGRATION;
    case ErrorKind::continuation: return USP_ERR_CONTINUATION;
    case ErrorKind::no_convergence: return USP_ERR_NO_CONVERGENCE;
    case ErrorKind::unsupported_case: return USP_ERR_UNSUPPORTED_CASE;
    case ErrorKind::insufficient_data: return USP_ERR_INSUFFICIENT_DATA;
  }
  return USP_ERR_INVALID;
}

template <class Fn>
usp_status guarded(Fn&& fn) {
  try {
    fn();
    return USP_OK;
  } catch (const Error& e) {
    set_error(e.what());
    return map_kind(e.kind());
  } catch (const std::exception& e) {
    set_error(e.what());
    return USP_ERR_INVALID;
  }
}

usp_status require(bool ok, const char* msg) {
  if (ok) return USP_OK;
  set_error(msg);
  return USP_ERR_INVALID;
}

usp_status write_file(const char* path, const std::function<void(std::ostream&)>& body) {
  std::ofstream os(path, std::ios::binary);
  if (!os) {
    set_error((std::string("cannot open for writing: ") + path).c_str());
    return USP_ERR_IO;
  }
  body(os);
  return os.good() ? USP_OK : USP_ERR_IO;
}

}  // namespace

/* opaque handle definitions */
struct usp_expansion1 {
  Expansion1Dof e;
};
struct usp_system {
  OscillatorSystem s;
};
struct usp_series {
  OscillatorSystem s;  // the system it was produced with (for interpolation)
  TimeSeries ts;
};
struct usp_expansion_n {
  ExpansionNDof e;
};
struct usp_branch {
  ContinuationResult r;
  int n_dof;
};
struct usp_report {
  std::vector<CriterionResult> entries;
};

/* ---- Fourier kernels ---------------------------------------------------- */

extern "C" usp_status usp_abs_cos_coeffs(int n_max, double* coeffs) {
  if (auto s = require(coeffs != nullptr, "coeffs is null")) return s;
  return guarded([&] {
    const CosineSeries cs = abs_cos_coeffs(n_max);
    std::copy(cs.coefficients.begin(), cs.coefficients.end(), coeffs);
  });
}

extern "C" usp_status usp_rectified_cos_coeffs(double c, int n_max, double* beta,
                                               double* coeffs) {
  if (auto s = require(coeffs != nullptr, "coeffs is null")) return s;
  return guarded([&] {
    const RectifiedCosine rc = rectified_cos_coeffs(c, n_max);
    if (beta) *beta = rc.beta;
    std::copy(rc.series.coefficients.begin(), rc.series.coefficients.end(), coeffs);
  });
}

extern "C" usp_status usp_rectified_neg_cos_coeffs(double c, int n_max, double* beta,
                                                   double* coeffs) {
  if (auto s = require(coeffs != nullptr, "coeffs is null")) return s;
  return guarded([&] {
    const RectifiedCosine rc = rectified_neg_cos_coeffs(c, n_max);
    if (beta) *beta = rc.beta;
    std::copy(rc.series.coefficients.begin(), rc.series.coefficients.end(), coeffs);
  });
}

extern "C" double usp_eval_cosine_series(const double* coeffs, int n_coeffs,
                                         double s) {
  CosineSeries cs;
  cs.coefficients.assign(coeffs, coeffs + n_coeffs);
  return eval_series(cs, s);
}

/* ---- one dof -------------------------------------------------------------- */

extern "C" usp_status usp_exact_frequency(double omega0, double eps, double* omega) {
  if (auto s = require(omega != nullptr, "omega is null")) return s;
  return guarded([&] { *omega = exact_frequency(omega0, eps); });
}

extern "C" usp_status usp_expand1_homogeneous(double omega0, double a0, double a1,
                                              int n_max, usp_expansion1** out) {
  if (auto s = require(out != nullptr, "out is null")) return s;
  return guarded([&] {
    *out = new usp_expansion1{expand_homogeneous(omega0, a0, a1, n_max)};
  });
}

extern "C" usp_status usp_expand1_offset(double omega0, double a, double b,
                                         double a0, double a1, int n_max,
                                         usp_expansion1** out) {
  if (auto s = require(out != nullptr, "out is null")) return s;
  return guarded([&] {
    *out = new usp_expansion1{expand_offset(omega0, a, b, a0, a1, n_max)};
  });
}

extern "C" usp_status usp_expand1_critical(double omega0, double a, double b,
                                           double a0, double a1,
                                           usp_expansion1** out) {
  if (auto s = require(out != nullptr, "out is null")) return s;
  return guarded([&] {
    *out = new usp_expansion1{expand_critical(omega0, a, b, a0, a1)};
  });
}

extern "C" usp_status usp_expansion1_get(const usp_expansion1* e,
                                         usp_expansion1_info* info) {
  if (auto s = require(e && info, "null argument")) return s;
  const Expansion1Dof& x = e->e;
  info->omega0 = x.omega0;
  info->omega1 = x.omega1;
  info->omega2 = x.omega2;
  info->alpha1 = x.alpha1;
  info->alpha2 = x.alpha2;
  info->a = x.a;
  info->b = x.b;
  info->a0 = x.a0;
  info->a1 = x.a1;
  info->case_tag = static_cast<int>(x.case_tag);
  info->n_coeffs = static_cast<int>(x.v1.coefficients.size());
  info->truncation_tail = x.truncation_tail;
  info->horizon_exponent = x.horizon_exponent;
  info->horizon_infinite = x.horizon_infinite ? 1 : 0;
  return USP_OK;
}

extern "C" usp_status usp_expansion1_coeffs(const usp_expansion1* e, double* coeffs,
                                            int cap) {
  if (auto s = require(e && coeffs, "null argument")) return s;
  const auto& c = e->e.v1.coefficients;
  if (auto s = require(cap >= static_cast<int>(c.size()), "cap too small")) return s;
  std::copy(c.begin(), c.end(), coeffs);
  return USP_OK;
}

extern "C" usp_status usp_alpha2_quadrature(const usp_expansion1* e, int n_quad,
                                            double* alpha2, int* underresolved) {
  if (auto s = require(e && alpha2, "null argument")) return s;
  return guarded([&] {
    const Alpha2Result r = alpha2_quadrature(e->e, n_quad);
    *alpha2 = r.alpha2;
    if (underresolved) *underresolved = r.underresolved ? 1 : 0;
  });
}

extern "C" usp_status usp_expansion1_write_json(const usp_expansion1* e,
                                                const char* path) {
  if (auto s = require(e && path, "null argument")) return s;
  return write_file(path, [&](std::ostream& os) { write_expansion1_json(e->e, os); });
}

extern "C" usp_status usp_expansion1_write_reconstruction_csv(const usp_expansion1* e,
                                                              double eps,
                                                              int n_samples,
                                                              const char* path) {
  if (auto s = require(e && path && n_samples >= 2, "bad arguments")) return s;
  return write_file(path, [&](std::ostream& os) {
    write_expansion1_reconstruction_csv(e->e, eps, n_samples, os);
  });
}

extern "C" void usp_expansion1_free(usp_expansion1* e) { delete e; }

/* ---- systems --------------------------------------------------------------- */

extern "C" usp_status usp_system_create(int n, const double* lambdas,
                                        const double* A, const double* B,
                                        double eps, usp_system** out) {
  if (auto s = require(lambdas && A && B && out && n > 0, "bad arguments")) return s;
  return guarded([&] {
    *out = new usp_system{make_system(
        std::vector<double>(lambdas, lambdas + n),
        std::vector<double>(A, A + static_cast<size_t>(n) * n),
        std::vector<double>(B, B + n), eps)};
  });
}

extern "C" usp_status usp_system_from_physical(int n, const double* mass_diag,
                                               const double* stiffness,
                                               int defect_mode, double gap,
                                               double eps, usp_system** out) {
  if (auto s = require(mass_diag && stiffness && out && n > 0, "bad arguments"))
    return s;
  return guarded([&] {
    *out = new usp_system{modal_from_physical(
        std::vector<double>(mass_diag, mass_diag + n),
        std::vector<double>(stiffness, stiffness + static_cast<size_t>(n) * n),
        defect_mode, gap, eps)};
  });
}

extern "C" usp_status usp_system_preset(const char* name, double eps, double gap,
                                        usp_system** out) {
  if (auto s = require(name && out, "bad arguments")) return s;
  return guarded([&] { *out = new usp_system{preset_system(name, eps, gap)}; });
}

extern "C" usp_status usp_system_size(const usp_system* s, int* n) {
  if (auto st = require(s && n, "null argument")) return st;
  *n = s->s.size();
  return USP_OK;
}

extern "C" usp_status usp_system_get(const usp_system* s, double* lambdas,
                                     double* A, double* B, double* eps) {
  if (auto st = require(s != nullptr, "null system")) return st;
  if (lambdas) std::copy(s->s.lambdas.begin(), s->s.lambdas.end(), lambdas);
  if (A) std::copy(s->s.A.begin(), s->s.A.end(), A);
  if (B) std::copy(s->s.B.begin(), s->s.B.end(), B);
  if (eps) *eps = s->s.eps;
  return USP_OK;
}

extern "C" usp_status usp_system_set_eps(usp_system* s, double eps) {
  if (auto st = require(s && eps >= 0.0, "bad arguments")) return st;
  s->s.eps = eps;
  return USP_OK;
}

extern "C" void usp_system_free(usp_system* s) { delete s; }

/* ---- integration ------------------------------------------------------------ */

extern "C" usp_status usp_simulate(const usp_system* s, const double* u0,
                                   const double* v0, double t_end, double tol,
                                   usp_series** out) {
  if (auto st = require(s && u0 && v0 && out, "null argument")) return st;
  return guarded([&] {
    const int n = s->s.size();
    auto* h = new usp_series;
    h->s = s->s;
    try {
      h->ts = simulate(s->s, std::vector<double>(u0, u0 + n),
                       std::vector<double>(v0, v0 + n), t_end, tol);
    } catch (...) {
      delete h;
      throw;
    }
    *out = h;
  });
}

extern "C" usp_status usp_series_size(const usp_series* ts, int* n_samples,
                                      int* n_dof, int* n_events) {
  if (auto st = require(ts != nullptr, "null series")) return st;
  if (n_samples) *n_samples = ts->ts.samples();
  if (n_dof) *n_dof = ts->ts.n_dof;
  if (n_events) *n_events = static_cast<int>(ts->ts.events.size());
  return USP_OK;
}

extern "C" usp_status usp_series_data(const usp_series* ts, double* t, double* u,
                                      double* v) {
  if (auto st = require(ts != nullptr, "null series")) return st;
  if (t) std::copy(ts->ts.times.begin(), ts->ts.times.end(), t);
  if (u) std::copy(ts->ts.positions.begin(), ts->ts.positions.end(), u);
  if (v) std::copy(ts->ts.velocities.begin(), ts->ts.velocities.end(), v);
  return USP_OK;
}

extern "C" usp_status usp_series_events(const usp_series* ts, double* t, int* index) {
  if (auto st = require(ts != nullptr, "null series")) return st;
  for (size_t i = 0; i < ts->ts.events.size(); ++i) {
    if (t) t[i] = ts->ts.events[i].t;
    if (index) index[i] = ts->ts.events[i].index;
  }
  return USP_OK;
}

extern "C" usp_status usp_series_sample(const usp_series* ts, double t, double* u,
                                        double* v) {
  if (auto st = require(ts != nullptr, "null series")) return st;
  return guarded([&] { sample_state(ts->s, ts->ts, t, u, v); });
}

extern "C" usp_status usp_series_write_csv(const usp_series* ts, const char* path) {
  if (auto st = require(ts && path, "null argument")) return st;
  return write_file(path, [&](std::ostream& os) { write_timeseries_csv(ts->ts, os); });
}

extern "C" usp_status usp_series_write_sidecar_json(const usp_series* ts,
                                                    const char* path) {
  if (auto st = require(ts && path, "null argument")) return st;
  return write_file(path, [&](std::ostream& os) {
    write_timeseries_sidecar(ts->s, ts->ts, os);
  });
}

extern "C" void usp_series_free(usp_series* ts) { delete ts; }

extern "C" usp_status usp_energy(const usp_system* s, const double* u,
                                 const double* v, int functional, double* e) {
  if (auto st = require(s && u && v && e, "null argument")) return st;
  return guarded([&] {
    const int n = s->s.size();
    *e = energy(s->s, std::vector<double>(u, u + n), std::vector<double>(v, v + n),
                functional ? EnergyFunctional::with_contact_potential
                           : EnergyFunctional::linear);
  });
}

/* ---- n-dof ------------------------------------------------------------------ */

extern "C" usp_status usp_expand_mode(const usp_system* s, int mode, double a0,
                                      double a1, int n_max, usp_expansion_n** out) {
  if (auto st = require(s && out, "null argument")) return st;
  return guarded([&] {
    *out = new usp_expansion_n{expand_mode_second_order(s->s, mode, a0, a1, n_max)};
  });
}

extern "C" usp_status usp_expansion_n_get(const usp_expansion_n* e,
                                          usp_expansion_n_info* info) {
  if (auto st = require(e && info, "null argument")) return st;
  info->omega0 = e->e.omega0;
  info->omega1 = e->e.omega1;
  info->omega2 = e->e.omega2;
  info->alpha1 = e->e.alpha1;
  info->alpha2 = e->e.alpha2;
  info->a0 = e->e.a0;
  info->a1 = e->e.a1;
  info->mode = e->e.mode;
  info->n_dof = static_cast<int>(e->e.v1.size());
  info->n_coeffs =
      e->e.v1.empty() ? 0 : static_cast<int>(e->e.v1[0].coefficients.size());
  return USP_OK;
}

extern "C" usp_status usp_expansion_n_amplitudes(const usp_expansion_n* e,
                                                 double* a_k) {
  if (auto st = require(e && a_k, "null argument")) return st;
  std::copy(e->e.a_k.begin(), e->e.a_k.end(), a_k);
  return USP_OK;
}

extern "C" usp_status usp_expansion_n_coeffs(const usp_expansion_n* e, int mode_k,
                                             double* coeffs, int cap) {
  if (auto st = require(e && coeffs, "null argument")) return st;
  if (auto st = require(mode_k >= 0 && mode_k < static_cast<int>(e->e.v1.size()),
                        "mode out of range"))
    return st;
  const auto& c = e->e.v1[mode_k].coefficients;
  if (auto st = require(cap >= static_cast<int>(c.size()), "cap too small")) return st;
  std::copy(c.begin(), c.end(), coeffs);
  return USP_OK;
}

extern "C" usp_status usp_expansion_n_write_json(const usp_expansion_n* e,
                                                 const char* path) {
  if (auto st = require(e && path, "null argument")) return st;
  return write_file(path, [&](std::ostream& os) { write_expansion_n_json(e->e, os); });
}

extern "C" void usp_expansion_n_free(usp_expansion_n* e) { delete e; }

extern "C" usp_status usp_periodic_initial_amplitudes(const usp_system* s, int mode,
                                                      double a0, int n_max,
                                                      double* a_k) {
  if (auto st = require(s && a_k, "null argument")) return st;
  return guarded([&] {
    const std::vector<double> v = periodic_initial_amplitudes(s->s, mode, a0, n_max);
    std::copy(v.begin(), v.end(), a_k);
  });
}

extern "C" usp_status usp_first_order_all_modes(const usp_system* s,
                                                const double* amplitudes,
                                                double t_window, double* lambda1,
                                                double* lambda_eps, int* converged) {
  if (auto st = require(s && amplitudes, "null argument")) return st;
  return guarded([&] {
    const int n = s->s.size();
    const FirstOrderFrequencies fo = first_order_all_modes(
        s->s, std::vector<double>(amplitudes, amplitudes + n), t_window);
    for (int k = 0; k < n; ++k) {
      if (lambda1) lambda1[k] = fo.lambda1[k];
      if (lambda_eps) lambda_eps[k] = fo.lambda_eps[k];
      if (converged) converged[k] = fo.converged[k] ? 1 : 0;
    }
  });
}

extern "C" usp_status usp_first_order_write_csv(const usp_system* s,
                                                const double* amplitudes,
                                                double t_window, const char* path) {
  if (auto st = require(s && amplitudes && path, "null argument")) return st;
  return guarded([&] {
    const int n = s->s.size();
    const FirstOrderFrequencies fo = first_order_all_modes(
        s->s, std::vector<double>(amplitudes, amplitudes + n), t_window);
    const usp_status st =
        write_file(path, [&](std::ostream& os) { write_first_order_csv(s->s, fo, os); });
    if (st != USP_OK) raise(ErrorKind::invalid_argument, "write failed");
  });
}

/* ---- nnm --------------------------------------------------------------------- */

extern "C" usp_status usp_shoot_residual(const usp_system* s, const double* x0,
                                         double T, double c, double tol, double* F) {
  if (auto st = require(s && x0 && F, "null argument")) return st;
  return guarded([&] {
    const int n = s->s.size();
    const std::vector<double> r =
        shoot_residual(s->s, std::vector<double>(x0, x0 + n), T, c, tol);
    std::copy(r.begin(), r.end(), F);
  });
}

extern "C" usp_status usp_solve_nnm(const usp_system* s, const double* x0_guess,
                                    double T_guess, double c, double tol,
                                    int max_iter, double* x0, usp_nnm_point* info) {
  if (auto st = require(s && x0_guess && x0, "null argument")) return st;
  return guarded([&] {
    const int n = s->s.size();
    const NNMResult r = solve_nnm(
        s->s, std::vector<double>(x0_guess, x0_guess + n), T_guess, c, tol, max_iter);
    std::copy(r.x0.begin(), r.x0.end(), x0);
    if (info) {
      info->T = r.T;
      info->energy = r.energy;
      info->eps = r.eps;
      info->residual_norm = r.residual_norm;
      info->velocity_return = r.velocity_return;
      info->iterations = r.iterations;
      info->branch_id = r.branch_id;
    }
  });
}

extern "C" usp_status usp_continue_nnm(const usp_system* s, int mode, double c,
                                       double eps_start, double eps_end,
                                       double delta0, double tol, usp_branch** out) {
  if (auto st = require(s && out, "null argument")) return st;
  *out = nullptr;
  usp_status st = guarded([&] {
    ContinuationResult r = continue_nnm(s->s, mode, c, eps_start, eps_end, delta0, tol);
    const bool completed = r.completed;
    *out = new usp_branch{std::move(r), s->s.size()};
    if (!completed) {
      set_error((*out)->r.diagnostic.c_str());
      throw Error(ErrorKind::continuation, (*out)->r.diagnostic);
    }
  });
  if (st == USP_ERR_CONTINUATION && *out != nullptr) return st;  // partial branch
  return st;
}

extern "C" usp_status usp_branch_size(const usp_branch* b, int* n_points, int* n_dof,
                                      int* completed) {
  if (auto st = require(b != nullptr, "null branch")) return st;
  if (n_points) *n_points = static_cast<int>(b->r.points.size());
  if (n_dof) *n_dof = b->n_dof;
  if (completed) *completed = b->r.completed ? 1 : 0;
  return USP_OK;
}

extern "C" usp_status usp_branch_point(const usp_branch* b, int i, double* x0,
                                       usp_nnm_point* info) {
  if (auto st = require(b != nullptr, "null branch")) return st;
  if (auto st = require(i >= 0 && i < static_cast<int>(b->r.points.size()),
                        "point index out of range"))
    return st;
  const NNMResult& r = b->r.points[i];
  if (x0) std::copy(r.x0.begin(), r.x0.end(), x0);
  if (info) {
    info->T = r.T;
    info->energy = r.energy;
    info->eps = r.eps;
    info->residual_norm = r.residual_norm;
    info->velocity_return = r.velocity_return;
    info->iterations = r.iterations;
    info->branch_id = r.branch_id;
  }
  return USP_OK;
}

extern "C" usp_status usp_branch_write_csv(const usp_branch* b, const char* path) {
  if (auto st = require(b && path, "null argument")) return st;
  return write_file(path, [&](std::ostream& os) { write_branch_csv(b->r.points, os); });
}

extern "C" usp_status usp_branch_write_json(const usp_branch* b, const char* path) {
  if (auto st = require(b && path, "null argument")) return st;
  return write_file(path, [&](std::ostream& os) {
    write_branch_json(b->r.points, b->r.completed, b->r.diagnostic, os);
  });
}

extern "C" void usp_branch_free(usp_branch* b) { delete b; }

/* ---- analysis ------------------------------------------------------------------ */

extern "C" usp_status usp_measure_period(const usp_system* s, const usp_series* ts,
                                         int component, double* period,
                                         double* std_error) {
  if (auto st = require(s && ts && period, "null argument")) return st;
  return guarded([&] {
    const PeriodEstimate p = measure_period(s->s, ts->ts, component);
    *period = p.period;
    if (std_error) *std_error = p.std_error;
  });
}

extern "C" usp_status usp_spectrum(const usp_system* s, const usp_series* ts,
                                   int component, int hann, int n_fft, double* freq,
                                   double* amp) {
  if (auto st = require(s && ts && freq && amp, "null argument")) return st;
  return guarded([&] {
    const FourierSpectrum sp =
        spectrum(s->s, ts->ts, component, hann ? Window::hann : Window::rectangular,
                 n_fft);
    std::copy(sp.frequencies.begin(), sp.frequencies.end(), freq);
    std::copy(sp.amplitudes.begin(), sp.amplitudes.end(), amp);
  });
}

extern "C" usp_status usp_spectrum_write_csv(const usp_system* s,
                                             const usp_series* ts, int component,
                                             int hann, int n_fft, const char* path) {
  if (auto st = require(s && ts && path, "null argument")) return st;
  return guarded([&] {
    const FourierSpectrum sp =
        spectrum(s->s, ts->ts, component, hann ? Window::hann : Window::rectangular,
                 n_fft);
    const usp_status st =
        write_file(path, [&](std::ostream& os) { write_spectrum_csv(sp, os); });
    if (st != USP_OK) raise(ErrorKind::invalid_argument, "write failed");
  });
}

extern "C" usp_status usp_spectrum_of_samples(const double* samples, int n,
                                              double dt, int hann, double* freq,
                                              double* amp) {
  if (auto st = require(samples && freq && amp && n > 0, "bad arguments")) return st;
  return guarded([&] {
    const FourierSpectrum sp =
        spectrum_of_samples(std::vector<double>(samples, samples + n), dt,
                            hann ? Window::hann : Window::rectangular);
    std::copy(sp.frequencies.begin(), sp.frequencies.end(), freq);
    std::copy(sp.amplitudes.begin(), sp.amplitudes.end(), amp);
  });
}

extern "C" usp_status usp_chi_remainder(const double* u, const double* v, int n,
                                        double eps, double* chi) {
  if (auto st = require(u && v && chi && n > 0, "bad arguments")) return st;
  return guarded([&] {
    const std::vector<double> out = chi_remainder(
        std::vector<double>(u, u + n), std::vector<double>(v, v + n), eps);
    std::copy(out.begin(), out.end(), chi);
  });
}

extern "C" usp_status usp_small_set_measure(const double* t, const double* u, int n,
                                            double threshold, double* measure) {
  if (auto st = require(t && u && measure && n >= 2, "bad arguments")) return st;
  return guarded([&] {
    auto interp = [t, u, n](double x) {
      const double* end = t + n;
      const double* it = std::upper_bound(t, end, x);
      int i = static_cast<int>(it - t) - 1;
      i = std::clamp(i, 0, n - 2);
      const double w = (x - t[i]) / (t[i + 1] - t[i]);
      return u[i] * (1.0 - w) + u[i + 1] * w;
    };
    *measure =
        small_set_measure(interp, t[0], t[n - 1], threshold, std::max(1024, 2 * n));
  });
}

extern "C" usp_status usp_abs_spectrum_gap(const double* lambdas,
                                           const double* amplitudes, int n,
                                           double t_avg, double* c_abs_T,
                                           double* c_abs_2T, double* c0) {
  if (auto st = require(lambdas && amplitudes && n > 0, "bad arguments")) return st;
  return guarded([&] {
    const SpectrumGapReport rep =
        abs_spectrum_gap(std::vector<double>(lambdas, lambdas + n),
                         std::vector<double>(amplitudes, amplitudes + n), t_avg);
    for (int k = 0; k < n; ++k) {
      if (c_abs_T) c_abs_T[k] = rep.c_abs_T[k];
      if (c_abs_2T) c_abs_2T[k] = rep.c_abs_2T[k];
    }
    if (c0) *c0 = rep.c0;
  });
}

/* ---- acceptance ------------------------------------------------------------------ */

extern "C" usp_status usp_validate_run(int quick, usp_report** out) {
  if (auto st = require(out != nullptr, "out is null")) return st;
  return guarded([&] { *out = new usp_report{run_acceptance(quick != 0)}; });
}

extern "C" usp_status usp_report_size(const usp_report* r, int* n) {
  if (auto st = require(r && n, "null argument")) return st;
  *n = static_cast<int>(r->entries.size());
  return USP_OK;
}

extern "C" usp_status usp_report_entry(const usp_report* r, int i,
                                       usp_criterion* out) {
  if (auto st = require(r && out, "null argument")) return st;
  if (auto st = require(i >= 0 && i < static_cast<int>(r->entries.size()),
                        "entry index out of range"))
    return st;
  const CriterionResult& c = r->entries[i];
  out->index = c.index;
  out->passed = c.pass ? 1 : 0;
  out->skipped = c.skipped ? 1 : 0;
  std::strncpy(out->name, c.name.c_str(), sizeof out->name - 1);
  out->name[sizeof out->name - 1] = '\0';
  std::strncpy(out->measured, c.measured.c_str(), sizeof out->measured - 1);
  out->measured[sizeof out->measured - 1] = '\0';
  std::strncpy(out->expected, c.expected.c_str(), sizeof out->expected - 1);
  out->expected[sizeof out->expected - 1] = '\0';
  out->seconds = c.seconds;
  return USP_OK;
}

extern "C" usp_status usp_report_write_json(const usp_report* r, const char* path) {
  if (auto st = require(r && path, "null argument")) return st;
  return write_file(path, [&](std::ostream& os) {
    JsonWriter w(os);
    w.begin_object();
    bool all = true;
    for (const auto& c : r->entries)
      if (!c.skipped && !c.pass) all = false;
    w.key("all_passed").value(all);
    w.key("criteria").begin_array();
    for (const auto& c : r->entries) {
      w.begin_object();
      w.key("index").value(c.index);
      w.key("name").value(c.name);
      w.key("pass").value(c.pass);
      w.key("skipped").value(c.skipped);
      w.key("measured").value(c.measured);
      w.key("expected").value(c.expected);
      w.end_object();
    }
    w.end_array();
    w.end_object();
    os << "\n";
  });
}

extern "C" void usp_report_free(usp_report* r) { delete r; }
