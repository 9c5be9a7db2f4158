#include "uspring/rk45.hpp"

#include <algorithm>
#include <cmath>

#include "uspring/errors.hpp"

namespace uspring {

namespace {

// Dormand-Prince coefficients.
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                 e4 = 125.0 / 192 - 393.0 / 640,
                 e5 = -2187.0 / 6784 + 92097.0 / 339200, e6 = 11.0 / 84 - 187.0 / 2100,
                 e7 = -1.0 / 40;
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;

struct Stages {
  std::vector<double> k1, k2, k3, k4, k5, k6, k7, ytmp, ynew;
  explicit Stages(int dim)
      : k1(dim), k2(dim), k3(dim), k4(dim), k5(dim), k6(dim), k7(dim),
        ytmp(dim), ynew(dim) {}
};

// One trial step; returns scaled error norm.  k1 must hold f(t, y).
double try_step(const RhsFn& rhs, int dim, double t, const double* y, double h,
                double tol, Stages& st) {
  auto& [k1, k2, k3, k4, k5, k6, k7, ytmp, ynew] = st;
  for (int i = 0; i < dim; ++i) ytmp[i] = y[i] + h * a21 * k1[i];
  rhs(t + c2 * h, ytmp.data(), k2.data());
  for (int i = 0; i < dim; ++i) ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
  rhs(t + c3 * h, ytmp.data(), k3.data());
  for (int i = 0; i < dim; ++i)
    ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
  rhs(t + c4 * h, ytmp.data(), k4.data());
  for (int i = 0; i < dim; ++i)
    ytmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
  rhs(t + c5 * h, ytmp.data(), k5.data());
  for (int i = 0; i < dim; ++i)
    ytmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] +
                          a65 * k5[i]);
  rhs(t + h, ytmp.data(), k6.data());
  for (int i = 0; i < dim; ++i)
    ynew[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] +
                          b6 * k6[i]);
  rhs(t + h, ynew.data(), k7.data());

  double err = 0.0;
  for (int i = 0; i < dim; ++i) {
    const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                          e6 * k6[i] + e7 * k7[i]);
    const double sc = tol * (1.0 + std::max(std::abs(y[i]), std::abs(ynew[i])));
    err += (e / sc) * (e / sc);
  }
  return std::sqrt(err / dim);
}

}  // namespace

void hermite_eval(const RkStepView& step, double t, double* out) {
  const double h = step.t1 - step.t0;
  const double th = (t - step.t0) / h;
  const double th2 = th * th, th3 = th2 * th;
  const double h00 = 2 * th3 - 3 * th2 + 1;
  const double h10 = th3 - 2 * th2 + th;
  const double h01 = -2 * th3 + 3 * th2;
  const double h11 = th3 - th2;
  for (int i = 0; i < step.dim; ++i)
    out[i] = h00 * step.y0[i] + h * h10 * step.f0[i] + h01 * step.y1[i] +
             h * h11 * step.f1[i];
}

void integrate_rk45(const RhsFn& rhs, int dim, double t0, double t_end,
                    std::vector<double>& y, const Rk45Options& opts,
                    const std::vector<SwitchFn>& switching,
                    const std::function<void(const RkStepView&)>& on_accept,
                    std::vector<RkEvent>* events) {
  if (!(t_end > t0)) raise(ErrorKind::invalid_argument, "integrate_rk45: t_end <= t0");
  const double tol = opts.tol;
  const double span = t_end - t0;
  Stages st(dim);
  std::vector<double> ydense(dim);

  double t = t0;
  rhs(t, y.data(), st.k1.data());

  // Initial step heuristic: resolve the fastest scale seen in f.
  double fn = 0.0, yn = 0.0;
  for (int i = 0; i < dim; ++i) {
    fn = std::max(fn, std::abs(st.k1[i]));
    yn = std::max(yn, std::abs(y[i]));
  }
  double h = std::min(span / 10.0, 0.1 * (1.0 + yn) / (1.0 + fn));

  const double ev_tol = tol * opts.event_scale;
  std::vector<int> last_sign(switching.size(), 0);
  auto sgn = [ev_tol](double g) -> int {
    if (g > ev_tol) return 1;
    if (g < -ev_tol) return -1;
    return 0;
  };
  for (size_t k = 0; k < switching.size(); ++k)
    last_sign[k] = sgn(switching[k](t, y.data()));

  long long steps = 0;
  while (t < t_end) {
    if (++steps > opts.max_steps)
      raise(ErrorKind::integration, "integrate_rk45: step budget exceeded");
    h = std::min(h, t_end - t);
    if (h < 1e-14 * span)
      raise(ErrorKind::integration, "integrate_rk45: step-size underflow");

    double err = try_step(rhs, dim, t, y.data(), h, tol, st);
    if (!std::isfinite(err))
      raise(ErrorKind::integration, "integrate_rk45: non-finite state");
    if (err > 1.0) {
      h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
      continue;
    }

    RkStepView step{t, t + h, y.data(), st.ynew.data(), st.k1.data(),
                    st.k7.data(), dim};

    // Scan dense output for the earliest switching-function sign change.
    double t_event = -1.0;
    int ev_index = -1;
    if (!switching.empty()) {
      constexpr int kScan = 8;
      for (size_t k = 0; k < switching.size(); ++k) {
        int prev = last_sign[k];
        double t_prev = t;
        for (int m = 1; m <= kScan; ++m) {
          const double tm = t + h * m / kScan;
          double gm;
          if (m == kScan) {
            gm = switching[k](tm, st.ynew.data());
          } else {
            hermite_eval(step, tm, ydense.data());
            gm = switching[k](tm, ydense.data());
          }
          const int s = sgn(gm);
          if (s != 0 && prev != 0 && s != prev) {
            // Bisect on the interpolant.
            double lo = t_prev, hi = tm;
            for (int it = 0; it < 80; ++it) {
              const double mid = 0.5 * (lo + hi);
              hermite_eval(step, mid, ydense.data());
              const double gmid = switching[k](mid, ydense.data());
              if (sgn(gmid) == 0) {
                lo = hi = mid;
                break;
              }
              if (sgn(gmid) == prev)
                lo = mid;
              else
                hi = mid;
              if (hi - lo < 1e-15 * (1.0 + std::abs(t))) break;
            }
            const double tc = 0.5 * (lo + hi);
            if (tc > t + 1e-14 * (1.0 + std::abs(t)) &&
                (t_event < 0.0 || tc < t_event)) {
              t_event = tc;
              ev_index = static_cast<int>(k);
            }
            break;
          }
          if (s != 0) {
            prev = s;
            t_prev = tm;
          }
        }
      }
    }

    if (t_event > 0.0) {
      // Slope of g on the trial interpolant, for sharpening the event time
      // against the actually integrated state (the interpolant is one order
      // below the step).
      double gdot = 0.0;
      {
        const double d = 1e-4 * h;
        const double tp = std::min(t_event + d, t + h);
        const double tm = std::max(t_event - d, t);
        hermite_eval(step, tp, ydense.data());
        const double gp = switching[ev_index](tp, ydense.data());
        hermite_eval(step, tm, ydense.data());
        const double gm = switching[ev_index](tm, ydense.data());
        if (tp > tm) gdot = (gp - gm) / (tp - tm);
      }
      // Re-take the step exactly up to the event so the kink stays at a
      // step boundary, then restart there.
      double he = t_event - t;
      for (int pass = 0; pass < 4; ++pass) {
        err = try_step(rhs, dim, t, y.data(), he, tol, st);
        const double gval = switching[ev_index](t + he, st.ynew.data());
        if (std::abs(gval) <= ev_tol || gdot == 0.0 || pass == 3) break;
        he -= gval / gdot;
        he = std::min(std::max(he, 1e-3 * (t_event - t)), h);
      }
      RkStepView cut{t, t + he, y.data(), st.ynew.data(), st.k1.data(),
                     st.k7.data(), dim};
      on_accept(cut);
      y = st.ynew;
      std::swap(st.k1, st.k7);  // FSAL
      t = t + he;
      if (events) events->push_back({t, ev_index});
      for (size_t k = 0; k < switching.size(); ++k)
        last_sign[k] = sgn(switching[k](t, y.data()));
      // Keep the pre-event step size for the continuation.
      continue;
    }

    on_accept(step);
    y = st.ynew;
    std::swap(st.k1, st.k7);
    t += h;
    if (!switching.empty()) {
      for (size_t k = 0; k < switching.size(); ++k) {
        const int s = sgn(switching[k](t, y.data()));
        if (s != 0) last_sign[k] = s;
      }
    }
    h *= std::min(5.0, std::max(0.2, 0.9 * std::pow(std::max(err, 1e-10), -0.2)));
  }
}

}  // namespace uspring
