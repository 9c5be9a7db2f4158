#include "uspring/nnm.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "uspring/errors.hpp"
#include "uspring/linalg.hpp"

namespace uspring {

namespace {

constexpr double kPi = std::numbers::pi;

double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

// End state of the flow from (x0, 0) at time T.
void propagate(const OscillatorSystem& sys, const std::vector<double>& x0, double T,
               double tol, std::vector<double>& u_out, std::vector<double>& v_out) {
  const TimeSeries ts = simulate(sys, x0, std::vector<double>(x0.size(), 0.0), T, tol);
  const int n = ts.n_dof;
  u_out.assign(ts.u(ts.samples() - 1), ts.u(ts.samples() - 1) + n);
  v_out.assign(ts.v(ts.samples() - 1), ts.v(ts.samples() - 1) + n);
}

std::vector<double> residual_of(const OscillatorSystem& sys,
                                const std::vector<double>& z, double c, double tol,
                                EnergyFunctional ef, double* v_return = nullptr) {
  const int n = sys.size();
  std::vector<double> x0(z.begin(), z.begin() + n);
  const double T = z[n];
  if (!(T > 0.0)) raise(ErrorKind::invalid_argument, "shoot_residual: T <= 0");
  std::vector<double> u, v;
  propagate(sys, x0, T, std::max(1e-13, tol / 10.0), u, v);
  std::vector<double> F(n + 1);
  for (int i = 0; i < n; ++i) F[i] = u[i] - x0[i];
  F[n] = energy(sys, x0, std::vector<double>(n, 0.0), ef) - c * sys.eps;
  if (v_return) *v_return = norm2(v);
  return F;
}

}  // namespace

std::vector<double> shoot_residual(const OscillatorSystem& sys,
                                   const std::vector<double>& x0, double T,
                                   double c, double tol, EnergyFunctional ef) {
  if (static_cast<int>(x0.size()) != sys.size())
    raise(ErrorKind::invalid_argument, "shoot_residual: dimension mismatch");
  std::vector<double> z = x0;
  z.push_back(T);
  return residual_of(sys, z, c, tol, ef);
}

NNMResult solve_nnm(const OscillatorSystem& sys, const std::vector<double>& x0_guess,
                    double T_guess, double c, double tol, int max_iter,
                    EnergyFunctional ef) {
  const int n = sys.size();
  if (static_cast<int>(x0_guess.size()) != n)
    raise(ErrorKind::invalid_argument, "solve_nnm: dimension mismatch");
  const int m = n + 1;

  std::vector<double> z = x0_guess;
  z.push_back(T_guess);
  std::vector<double> F = residual_of(sys, z, c, tol, ef);
  double fnorm = norm2(F);

  std::vector<double> best_z = z;
  double best_norm = fnorm;
  double radius = 0.5 * std::max(1.0, norm2(z));
  int iter = 0;

  while (fnorm > tol && iter < max_iter) {
    ++iter;
    // Forward-difference Jacobian, m extra residual evaluations.
    std::vector<double> J(static_cast<size_t>(m) * m);
    for (int j = 0; j < m; ++j) {
      const double h = std::sqrt(tol) * std::max(1.0, std::abs(z[j]));
      std::vector<double> zj = z;
      zj[j] += h;
      const std::vector<double> Fj = residual_of(sys, zj, c, tol, ef);
      for (int i = 0; i < m; ++i) J[static_cast<size_t>(i) * m + j] = (Fj[i] - F[i]) / h;
    }
    if (condition_1norm(J, m) > 1e12)
      raise(ErrorKind::no_convergence,
            "solve_nnm: Jacobian condition estimate exceeds 1e12 (degenerate orbit)");

    std::vector<double> neg_f(m);
    for (int i = 0; i < m; ++i) neg_f[i] = -F[i];
    const std::vector<double> newton = lu_solve(J, neg_f, m);

    // Cauchy point along the steepest-descent direction of |F|^2 / 2.
    std::vector<double> grad(m, 0.0);
    for (int j = 0; j < m; ++j)
      for (int i = 0; i < m; ++i) grad[j] += J[static_cast<size_t>(i) * m + j] * F[i];
    std::vector<double> jg(m, 0.0);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) jg[i] += J[static_cast<size_t>(i) * m + j] * grad[j];
    const double gn = norm2(grad), jgn = norm2(jg);
    const double cauchy_len = (jgn > 0.0) ? gn * gn / (jgn * jgn) : 0.0;

    bool progressed = false;
    for (int shrink = 0; shrink < 30 && !progressed; ++shrink) {
      // Dogleg step within the trust radius.
      std::vector<double> p(m);
      const double newton_len = norm2(newton);
      if (newton_len <= radius) {
        p = newton;
      } else if (cauchy_len * gn >= radius) {
        for (int i = 0; i < m; ++i) p[i] = -radius / gn * grad[i];
      } else {
        std::vector<double> pc(m);
        for (int i = 0; i < m; ++i) pc[i] = -cauchy_len * grad[i];
        // Intersection of the segment pc -> newton with the radius.
        std::vector<double> d(m);
        for (int i = 0; i < m; ++i) d[i] = newton[i] - pc[i];
        double aa = 0, bb = 0, cc = -radius * radius;
        for (int i = 0; i < m; ++i) {
          aa += d[i] * d[i];
          bb += 2.0 * pc[i] * d[i];
          cc += pc[i] * pc[i];
        }
        const double s = (-bb + std::sqrt(std::max(0.0, bb * bb - 4 * aa * cc))) /
                         (2.0 * aa);
        for (int i = 0; i < m; ++i) p[i] = pc[i] + s * d[i];
      }

      std::vector<double> z_try(m);
      for (int i = 0; i < m; ++i) z_try[i] = z[i] + p[i];
      if (!(z_try[n] > 0.0)) {
        radius *= 0.5;
        continue;
      }
      std::vector<double> F_try;
      try {
        F_try = residual_of(sys, z_try, c, tol, ef);
      } catch (const Error&) {
        radius *= 0.5;
        continue;
      }
      const double f_try = norm2(F_try);

      // Predicted residual of the linear model.
      std::vector<double> lin(m);
      for (int i = 0; i < m; ++i) {
        lin[i] = F[i];
        for (int j = 0; j < m; ++j) lin[i] += J[static_cast<size_t>(i) * m + j] * p[j];
      }
      const double pred = fnorm * fnorm - norm2(lin) * norm2(lin);
      const double actual = fnorm * fnorm - f_try * f_try;
      const double rho = pred > 0.0 ? actual / pred : (f_try < fnorm ? 1.0 : -1.0);

      if (rho > 0.1) {
        z = z_try;
        F = F_try;
        fnorm = f_try;
        if (fnorm < best_norm) {
          best_norm = fnorm;
          best_z = z;
        }
        if (rho > 0.75 && norm2(p) > 0.8 * radius) radius *= 2.0;
        progressed = true;
      } else {
        radius *= 0.5;
      }
    }
    if (!progressed) break;
  }

  if (fnorm > tol)
    raise(ErrorKind::no_convergence,
          "solve_nnm: no convergence after " + std::to_string(iter) +
              " iterations, best |F| = " + std::to_string(best_norm));

  // Sharpen T to the symmetric return: the velocity-zero crossing of the
  // dominant component nearest the converged T.  The raw periodicity rows are
  // quadratically flat in T there, so Newton alone leaves T fuzzy.
  std::vector<double> x0(z.begin(), z.begin() + n);
  double T = z[n];
  {
    int dom = 0;
    for (int i = 1; i < n; ++i)
      if (std::abs(x0[i]) > std::abs(x0[dom])) dom = i;
    const double itol = std::max(1e-13, std::min(tol, 1e-10) / 10.0);
    const TimeSeries ts =
        simulate(sys, x0, std::vector<double>(n, 0.0), 1.1 * T, itol);
    double best_t = T;
    double best_d = 0.1 * T;
    std::vector<double> um(n), vm(n);
    for (int i = 1; i < ts.samples(); ++i) {
      const double v0 = ts.v(i - 1)[dom], v1 = ts.v(i)[dom];
      if (v0 == 0.0 && v1 == 0.0) continue;
      if (v0 * v1 <= 0.0 && std::abs(ts.times[i - 1] - T) < 0.1 * T) {
        double lo = ts.times[i - 1], hi = ts.times[i];
        for (int it = 0; it < 60; ++it) {
          const double mid = 0.5 * (lo + hi);
          sample_state(sys, ts, mid, um.data(), vm.data());
          if ((vm[dom] > 0) == (v0 > 0))
            lo = mid;
          else
            hi = mid;
        }
        const double tc = 0.5 * (lo + hi);
        if (std::abs(tc - T) < best_d) {
          best_d = std::abs(tc - T);
          best_t = tc;
        }
      }
    }
    T = best_t;
  }

  NNMResult out;
  out.x0 = x0;
  out.T = T;
  out.eps = sys.eps;
  out.energy = energy(sys, x0, std::vector<double>(n, 0.0), ef);
  double v_return = 0.0;
  std::vector<double> zf = x0;
  zf.push_back(T);
  out.residual_norm = norm2(residual_of(sys, zf, c, tol, ef, &v_return));
  out.velocity_return = v_return;
  out.iterations = iter;
  return out;
}

ContinuationResult continue_nnm(const OscillatorSystem& sys, int mode, double c,
                                double eps_start, double eps_end, double delta0,
                                double tol, EnergyFunctional ef) {
  const int n = sys.size();
  if (mode < 0 || mode >= n)
    raise(ErrorKind::invalid_argument, "continue_nnm: mode out of range");
  if (!(eps_start > 0.0) || !(eps_end > eps_start) || !(delta0 > 0.0) || !(c > 0.0))
    raise(ErrorKind::invalid_argument, "continue_nnm: bad sweep parameters");

  ContinuationResult out;
  OscillatorSystem work = sys;

  auto solve_at = [&](double eps, const std::vector<double>& x0g, double Tg) {
    work.eps = eps;
    NNMResult r = solve_nnm(work, x0g, Tg, c, tol, 60, ef);
    r.branch_id = mode;
    return r;
  };

  // Linear-mode predictor scaled to E = c * eps with zero velocities.
  const double lam = sys.lambdas[mode];
  std::vector<double> x0(n, 0.0);
  x0[mode] = std::sqrt(2.0 * c * eps_start) / lam;
  try {
    out.points.push_back(solve_at(eps_start, x0, 2.0 * kPi / lam));
  } catch (const Error& e) {
    raise(ErrorKind::continuation,
          std::string("continue_nnm: initial solve failed: ") + e.what());
  }

  double eps = eps_start;
  double delta = delta0;
  while (eps < eps_end - 1e-15) {
    const double step = std::min(delta, eps_end - eps);
    const double eps_try = eps + step;
    std::vector<double> guess = out.points.back().x0;
    double t_guess = out.points.back().T;
    if (out.points.size() >= 2) {
      const NNMResult& a = out.points[out.points.size() - 2];
      const NNMResult& b = out.points.back();
      const double w = (eps_try - b.eps) / (b.eps - a.eps);
      for (int i = 0; i < n; ++i) guess[i] = b.x0[i] + w * (b.x0[i] - a.x0[i]);
      t_guess = b.T + w * (b.T - a.T);
    }
    try {
      out.points.push_back(solve_at(eps_try, guess, t_guess));
      eps = eps_try;
      delta = std::min(delta0, 2.0 * delta);
    } catch (const Error&) {
      delta *= 0.5;
      if (delta < 1e-6 * delta0) {
        out.diagnostic = "branch lost at eps = " + std::to_string(eps) +
                         " after repeated step halving";
        return out;
      }
    }
  }
  out.completed = true;
  return out;
}

}  // namespace uspring
