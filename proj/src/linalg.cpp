#include "uspring/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "uspring/errors.hpp"

namespace uspring {

SymmetricEigen jacobi_eigen(const std::vector<double>& a_in, int n) {
  std::vector<double> a = a_in;
  std::vector<double> v(static_cast<size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) v[static_cast<size_t>(i) * n + i] = 1.0;
  auto at = [&](int i, int j) -> double& { return a[static_cast<size_t>(i) * n + j]; };
  auto vt = [&](int i, int j) -> double& { return v[static_cast<size_t>(i) * n + j]; };

  double norm = 0.0;
  for (double x : a) norm = std::max(norm, std::abs(x));
  if (norm == 0.0) norm = 1.0;

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += std::abs(at(p, q));
    if (off < 1e-15 * norm * n) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = at(p, q);
        if (std::abs(apq) < 1e-300) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        const double t = ((theta >= 0.0) ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = at(k, p), akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = at(p, k), aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          const double vkp = vt(k, p), vkq = vt(k, q);
          vt(k, p) = c * vkp - s * vkq;
          vt(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return at(i, i) < at(j, j); });

  SymmetricEigen out;
  out.values.resize(n);
  out.vectors.assign(static_cast<size_t>(n) * n, 0.0);
  for (int j = 0; j < n; ++j) {
    out.values[j] = at(order[j], order[j]);
    // deterministic sign: largest-magnitude component positive
    int imax = 0;
    double vmax = 0.0;
    for (int i = 0; i < n; ++i) {
      const double x = vt(i, order[j]);
      if (std::abs(x) > std::abs(vmax)) {
        vmax = x;
        imax = i;
      }
    }
    (void)imax;
    const double sign = (vmax < 0.0) ? -1.0 : 1.0;
    for (int i = 0; i < n; ++i)
      out.vectors[static_cast<size_t>(i) * n + j] = sign * vt(i, order[j]);
  }
  return out;
}

std::vector<double> lu_solve(std::vector<double> a, std::vector<double> b, int n) {
  auto at = [&](int i, int j) -> double& { return a[static_cast<size_t>(i) * n + j]; };
  std::vector<int> piv(n);
  std::iota(piv.begin(), piv.end(), 0);
  for (int k = 0; k < n; ++k) {
    int p = k;
    for (int i = k + 1; i < n; ++i)
      if (std::abs(at(i, k)) > std::abs(at(p, k))) p = i;
    if (std::abs(at(p, k)) < 1e-300)
      raise(ErrorKind::no_convergence, "lu_solve: singular matrix");
    if (p != k) {
      for (int j = 0; j < n; ++j) std::swap(at(k, j), at(p, j));
      std::swap(b[k], b[p]);
    }
    for (int i = k + 1; i < n; ++i) {
      const double m = at(i, k) / at(k, k);
      at(i, k) = m;
      for (int j = k + 1; j < n; ++j) at(i, j) -= m * at(k, j);
      b[i] -= m * b[k];
    }
  }
  for (int i = n - 1; i >= 0; --i) {
    double s = b[i];
    for (int j = i + 1; j < n; ++j) s -= at(i, j) * b[j];
    b[i] = s / at(i, i);
  }
  return b;
}

double condition_1norm(const std::vector<double>& a, int n) {
  auto col_norms = [n](const std::vector<double>& m) {
    double best = 0.0;
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += std::abs(m[static_cast<size_t>(i) * n + j]);
      best = std::max(best, s);
    }
    return best;
  };
  std::vector<double> inv(static_cast<size_t>(n) * n, 0.0);
  for (int j = 0; j < n; ++j) {
    std::vector<double> e(n, 0.0);
    e[j] = 1.0;
    std::vector<double> x;
    try {
      x = lu_solve(a, e, n);
    } catch (const Error&) {
      return std::numeric_limits<double>::infinity();
    }
    for (int i = 0; i < n; ++i) inv[static_cast<size_t>(i) * n + j] = x[i];
  }
  return col_norms(a) * col_norms(inv);
}

namespace {
// 16-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr double kGlX[8] = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
    0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
    0.9445750230732326, 0.9894009349916499};
constexpr double kGlW[8] = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
    0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
    0.0622535239386479, 0.0271524594117541};
}  // namespace

double gauss_legendre(const std::function<double(double)>& f, double a, double b,
                      int panels) {
  if (panels < 1) panels = 1;
  const double h = (b - a) / panels;
  double acc = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    const double half = 0.5 * h;
    for (int i = 0; i < 8; ++i) {
      acc += kGlW[i] * (f(mid - half * kGlX[i]) + f(mid + half * kGlX[i])) * half;
    }
  }
  return acc;
}

double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace uspring
