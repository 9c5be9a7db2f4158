#include "uspring/system.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>

#include "uspring/errors.hpp"
#include "uspring/linalg.hpp"

namespace uspring {

double OscillatorSystem::gap_function(int k, const double* u) const {
  const int n = size();
  double s = -B[k];
  for (int j = 0; j < n; ++j) s += A[static_cast<size_t>(k) * n + j] * u[j];
  return s;
}

bool OscillatorSystem::z_independent(int k, int ref, int Q, double delta) const {
  const double lk = lambdas[k], lr = lambdas[ref];
  for (int q = 1; q <= Q; ++q)
    for (int p = 1; p <= Q; ++p)
      if (std::abs(q * lk - p * lr) <= delta * lr) return false;
  return true;
}

bool OscillatorSystem::z_independent_all(int Q, double delta) const {
  const int n = size();
  for (int k = 0; k < n; ++k)
    for (int r = 0; r < n; ++r)
      if (k != r && !z_independent(k, r, Q, delta)) return false;
  return true;
}

std::string OscillatorSystem::hash() const {
  uint64_t h = 1469598103934665603ull;
  auto mix = [&h](const void* p, size_t n) {
    const unsigned char* b = static_cast<const unsigned char*>(p);
    for (size_t i = 0; i < n; ++i) {
      h ^= b[i];
      h *= 1099511628211ull;
    }
  };
  for (double x : lambdas) mix(&x, sizeof x);
  for (double x : A) mix(&x, sizeof x);
  for (double x : B) mix(&x, sizeof x);
  mix(&eps, sizeof eps);
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

OscillatorSystem make_system(std::vector<double> lambdas, std::vector<double> A,
                             std::vector<double> B, double eps) {
  const size_t n = lambdas.size();
  if (n == 0) raise(ErrorKind::invalid_argument, "make_system: empty system");
  if (A.size() != n * n || B.size() != n)
    raise(ErrorKind::invalid_argument, "make_system: dimension mismatch");
  for (double l : lambdas)
    if (!(l > 0.0)) raise(ErrorKind::invalid_argument, "make_system: lambda <= 0");
  if (!(eps >= 0.0)) raise(ErrorKind::invalid_argument, "make_system: eps < 0");
  return OscillatorSystem{std::move(lambdas), std::move(A), std::move(B), eps};
}

ModalBasis generalized_modes(const std::vector<double>& mass_diag,
                             const std::vector<double>& stiffness, int n) {
  if (static_cast<int>(mass_diag.size()) != n ||
      static_cast<int>(stiffness.size()) != n * n)
    raise(ErrorKind::invalid_argument, "generalized_modes: dimension mismatch");
  for (double m : mass_diag)
    if (!(m > 0.0))
      raise(ErrorKind::invalid_argument, "generalized_modes: mass entries must be > 0");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double kij = stiffness[static_cast<size_t>(i) * n + j];
      const double kji = stiffness[static_cast<size_t>(j) * n + i];
      if (std::abs(kij - kji) > 1e-12 * (1.0 + std::abs(kij)))
        raise(ErrorKind::invalid_argument, "generalized_modes: K not symmetric");
    }

  // Symmetric reduction C = M^{-1/2} K M^{-1/2}, then Jacobi rotations.
  std::vector<double> c(static_cast<size_t>(n) * n);
  std::vector<double> inv_sqrt_m(n);
  for (int i = 0; i < n; ++i) inv_sqrt_m[i] = 1.0 / std::sqrt(mass_diag[i]);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      c[static_cast<size_t>(i) * n + j] =
          stiffness[static_cast<size_t>(i) * n + j] * inv_sqrt_m[i] * inv_sqrt_m[j];

  const SymmetricEigen eig = jacobi_eigen(c, n);
  ModalBasis out;
  out.lambdas.resize(n);
  out.phi.assign(static_cast<size_t>(n) * n, 0.0);
  for (int j = 0; j < n; ++j) {
    if (!(eig.values[j] > 0.0))
      raise(ErrorKind::invalid_argument,
            "generalized_modes: K not positive definite");
    out.lambdas[j] = std::sqrt(eig.values[j]);
    for (int i = 0; i < n; ++i)
      out.phi[static_cast<size_t>(i) * n + j] =
          inv_sqrt_m[i] * eig.vectors[static_cast<size_t>(i) * n + j];
  }
  return out;
}

OscillatorSystem modal_from_physical(const std::vector<double>& mass_diag,
                                     const std::vector<double>& stiffness,
                                     int defect_mode, double gap, double eps) {
  const int n = static_cast<int>(mass_diag.size());
  const ModalBasis basis = generalized_modes(mass_diag, stiffness, n);
  if (defect_mode < 0 || defect_mode >= n)
    raise(ErrorKind::invalid_argument, "modal_from_physical: defect mode out of range");

  std::vector<double> A(static_cast<size_t>(n) * n, 0.0);
  std::vector<double> B(n, 0.0);
  for (int j = 0; j < n; ++j)
    A[static_cast<size_t>(defect_mode) * n + j] = basis.phi[static_cast<size_t>(0) * n + j];
  B[defect_mode] = gap;
  return make_system(basis.lambdas, std::move(A), std::move(B), eps);
}

}  // namespace uspring
