#pragma once

#include <string>
#include <vector>

namespace uspring {

// Diagonalized modal system  u_k'' + lambda_k^2 u_k = -eps (A U - B)_k+ .
struct OscillatorSystem {
  std::vector<double> lambdas;  // modal frequencies, all > 0
  std::vector<double> A;        // row-major N x N contact matrix
  std::vector<double> B;        // gap vector, length N
  double eps = 0.0;

  int size() const { return static_cast<int>(lambdas.size()); }
  double a(int k, int j) const { return A[static_cast<size_t>(k) * size() + j]; }

  // Switching function (A U - B)_k.
  double gap_function(int k, const double* u) const;

  // Screen |q lambda_k - p lambda_ref| > delta * lambda_ref for p,q in 1..Q.
  bool z_independent(int k, int ref, int Q = 64, double delta = 1e-6) const;
  bool z_independent_all(int Q = 64, double delta = 1e-6) const;

  // FNV-1a over the defining doubles; identifies a system in sidecar files.
  std::string hash() const;
};

OscillatorSystem make_system(std::vector<double> lambdas, std::vector<double> A,
                             std::vector<double> B, double eps);

// Generalized eigenproblem K phi = lambda^2 M phi with M diagonal positive,
// K symmetric positive definite.  Eigenvectors are M-orthonormal columns.
struct ModalBasis {
  std::vector<double> lambdas;  // ascending
  std::vector<double> phi;      // row-major, column j = eigenvector j
};
ModalBasis generalized_modes(const std::vector<double>& mass_diag,
                             const std::vector<double>& stiffness, int n);

// Modal system for a local unilateral defect injected on one eigenvector:
// row `defect_mode` of A holds the first components of every eigenvector and
// B holds the gap there; all other rows are zero.
OscillatorSystem modal_from_physical(const std::vector<double>& mass_diag,
                                     const std::vector<double>& stiffness,
                                     int defect_mode, double gap, double eps);

}  // namespace uspring
