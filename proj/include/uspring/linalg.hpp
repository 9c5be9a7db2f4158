#pragma once

#include <functional>
#include <vector>

namespace uspring {

// Dense row-major helpers sized for desk-scale systems (N <= 64-ish).

struct SymmetricEigen {
  std::vector<double> values;   // ascending
  std::vector<double> vectors;  // row-major, column j = eigenvector j
};

// Cyclic Jacobi rotations on a symmetric matrix.
SymmetricEigen jacobi_eigen(const std::vector<double>& a, int n);

// Solve A x = b by LU with partial pivoting.  Throws on singular pivot.
std::vector<double> lu_solve(std::vector<double> a, std::vector<double> b, int n);

// 1-norm condition estimate via explicit inverse (fine at these sizes).
double condition_1norm(const std::vector<double>& a, int n);

// Composite 16-point Gauss-Legendre over [a, b] using `panels` subintervals.
double gauss_legendre(const std::function<double(double)>& f, double a, double b,
                      int panels);

// Least-squares slope of log(y) against log(x).
double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace uspring
