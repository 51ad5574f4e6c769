#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

// Small dense solvers. Every system in this library is tiny (active sets,
// Gram matrices of simplex faces), so a pivoted Gaussian elimination is all
// we need; no external linear-algebra dependency.

namespace nodim {

// Solves A x = b for square n x n row-major A. Returns nullopt when the
// matrix is numerically singular. A and b are taken by value on purpose.
inline std::optional<std::vector<double>> lu_solve(std::vector<double> A,
                                                   std::vector<double> b,
                                                   int n) {
  std::vector<int> piv(n);
  for (int i = 0; i < n; ++i) piv[i] = i;
  for (int col = 0; col < n; ++col) {
    int best = col;
    double best_abs = std::fabs(A[col * n + col]);
    for (int r = col + 1; r < n; ++r) {
      const double a = std::fabs(A[r * n + col]);
      if (a > best_abs) {
        best_abs = a;
        best = r;
      }
    }
    if (best_abs < 1e-300) return std::nullopt;
    if (best != col) {
      for (int j = 0; j < n; ++j) std::swap(A[best * n + j], A[col * n + j]);
      std::swap(b[best], b[col]);
    }
    const double pivot = A[col * n + col];
    for (int r = col + 1; r < n; ++r) {
      const double f = A[r * n + col] / pivot;
      if (f == 0.0) continue;
      A[r * n + col] = 0.0;
      for (int j = col + 1; j < n; ++j) A[r * n + j] -= f * A[col * n + j];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n, 0.0);
  for (int r = n - 1; r >= 0; --r) {
    double s = b[r];
    for (int j = r + 1; j < n; ++j) s -= A[r * n + j] * x[j];
    x[r] = s / A[r * n + r];
  }
  return x;
}

// Solves a symmetric (Gram-like) system, retrying with an escalating ridge
// when the matrix is singular, e.g. for affinely dependent point sets.
inline std::vector<double> solve_with_ridge(const std::vector<double>& A,
                                            const std::vector<double>& b,
                                            int n) {
  double trace = 0.0;
  for (int i = 0; i < n; ++i) trace += std::fabs(A[i * n + i]);
  double ridge = 0.0;
  for (int attempt = 0; attempt < 8; ++attempt) {
    std::vector<double> M = A;
    if (ridge > 0.0)
      for (int i = 0; i < n; ++i) M[i * n + i] += ridge;
    if (auto x = lu_solve(std::move(M), b, n)) return *x;
    ridge = (ridge == 0.0) ? 1e-14 * (trace / n + 1.0) : ridge * 100.0;
  }
  return std::vector<double>(n, 0.0);  // hopeless; caller copes via residuals
}

// Determinant via LU, used for affine-independence checks.
inline double determinant(std::vector<double> A, int n) {
  double det = 1.0;
  for (int col = 0; col < n; ++col) {
    int best = col;
    double best_abs = std::fabs(A[col * n + col]);
    for (int r = col + 1; r < n; ++r) {
      const double a = std::fabs(A[r * n + col]);
      if (a > best_abs) {
        best_abs = a;
        best = r;
      }
    }
    if (best_abs == 0.0) return 0.0;
    if (best != col) {
      for (int j = 0; j < n; ++j) std::swap(A[best * n + j], A[col * n + j]);
      det = -det;
    }
    const double pivot = A[col * n + col];
    det *= pivot;
    for (int r = col + 1; r < n; ++r) {
      const double f = A[r * n + col] / pivot;
      for (int j = col; j < n; ++j) A[r * n + j] -= f * A[col * n + j];
    }
  }
  return det;
}

}  // namespace nodim
