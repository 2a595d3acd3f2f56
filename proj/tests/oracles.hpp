// Test-only reference implementations, independent of the library's
// bi-Lanczos path: a plain Hermitian Lanczos recursion and a brute-force
// Krylov span dimension.
#pragma once

#include <vector>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "opk/common.hpp"

namespace opk::testing {

struct LanczosReference {
  std::vector<double> a;  // diagonal (real for Hermitian input)
  std::vector<double> b;  // b[0] = 0
  int dim = 0;
};

/// Single-sided Lanczos with full reorthogonalization under the scaled
/// inner product (x|y) = x^dag y / D.
inline LanczosReference hermitian_lanczos(const Matrix& h, const Vector& x0, int space_dim,
                                          double tol = 1e-8) {
  const double d = static_cast<double>(space_dim);
  const double sqrt_d = std::sqrt(d);
  std::vector<Vector> basis{x0};
  LanczosReference out;
  out.b.push_back(0.0);

  Vector prev = Vector::Zero(x0.size());
  double b_ref = 1.0;
  for (int n = 0;; ++n) {
    const Vector w = h * basis[static_cast<std::size_t>(n)];
    const double a_n = (basis[static_cast<std::size_t>(n)].dot(w) / d).real();
    out.a.push_back(a_n);
    Vector v = w - a_n * basis[static_cast<std::size_t>(n)];
    if (n >= 1) v -= out.b[static_cast<std::size_t>(n)] * basis[static_cast<std::size_t>(n - 1)];
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : basis) v -= q * (q.dot(v) / d);
    const double b_next = v.norm() / sqrt_d;
    if (n == 0) b_ref = std::max(b_next, 1.0);
    if (b_next <= tol * b_ref || n + 2 > static_cast<int>(x0.size())) break;
    basis.push_back(v / b_next);
    out.b.push_back(b_next);
  }
  out.dim = static_cast<int>(out.a.size());
  return out;
}

/// Numerical dimension of span{x0, L x0, L^2 x0, ...} via SVD rank.
inline int krylov_span_dimension(const Matrix& l, const Vector& x0, double rel_tol = 1e-10) {
  const Eigen::Index n = x0.size();
  Matrix krylov(n, n);
  Vector v = x0;
  for (Eigen::Index k = 0; k < n; ++k) {
    krylov.col(k) = v / v.norm();
    v = l * v;
  }
  Eigen::JacobiSVD<Matrix> svd(krylov);
  const auto& sv = svd.singularValues();
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > rel_tol * sv(0)) ++rank;
  return rank;
}

}  // namespace opk::testing
