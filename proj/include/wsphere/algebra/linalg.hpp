// Small dense linear algebra: exact rank and extended precision solves.
#ifndef WSPHERE_ALGEBRA_LINALG_HPP
#define WSPHERE_ALGEBRA_LINALG_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "wsphere/algebra/big_complex.hpp"
#include "wsphere/algebra/exact_complex.hpp"
#include "wsphere/error.hpp"

namespace wsphere {

template <class T>
using Matrix = std::vector<std::vector<T>>;

/// Rank over the Gaussian rationals by Gaussian elimination.
inline std::size_t exact_rank(Matrix<ExactComplex> m) {
  std::size_t rank = 0;
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t piv = rank;
    while (piv < rows && m[piv][col].is_zero()) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[rank]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (m[r][col].is_zero()) continue;
      ExactComplex f = m[r][col] / m[rank][col];
      for (std::size_t c = col; c < cols; ++c) m[r][c] -= f * m[rank][c];
    }
    ++rank;
  }
  return rank;
}

/// Solves a x = b by Gaussian elimination with partial pivoting. A pivot
/// below `singular_tol` times the largest entry of a is reported as a
/// singular system.
inline std::vector<BigComplex> solve_linear(Matrix<BigComplex> a, std::vector<BigComplex> b,
                                            const BigFloat& singular_tol) {
  const std::size_t n = a.size();
  BigFloat amax;
  for (const auto& row : a)
    for (const auto& x : row) amax = max(amax, x.abs());
  if (amax.is_zero()) throw Error(ErrorKind::SingularJacobian, "zero matrix");
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    BigFloat best = a[col][col].abs();
    for (std::size_t r = col + 1; r < n; ++r) {
      BigFloat v = a[r][col].abs();
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best <= singular_tol * amax) throw Error(ErrorKind::SingularJacobian, "pivot below tolerance");
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      BigComplex f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<BigComplex> x(n);
  for (std::size_t i = n; i-- > 0;) {
    BigComplex acc = b[i];
    for (std::size_t c = i + 1; c < n; ++c) acc -= a[i][c] * x[c];
    x[i] = acc / a[i][i];
  }
  return x;
}

/// Least squares J dx = -r via the normal equations J^H J dx = -J^H r.
inline std::vector<BigComplex> gauss_newton_step(const Matrix<BigComplex>& jac, const std::vector<BigComplex>& r,
                                                 const BigFloat& singular_tol) {
  const std::size_t m = jac.size(), n = jac.empty() ? 0 : jac[0].size();
  Matrix<BigComplex> ata(n, std::vector<BigComplex>(n));
  std::vector<BigComplex> atb(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      BigComplex acc;
      for (std::size_t k = 0; k < m; ++k) acc += jac[k][i].conj() * jac[k][j];
      ata[i][j] = acc;
    }
    BigComplex acc;
    for (std::size_t k = 0; k < m; ++k) acc -= jac[k][i].conj() * r[k];
    atb[i] = acc;
  }
  return solve_linear(std::move(ata), std::move(atb), singular_tol);
}

}  // namespace wsphere

#endif  // WSPHERE_ALGEBRA_LINALG_HPP
