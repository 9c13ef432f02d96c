// Residues of rational functions at finite poles and at infinity.
#ifndef WSPHERE_ALGEBRA_RESIDUE_HPP
#define WSPHERE_ALGEBRA_RESIDUE_HPP

#include <string>
#include <vector>

#include "wsphere/algebra/polynomial.hpp"
#include "wsphere/algebra/rational_function.hpp"
#include "wsphere/error.hpp"

namespace wsphere {

namespace detail {

/// Coefficient of t^(m-1) in n(t) / (d_m + d_{m+1} t + ...), where n and d
/// are the Taylor expansions of numerator and denominator at the pole.
template <Scalar T>
T laurent_minus_one(const Polynomial<T>& n, const Polynomial<T>& d, unsigned m) {
  std::vector<T> c(m);
  const T& lead = d.coeff(m);
  for (unsigned j = 0; j < m; ++j) {
    T acc = n.coeff(j);
    for (unsigned i = 1; i <= j; ++i) acc = acc - d.coeff(m + i) * c[j - i];
    c[j] = acc / lead;
  }
  return c[m - 1];
}

}  // namespace detail

/// Order of z0 as a zero of den, decided at `digits` digits. Taylor
/// coefficients are compared against the evaluation scale
/// sum |c_i| max(1, |z0|)^i of the whole denominator: below 10^(-digits/2)
/// of it a coefficient counts as zero, above 10^(-digits/4) as nonzero, and
/// anything in between is reported as ambiguous.
inline unsigned numeric_zero_order(const NumPoly& den, const BigComplex& z0, unsigned digits) {
  NumPoly d = den.taylor_shift(z0);
  const BigFloat s = eval_scale(den, BigComplex(max(BigFloat(1), z0.abs())));
  const BigFloat zero_tol = BigFloat::pow10(-static_cast<long>(digits / 2), digits) * s;
  const BigFloat nonzero_tol = BigFloat::pow10(-static_cast<long>(digits / 4), digits) * s;
  for (int j = 0; j <= d.degree(); ++j) {
    BigFloat v = d.coeff(j).abs();
    if (v <= zero_tol) continue;
    if (v > nonzero_tol) return static_cast<unsigned>(j);
    throw Error(ErrorKind::AmbiguousPole, "cannot decide whether the denominator vanishes to order " +
                                              std::to_string(j + 1) + " at working precision");
  }
  return static_cast<unsigned>(d.degree());
}

/// Laurent coefficient of (z - z0)^-1. The pole order m is the vanishing
/// order of the denominator; the result is exact for removable singularities
/// of unreduced input as well.
inline BigComplex residue(const NumRational& f, const BigComplex& z0, unsigned digits) {
  std::vector<BigComplex> nc, dc;
  for (const auto& c : f.num().coeffs()) nc.push_back(c.with_digits(digits));
  for (const auto& c : f.den().coeffs()) dc.push_back(c.with_digits(digits));
  NumPoly num(std::move(nc)), den(std::move(dc));
  BigComplex z = z0.with_digits(digits);
  unsigned m = numeric_zero_order(den, z, digits);
  if (m == 0) throw Error(ErrorKind::NotAPole, "denominator does not vanish at " + z.str(12));
  return detail::laurent_minus_one(num.taylor_shift(z), den.taylor_shift(z), m);
}

inline BigComplex residue(const ExactRational& f, const BigComplex& z0, unsigned digits) {
  return residue(to_numeric(f, digits), z0, digits);
}

/// Exact residue at an exact (Gaussian rational) point.
inline ExactComplex residue(const ExactRational& f, const ExactComplex& z0) {
  unsigned m = f.den().is_zero() ? 0 : vanishing_order(f.den(), z0);
  if (m == 0) throw Error(ErrorKind::NotAPole, "denominator does not vanish at " + z0.str());
  return detail::laurent_minus_one(f.num().taylor_shift(z0), f.den().taylor_shift(z0), m);
}

/// Residue of f(z) dz at infinity: minus the coefficient of 1/z in the
/// expansion of f at infinity.
template <Scalar T>
T residue_at_infinity(const RationalFunction<T>& f) {
  if (f.is_zero()) return T();
  const int dn = f.num().degree(), dd = f.den().degree();
  if (dn < dd - 1) return T();
  if (dn == dd - 1) return -(f.num().leading() / f.den().leading());
  // polynomial part present: expand num/den = q + r/den and use r
  auto [q, r] = divmod(f.num(), f.den());
  if (r.is_zero() || r.degree() < dd - 1) return T();
  return -(r.leading() / f.den().leading());
}

}  // namespace wsphere

#endif  // WSPHERE_ALGEBRA_RESIDUE_HPP
