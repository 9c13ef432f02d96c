// Rational contact curves in CP^3: the explicit family
//
//   psi(z) = (z^3,
//             (1/6)(-6 + 13k - 9k^2 + 2k^3 + (12(2k-3)/(k-3) + 3k(2k-3)) z^k - 6 z^2k),
//             (1/2)(2k-3) z (k - 2 + 2 z^k),
//             z^2 (k - 1 + z^k)),
//
// the contact condition for Omega = dx1^dx2 + dx3^dx4, degree,
// nondegeneracy and the branch divisor, all in exact arithmetic.
#ifndef WSPHERE_CONTACT_HPP
#define WSPHERE_CONTACT_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "wsphere/algebra/linalg.hpp"
#include "wsphere/algebra/polynomial.hpp"
#include "wsphere/algebra/roots.hpp"
#include "wsphere/error.hpp"

namespace wsphere {

using Lift4 = std::array<ExactPoly, 4>;

/// A rational curve in CP^3 given by a polynomial lift in the chart z. The
/// lift is kept free of common factors, so its homogeneous degree is the
/// largest component degree.
struct ProjectiveCurve4 {
  Lift4 lift;
  unsigned homogeneous_degree = 0;
};

inline int max_degree(const Lift4& l) {
  int d = ExactPoly::kZeroDegree;
  for (const auto& p : l) d = std::max(d, p.degree());
  return d;
}

/// Divides out the common factor of the components.
inline ProjectiveCurve4 make_curve(Lift4 lift) {
  std::vector<ExactPoly> parts(lift.begin(), lift.end());
  bool any = false;
  for (const auto& p : parts) any = any || !p.is_zero();
  if (!any) throw Error(ErrorKind::InvalidArgument, "lift has only zero components");
  ExactPoly g = poly_gcd(parts);
  if (g.degree() > 0)
    for (auto& p : lift) p = p.is_zero() ? p : exact_div(p, g);
  const int d = max_degree(lift);
  return {lift, static_cast<unsigned>(d)};
}

/// The lift of the family above for parameter k; k = 0 and k = 3 give a
/// constant point and are rejected.
inline ProjectiveCurve4 contact_curve(unsigned k) {
  if (k == 0 || k == 3)
    throw Error(ErrorKind::Degenerate, "k = " + std::to_string(k) + " is degenerate: the lift is a single point of CP^3");
  const Rational kk(static_cast<long>(k));
  auto c = [](const Rational& q) { return ExactComplex(q); };
  auto zp = [](std::size_t n) { return ExactPoly::monomial(ExactComplex(1), n); };
  const Rational c0 = (-6 + 13 * kk - 9 * kk * kk + 2 * kk * kk * kk) / 6;
  const Rational ck = (12 * (2 * kk - 3) / (kk - 3) + 3 * kk * (2 * kk - 3)) / 6;
  ExactPoly p1 = zp(3);
  ExactPoly p2 = c(c0) * zp(0) + c(ck) * zp(k) - zp(2 * k);
  ExactPoly p3 = c((2 * kk - 3) / 2) * (c(kk - 2) * zp(1) + ExactComplex(2) * zp(k + 1));
  ExactPoly p4 = c(kk - 1) * zp(2) + zp(k + 2);
  return make_curve({p1, p2, p3, p4});
}

/// Omega(u ^ v) = u1 v2 - u2 v1 + u3 v4 - u4 v3.
inline ExactPoly contact_pairing(const Lift4& u, const Lift4& v) {
  return u[0] * v[1] - u[1] * v[0] + u[2] * v[3] - u[3] * v[2];
}

inline Lift4 lift_derivative(const Lift4& l) {
  return {poly_derivative(l[0]), poly_derivative(l[1]), poly_derivative(l[2]), poly_derivative(l[3])};
}

struct ContactCertificate {
  bool contact = false;
  /// Omega(psi ^ psi'); the zero polynomial iff `contact`.
  ExactPoly pairing;
};

inline ContactCertificate verify_contact(const ProjectiveCurve4& c) {
  ExactPoly w = contact_pairing(c.lift, lift_derivative(c.lift));
  return {w.is_zero(), w};
}

/// Degree after homogenising and removing common factors. Components of
/// lower degree pick up powers of w, and the largest one has none, so the
/// homogeneous gcd is the affine gcd.
inline unsigned curve_degree(const ProjectiveCurve4& c) {
  std::vector<ExactPoly> parts(c.lift.begin(), c.lift.end());
  ExactPoly g = poly_gcd(parts);
  return static_cast<unsigned>(max_degree(c.lift) - g.degree());
}

/// Rank of the 4 x (D+1) coefficient matrix of the reduced lift.
inline bool nondegenerate(const ProjectiveCurve4& c) {
  ProjectiveCurve4 r = make_curve(c.lift);
  const int d = max_degree(r.lift);
  Matrix<ExactComplex> m(4, std::vector<ExactComplex>(static_cast<std::size_t>(d + 1)));
  for (std::size_t i = 0; i < 4; ++i)
    for (int j = 0; j <= d; ++j) m[i][j] = r.lift[i].coeff(j);
  return exact_rank(m) == 4;
}

/// Plucker coordinates of u ^ v in the order 12, 13, 14, 23, 24, 34.
inline std::array<ExactPoly, 6> wedge(const Lift4& u, const Lift4& v) {
  static constexpr std::array<std::pair<int, int>, 6> kPairs{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
  std::array<ExactPoly, 6> out;
  for (std::size_t n = 0; n < 6; ++n) {
    auto [i, j] = kPairs[n];
    out[n] = u[i] * v[j] - u[j] * v[i];
  }
  return out;
}

enum class PointKind {
  Exact,     ///< a Gaussian-rational point
  Binomial,  ///< a root of z^m - c with Gaussian-rational c (e.g. roots of unity)
  Numeric,   ///< a root of an irreducible-looking remainder, located numerically
  Infinity
};

struct BranchPoint {
  PointKind kind = PointKind::Exact;
  ExactComplex exact;  // Exact: the point; Binomial: c
  unsigned m = 0;      // Binomial: exponent
  unsigned index = 0;  // Binomial: j in principal_root(c, m) * exp(2 pi i j/m)
  BigComplex value;    // numeric value for every finite kind

  std::string label() const {
    switch (kind) {
      case PointKind::Exact: return exact.str();
      case PointKind::Binomial:
        return "root " + std::to_string(index) + " of z^" + std::to_string(m) + " - (" + exact.str() + ")";
      case PointKind::Numeric: return value.str(20);
      case PointKind::Infinity: return "inf";
    }
    return "?";
  }
};

struct BranchEntry {
  BranchPoint point;
  unsigned order = 0;
};

struct BranchDivisor {
  std::vector<BranchEntry> entries;
  unsigned total = 0;

  /// Order at infinity (0 when unbranched there).
  unsigned order_at_infinity() const {
    for (const auto& e : entries)
      if (e.point.kind == PointKind::Infinity) return e.order;
    return 0;
  }
};

namespace detail {

inline constexpr unsigned kBranchDigits = 40;

/// Splits a square-free polynomial into exactly recognisable roots (0,
/// z^m - 1 blocks, binomials, rational linear factors) and a numeric rest.
inline void exact_points(ExactPoly f, unsigned order, std::vector<BranchEntry>& out) {
  const ExactComplex one(1);
  auto push_binomial = [&](unsigned m, const ExactComplex& c) {
    BigComplex base = principal_root(BigComplex(c, kBranchDigits), m);
    for (unsigned j = 0; j < m; ++j) {
      BranchPoint p{PointKind::Binomial, c, m, j, base * unit_root(j, m, kBranchDigits)};
      if (c == one) p.value = unit_root(j, m, kBranchDigits);
      out.push_back({p, order});
    }
  };
  if (f.coeff(0).is_zero()) {
    out.push_back({{PointKind::Exact, ExactComplex(0), 0, 0, BigComplex(BigFloat(0.0, kBranchDigits))}, order});
    f = exact_div(f, ExactPoly::monomial(one, 1));
  }
  // largest z^m - 1 dividing f first
  for (int m = f.degree(); m >= 1; --m) {
    ExactPoly cyc = ExactPoly::monomial(one, static_cast<std::size_t>(m)) - ExactPoly(one);
    if (f.degree() >= m && (f % cyc).is_zero()) {
      push_binomial(static_cast<unsigned>(m), one);
      f = exact_div(f, cyc);
      m = f.degree() + 1;
    }
  }
  if (f.degree() < 1) return;
  f = f.monic();
  bool binomial = !f.coeff(0).is_zero();
  for (int j = 1; j < f.degree(); ++j) binomial = binomial && f.coeff(j).is_zero();
  if (binomial) {
    push_binomial(static_cast<unsigned>(f.degree()), -f.coeff(0));
    return;
  }
  if (f.degree() == 1) {
    ExactComplex r = -f.coeff(0);
    out.push_back({{PointKind::Exact, r, 0, 0, BigComplex(r, kBranchDigits)}, order});
    return;
  }
  for (const auto& r : poly_roots(f, kBranchDigits))
    out.push_back({{PointKind::Numeric, ExactComplex(), 0, 0, r.value}, order});
}

}  // namespace detail

/// Branch points are the common zeros of the six coordinates of psi ^ psi',
/// with order equal to the common vanishing order. At infinity the
/// homogeneous wedge has degree 2d - 2, so the order there is 2d - 2 minus
/// the largest affine wedge degree.
inline BranchDivisor branch_divisor(const ProjectiveCurve4& c) {
  ProjectiveCurve4 r = make_curve(c.lift);
  auto w = wedge(r.lift, lift_derivative(r.lift));
  std::vector<ExactPoly> parts;
  for (const auto& p : w)
    if (!p.is_zero()) parts.push_back(p);
  if (parts.empty()) throw Error(ErrorKind::Degenerate, "constant curve has no branch divisor");
  ExactPoly g = poly_gcd(parts);
  BranchDivisor out;
  if (g.degree() > 0) {
    auto sf = square_free_decomposition(g);
    for (std::size_t i = 0; i < sf.size(); ++i)
      if (sf[i].degree() > 0) detail::exact_points(sf[i], static_cast<unsigned>(i + 1), out.entries);
  }
  int top = ExactPoly::kZeroDegree;
  for (const auto& p : parts) top = std::max(top, p.degree());
  const int at_inf = 2 * static_cast<int>(r.homogeneous_degree) - 2 - top;
  if (at_inf > 0) out.entries.push_back({{PointKind::Infinity, ExactComplex(), 0, 0, BigComplex()}, static_cast<unsigned>(at_inf)});
  for (const auto& e : out.entries) out.total += e.order;
  return out;
}

}  // namespace wsphere

#endif  // WSPHERE_CONTACT_HPP
