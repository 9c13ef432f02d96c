// The Klein correspondence between contact curves in CP^3 and null curves in
// the quadric Q^3 of (C^5, <,>), <w,w> = -2 w0 w4 + w1^2 + w2^2 + w3^2, and
// the passage to meromorphic null maps F: CP^1 -> C^3 through
// Psi(z1, z2, z3) = [(z1^2 + z2^2 + z3^2)/2, z1, z2, z3, 1].
#ifndef WSPHERE_KLEIN_HPP
#define WSPHERE_KLEIN_HPP

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "wsphere/algebra/linalg.hpp"
#include "wsphere/algebra/rational_function.hpp"
#include "wsphere/algebra/residue.hpp"
#include "wsphere/algebra/roots.hpp"
#include "wsphere/contact.hpp"
#include "wsphere/error.hpp"

namespace wsphere {

/// Coordinates of a bivector in the basis e_i ^ e_j, i < j.
struct Pluecker6 {
  ExactPoly p12, p13, p14, p23, p24, p34;

  static Pluecker6 from_array(const std::array<ExactPoly, 6>& a) { return {a[0], a[1], a[2], a[3], a[4], a[5]}; }
  std::array<ExactPoly, 6> to_array() const { return {p12, p13, p14, p23, p24, p34}; }
  int degree() const {
    int d = ExactPoly::kZeroDegree;
    for (const auto& p : to_array()) d = std::max(d, p.degree());
    return d;
  }
};

/// Omega(eta) = p12 + p34.
inline ExactPoly omega_of(const Pluecker6& e) { return e.p12 + e.p34; }

/// q(eta) with eta ^ eta = 2 q(eta) e1^e2^e3^e4. Its vanishing is the
/// Plucker relation, i.e. decomposability of eta.
inline ExactPoly quadric_form(const Pluecker6& e) { return e.p12 * e.p34 - e.p13 * e.p24 + e.p14 * e.p23; }

/// psi ^ psi' divided by the gcd of its coordinates.
inline Pluecker6 second_associated(const ProjectiveCurve4& c) {
  auto w = wedge(c.lift, lift_derivative(c.lift));
  std::vector<ExactPoly> parts(w.begin(), w.end());
  bool any = false;
  for (const auto& p : parts) any = any || !p.is_zero();
  if (!any) throw Error(ErrorKind::Degenerate, "constant curve has no second associated curve");
  ExactPoly g = poly_gcd(parts);
  if (g.degree() > 0)
    for (auto& p : w) p = p.is_zero() ? p : exact_div(p, g);
  return Pluecker6::from_array(w);
}

using Lift5 = std::array<ExactPoly, 5>;

struct NullCurve5 {
  Lift5 w;
  bool reduced = false;

  int degree() const {
    int d = ExactPoly::kZeroDegree;
    for (const auto& p : w) d = std::max(d, p.degree());
    return d;
  }
};

/// <u, v> = -u0 v4 - u4 v0 + u1 v1 + u2 v2 + u3 v3.
template <Scalar T>
Polynomial<T> inner(const std::array<Polynomial<T>, 5>& u, const std::array<Polynomial<T>, 5>& v) {
  return u[1] * v[1] + u[2] * v[2] + u[3] * v[3] - u[0] * v[4] - u[4] * v[0];
}

inline Lift5 lift_derivative(const Lift5& w) {
  Lift5 out;
  for (std::size_t i = 0; i < 5; ++i) out[i] = poly_derivative(w[i]);
  return out;
}

/// Divides the lift by the gcd of its components.
inline NullCurve5 reduce(Lift5 w) {
  std::vector<ExactPoly> parts(w.begin(), w.end());
  bool any = false;
  for (const auto& p : parts) any = any || !p.is_zero();
  if (any) {
    ExactPoly g = poly_gcd(parts);
    if (g.degree() > 0)
      for (auto& p : w) p = p.is_zero() ? p : exact_div(p, g);
  }
  return {w, true};
}

// --- the isometry (W, q) -> (C^5, <,>) -----------------------------------
//
// On W (p34 = -p12) the form reads q = -p12^2 - p13 p24 + p14 p23. With
//   w = (p13, (p14 + p23)/2, i p12, i (p14 - p23)/2, p24/2)
// one has <w, w> = -p13 p24 + p14 p23 - p12^2 = q. All entries are
// Gaussian rationals.

/// Basis of W: e1^e3, e1^e2 - e3^e4, e1^e4, e2^e3, e2^e4.
inline std::array<std::array<ExactComplex, 6>, 5> w_basis() {
  const ExactComplex o(1), z(0), m(-1);
  return {{{z, o, z, z, z, z}, {o, z, z, z, z, m}, {z, z, o, z, z, z}, {z, z, z, o, z, z}, {z, z, z, z, o, z}}};
}

/// The matrix of L applied to Plucker coordinates (p12, p13, p14, p23, p24, p34).
inline std::array<std::array<ExactComplex, 6>, 5> isometry_matrix() {
  const ExactComplex z(0), i = ExactComplex::i(), h = ExactComplex::ratio(1, 2);
  return {{{z, ExactComplex(1), z, z, z, z},
           {z, z, h, h, z, z},
           {i, z, z, z, z, z},
           {z, z, h * i, -h * i, z, z},
           {z, z, z, z, h, z}}};
}

/// A second isometry of (C^5, <,>) used when the first chart puts the whole
/// curve into the hyperplane w4 = 0: translation by (1, 0, 0) followed by the
/// inversion w0 <-> w4.
inline std::array<std::array<ExactComplex, 5>, 5> fallback_rotation() {
  const ExactComplex o(1), z(0), h = ExactComplex::ratio(1, 2);
  // translation T: w0 += w1 + w4/2, w1 += w4; then swap rows 0 and 4
  return {{{z, z, z, z, o}, {z, o, z, z, o}, {z, z, o, z, z}, {z, z, z, o, z}, {o, o, z, z, h}}};
}

template <std::size_t R, std::size_t C>
Lift5 apply_matrix(const std::array<std::array<ExactComplex, C>, R>& m, const std::array<ExactPoly, C>& v) {
  static_assert(R == 5);
  Lift5 out;
  for (std::size_t r = 0; r < 5; ++r) {
    ExactPoly acc;
    for (std::size_t c = 0; c < C; ++c)
      if (!m[r][c].is_zero()) acc = acc + m[r][c] * v[c];
    out[r] = acc;
  }
  return out;
}

/// Exact check that L is an isometry: for every pair of basis vectors of W
/// the polarised q equals <L b_i, L b_j>, and L is invertible on W.
struct GramReport {
  bool isometry = false;
  bool invertible = false;
  bool fallback_isometry = false;
  bool ok() const { return isometry && invertible && fallback_isometry; }
};

inline GramReport gram_self_test() {
  auto basis = w_basis();
  auto lm = isometry_matrix();
  auto q_of = [](const std::array<ExactComplex, 6>& p) {
    return p[0] * p[5] - p[1] * p[4] + p[2] * p[3];
  };
  auto ip = [](const std::array<ExactComplex, 5>& u, const std::array<ExactComplex, 5>& v) {
    return u[1] * v[1] + u[2] * v[2] + u[3] * v[3] - u[0] * v[4] - u[4] * v[0];
  };
  auto apply = [&](const std::array<ExactComplex, 6>& p) {
    std::array<ExactComplex, 5> w;
    for (std::size_t r = 0; r < 5; ++r)
      for (std::size_t c = 0; c < 6; ++c) w[r] += lm[r][c] * p[c];
    return w;
  };
  GramReport rep{true, false, true};
  Matrix<ExactComplex> image;
  for (std::size_t i = 0; i < 5; ++i) {
    auto li = apply(basis[i]);
    image.push_back(std::vector<ExactComplex>(li.begin(), li.end()));
    for (std::size_t j = 0; j < 5; ++j) {
      std::array<ExactComplex, 6> s;
      for (std::size_t c = 0; c < 6; ++c) s[c] = basis[i][c] + basis[j][c];
      ExactComplex polar = (q_of(s) - q_of(basis[i]) - q_of(basis[j])) * ExactComplex::ratio(1, 2);
      if (polar != ip(li, apply(basis[j]))) rep.isometry = false;
    }
  }
  rep.invertible = exact_rank(image) == 5;
  // the fallback must preserve <,> on the standard basis
  auto fm = fallback_rotation();
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) {
      std::array<ExactComplex, 5> ei{}, ej{}, fi{}, fj{};
      ei[i] = ExactComplex(1);
      ej[j] = ExactComplex(1);
      for (std::size_t r = 0; r < 5; ++r) {
        fi[r] = fm[r][i];
        fj[r] = fm[r][j];
      }
      if (ip(fi, fj) != ip(ei, ej)) rep.fallback_isometry = false;
    }
  return rep;
}

/// L(eta) for eta in W; throws unless Omega(eta) vanishes identically.
inline NullCurve5 identify_W_with_C5(const Pluecker6& eta) {
  if (!omega_of(eta).is_zero()) throw Error(ErrorKind::InvalidArgument, "bivector is not in W: Omega(eta) != 0");
  Lift5 w = apply_matrix(isometry_matrix(), eta.to_array());
  std::vector<ExactPoly> parts(w.begin(), w.end());
  bool reduced = true;
  bool any = false;
  for (const auto& p : parts) any = any || !p.is_zero();
  if (any) reduced = poly_gcd(parts).degree() == 0;
  return {w, reduced};
}

// --- meromorphic maps to C^3 ----------------------------------------------

template <Scalar T>
struct MeroMap3 {
  std::array<RationalFunction<T>, 3> F;

  const RationalFunction<T>& operator[](std::size_t i) const { return F[i]; }
};

using ExactMap3 = MeroMap3<ExactComplex>;
using NumMap3 = MeroMap3<BigComplex>;

inline ExactPoly poly_lcm(const ExactPoly& a, const ExactPoly& b) { return exact_div(a * b, poly_gcd(a, b)).monic(); }

/// Least common denominator of the components.
inline ExactPoly common_denominator(const ExactMap3& f) {
  ExactPoly l{ExactComplex(1)};
  for (const auto& c : f.F) l = poly_lcm(l, c.den());
  return l;
}

/// Polynomial lift of [(F1^2 + F2^2 + F3^2)/2, F1, F2, F3, 1], reduced:
/// with F_i = n_i / D the lift (sum n_i^2 / 2, n_i D, D^2) is polynomial.
inline NullCurve5 psi_embed(const ExactMap3& f) {
  ExactPoly d = common_denominator(f);
  std::array<ExactPoly, 3> n;
  for (std::size_t i = 0; i < 3; ++i) n[i] = exact_div(f[i].num() * d, f[i].den());
  ExactPoly s = ExactComplex::ratio(1, 2) * (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
  return reduce({s, n[0] * d, n[1] * d, n[2] * d, d * d});
}

/// F = (w1/w4, w2/w4, w3/w4); checks w0/w4 = (F1^2 + F2^2 + F3^2)/2.
inline ExactMap3 psi_invert(const NullCurve5& c) {
  const auto& w = c.w;
  if (w[4].is_zero()) throw Error(ErrorKind::Degenerate, "w4 vanishes identically: curve lies in the hyperplane at infinity");
  ExactMap3 f{{ExactRational(w[1], w[4]), ExactRational(w[2], w[4]), ExactRational(w[3], w[4])}};
  ExactRational half_sq = ExactRational(ExactComplex::ratio(1, 2)) * (f[0] * f[0] + f[1] * f[1] + f[2] * f[2]);
  if (!(half_sq == ExactRational(w[0], w[4])))
    throw Error(ErrorKind::CertificationFailed, "w0/w4 differs from (F1^2 + F2^2 + F3^2)/2: lift is not null");
  return f;
}

struct NullCertificate {
  bool null = false;
  /// Exact mode: numerator of (F1'^2 + F2'^2 + F3'^2) over D^4 for the
  /// common denominator D. Numeric mode: empty.
  ExactPoly numerator;
  /// Numeric mode: largest relative residual over the samples.
  double max_relative_residual = 0.0;
};

/// (F', F') == 0 as a rational-function identity.
inline NullCertificate verify_null_C3(const ExactMap3& f) {
  ExactPoly d = common_denominator(f);
  ExactPoly dd = poly_derivative(d);
  ExactPoly sum;
  for (std::size_t i = 0; i < 3; ++i) {
    ExactPoly n = exact_div(f[i].num() * d, f[i].den());
    ExactPoly t = poly_derivative(n) * d - n * dd;
    sum = sum + t * t;
  }
  return {sum.is_zero(), sum, 0.0};
}

/// Samples |(F', F')| / (|F1'|^2 + |F2'|^2 + |F3'|^2) at 100 seeded random
/// points of the annulus 1/4 < |z| < 2 away from the poles.
inline NullCertificate verify_null_C3(const NumMap3& f, unsigned digits, unsigned samples = 100,
                                      std::uint64_t seed = 20240917) {
  std::array<NumRational, 3> df{derivative(f[0]), derivative(f[1]), derivative(f[2])};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> rad(0.25, 2.0), ang(0.0, 6.283185307179586);
  BigFloat worst;
  const BigFloat tol = BigFloat::pow10(-static_cast<long>(digits) + 20, digits);
  unsigned taken = 0;
  while (taken < samples) {
    BigComplex z(std::polar(rad(rng), ang(rng)), digits);
    BigComplex s;
    BigFloat norm;
    bool near_pole = false;
    for (std::size_t i = 0; i < 3; ++i) {
      BigComplex den = df[i].den()(z);
      if (den.abs() < BigFloat::pow10(-8, digits) * eval_scale(df[i].den(), z)) near_pole = true;
      if (near_pole) break;
      BigComplex v = df[i].num()(z) / den;
      s += v * v;
      norm += v.norm();
    }
    if (near_pole) continue;
    ++taken;
    worst = max(worst, s.abs() / norm);
  }
  return {worst < tol, ExactPoly(), worst.to_double()};
}

struct PoleReport {
  /// Finite poles with their orders (largest order over the components).
  std::vector<Root> finite;
  bool pole_at_infinity = false;
  unsigned count = 0;
  bool all_simple = false;
};

/// Poles of an exact map: zeros of the lcm of the reduced denominators.
inline PoleReport pole_analysis(const ExactMap3& f, unsigned digits = 40) {
  ExactPoly l = common_denominator(f);
  PoleReport r;
  for (const auto& c : f.F)
    if (c.num().degree() > c.den().degree()) r.pole_at_infinity = true;
  if (l.degree() > 0) r.finite = poly_roots(l, digits);
  // simple finite poles iff the lcm is square-free; at infinity a component
  // of degree excess e has a pole of order e
  bool simple = l.degree() <= 0 || poly_gcd(l, poly_derivative(l)).degree() == 0;
  for (const auto& c : f.F)
    if (c.num().degree() > c.den().degree() + 1) simple = false;
  r.all_simple = simple;
  r.count = static_cast<unsigned>(std::max(0, l.degree())) + (r.pole_at_infinity ? 1u : 0u);
  return r;
}

/// Poles of a numeric map whose components share one denominator: roots of
/// that denominator where some numerator does not vanish.
inline PoleReport pole_analysis(const NumMap3& f, unsigned digits) {
  PoleReport r;
  const NumPoly& den = f[0].den();
  for (const auto& c : f.F)
    if (!(c.den() == den)) throw Error(ErrorKind::InvalidArgument, "numeric pole analysis needs a shared denominator");
  for (const auto& c : f.F)
    if (c.num().degree() > c.den().degree()) r.pole_at_infinity = true;
  bool simple = true;
  for (const auto& root : poly_roots(den, digits)) {
    unsigned order = 0;
    for (const auto& c : f.F) {
      const unsigned zn = numeric_zero_order(c.num(), root.value, digits);
      if (root.multiplicity > zn) order = std::max(order, root.multiplicity - zn);
    }
    if (order == 0) continue;
    if (order > 1) simple = false;
    r.finite.push_back({root.value, order});
  }
  r.all_simple = simple;
  r.count = static_cast<unsigned>(r.finite.size()) + (r.pole_at_infinity ? 1u : 0u);
  return r;
}

/// The closed-form null map for the contact family, with denominator
/// 4z((k-3)(k-1)^2(2k-3) - 6(k-1)(2k-3) z^k - 3(k-3) z^2k).
inline ExactMap3 paper_F(unsigned k) {
  if (k <= 3) throw Error(ErrorKind::InvalidArgument, "closed form needs k >= 4");
  const Rational K(static_cast<long>(k));
  auto c = [](const Rational& q) { return ExactComplex(q); };
  auto zp = [](std::size_t n) { return ExactPoly::monomial(ExactComplex(1), n); };
  const ExactComplex i = ExactComplex::i();
  const Rational q = 6 - 7 * K + 2 * K * K;
  ExactPoly den = c(Rational(4)) * zp(1) *
                  (c((K - 3) * (K - 1) * (K - 1) * (2 * K - 3)) * zp(0) - c(6 * (K - 1) * (2 * K - 3)) * zp(k) -
                   c(3 * (K - 3)) * zp(2 * k));
  ExactPoly n1 = (c(-12 * (K - 3) * (2 * K - 3)) * i) * zp(2) * (c(2 - 3 * K + K * K) * zp(0) - ExactComplex(2) * zp(k));
  ExactPoly n2 = c(K - 1) * (c(-12 * (3 - 2 * K) * (3 - 2 * K) * (K - 2)) * zp(k) - c(12 * (K - 3) * (2 * K - 3)) * zp(2 * k) +
                             c(K - 3) * (c(q * q) * zp(0) - ExactComplex(12) * zp(4)));
  ExactPoly n3 = (c(K - 1) * i) * (c(12 * (3 - 2 * K) * (3 - 2 * K) * (K - 2)) * zp(k) + c(12 * (K - 3) * (2 * K - 3)) * zp(2 * k) +
                                   c(K - 3) * (c(-q * q) * zp(0) - ExactComplex(12) * zp(4)));
  return {{ExactRational(n1, den), ExactRational(n2, den), ExactRational(n3, den)}};
}

/// The k = 4 closed form with radical coefficients,
/// F = (6i z^2 (5z^4 - 15 - 4s), 5t - 3z^4 (153 + 40s + 15z^4), i(5t - 3z^4 (147 + 40s + 15z^4)))
///     / (45 z (z^4 - 1)(z^4 + t)),   s = sqrt 15, t = 31 + 8s,
/// with coefficients at `digits` digits. All components share the denominator.
inline NumMap3 paper_F_pengxiao(unsigned digits) {
  const BigComplex s(sqrt(BigFloat(15.0, digits)));
  const BigComplex t = BigComplex(31) + BigComplex(8) * s;
  const BigComplex i = BigComplex::i();
  auto poly = [&](std::vector<std::pair<std::size_t, BigComplex>> terms) {
    std::vector<BigComplex> c(13, BigComplex(BigFloat(0.0, digits)));
    for (auto& [e, v] : terms) c[e] += v.with_digits(digits);
    return NumPoly(std::move(c));
  };
  // 45 z (z^4 - 1)(z^4 + t) = 45 (z^9 + (t - 1) z^5 - t z)
  NumPoly den = poly({{9, BigComplex(45)}, {5, BigComplex(45) * (t - BigComplex(1))}, {1, BigComplex(-45) * t}});
  NumPoly n1 = poly({{6, BigComplex(30) * i}, {2, BigComplex(6) * i * (BigComplex(-15) - BigComplex(4) * s)}});
  NumPoly n2 = poly({{0, BigComplex(5) * t},
                     {4, BigComplex(-3) * (BigComplex(153) + BigComplex(40) * s)},
                     {8, BigComplex(-45)}});
  NumPoly n3 = poly({{0, BigComplex(5) * t * i},
                     {4, BigComplex(-3) * (BigComplex(147) + BigComplex(40) * s) * i},
                     {8, BigComplex(-45) * i}});
  return {{NumRational(n1, den), NumRational(n2, den), NumRational(n3, den)}};
}

inline NumMap3 to_numeric(const ExactMap3& f, unsigned digits) {
  return {{to_numeric(f[0], digits), to_numeric(f[1], digits), to_numeric(f[2], digits)}};
}

/// Rank of the coefficient matrix of a lift (5 x (deg + 1)).
inline std::size_t coefficient_rank(const Lift5& w) {
  int d = ExactPoly::kZeroDegree;
  for (const auto& p : w) d = std::max(d, p.degree());
  if (d < 0) return 0;
  Matrix<ExactComplex> m(5, std::vector<ExactComplex>(static_cast<std::size_t>(d + 1)));
  for (std::size_t i = 0; i < 5; ++i)
    for (int j = 0; j <= d; ++j) m[i][j] = w[i].coeff(j);
  return exact_rank(m);
}

struct PipelineCertificate {
  bool contact = false;
  unsigned degree = 0;
  unsigned branch_total = 0;
  bool plucker_ok = false;
  bool omega_ok = false;
  bool null_ok = false;
  unsigned pole_count = 0;
  bool simple_poles = false;
  unsigned embedded_degree = 0;
  bool nondegenerate = false;
  bool used_fallback = false;

  bool ok(unsigned k) const {
    return contact && plucker_ok && omega_ok && null_ok && simple_poles && nondegenerate && pole_count == 2 * k + 1 &&
           embedded_degree == 2 * k + 1 && degree == 2 * k && branch_total == 2 * k - 3;
  }
};

struct PipelineResult {
  ExactMap3 F;
  NullCurve5 curve;
  PipelineCertificate certificate;
};

/// contact curve -> second associated curve -> C^5 -> F, with every stage
/// certified along the way.
inline PipelineResult pipeline(unsigned k) {
  if (k < 4) throw Error(ErrorKind::InvalidArgument, "pipeline needs k >= 4 (k <= 3 gives no valid contact curve)");
  PipelineCertificate cert;
  ProjectiveCurve4 c = contact_curve(k);
  cert.contact = verify_contact(c).contact;
  cert.degree = curve_degree(c);
  cert.branch_total = branch_divisor(c).total;
  Pluecker6 eta = second_associated(c);
  cert.plucker_ok = quadric_form(eta).is_zero();
  cert.omega_ok = omega_of(eta).is_zero();
  NullCurve5 w = identify_W_with_C5(eta);
  if (w.w[4].is_zero()) {
    w = reduce(apply_matrix(fallback_rotation(), w.w));
    cert.used_fallback = true;
  }
  const bool quadric_null = inner(w.w, w.w).is_zero();
  auto dw = lift_derivative(w.w);
  const bool tangent_null = inner(dw, dw).is_zero();
  ExactMap3 f = psi_invert(w);
  cert.null_ok = quadric_null && tangent_null && verify_null_C3(f).null;
  PoleReport poles = pole_analysis(f);
  cert.pole_count = poles.count;
  cert.simple_poles = poles.all_simple;
  NullCurve5 emb = psi_embed(f);
  cert.embedded_degree = static_cast<unsigned>(std::max(0, emb.degree()));
  cert.nondegenerate = coefficient_rank(emb.w) == 5;
  return {f, w, cert};
}

}  // namespace wsphere

#endif  // WSPHERE_KLEIN_HPP
