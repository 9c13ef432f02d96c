// Weierstrass data of minimal surfaces with planar ends: the spinor pair
// (s1, s2) with df = (s1^2 + s2^2, i(s1^2 - s2^2), -2i s1 s2), the
// Z_k-symmetric ansatz
//
//   s1 = z (z^k - c) / ((z^k - 1)(z^k - lambda)),
//   s2 = (z^k - a)(z^k - b) / (z (z^k - 1)(z^k - lambda)),
//
// its residue conditions, a solver for (a, b, c, lambda) and the Gauss map.
#ifndef WSPHERE_WEIERSTRASS_HPP
#define WSPHERE_WEIERSTRASS_HPP

#include <array>
#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "wsphere/algebra/linalg.hpp"
#include "wsphere/algebra/residue.hpp"
#include "wsphere/algebra/roots.hpp"
#include "wsphere/error.hpp"

namespace wsphere {

struct PengXiaoParams {
  unsigned k = 4;
  BigComplex a, b, c, lambda;

  unsigned digits() const {
    return std::max(std::max(a.digits(), b.digits()), std::max(c.digits(), lambda.digits()));
  }
  PengXiaoParams with_digits(unsigned d) const {
    return {k, a.with_digits(d), b.with_digits(d), c.with_digits(d), lambda.with_digits(d)};
  }
};

/// Throws InvalidArgument unless k >= 2, a, b, c, lambda are pairwise
/// distinct and lambda is neither 0 nor 1. Values closer than
/// 10^(-digits/2) count as equal.
inline void validate(const PengXiaoParams& p) {
  if (p.k < 2) throw Error(ErrorKind::InvalidArgument, "ansatz needs k >= 2");
  const unsigned d = std::max(p.digits(), 10u);
  const BigFloat tol = BigFloat::pow10(-static_cast<long>(d / 2), d);
  const std::array<std::pair<const BigComplex*, const char*>, 4> v{{{&p.a, "a"},
                                                                    {&p.b, "b"},
                                                                    {&p.c, "c"},
                                                                    {&p.lambda, "lambda"}}};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j)
      if ((*v[i].first - *v[j].first).abs() <= tol * max(BigFloat(1), v[i].first->abs()))
        throw Error(ErrorKind::InvalidArgument,
                    std::string("parameters must be pairwise distinct: ") + v[i].second + " = " + v[j].second);
  if (p.lambda.abs() <= tol || (p.lambda - BigComplex(1)).abs() <= tol)
    throw Error(ErrorKind::InvalidArgument, "lambda must avoid 0 and 1");
}

/// The explicit k = 4 solution with nested radicals.
inline PengXiaoParams paper_k4_params(unsigned digits) {
  const unsigned w = digits + 10;
  BigFloat s7 = sqrt(BigFloat(7.0, w));
  BigFloat r = BigFloat(Rational(635, 3), w);
  BigFloat a = BigFloat(10) - BigFloat(4) * s7 + sqrt(r - BigFloat(80) * s7);
  BigFloat b = BigFloat(10) + BigFloat(4) * s7 + sqrt(r + BigFloat(80) * s7);
  BigFloat c = BigFloat(-3) - BigFloat(4) * sqrt(BigFloat(Rational(3, 5), w));
  BigFloat lambda = BigFloat(-31) - BigFloat(8) * sqrt(BigFloat(15.0, w));
  return PengXiaoParams{4, BigComplex(a), BigComplex(b), BigComplex(c), BigComplex(lambda)}.with_digits(digits);
}

template <Scalar T>
struct SpinorPair {
  RationalFunction<T> s1, s2;

  static constexpr bool numeric_mode = !ScalarTraits<T>::exact;
};

/// The ansatz at the precision of the parameters.
inline SpinorPair<BigComplex> pengxiao_spinors(const PengXiaoParams& p) {
  validate(p);
  const unsigned d = p.digits();
  const BigComplex one(BigFloat(1.0, d));
  auto uminus = [&](const BigComplex& x) {  // z^k - x
    std::vector<BigComplex> c(p.k + 1);
    c[0] = -x;
    c[p.k] = one;
    return NumPoly(std::move(c));
  };
  NumPoly z = NumPoly::monomial(one, 1);
  NumPoly den = uminus(one) * uminus(p.lambda);
  return {NumRational(z * uminus(p.c), den), NumRational(uminus(p.a) * uminus(p.b), z * den)};
}

template <Scalar T>
struct DelF {
  std::array<RationalFunction<T>, 3> phi;

  const RationalFunction<T>& operator[](std::size_t i) const { return phi[i]; }
};

/// (s1^2 + s2^2, i(s1^2 - s2^2), -2i s1 s2). Numeric components share the
/// denominator (d1 d2)^2 so that no information is lost to reduction.
template <Scalar T>
DelF<T> del_f(const SpinorPair<T>& sp) {
  const T i = T::i();
  if constexpr (ScalarTraits<T>::exact) {
    auto q11 = sp.s1 * sp.s1, q22 = sp.s2 * sp.s2, q12 = sp.s1 * sp.s2;
    return {{q11 + q22, RationalFunction<T>(i) * (q11 - q22), RationalFunction<T>(T(-2) * i) * q12}};
  } else {
    const auto& n1 = sp.s1.num();
    const auto& d1 = sp.s1.den();
    const auto& n2 = sp.s2.num();
    const auto& d2 = sp.s2.den();
    Polynomial<T> a = n1 * d2, b = n2 * d1, den = d1 * d2;
    den = den * den;
    Polynomial<T> aa = a * a, bb = b * b;
    return {{RationalFunction<T>(aa + bb, den), RationalFunction<T>(i * (aa - bb), den),
             RationalFunction<T>((T(-2) * i) * (a * b), den)}};
  }
}

/// phi1^2 + phi2^2 + phi3^2; identically zero for every spinor pair.
template <Scalar T>
RationalFunction<T> null_defect(const DelF<T>& f) {
  if constexpr (ScalarTraits<T>::exact) {
    return f[0] * f[0] + f[1] * f[1] + f[2] * f[2];
  } else {
    // components share a denominator by construction
    const auto& n = f.phi;
    return RationalFunction<T>(n[0].num() * n[0].num() + n[1].num() * n[1].num() + n[2].num() * n[2].num(),
                               n[0].den() * n[0].den());
  }
}

template <Scalar T>
struct GaussMap {
  RationalFunction<T> g;
  int degree = 0;
};

/// g = i phi3 / (phi1 - i phi2) = s2 / s1, reduced. Numeric input is reduced
/// by cancelling common roots at the precision of its coefficients.
template <Scalar T>
GaussMap<T> gauss_map(const DelF<T>& f) {
  const T i = T::i();
  if constexpr (ScalarTraits<T>::exact) {
    auto den = f[0] - RationalFunction<T>(i) * f[1];
    if (den.is_zero()) throw Error(ErrorKind::Degenerate, "phi1 - i phi2 vanishes identically");
    auto g = RationalFunction<T>(i) * f[2] / den;
    return {g, g.degree()};
  } else {
    unsigned d = 0;
    for (const auto& c : f[0].num().coeffs()) d = std::max(d, c.digits());
    Polynomial<T> num, den;
    if (f[0].den() == f[1].den() && f[0].den() == f[2].den()) {
      num = i * f[2].num();
      den = f[0].num() - i * f[1].num();
    } else {
      // cross-multiply to a common denominator
      Polynomial<T> d01 = f[0].den() * f[1].den();
      num = i * f[2].num() * d01;
      den = (f[0].num() * f[1].den() - i * f[1].num() * f[0].den()) * f[2].den();
    }
    if (den.is_zero() || coeff_norm(den) <= BigFloat::pow10(-static_cast<long>(d) + 10, d) * coeff_norm(num))
      throw Error(ErrorKind::Degenerate, "phi1 - i phi2 vanishes identically");
    auto g = cancel_common_roots(RationalFunction<T>(num, den), d);
    return {g, g.degree()};
  }
}

/// s1^2, s1 s2, s2^2.
inline std::array<NumRational, 3> spinor_quadratics(const SpinorPair<BigComplex>& sp) {
  return {sp.s1 * sp.s1, sp.s1 * sp.s2, sp.s2 * sp.s2};
}

enum class EndFactor { Origin, UnitRoot, LambdaRoot };

inline std::string to_string(EndFactor f) {
  switch (f) {
    case EndFactor::Origin: return "z";
    case EndFactor::UnitRoot: return "z^k-1";
    case EndFactor::LambdaRoot: return "z^k-lambda";
  }
  return "?";
}

struct End {
  BigComplex point;
  EndFactor label;
};

/// The 2k+1 zeros of z (z^k - 1)(z^k - lambda), ordered by factor and then
/// by the power of the primitive k-th root of unity.
inline std::vector<End> end_set(const PengXiaoParams& p) {
  validate(p);
  const unsigned d = p.digits();
  std::vector<End> ends{{BigComplex(BigFloat(0.0, d)), EndFactor::Origin}};
  BigComplex mu = principal_root(p.lambda, p.k);
  for (unsigned j = 0; j < p.k; ++j) ends.push_back({unit_root(j, p.k, d), EndFactor::UnitRoot});
  for (unsigned j = 0; j < p.k; ++j) ends.push_back({mu * unit_root(j, p.k, d), EndFactor::LambdaRoot});
  return ends;
}

/// Weights m with res_{zeta p} = zeta^m res_p for s1^2, s1 s2, s2^2 under
/// z -> zeta z (zeta^k = 1): the pullback of s_i s_j dz picks up zeta to the
/// power (z-degree of the quadratic) + 1.
inline constexpr std::array<int, 3> kSymmetryWeights{3, 1, -1};

/// Residue of the 1-form f dz at z0; zero where f is regular.
inline BigComplex form_residue(const NumRational& f, const BigComplex& z0, unsigned digits) {
  if (numeric_zero_order(f.den(), z0.with_digits(digits), digits) == 0) return BigComplex(BigFloat(0.0, digits));
  return residue(f, z0, digits);
}

/// Residues of s1^2, s1 s2, s2^2 at z = 0, 1 and lambda^(1/k) (principal
/// root), computed from the Laurent expansion of the rational functions.
inline std::vector<BigComplex> residue_system(const PengXiaoParams& p, unsigned digits) {
  PengXiaoParams q = p.with_digits(digits);
  auto quad = spinor_quadratics(pengxiao_spinors(q));
  std::array<BigComplex, 3> points{BigComplex(BigFloat(0.0, digits)), BigComplex(BigFloat(1.0, digits)),
                                   principal_root(q.lambda, q.k)};
  std::vector<BigComplex> out;
  for (const auto& z0 : points)
    for (const auto& f : quad) out.push_back(form_residue(f, z0, digits));
  return out;
}

/// Residues of s1^2, s1 s2, s2^2 at every end (outer index follows end_set).
inline std::vector<std::array<BigComplex, 3>> end_residues(const PengXiaoParams& p, unsigned digits) {
  PengXiaoParams q = p.with_digits(digits);
  auto quad = spinor_quadratics(pengxiao_spinors(q));
  std::vector<std::array<BigComplex, 3>> out;
  for (const auto& e : end_set(q)) {
    out.push_back({form_residue(quad[0], e.point, digits), form_residue(quad[1], e.point, digits),
                   form_residue(quad[2], e.point, digits)});
  }
  return out;
}

namespace detail {

/// x^(1/k) for real k > 0 with the argument of x taken in [0, 2 pi).
inline BigComplex principal_power(const BigComplex& x, const BigFloat& k) {
  BigFloat theta = x.arg();
  if (theta.sign() < 0) theta += BigFloat(2) * BigFloat::pi(x.digits());
  BigFloat rho = exp(log(x.abs()) / k);
  BigFloat phi = theta / k;
  return {rho * cos(phi), rho * sin(phi)};
}

}  // namespace detail

/// The six residues of s1^2, s1 s2, s2^2 at z = 1 and z = lambda^(1/k),
/// written in u = z^k so that k may be any positive real. With
/// alpha = m/k - 1 and s_i s_j dz = u^alpha N(u) / (k (u-1)^2 (u-lambda)^2) du
/// the residue at the double pole u0 is u0^alpha (alpha G / u0 + G'),
/// G = N / (k (u - other)^2). For integer k this agrees with residue_system.
inline std::array<BigComplex, 6> residues_u(const BigFloat& k, const BigComplex& a, const BigComplex& b,
                                            const BigComplex& c, const BigComplex& lambda) {
  const BigComplex one(1);
  const BigComplex mu = detail::principal_power(lambda, k);
  std::array<BigComplex, 6> out;
  for (int side = 0; side < 2; ++side) {
    const BigComplex& u0 = side == 0 ? one : lambda;
    const BigComplex& other = side == 0 ? lambda : one;
    const BigComplex ua = u0 - a, ub = u0 - b, uc = u0 - c;
    // N and N' at u0 for m = 3, 1, -1
    const std::array<BigComplex, 3> n{uc * uc, uc * ua * ub, ua * ua * ub * ub};
    const std::array<BigComplex, 3> dn{BigComplex(2) * uc, ua * ub + uc * ub + uc * ua,
                                       BigComplex(2) * ua * ub * (ua + ub)};
    const BigComplex t = u0 - other;
    const BigComplex kt2 = BigComplex(k) * t * t;
    for (int q = 0; q < 3; ++q) {
      const int m = kSymmetryWeights[q];
      const BigComplex alpha(BigFloat(static_cast<long>(m)) / k - BigFloat(1));
      const BigComplex g = n[q] / kt2;
      const BigComplex dg = dn[q] / kt2 - BigComplex(2) * n[q] / (kt2 * t);
      // u0^alpha: 1 at u0 = 1, mu^m / lambda at u0 = lambda
      const BigComplex scale = side == 0 ? one : pow(mu, m) / lambda;
      out[side * 3 + q] = scale * (alpha * g / u0 + dg);
    }
  }
  return out;
}

inline std::array<BigComplex, 6> residues_u(const PengXiaoParams& p) {
  return residues_u(BigFloat(static_cast<long>(p.k)).with_digits(p.digits()), p.a, p.b, p.c, p.lambda);
}

struct SolveOptions {
  int max_iterations = 60;
  /// Parameters beyond this modulus count as divergence.
  double divergence_bound = 1e8;
  std::ostream* log = nullptr;
};

namespace detail {

inline BigFloat max_abs(const std::array<BigComplex, 6>& r) {
  BigFloat m;
  for (const auto& x : r) m = max(m, x.abs());
  return m;
}

/// Damped Gauss-Newton for residues_u(k, x) = 0 at `work` digits until the
/// residual drops below `target`. Returns the iterate and its residual.
inline std::array<BigComplex, 4> gauss_newton(const BigFloat& k, std::array<BigComplex, 4> x, unsigned work,
                                              const BigFloat& target, const SolveOptions& opt) {
  auto eval = [&](const std::array<BigComplex, 4>& v) { return residues_u(k, v[0], v[1], v[2], v[3]); };
  const BigFloat h_rel = BigFloat::pow10(-static_cast<long>(work / 3), work);
  const BigFloat singular = BigFloat::pow10(-static_cast<long>(work / 2), work);
  const BigFloat bound(opt.divergence_bound, work);
  auto r = eval(x);
  BigFloat res = max_abs(r);
  for (int it = 0; it < opt.max_iterations; ++it) {
    if (opt.log) *opt.log << it << ' ' << res.str(6) << '\n';
    if (res < target) return x;
    Matrix<BigComplex> jac(6, std::vector<BigComplex>(4));
    for (std::size_t j = 0; j < 4; ++j) {
      BigComplex h(h_rel * max(BigFloat(1), x[j].abs()));
      auto xp = x, xm = x;
      xp[j] += h;
      xm[j] -= h;
      auto rp = eval(xp), rm = eval(xm);
      for (std::size_t i = 0; i < 6; ++i) jac[i][j] = (rp[i] - rm[i]) / (BigComplex(2) * h);
    }
    auto dx = gauss_newton_step(jac, std::vector<BigComplex>(r.begin(), r.end()), singular);
    // backtrack while the residual does not decrease
    BigComplex t(1);
    std::array<BigComplex, 4> next;
    std::array<BigComplex, 6> rn;
    BigFloat resn;
    for (int halving = 0; halving < 12; ++halving) {
      for (std::size_t j = 0; j < 4; ++j) next[j] = x[j] + t * dx[j];
      rn = eval(next);
      resn = max_abs(rn);
      if (resn.is_finite() && resn < res) break;
      t = t / BigComplex(2);
    }
    for (const auto& v : next)
      if (!v.is_finite() || v.abs() > bound)
        throw Error(ErrorKind::NoConvergence, "Gauss-Newton iterate diverged at iteration " + std::to_string(it));
    if (!(resn < res)) break;
    x = next;
    r = rn;
    res = resn;
  }
  if (opt.log) *opt.log << "final " << res.str(6) << '\n';
  if (res < target) return x;
  throw Error(ErrorKind::NoConvergence, "residual " + res.str(6) + " above target after " +
                                            std::to_string(opt.max_iterations) + " iterations");
}

inline std::array<BigComplex, 4> unpack(const PengXiaoParams& p, unsigned d) {
  return {p.a.with_digits(d), p.b.with_digits(d), p.c.with_digits(d), p.lambda.with_digits(d)};
}

}  // namespace detail

/// One undamped Gauss-Newton step on the six residue equations; returns the
/// updated parameters (used to check that a solution is a fixed point).
inline PengXiaoParams newton_step(const PengXiaoParams& p, unsigned digits) {
  validate(p);
  const unsigned work = digits + detail::kGuardDigits;
  auto x = detail::unpack(p, work);
  const BigFloat k = BigFloat(static_cast<long>(p.k)).with_digits(work);
  auto eval = [&](const std::array<BigComplex, 4>& v) { return residues_u(k, v[0], v[1], v[2], v[3]); };
  const BigFloat h_rel = BigFloat::pow10(-static_cast<long>(work / 3), work);
  auto r = eval(x);
  Matrix<BigComplex> jac(6, std::vector<BigComplex>(4));
  for (std::size_t j = 0; j < 4; ++j) {
    BigComplex h(h_rel * max(BigFloat(1), x[j].abs()));
    auto xp = x, xm = x;
    xp[j] += h;
    xm[j] -= h;
    auto rp = eval(xp), rm = eval(xm);
    for (std::size_t i = 0; i < 6; ++i) jac[i][j] = (rp[i] - rm[i]) / (BigComplex(2) * h);
  }
  auto dx = gauss_newton_step(jac, std::vector<BigComplex>(r.begin(), r.end()),
                              BigFloat::pow10(-static_cast<long>(work / 2), work));
  return PengXiaoParams{p.k, x[0] + dx[0], x[1] + dx[1], x[2] + dx[2], x[3] + dx[3]}.with_digits(digits);
}

/// Follows a solution at k0 = start.k to k1 through real values of k in
/// steps of at most `step`, extrapolating linearly from the last two
/// solutions, then polishes at full precision.
inline PengXiaoParams continue_in_k(const PengXiaoParams& start, unsigned k1, unsigned digits, double step = 0.05,
                                    const SolveOptions& opt = {}) {
  validate(start);
  if (k1 < 2) throw Error(ErrorKind::InvalidArgument, "target k must be >= 2");
  const unsigned track = 40;  // tracking precision; the end point is polished
  const BigFloat track_target = BigFloat::pow10(-25, track);
  const long k0 = start.k;
  const long steps = std::max(1L, static_cast<long>(std::ceil(std::abs(static_cast<double>(k1) - k0) / step)));
  auto x = detail::unpack(start, track);
  std::optional<std::array<BigComplex, 4>> prev;
  SolveOptions quiet = opt;
  quiet.log = nullptr;
  for (long s = 1; s <= steps; ++s) {
    BigFloat k = BigFloat(k0) + (BigFloat(static_cast<long>(k1)) - BigFloat(k0)) * BigFloat(s) / BigFloat(steps);
    std::array<BigComplex, 4> guess = x;
    if (prev)
      for (std::size_t j = 0; j < 4; ++j) guess[j] = BigComplex(2) * x[j] - (*prev)[j];
    auto next = detail::gauss_newton(k.with_digits(track), guess, track, track_target, quiet);
    prev = x;
    x = next;
    if (opt.log) *opt.log << "k " << k.str(6) << " lambda " << x[3].str(12) << '\n';
  }
  const unsigned work = digits + detail::kGuardDigits;
  std::array<BigComplex, 4> xw{x[0].with_digits(work), x[1].with_digits(work), x[2].with_digits(work),
                               x[3].with_digits(work)};
  auto sol = detail::gauss_newton(BigFloat(static_cast<long>(k1)).with_digits(work), xw, work,
                                  BigFloat::pow10(-static_cast<long>(digits) + 5, work), opt);
  return PengXiaoParams{k1, sol[0], sol[1], sol[2], sol[3]}.with_digits(digits);
}

/// Solves the residue conditions for the ansatz with parameter k, starting
/// from `initial`. If plain Gauss-Newton fails and `initial` belongs to a
/// different k, the solution is followed from initial.k by continuation.
/// The result has max residual below 10^-(digits-20) over all 2k+1 ends.
inline PengXiaoParams solve_residues(unsigned k, const PengXiaoParams& initial, unsigned digits,
                                     const SolveOptions& opt = {}) {
  if (k < 4) throw Error(ErrorKind::InvalidArgument, "solve_residues needs k >= 4");
  validate(initial);
  const unsigned work = digits + detail::kGuardDigits;
  const BigFloat target = BigFloat::pow10(-static_cast<long>(digits) + 5, work);
  PengXiaoParams out;
  try {
    auto x = detail::gauss_newton(BigFloat(static_cast<long>(k)).with_digits(work), detail::unpack(initial, work),
                                  work, target, opt);
    out = PengXiaoParams{k, x[0], x[1], x[2], x[3]}.with_digits(digits);
  } catch (const Error& e) {
    if (initial.k == k || e.kind() == ErrorKind::SingularJacobian) throw;
    if (opt.log) *opt.log << "direct solve failed (" << e.what() << "), continuing from k=" << initial.k << '\n';
    out = continue_in_k(initial, k, digits, 0.05, opt);
  }
  validate(out);
  BigFloat worst;
  for (const auto& r : end_residues(out, digits))
    for (const auto& x : r) worst = max(worst, x.abs());
  if (!(worst < BigFloat::pow10(-static_cast<long>(digits) + 20, digits)))
    throw Error(ErrorKind::CertificationFailed, "residual at the ends is " + worst.str(6));
  return out;
}

}  // namespace wsphere

#endif  // WSPHERE_WEIERSTRASS_HPP
