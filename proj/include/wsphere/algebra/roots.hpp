// All complex roots of a univariate polynomial.
//
// Roots are found simultaneously with the Aberth-Ehrlich iteration at
// `digits + kGuardDigits` working digits and returned at `digits`. Exact input
// is first split into square-free parts so the iteration only ever sees simple
// roots and multiplicities are exact; numeric input is clustered instead.
#ifndef WSPHERE_ALGEBRA_ROOTS_HPP
#define WSPHERE_ALGEBRA_ROOTS_HPP

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "wsphere/algebra/polynomial.hpp"
#include "wsphere/algebra/rational_function.hpp"
#include "wsphere/error.hpp"

namespace wsphere {

struct Root {
  BigComplex value;
  unsigned multiplicity = 1;
};

namespace detail {

inline constexpr unsigned kGuardDigits = 20;
inline constexpr int kRootSweeps = 200;

inline void sort_roots(std::vector<Root>& roots) {
  std::sort(roots.begin(), roots.end(), [](const Root& a, const Root& b) {
    if (a.value.re() != b.value.re()) return a.value.re() < b.value.re();
    return a.value.im() < b.value.im();
  });
}

/// p and p' at z by one Horner pass.
inline std::pair<BigComplex, BigComplex> eval_with_derivative(const NumPoly& p, const BigComplex& z) {
  BigComplex v, d;
  for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) {
    d = d * z + v;
    v = v * z + *it;
  }
  return {v, d};
}

/// Aberth-Ehrlich on a polynomial of degree >= 1 with p(0) != 0. The
/// polynomial must already be at the working precision.
inline std::vector<BigComplex> aberth(const NumPoly& p, unsigned work_digits) {
  const int n = p.degree();
  if (n == 1) return {-p.coeff(0) / p.coeff(1)};

  // start on the circle of radius (|c0/cn|)^(1/n), the geometric mean of the root moduli
  BigFloat radius = exp(log((p.coeff(0) / p.leading()).abs()) / BigFloat(static_cast<long>(n)));
  BigFloat two_pi = BigFloat(2) * BigFloat::pi(work_digits);
  std::vector<BigComplex> z(n);
  for (int j = 0; j < n; ++j) {
    BigFloat phi = two_pi * BigFloat(static_cast<long>(j)) / BigFloat(static_cast<long>(n)) +
                   BigFloat(0.4, work_digits);
    z[j] = BigComplex(radius * cos(phi), radius * sin(phi));
  }

  const BigFloat eps = BigFloat::pow10(-static_cast<long>(work_digits) + 6, work_digits);
  // a root counts as settled once its residual has been at the rounding floor
  // for two consecutive sweeps (the second visit is a polishing step)
  std::vector<int> settled(n, 0);
  for (int sweep = 0; sweep < kRootSweeps; ++sweep) {
    bool all_settled = true;
    for (int j = 0; j < n; ++j) {
      if (settled[j] >= 2) continue;
      auto [v, d] = eval_with_derivative(p, z[j]);
      if (v.is_zero()) {
        settled[j] = 2;
        continue;
      }
      settled[j] = v.abs() <= eps * eval_scale(p, z[j]) ? settled[j] + 1 : 0;
      all_settled = all_settled && settled[j] >= 2;
      BigComplex ratio = v / d;
      BigComplex s;
      for (int l = 0; l < n; ++l)
        if (l != j) s += BigComplex(1) / (z[j] - z[l]);
      z[j] -= ratio / (BigComplex(1) - ratio * s);
    }
    if (all_settled) return z;
  }
  throw Error(ErrorKind::NoConvergence,
              "root finder did not converge in " + std::to_string(kRootSweeps) + " sweeps");
}

/// Splits off the exact root at 0 and runs Aberth on the rest.
inline std::vector<Root> simple_roots(const NumPoly& p, unsigned digits, unsigned multiplicity) {
  const unsigned work = digits + kGuardDigits;
  std::vector<BigComplex> c;
  for (const auto& x : p.coeffs()) c.push_back(x.with_digits(std::max(work, x.digits())));
  std::size_t zeros = 0;
  while (zeros < c.size() && c[zeros].is_zero()) ++zeros;
  std::vector<Root> out;
  if (zeros > 0) out.push_back({BigComplex(BigFloat(0.0, digits)), static_cast<unsigned>(zeros) * multiplicity});
  NumPoly q(std::vector<BigComplex>(c.begin() + static_cast<long>(zeros), c.end()));
  if (q.degree() >= 1)
    for (auto& r : aberth(q, work)) out.push_back({r.with_digits(digits), multiplicity});
  return out;
}

}  // namespace detail

/// Roots of an exact polynomial with exact multiplicities.
inline std::vector<Root> poly_roots(const ExactPoly& p, unsigned digits) {
  if (p.degree() < 1) throw Error(ErrorKind::InvalidArgument, "poly_roots: constant polynomial");
  std::vector<Root> out;
  auto parts = square_free_decomposition(p);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].degree() < 1) continue;
    auto rs = detail::simple_roots(to_numeric(parts[i], digits + detail::kGuardDigits), digits,
                                   static_cast<unsigned>(i + 1));
    out.insert(out.end(), rs.begin(), rs.end());
  }
  detail::sort_roots(out);
  return out;
}

/// Roots of a numeric polynomial; approximations closer than 10^(-w/8)
/// (w = working digits) are merged into one root whose multiplicity is the
/// cluster size and whose value is the cluster centroid.
inline std::vector<Root> poly_roots(const NumPoly& p, unsigned digits) {
  if (p.degree() < 1) throw Error(ErrorKind::InvalidArgument, "poly_roots: constant polynomial");
  auto raw = detail::simple_roots(p, digits, 1);
  const unsigned work = digits + detail::kGuardDigits;
  const BigFloat tol = BigFloat::pow10(-static_cast<long>(work / 8), digits);
  std::vector<Root> out;
  std::vector<bool> used(raw.size(), false);
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (used[i]) continue;
    std::vector<std::size_t> cluster{i};
    used[i] = true;
    for (std::size_t c = 0; c < cluster.size(); ++c) {
      for (std::size_t j = 0; j < raw.size(); ++j) {
        if (used[j]) continue;
        const auto& a = raw[cluster[c]].value;
        BigFloat scale = max(BigFloat(1), a.abs());
        if ((a - raw[j].value).abs() <= tol * scale) {
          used[j] = true;
          cluster.push_back(j);
        }
      }
    }
    BigComplex sum;
    unsigned mult = 0;
    for (auto idx : cluster) {
      sum += BigComplex(static_cast<long>(raw[idx].multiplicity)) * raw[idx].value;
      mult += raw[idx].multiplicity;
    }
    out.push_back({(sum / BigComplex(static_cast<long>(mult))).with_digits(digits), mult});
  }
  detail::sort_roots(out);
  return out;
}

/// Expands the multiset of roots back into lc * prod (z - r)^m.
inline NumPoly poly_from_roots(const std::vector<Root>& roots, const BigComplex& leading) {
  NumPoly p(leading);
  for (const auto& r : roots)
    for (unsigned m = 0; m < r.multiplicity; ++m) p *= NumPoly{-r.value, BigComplex(1)};
  return p;
}

/// Numeric reduction of num/den: roots common to both (within
/// 10^(-digits/4) relative) are cancelled with their common multiplicity.
inline NumRational cancel_common_roots(const NumRational& f, unsigned digits) {
  if (f.num().degree() < 1 || f.den().degree() < 1) return f;
  auto nr = poly_roots(f.num(), digits);
  auto dr = poly_roots(f.den(), digits);
  const BigFloat tol = BigFloat::pow10(-static_cast<long>(digits / 4), digits);
  bool changed = false;
  for (auto& a : nr) {
    for (auto& b : dr) {
      if (a.multiplicity == 0 || b.multiplicity == 0) continue;
      if ((a.value - b.value).abs() <= tol * max(BigFloat(1), a.value.abs())) {
        unsigned m = std::min(a.multiplicity, b.multiplicity);
        a.multiplicity -= m;
        b.multiplicity -= m;
        changed = true;
      }
    }
  }
  if (!changed) return f;
  auto keep = [](std::vector<Root> rs) {
    rs.erase(std::remove_if(rs.begin(), rs.end(), [](const Root& r) { return r.multiplicity == 0; }), rs.end());
    return rs;
  };
  return NumRational(poly_from_roots(keep(nr), f.num().leading()), poly_from_roots(keep(dr), f.den().leading()));
}

}  // namespace wsphere

#endif  // WSPHERE_ALGEBRA_ROOTS_HPP
