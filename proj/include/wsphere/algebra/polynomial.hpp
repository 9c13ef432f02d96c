// Dense univariate polynomials over a field, lowest degree first.
#ifndef WSPHERE_ALGEBRA_POLYNOMIAL_HPP
#define WSPHERE_ALGEBRA_POLYNOMIAL_HPP

#include <algorithm>
#include <concepts>
#include <initializer_list>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wsphere/algebra/big_complex.hpp"
#include "wsphere/algebra/exact_complex.hpp"

namespace wsphere {

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<ExactComplex> {
  static constexpr bool exact = true;
};

template <>
struct ScalarTraits<BigComplex> {
  static constexpr bool exact = false;
};

template <class T>
concept Scalar = requires(const T& a, const T& b) {
  { a + b } -> std::convertible_to<T>;
  { a * b } -> std::convertible_to<T>;
  { a / b } -> std::convertible_to<T>;
  { a.is_zero() } -> std::convertible_to<bool>;
  ScalarTraits<T>::exact;
};

template <class T>
concept ExactScalar = Scalar<T> && ScalarTraits<T>::exact;

template <Scalar T>
class Polynomial {
 public:
  /// Degree reported for the zero polynomial ("minus infinity").
  static constexpr int kZeroDegree = std::numeric_limits<int>::min();

  Polynomial() = default;
  explicit Polynomial(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }
  Polynomial(std::initializer_list<T> coeffs) : c_(coeffs) { trim(); }
  Polynomial(const T& constant) : c_{constant} { trim(); }  // NOLINT

  static Polynomial monomial(const T& coeff, std::size_t power) {
    std::vector<T> c(power + 1);
    c[power] = coeff;
    return Polynomial(std::move(c));
  }
  static Polynomial z() { return monomial(T(1), 1); }

  int degree() const { return c_.empty() ? kZeroDegree : static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }

  const std::vector<T>& coeffs() const { return c_; }
  /// Coefficient of z^i (zero beyond the degree).
  T coeff(std::size_t i) const { return i < c_.size() ? c_[i] : T(); }
  const T& leading() const {
    if (c_.empty()) throw std::domain_error("leading coefficient of the zero polynomial");
    return c_.back();
  }

  Polynomial monic() const {
    if (c_.empty()) return *this;
    T lc = c_.back();
    std::vector<T> r(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = c_[i] / lc;
    return Polynomial(std::move(r));
  }

  T operator()(const T& x) const { return evaluate(x); }
  T evaluate(const T& x) const {
    T acc{};
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  /// Coefficients of p(center + t) in powers of t.
  Polynomial taylor_shift(const T& center) const {
    std::vector<T> a = c_;
    const std::size_t n = a.size();
    for (std::size_t i = 0; i + 1 < n; ++i)
      for (std::size_t j = n - 1; j > i; --j) a[j - 1] = a[j - 1] + center * a[j];
    return Polynomial(std::move(a));
  }

  Polynomial operator-() const {
    std::vector<T> r(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = -c_[i];
    return Polynomial(std::move(r));
  }
  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<T> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i < a.c_.size() && i < b.c_.size()) r[i] = a.c_[i] + b.c_[i];
      else r[i] = i < a.c_.size() ? a.c_[i] : b.c_[i];
    }
    return Polynomial(std::move(r));
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<T> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) {
        if (b.c_[j].is_zero()) continue;
        r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
      }
    }
    return Polynomial(std::move(r));
  }
  friend Polynomial operator*(const T& s, const Polynomial& p) {
    if (s.is_zero()) return {};
    std::vector<T> r(p.c_.size());
    for (std::size_t i = 0; i < p.c_.size(); ++i) r[i] = s * p.c_[i];
    return Polynomial(std::move(r));
  }
  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  /// Quotient and remainder of long division.
  friend std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    if (a.degree() < b.degree()) return {Polynomial(), a};
    std::vector<T> rem = a.c_;
    const std::size_t db = b.c_.size() - 1;
    std::vector<T> q(rem.size() - db);
    const T& lc = b.c_.back();
    for (std::size_t i = q.size(); i-- > 0;) {
      T f = rem[i + db] / lc;
      q[i] = f;
      if (f.is_zero()) continue;
      for (std::size_t j = 0; j <= db; ++j) rem[i + j] = rem[i + j] - f * b.c_[j];
    }
    rem.resize(db);
    return {Polynomial(std::move(q)), Polynomial(std::move(rem))};
  }
  friend Polynomial operator/(const Polynomial& a, const Polynomial& b) { return divmod(a, b).first; }
  friend Polynomial operator%(const Polynomial& a, const Polynomial& b) { return divmod(a, b).second; }

  std::string str() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i].is_zero()) continue;
      if (!first) os << " + ";
      os << c_[i];
      if (i > 0) os << "*z";
      if (i > 1) os << "^" << i;
      first = false;
    }
    return os.str();
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  std::vector<T> c_;
};

template <Scalar T>
std::ostream& operator<<(std::ostream& os, const Polynomial<T>& p) {
  return os << p.str();
}

using ExactPoly = Polynomial<ExactComplex>;
using NumPoly = Polynomial<BigComplex>;

template <Scalar T>
Polynomial<T> poly_derivative(const Polynomial<T>& p) {
  if (p.degree() <= 0) return {};
  std::vector<T> r(p.coeffs().size() - 1);
  for (std::size_t i = 1; i < p.coeffs().size(); ++i) r[i - 1] = T(static_cast<long>(i)) * p.coeffs()[i];
  return Polynomial<T>(std::move(r));
}

template <Scalar T>
Polynomial<T> pow(const Polynomial<T>& p, unsigned n) {
  Polynomial<T> r(T(1)), b = p;
  while (n) {
    if (n & 1u) r *= b;
    b *= b;
    n >>= 1u;
  }
  return r;
}

/// c * z^n
template <Scalar T>
Polynomial<T> monomial(const T& c, std::size_t n) {
  return Polynomial<T>::monomial(c, n);
}

/// Monic gcd by the Euclidean algorithm; gcd(0, 0) is rejected.
template <ExactScalar T>
Polynomial<T> poly_gcd(Polynomial<T> a, Polynomial<T> b) {
  if (a.is_zero() && b.is_zero()) throw std::domain_error("poly_gcd: both arguments are zero");
  // keeping the remainders monic curbs coefficient growth
  if (!b.is_zero()) b = b.monic();
  while (!b.is_zero()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = r.is_zero() ? std::move(r) : r.monic();
  }
  return a.monic();
}

template <ExactScalar T>
Polynomial<T> poly_gcd(const std::vector<Polynomial<T>>& ps) {
  Polynomial<T> g;
  for (const auto& p : ps) {
    if (p.is_zero()) continue;
    g = g.is_zero() ? p.monic() : poly_gcd(g, p);
    if (g.degree() == 0) break;
  }
  if (g.is_zero()) throw std::domain_error("poly_gcd: all arguments are zero");
  return g;
}

/// Exact quotient; throws if b does not divide a.
template <ExactScalar T>
Polynomial<T> exact_div(const Polynomial<T>& a, const Polynomial<T>& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw std::logic_error("exact_div: nonzero remainder");
  return q;
}

/// Largest m with (z - z0)^m dividing p, by repeated synthetic division.
template <ExactScalar T>
unsigned vanishing_order(const Polynomial<T>& p, const T& z0) {
  if (p.is_zero()) throw std::domain_error("vanishing_order of the zero polynomial");
  unsigned m = 0;
  std::vector<T> c = p.coeffs();
  while (c.size() > 1) {
    // Horner: c(z) = (z - z0) q(z) + c(z0)
    std::vector<T> q(c.size() - 1);
    T acc = c.back();
    for (std::size_t i = c.size() - 1; i-- > 0;) {
      q[i] = acc;
      acc = c[i] + acc * z0;
    }
    if (!acc.is_zero()) break;
    ++m;
    c = std::move(q);
  }
  return m;
}

/// Yun's algorithm: p = lc * prod_i f_i^i with f_i monic, square-free and
/// pairwise coprime. Entry i-1 holds f_i (possibly 1).
template <ExactScalar T>
std::vector<Polynomial<T>> square_free_decomposition(const Polynomial<T>& p) {
  if (p.degree() < 1) throw std::domain_error("square_free_decomposition: constant polynomial");
  std::vector<Polynomial<T>> out;
  Polynomial<T> q = p.monic();
  Polynomial<T> dq = poly_derivative(q);
  Polynomial<T> a = poly_gcd(q, dq);
  Polynomial<T> b = exact_div(q, a);
  Polynomial<T> c = exact_div(dq, a);
  Polynomial<T> d = c - poly_derivative(b);
  while (b.degree() > 0) {
    Polynomial<T> f = poly_gcd(b, d);
    out.push_back(f);
    b = exact_div(b, f);
    c = exact_div(d, f);
    d = c - poly_derivative(b);
  }
  while (!out.empty() && out.back().degree() == 0) out.pop_back();
  return out;
}

/// prod (z - r_i)
template <Scalar T>
Polynomial<T> poly_from_roots(const std::vector<T>& roots) {
  Polynomial<T> p(T(1));
  for (const auto& r : roots) p *= Polynomial<T>{-r, T(1)};
  return p;
}

/// Round exact coefficients to `digits` decimal digits.
inline NumPoly to_numeric(const ExactPoly& p, unsigned digits) {
  std::vector<BigComplex> c;
  c.reserve(p.coeffs().size());
  for (const auto& x : p.coeffs()) c.emplace_back(x, digits);
  return NumPoly(std::move(c));
}

/// p(z) with z replaced by z^k.
template <Scalar T>
Polynomial<T> substitute_power(const Polynomial<T>& p, unsigned k) {
  if (p.is_zero()) return p;
  std::vector<T> c(static_cast<std::size_t>(p.degree()) * k + 1);
  for (std::size_t i = 0; i < p.coeffs().size(); ++i) c[i * k] = p.coeffs()[i];
  return Polynomial<T>(std::move(c));
}

/// Max |c_i|.
inline BigFloat coeff_norm(const NumPoly& p) {
  BigFloat m;
  for (const auto& c : p.coeffs()) m = max(m, c.abs());
  return m;
}

/// sum |c_i| |z|^i: the natural scale of p(z) in floating point.
inline BigFloat eval_scale(const NumPoly& p, const BigComplex& z) {
  BigFloat r = z.abs(), acc;
  for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) acc = acc * r + it->abs();
  return acc;
}

}  // namespace wsphere

#endif  // WSPHERE_ALGEBRA_POLYNOMIAL_HPP
