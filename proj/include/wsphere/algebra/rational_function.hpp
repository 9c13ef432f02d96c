// Univariate rational functions num/den.
//
// Over an exact field the pair is kept reduced (gcd(num, den) = 1) with a
// monic denominator, so equal functions have equal representations. Over
// BigComplex no gcd is taken; callers that need a reduced numeric function
// use cancel_common_roots() from roots.hpp.
#ifndef WSPHERE_ALGEBRA_RATIONAL_FUNCTION_HPP
#define WSPHERE_ALGEBRA_RATIONAL_FUNCTION_HPP

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wsphere/algebra/polynomial.hpp"

namespace wsphere {

template <Scalar T>
class RationalFunction {
 public:
  using Poly = Polynomial<T>;

  RationalFunction() : num_(), den_(T(1)) {}
  RationalFunction(Poly p) : num_(std::move(p)), den_(T(1)) {}  // NOLINT
  RationalFunction(const T& c) : num_(c), den_(T(1)) {}           // NOLINT
  RationalFunction(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::domain_error("RationalFunction: zero denominator");
    normalize();
  }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  /// max(deg num, deg den): the degree of the induced map CP^1 -> CP^1.
  int degree() const { return is_zero() ? 0 : std::max(num_.degree(), den_.degree()); }

  T operator()(const T& z) const { return num_(z) / den_(z); }

  RationalFunction operator-() const { return {-num_, den_, Raw{}}; }
  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    if (a.den_ == b.den_) return {a.num_ + b.num_, a.den_};
    return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
  }
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    if constexpr (ScalarTraits<T>::exact) {
      // cross-cancel first to keep intermediate degrees small
      Poly g1 = a.num_.is_zero() ? Poly(T(1)) : poly_gcd(a.num_, b.den_);
      Poly g2 = b.num_.is_zero() ? Poly(T(1)) : poly_gcd(b.num_, a.den_);
      return {(a.num_ / g1) * (b.num_ / g2), (a.den_ / g2) * (b.den_ / g1)};
    } else {
      return {a.num_ * b.num_, a.den_ * b.den_};
    }
  }
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    if (b.is_zero()) throw std::domain_error("RationalFunction: division by zero");
    if (a.den_ == b.den_) return {a.num_, b.num_};
    return a * RationalFunction(b.den_, b.num_);
  }
  RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
  RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
  RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }

  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  std::string str() const { return "(" + num_.str() + ")/(" + den_.str() + ")"; }

 private:
  struct Raw {};
  RationalFunction(Poly num, Poly den, Raw) : num_(std::move(num)), den_(std::move(den)) {}

  void normalize() {
    if constexpr (ScalarTraits<T>::exact) {
      if (num_.is_zero()) {
        den_ = Poly(T(1));
        return;
      }
      Poly g = poly_gcd(num_, den_);
      if (g.degree() > 0) {
        num_ = exact_div(num_, g);
        den_ = exact_div(den_, g);
      }
      T lc = den_.leading();
      if (lc != T(1)) {
        num_ = (T(1) / lc) * num_;
        den_ = den_.monic();
      }
    }
  }

  Poly num_;
  Poly den_;
};

using ExactRational = RationalFunction<ExactComplex>;
using NumRational = RationalFunction<BigComplex>;

template <Scalar T>
RationalFunction<T> derivative(const RationalFunction<T>& f) {
  const auto& n = f.num();
  const auto& d = f.den();
  if (d.degree() == 0) return RationalFunction<T>(poly_derivative(n), d);
  return RationalFunction<T>(poly_derivative(n) * d - n * poly_derivative(d), d * d);
}

inline NumRational to_numeric(const ExactRational& f, unsigned digits) {
  return NumRational(to_numeric(f.num(), digits), to_numeric(f.den(), digits));
}

/// Taylor coefficients f(z0 + t) = sum_j c_j t^j for j <= order, i.e.
/// c_j = f^(j)(z0) / j!. Requires den(z0) != 0.
template <Scalar T>
std::vector<T> taylor_coefficients(const RationalFunction<T>& f, const T& z0, unsigned order) {
  Polynomial<T> n = f.num().taylor_shift(z0);
  Polynomial<T> d = f.den().taylor_shift(z0);
  T d0 = d.coeff(0);
  if (d0.is_zero()) throw std::domain_error("taylor_coefficients: pole at expansion point");
  std::vector<T> c(order + 1);
  for (unsigned j = 0; j <= order; ++j) {
    T acc = n.coeff(j);
    for (unsigned i = 1; i <= j; ++i) acc = acc - d.coeff(i) * c[j - i];
    c[j] = acc / d0;
  }
  return c;
}

}  // namespace wsphere

#endif  // WSPHERE_ALGEBRA_RATIONAL_FUNCTION_HPP
