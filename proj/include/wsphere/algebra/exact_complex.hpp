// Gaussian rationals: exact complex scalars with rational real and imaginary
// parts. GMP keeps every rational in canonical reduced form.
#ifndef WSPHERE_ALGEBRA_EXACT_COMPLEX_HPP
#define WSPHERE_ALGEBRA_EXACT_COMPLEX_HPP

#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

#include "wsphere/algebra/big_float.hpp"

namespace wsphere {

/// "num/den" with den > 0; always includes the denominator.
inline std::string rational_to_string(const Rational& q) {
  return boost::multiprecision::numerator(q).str() + "/" + boost::multiprecision::denominator(q).str();
}

/// Accepts "n", "-n" or "n/d".
inline Rational rational_from_string(const std::string& s) {
  try {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(Integer(s));
    Integer n(s.substr(0, slash));
    Integer d(s.substr(slash + 1));
    if (d == 0) throw std::invalid_argument("zero denominator");
    return Rational(n, d);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("not a rational number: '" + s + "'");
  }
}

class ExactComplex {
 public:
  ExactComplex() = default;
  ExactComplex(long re) : re_(re) {}  // NOLINT
  ExactComplex(int re) : re_(re) {}   // NOLINT
  ExactComplex(Rational re) : re_(std::move(re)) {}  // NOLINT
  ExactComplex(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  static ExactComplex i() { return {Rational(0), Rational(1)}; }
  static ExactComplex ratio(long num, long den) { return ExactComplex(Rational(Integer(num), Integer(den))); }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return re_ == 0 && im_ == 0; }
  bool is_real() const { return im_ == 0; }

  ExactComplex conj() const { return {re_, -im_}; }
  /// |z|^2, exact.
  Rational norm() const { return re_ * re_ + im_ * im_; }

  ExactComplex operator-() const { return {-re_, -im_}; }
  friend ExactComplex operator+(const ExactComplex& a, const ExactComplex& b) {
    return {a.re_ + b.re_, a.im_ + b.im_};
  }
  friend ExactComplex operator-(const ExactComplex& a, const ExactComplex& b) {
    return {a.re_ - b.re_, a.im_ - b.im_};
  }
  friend ExactComplex operator*(const ExactComplex& a, const ExactComplex& b) {
    if (a.im_ == 0 && b.im_ == 0) return ExactComplex(a.re_ * b.re_);
    return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
  }
  friend ExactComplex operator/(const ExactComplex& a, const ExactComplex& b) {
    if (b.is_zero()) throw std::domain_error("ExactComplex: division by zero");
    if (b.im_ == 0) return {a.re_ / b.re_, a.im_ / b.re_};
    Rational n = b.norm();
    return {(a.re_ * b.re_ + a.im_ * b.im_) / n, (a.im_ * b.re_ - a.re_ * b.im_) / n};
  }
  ExactComplex& operator+=(const ExactComplex& o) { return *this = *this + o; }
  ExactComplex& operator-=(const ExactComplex& o) { return *this = *this - o; }
  ExactComplex& operator*=(const ExactComplex& o) { return *this = *this * o; }
  ExactComplex& operator/=(const ExactComplex& o) { return *this = *this / o; }

  friend bool operator==(const ExactComplex& a, const ExactComplex& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const ExactComplex& a, const ExactComplex& b) { return !(a == b); }

  std::string str() const {
    if (im_ == 0) return rational_to_string(re_);
    return "(" + rational_to_string(re_) + ")+(" + rational_to_string(im_) + ")i";
  }

 private:
  Rational re_{0};
  Rational im_{0};
};

inline std::ostream& operator<<(std::ostream& os, const ExactComplex& z) { return os << z.str(); }

}  // namespace wsphere

#endif  // WSPHERE_ALGEBRA_EXACT_COMPLEX_HPP
