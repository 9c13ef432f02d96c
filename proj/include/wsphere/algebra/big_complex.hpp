// Extended precision complex numbers: a pair of BigFloat sharing a precision.
#ifndef WSPHERE_ALGEBRA_BIG_COMPLEX_HPP
#define WSPHERE_ALGEBRA_BIG_COMPLEX_HPP

#include <complex>
#include <ostream>
#include <string>
#include <utility>

#include "wsphere/algebra/big_float.hpp"
#include "wsphere/algebra/exact_complex.hpp"

namespace wsphere {

class BigComplex {
 public:
  BigComplex() = default;
  BigComplex(long re) : re_(re) {}  // NOLINT
  BigComplex(int re) : re_(re) {}   // NOLINT
  BigComplex(BigFloat re) : re_(std::move(re)) {}  // NOLINT
  BigComplex(BigFloat re, BigFloat im) : re_(std::move(re)), im_(std::move(im)) {}
  BigComplex(const ExactComplex& z, unsigned digits)
      : re_(z.re(), digits), im_(z.im(), digits) {}
  BigComplex(std::complex<double> z, unsigned digits)
      : re_(z.real(), digits), im_(z.imag(), digits) {}

  static BigComplex i() { return {BigFloat(0), BigFloat(1)}; }

  const BigFloat& re() const { return re_; }
  const BigFloat& im() const { return im_; }

  /// Precision in decimal digits (the larger of the two parts).
  unsigned digits() const { return std::max(re_.digits(), im_.digits()); }
  BigComplex with_digits(unsigned d) const { return {re_.with_digits(d), im_.with_digits(d)}; }

  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  bool is_finite() const { return re_.is_finite() && im_.is_finite(); }
  std::complex<double> to_complex() const { return {re_.to_double(), im_.to_double()}; }

  BigComplex conj() const { return {re_, -im_}; }
  BigFloat norm() const { return re_ * re_ + im_ * im_; }
  BigFloat abs() const { return hypot(re_, im_); }
  /// Argument in (-pi, pi].
  BigFloat arg() const { return atan2(im_, re_); }

  BigComplex operator-() const { return {-re_, -im_}; }
  friend BigComplex operator+(const BigComplex& a, const BigComplex& b) {
    return {a.re_ + b.re_, a.im_ + b.im_};
  }
  friend BigComplex operator-(const BigComplex& a, const BigComplex& b) {
    return {a.re_ - b.re_, a.im_ - b.im_};
  }
  friend BigComplex operator*(const BigComplex& a, const BigComplex& b) {
    return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
  }
  friend BigComplex operator/(const BigComplex& a, const BigComplex& b) {
    if (b.im_.is_zero()) return {a.re_ / b.re_, a.im_ / b.re_};
    BigFloat n = b.norm();
    return {(a.re_ * b.re_ + a.im_ * b.im_) / n, (a.im_ * b.re_ - a.re_ * b.im_) / n};
  }
  BigComplex& operator+=(const BigComplex& o) { return *this = *this + o; }
  BigComplex& operator-=(const BigComplex& o) { return *this = *this - o; }
  BigComplex& operator*=(const BigComplex& o) { return *this = *this * o; }
  BigComplex& operator/=(const BigComplex& o) { return *this = *this / o; }

  friend bool operator==(const BigComplex& a, const BigComplex& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const BigComplex& a, const BigComplex& b) { return !(a == b); }

  std::string str(unsigned digits = 20) const { return "(" + re_.str(digits) + ", " + im_.str(digits) + ")"; }

 private:
  BigFloat re_;
  BigFloat im_;
};

inline std::ostream& operator<<(std::ostream& os, const BigComplex& z) { return os << z.str(); }

inline BigFloat abs(const BigComplex& z) { return z.abs(); }

inline BigComplex exp(const BigComplex& z) {
  BigFloat m = exp(z.re());
  return {m * cos(z.im()), m * sin(z.im())};
}

/// Principal logarithm, imaginary part in (-pi, pi].
inline BigComplex log(const BigComplex& z) { return {log(z.abs()), z.arg()}; }

/// Principal square root (non-negative real part).
inline BigComplex sqrt(const BigComplex& z) {
  if (z.is_zero()) return z;
  BigFloat r = z.abs();
  BigFloat two(2);
  BigFloat a = sqrt((r + abs(z.re())) / two);
  if (z.re().sign() >= 0) return {a, z.im() / (two * a)};
  BigFloat b = z.im().sign() >= 0 ? a : -a;
  return {abs(z.im()) / (two * a), b};
}

inline BigComplex pow(const BigComplex& z, long n) {
  if (n < 0) return BigComplex(1) / pow(z, -n);
  BigComplex result(1), base = z;
  while (n) {
    if (n & 1) result *= base;
    base *= base;
    n >>= 1;
  }
  return result;
}

/// The k-th root whose argument lies in [0, 2*pi/k).
inline BigComplex principal_root(const BigComplex& z, unsigned k) {
  if (z.is_zero()) return z;
  unsigned d = z.digits();
  BigFloat theta = z.arg();
  if (theta.sign() < 0) theta += BigFloat(2) * BigFloat::pi(d);
  BigFloat kk(static_cast<long>(k));
  BigFloat rho = exp(log(z.abs()) / kk);
  BigFloat phi = theta / kk;
  return {rho * cos(phi), rho * sin(phi)};
}

/// exp(2*pi*i*j/k) at the given precision.
inline BigComplex unit_root(long j, unsigned k, unsigned digits) {
  BigFloat phi = BigFloat(2) * BigFloat::pi(digits) * BigFloat(j) / BigFloat(static_cast<long>(k));
  return {cos(phi), sin(phi)};
}

}  // namespace wsphere

#endif  // WSPHERE_ALGEBRA_BIG_COMPLEX_HPP
