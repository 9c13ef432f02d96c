// Arbitrary precision real numbers on top of MPFR.
//
// Every value carries its own precision. Binary operations round at the larger
// of the two operand precisions, so there is no global precision state and
// values can be shared between threads freely.
#ifndef WSPHERE_ALGEBRA_BIG_FLOAT_HPP
#define WSPHERE_ALGEBRA_BIG_FLOAT_HPP

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

#include <boost/multiprecision/gmp.hpp>

namespace wsphere {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

/// Decimal digits <-> binary precision.
inline mpfr_prec_t digits_to_bits(unsigned digits) {
  return static_cast<mpfr_prec_t>(std::ceil(digits * 3.3219280948873623)) + 4;
}
inline unsigned bits_to_digits(mpfr_prec_t bits) {
  if (bits <= 4) return 0;
  return static_cast<unsigned>(std::floor(static_cast<double>(bits - 4) * 0.30102999566398120));
}

class BigFloat {
 public:
  /// Exact zero at minimal precision; adopts the precision of whatever it is
  /// combined with.
  BigFloat() { mpfr_init2(v_, MPFR_PREC_MIN); mpfr_set_zero(v_, 1); }

  /// Small integers are stored exactly (64 bits).
  BigFloat(long x) { mpfr_init2(v_, 64); mpfr_set_si(v_, x, MPFR_RNDN); }  // NOLINT
  BigFloat(int x) : BigFloat(static_cast<long>(x)) {}                       // NOLINT

  BigFloat(double x, unsigned digits) {
    mpfr_init2(v_, std::max<mpfr_prec_t>(53, digits_to_bits(digits)));
    mpfr_set_d(v_, x, MPFR_RNDN);
  }
  BigFloat(const Rational& q, unsigned digits) {
    mpfr_init2(v_, digits_to_bits(digits));
    mpfr_set_q(v_, q.backend().data(), MPFR_RNDN);
  }
  BigFloat(const std::string& decimal, unsigned digits) {
    mpfr_init2(v_, digits_to_bits(digits));
    if (mpfr_set_str(v_, decimal.c_str(), 10, MPFR_RNDN) != 0) {
      mpfr_clear(v_);
      throw std::invalid_argument("BigFloat: cannot parse '" + decimal + "'");
    }
  }

  BigFloat(const BigFloat& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
  }
  BigFloat& operator=(const BigFloat& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  BigFloat& operator=(BigFloat&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~BigFloat() { mpfr_clear(v_); }

  mpfr_prec_t bits() const { return mpfr_get_prec(v_); }
  unsigned digits() const { return bits_to_digits(bits()); }

  /// Same value rounded to a new precision.
  BigFloat with_digits(unsigned digits) const {
    BigFloat r = blank(digits_to_bits(digits));
    mpfr_set(r.v_, v_, MPFR_RNDN);
    return r;
  }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  /// Scientific notation with `digits` significant digits ("0" for zero).
  std::string str(unsigned digits = 0) const {
    if (is_zero()) return "0";
    if (!is_finite()) return mpfr_nan_p(v_) ? "nan" : (sign() > 0 ? "inf" : "-inf");
    unsigned d = digits ? digits : std::max(1u, this->digits());
    mpfr_exp_t e = 0;
    char* s = mpfr_get_str(nullptr, &e, 10, d, v_, MPFR_RNDN);
    std::string m(s);
    mpfr_free_str(s);
    bool neg = !m.empty() && m[0] == '-';
    if (neg) m.erase(0, 1);
    std::string out = neg ? "-" : "";
    out += m.substr(0, 1);
    if (m.size() > 1) out += "." + m.substr(1);
    out += "e" + std::to_string(static_cast<long>(e) - 1);
    return out;
  }

  const mpfr_t& raw() const { return v_; }
  mpfr_t& raw() { return v_; }

  friend BigFloat operator+(const BigFloat& a, const BigFloat& b) { return binary(a, b, mpfr_add); }
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b) { return binary(a, b, mpfr_sub); }
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b) { return binary(a, b, mpfr_mul); }
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b) { return binary(a, b, mpfr_div); }
  BigFloat operator-() const {
    BigFloat r = blank(bits());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
  }
  BigFloat& operator+=(const BigFloat& o) { return *this = *this + o; }
  BigFloat& operator-=(const BigFloat& o) { return *this = *this - o; }
  BigFloat& operator*=(const BigFloat& o) { return *this = *this * o; }
  BigFloat& operator/=(const BigFloat& o) { return *this = *this / o; }

  friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator>(const BigFloat& a, const BigFloat& b) { return b < a; }
  friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
  friend bool operator>=(const BigFloat& a, const BigFloat& b) { return b <= a; }

  friend BigFloat abs(const BigFloat& a) { return unary(a, mpfr_abs); }
  friend BigFloat sqrt(const BigFloat& a) { return unary(a, mpfr_sqrt); }
  friend BigFloat exp(const BigFloat& a) { return unary(a, mpfr_exp); }
  friend BigFloat log(const BigFloat& a) { return unary(a, mpfr_log); }
  friend BigFloat sin(const BigFloat& a) { return unary(a, mpfr_sin); }
  friend BigFloat cos(const BigFloat& a) { return unary(a, mpfr_cos); }
  friend BigFloat atan2(const BigFloat& y, const BigFloat& x) { return binary(y, x, mpfr_atan2); }
  friend BigFloat hypot(const BigFloat& a, const BigFloat& b) { return binary(a, b, mpfr_hypot); }
  friend BigFloat log10(const BigFloat& a) { return unary(a, mpfr_log10); }

  /// 10^e at the given precision.
  static BigFloat pow10(long e, unsigned digits) {
    BigFloat r = blank(digits_to_bits(digits));
    mpfr_ui_pow_ui(r.v_, 10, static_cast<unsigned long>(std::labs(e)), MPFR_RNDN);
    if (e < 0) mpfr_ui_div(r.v_, 1, r.v_, MPFR_RNDN);
    return r;
  }
  static BigFloat pi(unsigned digits) {
    BigFloat r = blank(digits_to_bits(digits));
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
  }

 private:
  static BigFloat blank(mpfr_prec_t bits) {
    BigFloat r;
    mpfr_set_prec(r.v_, bits);
    return r;
  }
  template <class Op>
  static BigFloat binary(const BigFloat& a, const BigFloat& b, Op op) {
    BigFloat r = blank(std::max(a.bits(), b.bits()));
    op(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  template <class Op>
  static BigFloat unary(const BigFloat& a, Op op) {
    BigFloat r = blank(a.bits());
    op(r.v_, a.v_, MPFR_RNDN);
    return r;
  }

  mpfr_t v_;
};

inline std::ostream& operator<<(std::ostream& os, const BigFloat& x) { return os << x.str(20); }

inline BigFloat max(const BigFloat& a, const BigFloat& b) { return a < b ? b : a; }

}  // namespace wsphere

#endif  // WSPHERE_ALGEBRA_BIG_FLOAT_HPP
