#pragma once

#include <mpfr.h>

#include <string>

#include "qwalk/rational.hpp"

namespace qwalk {

constexpr long kDefaultPrecision = 256;

class BigFloat {
 public:
  explicit BigFloat(long prec = kDefaultPrecision);
  BigFloat(double v, long prec);
  BigFloat(const Rational& q, long prec, mpfr_rnd_t rnd = MPFR_RNDN);
  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }
  long precision() const { return static_cast<long>(mpfr_get_prec(value_)); }

  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  int sign() const { return mpfr_sgn(value_); }
  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  std::string to_string(int digits = 20) const;

  friend BigFloat operator+(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b);
  BigFloat operator-() const;
  BigFloat& operator+=(const BigFloat& b);
  BigFloat& operator*=(const BigFloat& b);
  friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.value_, b.value_); }
  friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_greater_p(a.value_, b.value_); }

  BigFloat abs() const;
  BigFloat log() const;
  BigFloat exp() const;
  BigFloat sqrt() const;
  BigFloat pow(const BigFloat& e) const;
  BigFloat pow_si(long e) const;
  static BigFloat pi(long prec);

 private:
  mpfr_t value_;
};

// Midpoint-radius interval; the radius is always rounded upward.
class Ball {
 public:
  Ball(long prec = kDefaultPrecision);
  Ball(const Rational& q, long prec);
  Ball(BigFloat mid, BigFloat rad);

  const BigFloat& mid() const { return mid_; }
  const BigFloat& rad() const { return rad_; }
  long precision() const { return mid_.precision(); }

  bool contains_zero() const;
  // -1/+1 when the sign is certain, 0 when the ball straddles zero
  int certain_sign() const;

  friend Ball operator+(const Ball& a, const Ball& b);
  friend Ball operator-(const Ball& a, const Ball& b);
  friend Ball operator*(const Ball& a, const Ball& b);
  friend Ball operator/(const Ball& a, const Ball& b);
  Ball operator-() const;
  Ball pow(long e) const;
  // real root r^{1/q} of a positive rational
  static Ball root(const Rational& r, unsigned long q, long prec);
  static Ball sqrt(const Ball& x);

  std::string to_string(int digits = 20) const;

 private:
  BigFloat mid_;
  BigFloat rad_;
};

}  // namespace qwalk
