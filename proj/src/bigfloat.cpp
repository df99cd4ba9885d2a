#include "qwalk/bigfloat.hpp"

#include <algorithm>
#include <vector>

#include "qwalk/errors.hpp"

namespace qwalk {

BigFloat::BigFloat(long prec) {
  mpfr_init2(value_, prec);
  mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat(double v, long prec) {
  mpfr_init2(value_, prec);
  mpfr_set_d(value_, v, MPFR_RNDN);
}

BigFloat::BigFloat(const Rational& q, long prec, mpfr_rnd_t rnd) {
  mpfr_init2(value_, prec);
  mpfr_set_q(value_, q.get_mpq_t(), rnd);
}

BigFloat::BigFloat(const BigFloat& other) {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_swap(value_, other.value_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    mpfr_set_prec(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

namespace {
long joint_prec(const BigFloat& a, const BigFloat& b) { return std::max(a.precision(), b.precision()); }
}  // namespace

BigFloat operator+(const BigFloat& a, const BigFloat& b) {
  BigFloat r(joint_prec(a, b));
  mpfr_add(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}
BigFloat operator-(const BigFloat& a, const BigFloat& b) {
  BigFloat r(joint_prec(a, b));
  mpfr_sub(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}
BigFloat operator*(const BigFloat& a, const BigFloat& b) {
  BigFloat r(joint_prec(a, b));
  mpfr_mul(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}
BigFloat operator/(const BigFloat& a, const BigFloat& b) {
  BigFloat r(joint_prec(a, b));
  mpfr_div(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}
BigFloat BigFloat::operator-() const {
  BigFloat r(precision());
  mpfr_neg(r.get(), value_, MPFR_RNDN);
  return r;
}
BigFloat& BigFloat::operator+=(const BigFloat& b) {
  mpfr_add(value_, value_, b.get(), MPFR_RNDN);
  return *this;
}
BigFloat& BigFloat::operator*=(const BigFloat& b) {
  mpfr_mul(value_, value_, b.get(), MPFR_RNDN);
  return *this;
}
BigFloat BigFloat::abs() const {
  BigFloat r(precision());
  mpfr_abs(r.get(), value_, MPFR_RNDN);
  return r;
}
BigFloat BigFloat::log() const {
  BigFloat r(precision());
  mpfr_log(r.get(), value_, MPFR_RNDN);
  return r;
}
BigFloat BigFloat::exp() const {
  BigFloat r(precision());
  mpfr_exp(r.get(), value_, MPFR_RNDN);
  return r;
}
BigFloat BigFloat::sqrt() const {
  BigFloat r(precision());
  mpfr_sqrt(r.get(), value_, MPFR_RNDN);
  return r;
}
BigFloat BigFloat::pow(const BigFloat& e) const {
  BigFloat r(precision());
  mpfr_pow(r.get(), value_, e.get(), MPFR_RNDN);
  return r;
}
BigFloat BigFloat::pow_si(long e) const {
  BigFloat r(precision());
  mpfr_pow_si(r.get(), value_, e, MPFR_RNDN);
  return r;
}
BigFloat BigFloat::pi(long prec) {
  BigFloat r(prec);
  mpfr_const_pi(r.get(), MPFR_RNDN);
  return r;
}

std::string BigFloat::to_string(int digits) const {
  std::vector<char> buf(static_cast<size_t>(digits) + 64);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, value_);
  return std::string(buf.data());
}

namespace {

// upper bound for the rounding error of a round-to-nearest result
BigFloat ulp_bound(const BigFloat& x) {
  BigFloat r(x.precision());
  mpfr_abs(r.get(), x.get(), MPFR_RNDU);
  mpfr_mul_2si(r.get(), r.get(), 1 - x.precision(), MPFR_RNDU);
  return r;
}

BigFloat add_up(const BigFloat& a, const BigFloat& b) {
  BigFloat r(std::max(a.precision(), b.precision()));
  mpfr_add(r.get(), a.get(), b.get(), MPFR_RNDU);
  return r;
}

BigFloat mul_up(const BigFloat& a, const BigFloat& b) {
  BigFloat r(std::max(a.precision(), b.precision()));
  mpfr_mul(r.get(), a.get(), b.get(), MPFR_RNDU);
  return r;
}

BigFloat abs_up(const BigFloat& a) {
  BigFloat r(a.precision());
  mpfr_abs(r.get(), a.get(), MPFR_RNDU);
  return r;
}

}  // namespace

Ball::Ball(long prec) : mid_(prec), rad_(prec) {}

Ball::Ball(const Rational& q, long prec) : mid_(q, prec), rad_(prec) {
  BigFloat exact_check(q, prec, MPFR_RNDD);
  BigFloat hi(q, prec, MPFR_RNDU);
  if (!mpfr_equal_p(exact_check.get(), hi.get())) rad_ = ulp_bound(mid_);
}

Ball::Ball(BigFloat mid, BigFloat rad) : mid_(std::move(mid)), rad_(std::move(rad)) {}

bool Ball::contains_zero() const { return !(mid_.abs() > rad_); }

int Ball::certain_sign() const {
  if (contains_zero()) return 0;
  return mid_.sign();
}

Ball operator+(const Ball& a, const Ball& b) {
  BigFloat mid = a.mid_ + b.mid_;
  BigFloat rad = add_up(add_up(a.rad_, b.rad_), ulp_bound(mid));
  return Ball(std::move(mid), std::move(rad));
}

Ball operator-(const Ball& a, const Ball& b) { return a + (-b); }

Ball Ball::operator-() const { return Ball(-mid_, rad_); }

Ball operator*(const Ball& a, const Ball& b) {
  BigFloat mid = a.mid_ * b.mid_;
  BigFloat rad = add_up(add_up(mul_up(abs_up(a.mid_), b.rad_), mul_up(abs_up(b.mid_), a.rad_)),
                        add_up(mul_up(a.rad_, b.rad_), ulp_bound(mid)));
  return Ball(std::move(mid), std::move(rad));
}

Ball operator/(const Ball& a, const Ball& b) {
  if (b.contains_zero()) throw Error(ErrorCode::DivisionByZero, "ball divisor contains zero");
  BigFloat mid = a.mid_ / b.mid_;
  long prec = mid.precision();
  BigFloat denom(prec);
  mpfr_abs(denom.get(), b.mid_.get(), MPFR_RNDD);
  mpfr_sub(denom.get(), denom.get(), b.rad_.get(), MPFR_RNDD);
  BigFloat numer = add_up(a.rad_, mul_up(abs_up(mid), b.rad_));
  BigFloat rad(prec);
  mpfr_div(rad.get(), numer.get(), denom.get(), MPFR_RNDU);
  rad = add_up(rad, ulp_bound(mid));
  return Ball(std::move(mid), std::move(rad));
}

Ball Ball::pow(long e) const {
  if (e < 0) return Ball(Rational(1), precision()) / pow(-e);
  Ball result(Rational(1), precision());
  Ball base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

Ball Ball::root(const Rational& r, unsigned long q, long prec) {
  if (r < 0) throw Error(ErrorCode::InvalidArgument, "root of a negative rational");
  BigFloat lo(r, prec, MPFR_RNDD), hi(r, prec, MPFR_RNDU);
  mpfr_rootn_ui(lo.get(), lo.get(), q, MPFR_RNDD);
  mpfr_rootn_ui(hi.get(), hi.get(), q, MPFR_RNDU);
  BigFloat mid = lo + hi;
  mpfr_div_2ui(mid.get(), mid.get(), 1, MPFR_RNDN);
  BigFloat rad(prec);
  mpfr_sub(rad.get(), hi.get(), lo.get(), MPFR_RNDU);
  rad = add_up(rad, ulp_bound(mid));
  return Ball(std::move(mid), std::move(rad));
}

Ball Ball::sqrt(const Ball& x) {
  long prec = x.precision();
  BigFloat lo(prec), hi(prec);
  mpfr_sub(lo.get(), x.mid_.get(), x.rad_.get(), MPFR_RNDD);
  mpfr_add(hi.get(), x.mid_.get(), x.rad_.get(), MPFR_RNDU);
  if (lo.sign() < 0) throw Error(ErrorCode::InvalidArgument, "sqrt of a ball touching negatives");
  mpfr_sqrt(lo.get(), lo.get(), MPFR_RNDD);
  mpfr_sqrt(hi.get(), hi.get(), MPFR_RNDU);
  BigFloat mid = lo + hi;
  mpfr_div_2ui(mid.get(), mid.get(), 1, MPFR_RNDN);
  BigFloat rad(prec);
  mpfr_sub(rad.get(), hi.get(), lo.get(), MPFR_RNDU);
  rad = add_up(rad, ulp_bound(mid));
  return Ball(std::move(mid), std::move(rad));
}

std::string Ball::to_string(int digits) const {
  return "[" + mid_.to_string(digits) + " +/- " + rad_.to_string(3) + "]";
}

}  // namespace qwalk
