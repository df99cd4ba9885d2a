#include "qwalk/cyclotomic.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "qwalk/errors.hpp"

namespace qwalk {

RootOfUnity::RootOfUnity(long a, long b) {
  if (b <= 0) throw Error(ErrorCode::InvalidArgument, "root of unity needs positive denominator");
  a %= b;
  if (a < 0) a += b;
  long g = std::gcd(a, b);
  a_ = a / g;
  b_ = b / g;
  if (a_ == 0) b_ = 1;
}

RootOfUnity::RootOfUnity(const Rational& e) : RootOfUnity(0, 1) {
  Rational x = e;
  x.canonicalize();
  if (!x.get_den().fits_slong_p() || !x.get_num().fits_slong_p())
    throw Error(ErrorCode::InvalidArgument, "root of unity exponent too large");
  *this = RootOfUnity(x.get_num().get_si() % x.get_den().get_si(), x.get_den().get_si());
}

RootOfUnity RootOfUnity::operator*(const RootOfUnity& o) const {
  long l = std::lcm(b_, o.b_);
  return RootOfUnity(a_ * (l / b_) + o.a_ * (l / o.b_), l);
}

RootOfUnity RootOfUnity::pow(long e) const {
  long r = e % b_;
  return RootOfUnity(a_ * r, b_);
}

int RootOfUnity::real_sign() const {
  if (!is_real()) throw Error(ErrorCode::InvalidArgument, "root of unity is not real");
  return b_ == 1 ? 1 : -1;
}

std::complex<double> RootOfUnity::value() const {
  double t = 2 * std::numbers::pi * static_cast<double>(a_) / static_cast<double>(b_);
  return {std::cos(t), std::sin(t)};
}

std::string RootOfUnity::to_string() const {
  if (b_ == 1) return "1";
  if (b_ == 2) return "-1";
  return "e(" + std::to_string(a_) + "/" + std::to_string(b_) + ")";
}

namespace {

std::vector<Rational> poly_div_exact(std::vector<Rational> num, const std::vector<Rational>& den) {
  // coefficient vectors, lowest degree first
  size_t dn = den.size() - 1;
  if (num.size() < den.size()) return {Rational(0)};
  std::vector<Rational> q(num.size() - dn, Rational(0));
  for (size_t i = num.size(); i-- > dn;) {
    Rational f = num[i] / den[dn];
    q[i - dn] = f;
    for (size_t j = 0; j <= dn; ++j) num[i - dn + j] -= f * den[j];
  }
  return q;
}

}  // namespace

std::vector<Rational> cyclotomic_polynomial(long m) {
  // x^m - 1 divided by Phi_d for all proper divisors d
  std::vector<Rational> p(static_cast<size_t>(m) + 1, Rational(0));
  p[0] = -1;
  p[static_cast<size_t>(m)] = 1;
  for (long d = 1; d < m; ++d)
    if (m % d == 0) p = poly_div_exact(p, cyclotomic_polynomial(d));
  return p;
}

Cyclotomic::Cyclotomic(long m) : m_(m), phi_(cyclotomic_polynomial(m)) {
  c_.assign(phi_.size() - 1, Rational(0));
}

Cyclotomic Cyclotomic::from_root(long m, const RootOfUnity& z) {
  if (m % z.den() != 0) throw Error(ErrorCode::InvalidArgument, "root order does not divide conductor");
  Cyclotomic r(m);
  std::vector<Rational> big(static_cast<size_t>(m), Rational(0));
  big[static_cast<size_t>(z.num() * (m / z.den()))] = 1;
  r.c_ = big;
  r.reduce();
  return r;
}

Cyclotomic Cyclotomic::from_rational(long m, const Rational& q) {
  Cyclotomic r(m);
  if (!r.c_.empty()) r.c_[0] = q;
  return r;
}

void Cyclotomic::reduce() {
  size_t deg = phi_.size() - 1;
  for (size_t i = c_.size(); i-- > deg;) {
    if (c_[i] == 0) continue;
    Rational f = c_[i];
    for (size_t j = 0; j <= deg; ++j) c_[i - deg + j] -= f * phi_[j];
  }
  c_.resize(deg, Rational(0));
}

bool Cyclotomic::is_zero() const {
  for (auto& x : c_)
    if (x != 0) return false;
  return true;
}

Cyclotomic Cyclotomic::operator+(const Cyclotomic& o) const {
  if (m_ != o.m_) throw Error(ErrorCode::FieldMismatch, "cyclotomic conductors differ");
  Cyclotomic r = *this;
  for (size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
  return r;
}

Cyclotomic Cyclotomic::operator-(const Cyclotomic& o) const { return *this + o * Rational(-1); }

Cyclotomic Cyclotomic::operator*(const Cyclotomic& o) const {
  if (m_ != o.m_) throw Error(ErrorCode::FieldMismatch, "cyclotomic conductors differ");
  Cyclotomic r(m_);
  r.c_.assign(c_.size() * 2 + 1, Rational(0));
  for (size_t i = 0; i < c_.size(); ++i)
    for (size_t j = 0; j < o.c_.size(); ++j) r.c_[i + j] += c_[i] * o.c_[j];
  r.reduce();
  return r;
}

Cyclotomic Cyclotomic::operator*(const Rational& q) const {
  Cyclotomic r = *this;
  for (auto& x : r.c_) x *= q;
  return r;
}

std::complex<double> Cyclotomic::value() const {
  std::complex<double> z = RootOfUnity(1, m_).value(), acc = 0, pw = 1;
  for (auto& x : c_) {
    acc += x.get_d() * pw;
    pw *= z;
  }
  return acc;
}

}  // namespace qwalk
