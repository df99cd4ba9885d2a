#pragma once

#include <complex>
#include <string>
#include <vector>

#include "qwalk/rational.hpp"

namespace qwalk {

// e^{2 pi i a/b} with 0 <= a < b, gcd(a,b) = 1
class RootOfUnity {
 public:
  RootOfUnity() = default;
  RootOfUnity(long a, long b);
  explicit RootOfUnity(const Rational& exponent);

  long num() const { return a_; }
  long den() const { return b_; }
  long order() const { return b_; }
  Rational exponent() const { return Rational(a_, b_); }

  RootOfUnity operator*(const RootOfUnity& o) const;
  RootOfUnity pow(long e) const;
  RootOfUnity inverse() const { return pow(-1); }
  bool is_one() const { return a_ == 0; }
  // exactly real, i.e. +1 or -1
  bool is_real() const { return b_ <= 2; }
  int real_sign() const;
  std::complex<double> value() const;
  bool operator==(const RootOfUnity& o) const { return a_ == o.a_ && b_ == o.b_; }
  bool operator<(const RootOfUnity& o) const { return exponent() < o.exponent(); }
  std::string to_string() const;

 private:
  long a_ = 0;
  long b_ = 1;
};

// Element of Q(zeta_m) stored modulo the m-th cyclotomic polynomial.
class Cyclotomic {
 public:
  explicit Cyclotomic(long m);
  static Cyclotomic from_root(long m, const RootOfUnity& z);
  static Cyclotomic from_rational(long m, const Rational& q);

  long conductor() const { return m_; }
  bool is_zero() const;
  Cyclotomic operator+(const Cyclotomic& o) const;
  Cyclotomic operator-(const Cyclotomic& o) const;
  Cyclotomic operator*(const Cyclotomic& o) const;
  Cyclotomic operator*(const Rational& q) const;
  bool operator==(const Cyclotomic& o) const { return (*this - o).is_zero(); }
  std::complex<double> value() const;

 private:
  void reduce();
  long m_;
  std::vector<Rational> c_;
  std::vector<Rational> phi_;
};

std::vector<Rational> cyclotomic_polynomial(long m);

}  // namespace qwalk
