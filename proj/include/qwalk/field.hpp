#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "qwalk/bigfloat.hpp"
#include "qwalk/rational.hpp"

namespace qwalk {

// Q(theta) with theta^degree = radicand, radicand a positive rational and
// x^degree - radicand irreducible; theta is the positive real root.
class NumberField {
 public:
  NumberField(Rational radicand, int degree);
  const Rational& radicand() const { return radicand_; }
  int degree() const { return degree_; }
  Ball theta(long prec) const;
  bool operator==(const NumberField& o) const { return degree_ == o.degree_ && radicand_ == o.radicand_; }

 private:
  Rational radicand_;
  int degree_;
};

using FieldPtr = std::shared_ptr<const NumberField>;

// Builds Q(radicand^(1/degree)) after reducing to an irreducible presentation
// (e.g. 4^(1/4) becomes 2^(1/2)). Returns nullptr for the rational field.
FieldPtr make_field(const Rational& radicand, int degree);

class FieldElem {
 public:
  enum class Kind { Rational, Radical, Ball };

  FieldElem() : v_(Rational(0)) {}
  FieldElem(long v) : v_(Rational(v)) {}
  FieldElem(int v) : v_(Rational(v)) {}
  FieldElem(const Rational& q) : v_(q) { std::get<Rational>(v_).canonicalize(); }
  explicit FieldElem(const Ball& b) : v_(b) {}

  static FieldElem from_coords(FieldPtr field, std::vector<Rational> coords);
  // theta^m, reduced to radicand^floor(m/q) * theta^(m mod q)
  static FieldElem theta_power(FieldPtr field, long m);

  Kind kind() const { return static_cast<Kind>(v_.index()); }
  bool is_exact() const { return kind() != Kind::Ball; }
  bool is_rational() const { return kind() == Kind::Rational; }
  const Rational& rational() const;
  FieldPtr field() const;
  // coordinates in the power basis of field(); size 1 for rationals
  std::vector<Rational> coords() const;
  const Ball& ball() const;

  Ball to_ball(long prec = kDefaultPrecision) const;
  double to_double() const;
  BigFloat to_bigfloat(long prec = kDefaultPrecision) const;

  bool is_zero() const;
  bool is_one() const;
  // exact sign for exact kinds; throws PrecisionInsufficient when a ball straddles 0
  int sign() const;

  FieldElem operator-() const;
  FieldElem inverse() const;
  FieldElem pow(long e) const;

  friend FieldElem operator+(const FieldElem& a, const FieldElem& b);
  friend FieldElem operator-(const FieldElem& a, const FieldElem& b);
  friend FieldElem operator*(const FieldElem& a, const FieldElem& b);
  friend FieldElem operator/(const FieldElem& a, const FieldElem& b);
  FieldElem& operator+=(const FieldElem& b) { return *this = *this + b; }
  FieldElem& operator-=(const FieldElem& b) { return *this = *this - b; }
  FieldElem& operator*=(const FieldElem& b) { return *this = *this * b; }
  FieldElem& operator/=(const FieldElem& b) { return *this = *this / b; }

  // Structural equality: exact kinds compare by value, balls by identical
  // midpoint and radius.
  friend bool operator==(const FieldElem& a, const FieldElem& b);
  friend bool operator!=(const FieldElem& a, const FieldElem& b) { return !(a == b); }

  // human readable, e.g. "3/2", "2*rad(3,1/2)", "~1.4142135"
  std::string to_string() const;

  // Square root when it lies in the current field (or Q(sqrt m) for a
  // rational argument); returns a ball otherwise.
  FieldElem sqrt() const;

 private:
  struct Radical {
    FieldPtr field;
    std::vector<Rational> c;
  };
  explicit FieldElem(Radical r);
  static FieldElem normalize(Radical r);
  std::variant<Rational, Radical, Ball> v_;

  friend struct FieldOps;
};

// Rewrites an element of Q(R^(1/a)) in Q(R^(1/b)) when a divides b.
FieldElem embed(const FieldElem& x, const FieldPtr& target);

// Common field of two exact elements; throws FieldMismatch when incompatible.
FieldPtr common_field(const FieldPtr& a, const FieldPtr& b);

}  // namespace qwalk
