#pragma once

#include <string>
#include <vector>

#include "qwalk/laurent.hpp"

namespace qwalk {

// value * pi^(pi_twice/2)
struct ScaledCoefficient {
  FieldElem value;
  int pi_twice = 0;

  bool operator==(const ScaledCoefficient& o) const { return pi_twice == o.pi_twice && value == o.value; }
  bool operator!=(const ScaledCoefficient& o) const { return !(*this == o); }
  BigFloat to_bigfloat(long prec = kDefaultPrecision) const;
  std::string to_string() const;
};

// R^e for a positive rational R and rational exponent e, exact in a radical field
FieldElem radical_power(const Rational& radicand, const Rational& exponent);

struct ParsedCoefficient {
  FieldElem value;
  int pi_twice = 0;
};
// "p/q", optionally followed by "*rad(r,p/q)" and "*pi^(r/2)" factors
ParsedCoefficient parse_coefficient(const std::string& token);
// one or more '+'-free tokens, one per power-basis coordinate
std::vector<std::string> format_coefficient(const FieldElem& value, int pi_twice = 0);

// One term per line: "coef e1 ... ed", graded-lex descending.
std::vector<std::string> serialize_poly(const LaurentPoly& p, int pi_twice = 0);
// All lines must share the same pi power, which is returned through pi_twice.
LaurentPoly parse_poly(const std::vector<std::string>& lines, const std::vector<std::string>& vars,
                       int* pi_twice = nullptr);

// term-line file; "# vars a b c" comment lines are allowed
LaurentPoly load_poly(const std::string& path, const std::vector<std::string>& vars, int* pi_twice = nullptr);

std::vector<std::string> default_vars(size_t d, const std::string& family = "x");

}  // namespace qwalk
