#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qwalk/field.hpp"

namespace qwalk {

using Exponent = std::vector<int>;

// total degree first, then lexicographic
struct GradedLexLess {
  bool operator()(const Exponent& a, const Exponent& b) const;
};

class LaurentPoly {
 public:
  using TermMap = std::map<Exponent, FieldElem, GradedLexLess>;

  LaurentPoly() = default;
  explicit LaurentPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

  static LaurentPoly constant(std::vector<std::string> vars, const FieldElem& c);
  static LaurentPoly variable(std::vector<std::string> vars, size_t i);
  static LaurentPoly monomial(std::vector<std::string> vars, Exponent e, const FieldElem& c = FieldElem(1));

  const std::vector<std::string>& vars() const { return vars_; }
  size_t nvars() const { return vars_.size(); }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }
  bool is_constant() const;
  bool is_monomial() const { return terms_.size() == 1; }

  FieldElem coefficient(const Exponent& e) const;
  void add_term(const Exponent& e, const FieldElem& c);

  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const FieldElem& c);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator*(LaurentPoly a, const FieldElem& c) { return a *= c; }
  friend LaurentPoly operator*(const FieldElem& c, LaurentPoly a) { return a *= c; }
  LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }
  LaurentPoly pow(unsigned e) const;

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b);
  friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

  // throws PoleAtPoint on a zero coordinate raised to a negative power
  FieldElem eval(const std::vector<FieldElem>& point) const;

  int min_degree(size_t var) const;
  int max_degree(size_t var) const;
  Exponent min_exponent() const;
  int total_degree() const;
  int min_total_degree() const;
  bool depends_on(size_t var) const;

  LaurentPoly shifted(const Exponent& shift) const;
  LaurentPoly homogeneous_part(int degree) const;
  LaurentPoly with_vars(std::vector<std::string> vars) const;
  // f(c_1 x_1, ..., c_d x_d)
  LaurentPoly scale_vars(const std::vector<FieldElem>& c) const;
  // graded-lex maximal term
  std::pair<Exponent, FieldElem> leading_term() const;

  std::string to_string() const;

 private:
  void adopt_vars(const LaurentPoly& o);
  std::vector<std::string> vars_;
  TermMap terms_;
};

// Quotient f/g when g divides f in the Laurent ring, nullopt otherwise.
std::optional<LaurentPoly> divide_exact(const LaurentPoly& f, const LaurentPoly& g);

}  // namespace qwalk
