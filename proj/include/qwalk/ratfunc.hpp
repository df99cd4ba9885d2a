#pragma once

#include <string>
#include <vector>

#include "qwalk/laurent.hpp"

namespace qwalk {

class RatFunc {
 public:
  RatFunc() = default;
  explicit RatFunc(LaurentPoly num);
  RatFunc(LaurentPoly num, LaurentPoly den);

  const LaurentPoly& num() const { return num_; }
  const LaurentPoly& den() const { return den_; }
  const std::vector<std::string>& vars() const { return num_.vars(); }
  bool is_zero() const { return num_.is_zero(); }
  // true when the denominator is a single monomial
  bool is_laurent() const { return den_.is_monomial(); }
  // the Laurent polynomial num/den; requires is_laurent()
  LaurentPoly as_laurent() const;

  RatFunc operator-() const { return RatFunc(-num_, den_); }
  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  RatFunc pow(long e) const;

  // decided by cross-multiplication
  friend bool operator==(const RatFunc& a, const RatFunc& b);
  friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

  // throws PoleAtPoint when the denominator vanishes at the point
  FieldElem eval(const std::vector<FieldElem>& point) const;
  RatFunc compose(const std::vector<RatFunc>& images) const;

  std::string to_string() const;

 private:
  void canonicalize();
  LaurentPoly num_;
  LaurentPoly den_;
};

// f(images): each variable of f replaced by the corresponding image
RatFunc substitute(const LaurentPoly& f, const std::vector<RatFunc>& images);

}  // namespace qwalk
