#pragma once

#include <map>
#include <string>
#include <vector>

#include "qwalk/laurent.hpp"

namespace qwalk {

// Truncated series sum_g P_g * i^g * n^(-g/2): grade g carries the implicit
// phase i^g, so every component is a real polynomial and products stay real.
class GradedSeries {
 public:
  GradedSeries(std::vector<std::string> vars, int truncation);
  static GradedSeries constant(std::vector<std::string> vars, int truncation, const FieldElem& c);

  int truncation() const { return truncation_; }
  const std::vector<std::string>& vars() const { return vars_; }
  // zero polynomial for absent grades
  LaurentPoly component(int grade) const;
  void set_component(int grade, LaurentPoly p);
  const std::map<int, LaurentPoly>& components() const { return comps_; }
  int lowest_grade() const;

  GradedSeries operator+(const GradedSeries& o) const;
  GradedSeries operator-(const GradedSeries& o) const;
  GradedSeries operator*(const GradedSeries& o) const;
  GradedSeries scaled(const FieldElem& c) const;

  // log(1 + g) for a series whose grade-0 part is the constant 1
  GradedSeries log() const;
  // exp of a series with vanishing grade-0 part
  GradedSeries exp() const;
  // 1/f for a series with a nonzero constant grade-0 part
  GradedSeries reciprocal() const;

  bool operator==(const GradedSeries& o) const;

 private:
  FieldElem grade0_constant(bool require_constant) const;
  std::vector<std::string> vars_;
  int truncation_;
  std::map<int, LaurentPoly> comps_;
};

}  // namespace qwalk
