#include "qwalk/series.hpp"

#include <algorithm>

#include "qwalk/errors.hpp"

namespace qwalk {

GradedSeries::GradedSeries(std::vector<std::string> vars, int truncation)
    : vars_(std::move(vars)), truncation_(truncation) {}

GradedSeries GradedSeries::constant(std::vector<std::string> vars, int truncation, const FieldElem& c) {
  GradedSeries s(vars, truncation);
  s.set_component(0, LaurentPoly::constant(vars, c));
  return s;
}

LaurentPoly GradedSeries::component(int grade) const {
  auto it = comps_.find(grade);
  return it == comps_.end() ? LaurentPoly(vars_) : it->second;
}

void GradedSeries::set_component(int grade, LaurentPoly p) {
  if (grade < 0 || grade > truncation_) return;
  if (p.is_zero())
    comps_.erase(grade);
  else
    comps_[grade] = std::move(p);
}

int GradedSeries::lowest_grade() const { return comps_.empty() ? truncation_ + 1 : comps_.begin()->first; }

GradedSeries GradedSeries::operator+(const GradedSeries& o) const {
  GradedSeries r(vars_, std::min(truncation_, o.truncation_));
  for (int g = 0; g <= r.truncation_; ++g) r.set_component(g, component(g) + o.component(g));
  return r;
}

GradedSeries GradedSeries::operator-(const GradedSeries& o) const { return *this + o.scaled(FieldElem(-1)); }

GradedSeries GradedSeries::operator*(const GradedSeries& o) const {
  GradedSeries r(vars_, std::min(truncation_, o.truncation_));
  std::map<int, LaurentPoly> acc;
  for (auto& [ga, pa] : comps_)
    for (auto& [gb, pb] : o.comps_) {
      int g = ga + gb;
      if (g > r.truncation_) break;
      auto it = acc.try_emplace(g, vars_).first;
      it->second += pa * pb;
    }
  for (auto& [g, p] : acc) r.set_component(g, std::move(p));
  return r;
}

GradedSeries GradedSeries::scaled(const FieldElem& c) const {
  GradedSeries r(vars_, truncation_);
  for (auto& [g, p] : comps_) r.set_component(g, p * c);
  return r;
}

FieldElem GradedSeries::grade0_constant(bool require_constant) const {
  LaurentPoly p0 = component(0);
  if (!p0.is_constant()) {
    if (require_constant) throw Error(ErrorCode::NonUnitConstantTerm, "grade-0 component is not constant");
  }
  return p0.coefficient(Exponent(vars_.size(), 0));
}

GradedSeries GradedSeries::log() const {
  FieldElem c0 = grade0_constant(true);
  if (!c0.is_one()) throw Error(ErrorCode::NonUnitConstantTerm, "log needs constant term 1");
  // F' = L' F  =>  a L_a = a F_a - sum_{j<a} j L_j F_{a-j}
  GradedSeries r(vars_, truncation_);
  for (int a = 1; a <= truncation_; ++a) {
    LaurentPoly acc = component(a) * FieldElem(a);
    for (int j = 1; j < a; ++j) {
      auto lj = r.comps_.find(j);
      auto fj = comps_.find(a - j);
      if (lj == r.comps_.end() || fj == comps_.end()) continue;
      acc -= (lj->second * fj->second) * FieldElem(j);
    }
    r.set_component(a, acc * FieldElem(Rational(1, a)));
  }
  return r;
}

GradedSeries GradedSeries::exp() const {
  if (!component(0).is_zero()) throw Error(ErrorCode::NonUnitConstantTerm, "exp needs vanishing grade-0 part");
  // a E_a = sum_{j=1..a} j G_j E_{a-j}
  GradedSeries r = constant(vars_, truncation_, FieldElem(1));
  for (int a = 1; a <= truncation_; ++a) {
    LaurentPoly acc(vars_);
    for (int j = 1; j <= a; ++j) {
      auto gj = comps_.find(j);
      auto ej = r.comps_.find(a - j);
      if (gj == comps_.end() || ej == r.comps_.end()) continue;
      acc += (gj->second * ej->second) * FieldElem(j);
    }
    r.set_component(a, acc * FieldElem(Rational(1, a)));
  }
  return r;
}

GradedSeries GradedSeries::reciprocal() const {
  FieldElem c0 = grade0_constant(true);
  if (c0.is_zero()) throw Error(ErrorCode::NonUnitConstantTerm, "reciprocal needs a nonzero constant term");
  FieldElem inv = c0.inverse();
  GradedSeries r = constant(vars_, truncation_, inv);
  for (int a = 1; a <= truncation_; ++a) {
    LaurentPoly acc(vars_);
    for (int j = 1; j <= a; ++j) {
      auto fj = comps_.find(j);
      auto rj = r.comps_.find(a - j);
      if (fj == comps_.end() || rj == r.comps_.end()) continue;
      acc += fj->second * rj->second;
    }
    r.set_component(a, acc * (-inv));
  }
  return r;
}

bool GradedSeries::operator==(const GradedSeries& o) const {
  if (truncation_ != o.truncation_) return false;
  for (int g = 0; g <= truncation_; ++g)
    if (component(g) != o.component(g)) return false;
  return true;
}

}  // namespace qwalk
