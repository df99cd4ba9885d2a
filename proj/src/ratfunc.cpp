#include "qwalk/ratfunc.hpp"

#include "qwalk/errors.hpp"

namespace qwalk {

RatFunc::RatFunc(LaurentPoly num) : num_(std::move(num)), den_(LaurentPoly::constant(num_.vars(), FieldElem(1))) {}

RatFunc::RatFunc(LaurentPoly num, LaurentPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw Error(ErrorCode::DivisionByZero, "rational function with zero denominator");
  if (num_.vars().empty() && num_.is_zero()) num_ = LaurentPoly(den_.vars());
  canonicalize();
}

void RatFunc::canonicalize() {
  if (num_.is_zero()) {
    den_ = LaurentPoly::constant(den_.vars(), FieldElem(1));
    return;
  }
  Exponent m = den_.min_exponent();
  for (auto& x : m) x = -x;
  den_ = den_.shifted(m);
  num_ = num_.shifted(m);
  FieldElem lead = den_.leading_term().second;
  if (!lead.is_one() && lead.is_exact()) {
    FieldElem inv = lead.inverse();
    den_ *= inv;
    num_ *= inv;
  }
  if (!den_.is_constant() && num_.size() >= den_.size()) {
    bool exact = true;
    for (auto& [e, c] : num_.terms()) exact = exact && c.is_exact();
    for (auto& [e, c] : den_.terms()) exact = exact && c.is_exact();
    if (exact) {
      if (auto q = divide_exact(num_, den_)) {
        num_ = std::move(*q);
        den_ = LaurentPoly::constant(den_.vars(), FieldElem(1));
      }
    }
  }
}

LaurentPoly RatFunc::as_laurent() const {
  if (!den_.is_monomial()) throw Error(ErrorCode::InvalidArgument, "denominator is not a monomial");
  auto [e, c] = den_.leading_term();
  Exponent neg = e;
  for (auto& x : neg) x = -x;
  return num_.shifted(neg) * c.inverse();
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
  if (auto q = divide_exact(a.den_, b.den_)) return RatFunc(a.num_ + b.num_ * *q, a.den_);
  if (auto q = divide_exact(b.den_, a.den_)) return RatFunc(a.num_ * *q + b.num_, b.den_);
  return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero() || b.is_zero()) return RatFunc(LaurentPoly(a.vars().empty() ? b.vars() : a.vars()));
  return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
  if (b.is_zero()) throw Error(ErrorCode::DivisionByZero, "division by the zero rational function");
  return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
}

RatFunc RatFunc::pow(long e) const {
  if (e < 0) {
    if (is_zero()) throw Error(ErrorCode::DivisionByZero, "zero to a negative power");
    return RatFunc(den_.pow(static_cast<unsigned>(-e)), num_.pow(static_cast<unsigned>(-e)));
  }
  return RatFunc(num_.pow(static_cast<unsigned>(e)), den_.pow(static_cast<unsigned>(e)));
}

bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ * b.den_ == b.num_ * a.den_; }

FieldElem RatFunc::eval(const std::vector<FieldElem>& point) const {
  FieldElem d = den_.eval(point);
  if (d.is_zero() || (d.is_exact() == false && d.ball().contains_zero()))
    throw Error(ErrorCode::PoleAtPoint, "denominator vanishes at the point");
  return num_.eval(point) / d;
}

RatFunc substitute(const LaurentPoly& f, const std::vector<RatFunc>& images) {
  if (images.size() != f.nvars()) throw Error(ErrorCode::InvalidArgument, "one image per variable required");
  std::vector<std::string> out_vars = images.empty() ? std::vector<std::string>{} : images[0].vars();
  if (f.is_zero()) return RatFunc(LaurentPoly(out_vars));
  size_t d = f.nvars();
  std::vector<int> lo(d), hi(d);
  for (size_t j = 0; j < d; ++j) {
    lo[j] = f.min_degree(j);
    hi[j] = f.max_degree(j);
  }
  // power caches of numerators and denominators
  std::vector<std::vector<LaurentPoly>> pnum(d), pden(d);
  for (size_t j = 0; j < d; ++j) {
    int span = hi[j] - lo[j];
    pnum[j].push_back(LaurentPoly::constant(out_vars, FieldElem(1)));
    pden[j].push_back(LaurentPoly::constant(out_vars, FieldElem(1)));
    for (int k = 1; k <= span; ++k) {
      pnum[j].push_back(pnum[j].back() * images[j].num());
      pden[j].push_back(pden[j].back() * images[j].den());
    }
  }
  // f = sum c prod p^(e-lo) q^(hi-e)  *  prod p^lo q^-hi
  LaurentPoly numer(out_vars);
  for (auto& [e, c] : f.terms()) {
    LaurentPoly t = LaurentPoly::constant(out_vars, c);
    for (size_t j = 0; j < d; ++j) {
      int a = e[j] - lo[j], b = hi[j] - e[j];
      if (a) t = t * pnum[j][static_cast<size_t>(a)];
      if (b) t = t * pden[j][static_cast<size_t>(b)];
    }
    numer += t;
  }
  LaurentPoly top = LaurentPoly::constant(out_vars, FieldElem(1));
  LaurentPoly bottom = LaurentPoly::constant(out_vars, FieldElem(1));
  for (size_t j = 0; j < d; ++j) {
    if (lo[j] > 0) top = top * images[j].num().pow(static_cast<unsigned>(lo[j]));
    if (lo[j] < 0) bottom = bottom * images[j].num().pow(static_cast<unsigned>(-lo[j]));
    if (hi[j] > 0) bottom = bottom * images[j].den().pow(static_cast<unsigned>(hi[j]));
    if (hi[j] < 0) top = top * images[j].den().pow(static_cast<unsigned>(-hi[j]));
  }
  if (bottom.is_zero()) throw Error(ErrorCode::DivisionByZero, "substituted denominator collapses to zero");
  return RatFunc(numer * top, bottom);
}

RatFunc RatFunc::compose(const std::vector<RatFunc>& images) const {
  RatFunc n = substitute(num_, images);
  RatFunc d = substitute(den_, images);
  if (d.is_zero()) throw Error(ErrorCode::DivisionByZero, "composed denominator collapses to zero");
  return n / d;
}

std::string RatFunc::to_string() const {
  if (den_.is_constant() && den_.coefficient(Exponent(den_.nvars(), 0)).is_one()) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

}  // namespace qwalk
