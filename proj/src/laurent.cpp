#include "qwalk/laurent.hpp"

#include <algorithm>
#include <climits>
#include <sstream>

#include "qwalk/errors.hpp"

namespace qwalk {

bool GradedLexLess::operator()(const Exponent& a, const Exponent& b) const {
  long da = 0, db = 0;
  for (int x : a) da += x;
  for (int x : b) db += x;
  if (da != db) return da < db;
  return a < b;
}

LaurentPoly LaurentPoly::constant(std::vector<std::string> vars, const FieldElem& c) {
  Exponent e(vars.size(), 0);
  return monomial(std::move(vars), std::move(e), c);
}

LaurentPoly LaurentPoly::variable(std::vector<std::string> vars, size_t i) {
  Exponent e(vars.size(), 0);
  e.at(i) = 1;
  return monomial(std::move(vars), std::move(e));
}

LaurentPoly LaurentPoly::monomial(std::vector<std::string> vars, Exponent e, const FieldElem& c) {
  if (e.size() != vars.size()) throw Error(ErrorCode::InvalidArgument, "exponent length mismatch");
  LaurentPoly p(std::move(vars));
  p.add_term(e, c);
  return p;
}

bool LaurentPoly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  for (int x : terms_.begin()->first)
    if (x != 0) return false;
  return true;
}

FieldElem LaurentPoly::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? FieldElem(0) : it->second;
}

void LaurentPoly::add_term(const Exponent& e, const FieldElem& c) {
  if (e.size() != vars_.size()) throw Error(ErrorCode::InvalidArgument, "exponent length mismatch");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void LaurentPoly::adopt_vars(const LaurentPoly& o) {
  if (vars_ == o.vars_) return;
  if (vars_.empty() && terms_.empty()) {
    vars_ = o.vars_;
    return;
  }
  if (o.vars_.empty() && o.terms_.empty()) return;
  throw Error(ErrorCode::InvalidArgument, "variable lists differ");
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  adopt_vars(o);
  for (auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  adopt_vars(o);
  for (auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(const FieldElem& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, x] : terms_) x *= c;
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly r(a.vars_.empty() && a.terms_.empty() ? b.vars_ : a.vars_);
  if (!(a.terms_.empty() || b.terms_.empty())) r.adopt_vars(b);
  Exponent e(r.vars_.size());
  for (auto& [ea, ca] : a.terms_)
    for (auto& [eb, cb] : b.terms_) {
      for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

LaurentPoly LaurentPoly::pow(unsigned e) const {
  LaurentPoly result = constant(vars_, FieldElem(1));
  LaurentPoly base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  auto it = b.terms_.begin();
  for (auto& [e, c] : a.terms_) {
    if (e != it->first || c != it->second) return false;
    ++it;
  }
  return true;
}

FieldElem LaurentPoly::eval(const std::vector<FieldElem>& point) const {
  if (point.size() != vars_.size()) throw Error(ErrorCode::InvalidArgument, "point dimension mismatch");
  bool rational = std::all_of(point.begin(), point.end(), [](const FieldElem& x) { return x.is_rational(); });
  for (auto it = terms_.begin(); rational && it != terms_.end(); ++it) rational = it->second.is_rational();
  if (rational) {
    std::vector<std::map<int, Rational>> pw(point.size());
    Rational acc = 0, t;
    for (auto& [e, c] : terms_) {
      t = c.rational();
      for (size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        auto it = pw[i].find(e[i]);
        if (it == pw[i].end()) {
          if (e[i] < 0 && point[i].is_zero())
            throw Error(ErrorCode::PoleAtPoint, "variable " + vars_[i] + " vanishes with negative exponent");
          it = pw[i].emplace(e[i], point[i].pow(e[i]).rational()).first;
        }
        t *= it->second;
      }
      acc += t;
    }
    return FieldElem(acc);
  }
  std::vector<std::map<int, FieldElem>> cache(point.size());
  auto power = [&](size_t i, int k) -> FieldElem {
    if (k == 0) return FieldElem(1);
    auto it = cache[i].find(k);
    if (it != cache[i].end()) return it->second;
    if (k < 0 && point[i].is_zero())
      throw Error(ErrorCode::PoleAtPoint, "variable " + vars_[i] + " vanishes with negative exponent");
    FieldElem v = point[i].pow(k);
    cache[i].emplace(k, v);
    return v;
  };
  FieldElem acc(0);
  for (auto& [e, c] : terms_) {
    FieldElem t = c;
    for (size_t i = 0; i < e.size(); ++i) t *= power(i, e[i]);
    acc += t;
  }
  return acc;
}

int LaurentPoly::min_degree(size_t var) const {
  int m = INT_MAX;
  for (auto& [e, c] : terms_) m = std::min(m, e[var]);
  return terms_.empty() ? 0 : m;
}

int LaurentPoly::max_degree(size_t var) const {
  int m = INT_MIN;
  for (auto& [e, c] : terms_) m = std::max(m, e[var]);
  return terms_.empty() ? 0 : m;
}

Exponent LaurentPoly::min_exponent() const {
  Exponent m(vars_.size());
  for (size_t i = 0; i < m.size(); ++i) m[i] = min_degree(i);
  return m;
}

int LaurentPoly::total_degree() const {
  int m = INT_MIN;
  for (auto& [e, c] : terms_) {
    int s = 0;
    for (int x : e) s += x;
    m = std::max(m, s);
  }
  return terms_.empty() ? 0 : m;
}

int LaurentPoly::min_total_degree() const {
  int m = INT_MAX;
  for (auto& [e, c] : terms_) {
    int s = 0;
    for (int x : e) s += x;
    m = std::min(m, s);
  }
  return terms_.empty() ? 0 : m;
}

bool LaurentPoly::depends_on(size_t var) const {
  for (auto& [e, c] : terms_)
    if (e[var] != 0) return true;
  return false;
}

LaurentPoly LaurentPoly::shifted(const Exponent& shift) const {
  LaurentPoly r(vars_);
  Exponent f(vars_.size());
  for (auto& [e, c] : terms_) {
    for (size_t i = 0; i < f.size(); ++i) f[i] = e[i] + shift[i];
    r.terms_.emplace_hint(r.terms_.end(), f, c);
  }
  return r;
}

LaurentPoly LaurentPoly::homogeneous_part(int degree) const {
  LaurentPoly r(vars_);
  for (auto& [e, c] : terms_) {
    int s = 0;
    for (int x : e) s += x;
    if (s == degree) r.terms_.emplace(e, c);
  }
  return r;
}

LaurentPoly LaurentPoly::with_vars(std::vector<std::string> vars) const {
  if (vars.size() != vars_.size()) throw Error(ErrorCode::InvalidArgument, "variable count mismatch");
  LaurentPoly r = *this;
  r.vars_ = std::move(vars);
  return r;
}

LaurentPoly LaurentPoly::scale_vars(const std::vector<FieldElem>& c) const {
  LaurentPoly r(vars_);
  for (auto& [e, x] : terms_) {
    FieldElem t = x;
    for (size_t i = 0; i < e.size(); ++i) t *= c[i].pow(e[i]);
    r.add_term(e, t);
  }
  return r;
}

std::pair<Exponent, FieldElem> LaurentPoly::leading_term() const {
  if (terms_.empty()) throw Error(ErrorCode::InvalidArgument, "zero polynomial has no leading term");
  auto it = std::prev(terms_.end());
  return {it->first, it->second};
}

std::string LaurentPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    std::string c = it->second.to_string();
    bool compound = it->second.kind() == FieldElem::Kind::Radical;
    if (!first) os << (c[0] == '-' && !compound ? " - " : " + ");
    if (!first && c[0] == '-' && !compound) c.erase(0, 1);
    bool unit = true;
    for (int x : it->first)
      if (x != 0) unit = false;
    if (compound)
      os << "(" << c << ")";
    else
      os << c;
    if (!unit) {
      for (size_t i = 0; i < it->first.size(); ++i) {
        int x = it->first[i];
        if (x == 0) continue;
        os << "*" << vars_[i];
        if (x != 1) os << "^" << x;
      }
    }
    first = false;
  }
  return os.str();
}

std::optional<LaurentPoly> divide_exact(const LaurentPoly& f, const LaurentPoly& g) {
  if (g.is_zero()) throw Error(ErrorCode::DivisionByZero, "division by the zero polynomial");
  if (f.is_zero()) return LaurentPoly(g.vars());
  for (const auto* p : {&f, &g})
    for (auto& [e, c] : p->terms())
      if (!c.is_exact()) throw Error(ErrorCode::InvalidArgument, "exact division needs exact coefficients");
  Exponent mf = f.min_exponent(), mg = g.min_exponent();
  Exponent neg_mf(mf.size()), neg_mg(mg.size()), back(mf.size());
  for (size_t i = 0; i < mf.size(); ++i) {
    neg_mf[i] = -mf[i];
    neg_mg[i] = -mg[i];
    back[i] = mf[i] - mg[i];
  }
  LaurentPoly r = f.shifted(neg_mf);
  LaurentPoly d = g.shifted(neg_mg);
  auto [lte, ltc] = d.leading_term();
  FieldElem inv = ltc.inverse();
  LaurentPoly q(f.vars());
  Exponent diff(lte.size());
  while (!r.is_zero()) {
    auto [re, rc] = r.leading_term();
    for (size_t i = 0; i < diff.size(); ++i) {
      diff[i] = re[i] - lte[i];
      if (diff[i] < 0) return std::nullopt;
    }
    FieldElem c = rc * inv;
    q.add_term(diff, c);
    LaurentPoly step = d.shifted(diff) * c;
    r -= step;
  }
  return q.shifted(back);
}

}  // namespace qwalk
