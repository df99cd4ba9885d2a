#include "qwalk/polyharmonic.hpp"

#include <algorithm>

#include "qwalk/errors.hpp"
#include "qwalk/linalg.hpp"

namespace qwalk {

PolyharmonicFn PolyharmonicFn::from_poly(LaurentPoly p, FieldElem eigenvalue, int lower, int order) {
  PolyharmonicFn f;
  const size_t n = p.nvars();
  f.poly = std::move(p);
  f.exp_bases.assign(n, FieldElem(1));
  f.lower.assign(n, lower);
  f.eigenvalue = eigenvalue;
  f.claimed_order = order;
  return f;
}

FieldElem PolyharmonicFn::operator()(const Point& x) const {
  for (size_t j = 0; j < x.size(); ++j)
    if (x[j] < lower[j]) return FieldElem(0);
  std::vector<FieldElem> pt;
  for (int v : x) pt.push_back(FieldElem(v));
  FieldElem v = poly.eval(pt);
  for (size_t j = 0; j < x.size(); ++j)
    if (!exp_bases[j].is_one()) v *= exp_bases[j].pow(x[j]);
  return v;
}

Stencil laplacian_stencil(const Model& m, const FieldElem& t, size_t nvars, size_t first, bool adjoint) {
  Stencil st;
  st.t = t;
  for (auto& s : m.steps()) {
    Point shift(nvars, 0);
    for (int j = 0; j < m.dimension(); ++j) shift[first + j] = adjoint ? -s.offset[j] : s.offset[j];
    st.shifts.push_back({shift, s.weight});
  }
  return st;
}

namespace {

FieldElem apply_stencil(const Stencil& st, const Evaluator& f, const Point& x) {
  FieldElem acc = -(st.t * f(x));
  for (auto& [shift, w] : st.shifts) {
    Point y = x;
    for (size_t j = 0; j < y.size(); ++j) y[j] -= shift[j];
    FieldElem v = f(y);
    if (!v.is_zero()) acc += w * v;
  }
  return acc;
}

}  // namespace

FieldElem apply_laplacian(const Model& m, const Evaluator& f, const Point& x, const FieldElem& t) {
  return apply_stencil(laplacian_stencil(m, t, x.size(), 0, false), f, x);
}

FieldElem apply_adjoint_laplacian(const Model& m, const Evaluator& f, const Point& x, const FieldElem& t) {
  return apply_stencil(laplacian_stencil(m, t, x.size(), 0, true), f, x);
}

VerifyResult verify_operator_sequence(const std::vector<Stencil>& ops, const Evaluator& f, const Point& lower,
                                      const std::vector<Point>& points) {
  std::vector<std::map<Point, FieldElem>> memo(ops.size() + 1);
  auto inside = [&](const Point& x) {
    for (size_t j = 0; j < x.size(); ++j)
      if (x[j] < lower[j]) return false;
    return true;
  };
  std::function<FieldElem(size_t, const Point&)> level = [&](size_t i, const Point& x) -> FieldElem {
    if (!inside(x)) return FieldElem(0);
    auto it = memo[i].find(x);
    if (it != memo[i].end()) return it->second;
    FieldElem v = i == 0 ? f(x) : apply_stencil(ops[i - 1], [&](const Point& y) { return level(i - 1, y); }, x);
    memo[i].emplace(x, v);
    return v;
  };
  VerifyResult r;
  for (auto& x : points) {
    FieldElem v = level(ops.size(), x);
    ++r.checked;
    if (!v.is_zero()) {
      r.pass = false;
      r.witness = x;
      r.value = v;
      return r;
    }
  }
  return r;
}

std::vector<Point> window_points(const Point& lo, const Point& hi) {
  std::vector<Point> out;
  Point p = lo;
  const int d = static_cast<int>(lo.size());
  while (true) {
    out.push_back(p);
    int j = d - 1;
    while (j >= 0 && ++p[j] > hi[j]) p[j] = lo[j], --j;
    if (j < 0) break;
  }
  return out;
}

VerifyResult verify_polyharmonic(const Model& m, const PolyharmonicFn& f, int p, const Point& lo, const Point& hi) {
  std::vector<Stencil> ops(p, laplacian_stencil(m, f.eigenvalue, f.lower.size(), 0, false));
  return verify_operator_sequence(ops, [&](const Point& x) { return f(x); }, f.lower, window_points(lo, hi));
}

const LaurentPoly& PolyBasis::at(int n, int m) const {
  auto it = entries.find({n, m});
  if (it == entries.end())
    throw Error(ErrorCode::NoSolutionWithinDegreeBound, "basis has no entry h_" + std::to_string(n) + "^" + std::to_string(m));
  return it->second;
}

namespace {

std::vector<Exponent> monomials_upto(size_t nvars, int degree) {
  std::vector<Exponent> out;
  for (int total = degree; total >= 0; --total) {
    Exponent e(nvars, 0);
    std::function<void(size_t, int)> rec = [&](size_t j, int left) {
      if (j + 1 == nvars) {
        e[j] = left;
        out.push_back(e);
        return;
      }
      for (int a = left; a >= 0; --a) {
        e[j] = a;
        rec(j + 1, left - a);
      }
    };
    rec(0, total);
  }
  return out;
}

// polynomial Laplacian P h - t h, no boundary effects
LaurentPoly poly_laplacian(const Model& m, const LaurentPoly& h, const FieldElem& t) {
  LaurentPoly out = h * (-t);
  for (auto& s : m.steps()) {
    std::vector<Rational> shift;
    for (int v : s.offset) shift.push_back(Rational(-v));
    out += translate(h, shift) * s.weight;
  }
  return out;
}

struct Ansatz {
  LaurentPoly boundary;
  std::vector<Exponent> mons;
  std::vector<LaurentPoly> images;  // Laplacian of boundary * monomial
  std::vector<LaurentPoly> columns;  // boundary * monomial
};

Ansatz make_ansatz(const Model& m, const FieldElem& t, const std::vector<std::string>& vars, int lower, int degree) {
  Ansatz a;
  a.boundary = LaurentPoly::constant(vars, FieldElem(1));
  for (size_t j = 0; j < vars.size(); ++j) {
    LaurentPoly lin = LaurentPoly::variable(vars, j);
    lin += LaurentPoly::constant(vars, FieldElem(1 - lower));
    a.boundary *= lin;
  }
  int free_degree = degree - static_cast<int>(vars.size());
  if (free_degree < 0) return a;
  a.mons = monomials_upto(vars.size(), free_degree);
  for (auto& e : a.mons) {
    LaurentPoly col = a.boundary * LaurentPoly::monomial(vars, e);
    a.columns.push_back(col);
    a.images.push_back(poly_laplacian(m, col, t));
  }
  return a;
}

// rows indexed by monomials appearing in the given polynomials
struct System {
  std::map<Exponent, size_t, GradedLexLess> row_of;
  Matrix mat;
};

Matrix coefficient_matrix(const std::vector<LaurentPoly>& cols, std::map<Exponent, size_t, GradedLexLess>& row_of) {
  for (auto& c : cols)
    for (auto& [e, v] : c.terms()) row_of.emplace(e, 0);
  size_t i = 0;
  for (auto& [e, idx] : row_of) idx = i++;
  Matrix mat(row_of.size(), cols.size());
  for (size_t j = 0; j < cols.size(); ++j)
    for (auto& [e, v] : cols[j].terms()) mat(row_of.at(e), j) = v;
  return mat;
}

LaurentPoly combine(const std::vector<LaurentPoly>& cols, const std::vector<FieldElem>& x, const std::vector<std::string>& vars) {
  LaurentPoly out(vars);
  for (size_t j = 0; j < cols.size(); ++j)
    if (!x[j].is_zero()) out += cols[j] * x[j];
  return out;
}

LaurentPoly unit_leading(const LaurentPoly& p) {
  auto [e, c] = p.leading_term();
  return p * c.inverse();
}

// reduce p against the rows of an echelon basis (pivot = leading monomial)
LaurentPoly reduce(LaurentPoly p, const std::vector<LaurentPoly>& basis) {
  for (auto& b : basis) {
    auto [e, c] = b.leading_term();
    FieldElem coef = p.coefficient(e);
    if (!coef.is_zero()) p -= b * (coef / c);
  }
  return p;
}

// echelon basis (distinct leading monomials, mutually reduced) of a span
std::vector<LaurentPoly> echelon(std::vector<LaurentPoly> polys) {
  std::vector<LaurentPoly> out;
  for (auto& p : polys) {
    LaurentPoly r = reduce(p, out);
    if (r.is_zero()) continue;
    r = unit_leading(r);
    for (auto& q : out) q = reduce(q, {r});
    out.push_back(r);
    std::sort(out.begin(), out.end(), [](const LaurentPoly& a, const LaurentPoly& b) {
      return GradedLexLess()(b.leading_term().first, a.leading_term().first);
    });
  }
  return out;
}

std::vector<LaurentPoly> harmonic_space(const Model& m, const FieldElem& t, const std::vector<std::string>& vars, int lower, int degree) {
  auto a = make_ansatz(m, t, vars, lower, degree);
  if (a.mons.empty()) return {};
  std::map<Exponent, size_t, GradedLexLess> rows;
  Matrix mat = coefficient_matrix(a.images, rows);
  std::vector<LaurentPoly> out;
  for (auto& v : nullspace(mat)) out.push_back(combine(a.columns, v, vars));
  return echelon(out);
}

}  // namespace

LaurentPoly translate(const LaurentPoly& p, const std::vector<Rational>& a) {
  const auto& vars = p.vars();
  LaurentPoly out(vars);
  for (auto& [e, c] : p.terms()) {
    LaurentPoly term = LaurentPoly::constant(vars, c);
    for (size_t j = 0; j < e.size(); ++j) {
      if (e[j] < 0) throw Error(ErrorCode::InvalidArgument, "translate needs a polynomial");
      if (e[j] == 0) continue;
      LaurentPoly lin = LaurentPoly::variable(vars, j);
      if (a[j] != 0) lin += LaurentPoly::constant(vars, FieldElem(a[j]));
      term *= lin.pow(static_cast<unsigned>(e[j]));
    }
    out += term;
  }
  return out;
}

PolyBasis build_basis(const Model& m, const FieldElem& gamma, int max_level, std::vector<std::string> vars, int lower) {
  if (!m.small_steps()) throw Error(ErrorCode::NotSmallSteps, "the polynomial ansatz needs small steps");
  auto dr = drift(m);
  for (auto& v : dr)
    if (!v.is_zero()) throw Error(ErrorCode::NonzeroDrift, "basis construction needs a zero-drift model");
  PolyBasis basis;
  basis.vars = vars;
  basis.lower = lower;
  basis.eigenvalue = gamma;
  const int d = static_cast<int>(vars.size());

  // harmonic functions h_1^m, ordered by degree
  std::vector<LaurentPoly> harmonics;
  std::vector<LaurentPoly> known;
  const int degree_cap = 8 * (max_level + 2) + 8;
  for (int deg = d; static_cast<int>(harmonics.size()) < max_level && deg <= degree_cap; ++deg) {
    auto space = harmonic_space(m, gamma, vars, lower, deg);
    // lowest leading monomial first, so each new direction is as small as possible
    std::reverse(space.begin(), space.end());
    for (auto& h : space) {
      LaurentPoly r = reduce(h, known);
      if (r.is_zero()) continue;
      harmonics.push_back(unit_leading(r));
      known.push_back(r);
      known = echelon(known);
    }
  }
  if (static_cast<int>(harmonics.size()) < max_level)
    throw Error(ErrorCode::NoSolutionWithinDegreeBound, "not enough harmonic polynomials below degree " + std::to_string(degree_cap));

  for (int mi = 1; mi <= max_level; ++mi) {
    basis.entries[{1, mi}] = harmonics[mi - 1];
    for (int n = 1; n + mi <= max_level; ++n) {
      const LaurentPoly& target = basis.entries[{n, mi}];
      int start = target.total_degree() + 2;
      bool solved = false;
      for (int deg = start; deg <= start + 16 && !solved; ++deg) {
        auto a = make_ansatz(m, gamma, vars, lower, deg);
        if (a.mons.empty()) continue;
        for (int with_rows = 1; with_rows >= 0 && !solved; --with_rows) {
          std::vector<LaurentPoly> images = a.images;
          std::map<Exponent, size_t, GradedLexLess> rows;
          std::vector<LaurentPoly> all = images;
          all.push_back(target);
          Matrix mat = coefficient_matrix(all, rows);
          Matrix lhs(rows.size(), a.mons.size());
          std::vector<FieldElem> rhs(rows.size(), FieldElem(0));
          for (size_t i = 0; i < rows.size(); ++i) {
            for (size_t j = 0; j < a.mons.size(); ++j) lhs(i, j) = mat(i, j);
            rhs[i] = mat(i, a.mons.size());
          }
          if (with_rows) {
            // vanish on the first n interior rows of the last coordinate
            for (int row = lower; row < lower + n; ++row) {
              std::vector<LaurentPoly> restricted;
              for (auto& col : a.columns) {
                LaurentPoly r(vars);
                for (auto& [e, c] : col.terms()) {
                  Exponent e2 = e;
                  e2[d - 1] = 0;
                  r.add_term(e2, c * FieldElem(rational_pow(Rational(row), e[d - 1])));
                }
                restricted.push_back(r);
              }
              std::map<Exponent, size_t, GradedLexLess> rrows;
              Matrix rm = coefficient_matrix(restricted, rrows);
              for (size_t i = 0; i < rm.rows(); ++i) {
                std::vector<FieldElem> row_vals;
                for (size_t j = 0; j < rm.cols(); ++j) row_vals.push_back(rm(i, j));
                lhs.append_row(row_vals);
                rhs.push_back(FieldElem(0));
              }
            }
          }
          auto sol = solve_linear(lhs, rhs);
          if (!sol) continue;
          LaurentPoly h = combine(a.columns, *sol, vars);
          // remove harmonic components so the choice is canonical
          auto hs = harmonic_space(m, gamma, vars, lower, deg);
          if (!with_rows) h = reduce(h, hs);
          basis.entries[{n + 1, mi}] = h;
          solved = true;
        }
      }
      if (!solved)
        throw Error(ErrorCode::NoSolutionWithinDegreeBound,
                    "no ladder solution for h_" + std::to_string(n + 1) + "^" + std::to_string(mi));
    }
  }

  // ladder check on a window, with the zero extension
  bool ok = true;
  Point lo(d, lower), hi(d, lower + 8);
  auto pts = window_points(lo, hi);
  auto st = laplacian_stencil(m, gamma, d, 0, false);
  for (auto& [key, h] : basis.entries) {
    auto f = PolyharmonicFn::from_poly(h, gamma, lower);
    if (key.first == 1) {
      ok = ok && verify_operator_sequence({st}, [&](const Point& x) { return f(x); }, f.lower, pts).pass;
      continue;
    }
    auto g = PolyharmonicFn::from_poly(basis.entries.at({key.first - 1, key.second}), gamma, lower);
    for (auto& x : pts) {
      FieldElem lap = apply_stencil(st, [&](const Point& y) { return f(y); }, x);
      if (lap != g(x)) ok = false;
    }
  }
  basis.ladder_verified = ok;
  return basis;
}

Decomposition decompose(const LaurentPoly& v, const PolyBasis& basis, const PolyBasis& adjoint, int p) {
  std::vector<std::pair<int, int>> left, right;
  for (auto& [key, h] : basis.entries) left.push_back(key);
  for (auto& [key, h] : adjoint.entries) right.push_back(key);
  std::vector<std::pair<std::pair<int, int>, std::pair<int, int>>> cand;
  for (auto& a : left)
    for (auto& b : right)
      if ((a.first + a.second - 1) + (b.first + b.second - 1) <= p + 1) cand.push_back({a, b});
  const size_t bound = static_cast<size_t>(p) * (p + 1) * (p + 2) * (p + 3) / 24;
  if (cand.size() > bound) throw Error(ErrorCode::DecompositionInfeasible, "candidate count exceeds the summand bound");
  const auto& vars = v.vars();
  std::vector<LaurentPoly> cols;
  for (auto& [a, b] : cand) {
    LaurentPoly h(vars), g(vars);
    for (auto& [e, c] : basis.at(a.first, a.second).terms()) h.add_term({e[0], e[1], 0, 0}, c);
    for (auto& [e, c] : adjoint.at(b.first, b.second).terms()) g.add_term({0, 0, e[0], e[1]}, c);
    cols.push_back(h * g);
  }
  std::vector<LaurentPoly> all = cols;
  all.push_back(v);
  std::map<Exponent, size_t, GradedLexLess> rows;
  Matrix mat = coefficient_matrix(all, rows);
  Matrix lhs(rows.size(), cols.size());
  std::vector<FieldElem> rhs(rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    for (size_t j = 0; j < cols.size(); ++j) lhs(i, j) = mat(i, j);
    rhs[i] = mat(i, cols.size());
  }
  auto sol = solve_linear(lhs, rhs);
  if (!sol) throw Error(ErrorCode::DecompositionInfeasible, "nonzero residual: v_p is not in the span of the basis products");
  Decomposition dec;
  dec.candidates = cand.size();
  for (size_t j = 0; j < cand.size(); ++j)
    if (!(*sol)[j].is_zero()) dec.terms.push_back({cand[j].first, cand[j].second, (*sol)[j]});
  return dec;
}

LaurentPoly leading_homogeneous(const LaurentPoly& f) {
  if (f.is_zero()) return f;
  return f.homogeneous_part(f.total_degree());
}

PolyharmonicFn conjugate_by_cramer(const PolyharmonicFn& f, const std::vector<FieldElem>& multipliers) {
  PolyharmonicFn g = f;
  for (size_t j = 0; j < multipliers.size() && j < g.exp_bases.size(); ++j) g.exp_bases[j] *= multipliers[j];
  return g;
}

}  // namespace qwalk
