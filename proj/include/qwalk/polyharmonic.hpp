#pragma once

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "qwalk/model.hpp"
#include "qwalk/oracle.hpp"

namespace qwalk {

// poly(x) * prod_j exp_bases[j]^x_j on {x >= lower}, zero elsewhere
struct PolyharmonicFn {
  LaurentPoly poly;
  std::vector<FieldElem> exp_bases;
  Point lower;
  FieldElem eigenvalue;
  int claimed_order = 1;

  static PolyharmonicFn from_poly(LaurentPoly p, FieldElem eigenvalue, int lower = 0, int order = 1);
  FieldElem operator()(const Point& x) const;
};

using Evaluator = std::function<FieldElem(const Point&)>;

// (L g)(x) = sum_i w_i g(x - shift_i) - t g(x)
struct Stencil {
  std::vector<std::pair<Point, FieldElem>> shifts;
  FieldElem t;
};
// Laplacian of the model acting on the coordinates [first, first + d) of an
// n-variable function; the adjoint uses the reversed steps.
Stencil laplacian_stencil(const Model& m, const FieldElem& t, size_t nvars, size_t first, bool adjoint);

FieldElem apply_laplacian(const Model& m, const Evaluator& f, const Point& x, const FieldElem& t);
FieldElem apply_adjoint_laplacian(const Model& m, const Evaluator& f, const Point& x, const FieldElem& t);

struct VerifyResult {
  bool pass = true;
  long checked = 0;
  std::optional<Point> witness;
  FieldElem value;
};

// Applies ops in order, re-imposing the zero extension outside {x >= lower}
// after every application, and checks that the result vanishes at all points.
VerifyResult verify_operator_sequence(const std::vector<Stencil>& ops, const Evaluator& f, const Point& lower,
                                      const std::vector<Point>& points);
// p-fold Laplacian on the rectangle [lo, hi]
VerifyResult verify_polyharmonic(const Model& m, const PolyharmonicFn& f, int p, const Point& lo, const Point& hi);

std::vector<Point> window_points(const Point& lo, const Point& hi);

struct PolyBasis {
  std::vector<std::string> vars;
  int lower = 0;
  FieldElem eigenvalue;
  std::map<std::pair<int, int>, LaurentPoly> entries;  // (n, m) -> h_n^m
  // true when every ladder relation was verified on a window
  bool ladder_verified = false;
  const LaurentPoly& at(int n, int m) const;
};

// Harmonic functions h_1^m and ladders Lap h_{n+1}^m = h_n^m for n + m <= max_level + 1.
PolyBasis build_basis(const Model& m, const FieldElem& gamma, int max_level, std::vector<std::string> vars = {"k", "l"},
                      int lower = 0);

struct DecompositionTerm {
  std::pair<int, int> left, right;
  FieldElem coefficient;
};
struct Decomposition {
  std::vector<DecompositionTerm> terms;
  size_t candidates = 0;
};
// v(k,l,u,v) = sum a * h_i^j(k,l) g_i'^j'(u,v) over (i+j-1)+(i'+j'-1) <= p+1
Decomposition decompose(const LaurentPoly& v, const PolyBasis& basis, const PolyBasis& adjoint, int p);

LaurentPoly leading_homogeneous(const LaurentPoly& f);
// p(x + a)
LaurentPoly translate(const LaurentPoly& p, const std::vector<Rational>& a);
PolyharmonicFn conjugate_by_cramer(const PolyharmonicFn& f, const std::vector<FieldElem>& multipliers);

}  // namespace qwalk
