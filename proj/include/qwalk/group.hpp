#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qwalk/model.hpp"
#include "qwalk/oracle.hpp"
#include "qwalk/ratfunc.hpp"

namespace qwalk {

// K = xy(1 - tS) in the variables x, y, t
struct KernelDecomposition {
  LaurentPoly kernel;
  LaurentPoly a, b, c;  // K = a y^2 + b y + c
  LaurentPoly at, bt, ct;  // K = at x^2 + bt x + ct
};
KernelDecomposition kernel(const Model& m);

struct GroupElement {
  std::vector<RatFunc> images;  // images of x and y
  std::string word;  // generators applied, leftmost first
  int sign = 1;
};

std::pair<GroupElement, GroupElement> generators(const Model& m);
std::vector<GroupElement> group_closure(const Model& m, int max_order = 24);

struct OrbitSum {
  RatFunc numerator;
  std::vector<int> monomial;  // (u+1, v+1)
};
OrbitSum orbit_sum(const Model& m, int u, int v);
OrbitSum orbit_sum(const std::vector<GroupElement>& group, int u, int v);

// Laurent expansion of a rational function, each variable expanded around
// infinity, keeping the coefficients whose exponents are >= lower_bounds.
LaurentPoly laurent_expand(const RatFunc& f, const Exponent& lower_bounds);

struct CertificateFailure {
  std::vector<int> endpoint;
  int n = 0;
  FieldElem expected, got;
};
struct Certificate {
  bool pass = true;
  long checked = 0;
  std::optional<CertificateFailure> failure;
};

// Checks [x^(k+1) y^(l+1) ...] S^n N == q(start, (k,l,...); n) for n <= depth and
// endpoints with coordinate sum <= depth.
Certificate certify_numerator(const Model& m, const RatFunc& numerator, const Point& start, int depth);
Certificate certify_orbit_summable(const Model& m, int u, int v, int depth = 8);

}  // namespace qwalk

namespace qwalk {

// "num:" and "den:" sections of term lines; a missing den section means 1
RatFunc parse_numerator(const std::string& text, int dimension);
std::string serialize_numerator(const RatFunc& n);
RatFunc load_numerator(const std::string& path, int dimension);

}  // namespace qwalk
