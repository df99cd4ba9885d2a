#pragma once

#include <vector>

#include "qwalk/oracle.hpp"
#include "qwalk/polyio.hpp"
#include "qwalk/saddle.hpp"
#include "qwalk/series.hpp"

namespace qwalk {

// q(A,B;n) ~ gamma^n / n^c * prod_j base_j^(B_j) *
//            sum_p v_p(B) pi^(pi_twice/2) * sum_i alpha_i^(A-B) zeta_i^n / n^p
struct AsymptoticExpansion {
  FieldElem gamma;
  Rational c;
  int pi_twice = 0;
  std::vector<FieldElem> dominant;
  std::vector<FieldElem> exp_bases;
  std::vector<std::string> vars;
  std::vector<LaurentPoly> terms;  // terms[p-1] = v_p
  std::vector<Twist> twists;
  Point start;
  int lowest_grade = 0;

  int order() const { return static_cast<int>(terms.size()); }
  // integer value of sum_i alpha_i^(A-B) zeta_i^n
  long twist_sum(const Point& end, long n) const;
  BigFloat term_value(int p, const Point& end, long prec = kDefaultPrecision) const;
  // truncated prediction using v_1..v_order
  BigFloat predict(const Point& end, long n, int order, long prec = kDefaultPrecision) const;
};

struct SPowerExpansion {
  FieldElem gamma;
  Matrix qform;
  GradedSeries nb;  // n B with grade r homogeneous of degree r + 2 in s
  GradedSeries tail;  // exp(n B)
};

// variables of all series: s-variables followed by endpoint variables
std::vector<std::string> series_vars(int d);

SPowerExpansion expand_S_power(const Model& m, const std::vector<FieldElem>& saddle, int truncation);
GradedSeries expand_numerator(const RatFunc& n, const std::vector<FieldElem>& saddle, int truncation);
// exp(-i (k+1).s / sqrt n); the factor x0^(-k-1) is kept outside the series
GradedSeries expand_endpoint_monomial(int d, int truncation);
// integral over R^d of exp(-s^T Q s) s^a
ScaledCoefficient gaussian_moment(const Matrix& q, const Exponent& a);

AsymptoticExpansion assemble_expansion(const Model& m, const RatFunc& numerator, int order, const Point& start);
AsymptoticExpansion expand_from_start(const Model& m, const Point& start, int order);

struct InterpolatedTerms {
  Rational c;
  FieldElem gamma;
  int pi_twice = 0;
  int degree_bound = 0;
  std::vector<LaurentPoly> terms;  // polynomials in k, l, u, v
  std::vector<int> observed_degree;  // degree in (u, v)
  std::vector<Twist> twists;
};
// Each v_p(k,l,u,v) is recovered from expansions at the starts u+v <= bound
// and checked on extra starts.
InterpolatedTerms interpolate_vp(const Model& m, int order, int held_out = 4);

// structured report text and its parser
std::string serialize_expansion(const AsymptoticExpansion& e);
AsymptoticExpansion parse_expansion(const std::string& text);

}  // namespace qwalk
