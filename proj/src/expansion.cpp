#include "qwalk/expansion.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>

#include "qwalk/errors.hpp"
#include "qwalk/group.hpp"

namespace qwalk {

std::vector<std::string> series_vars(int d) {
  auto v = default_vars(d, "s");
  for (auto& k : default_vars(d, "k")) v.push_back(k);
  return v;
}

namespace {

// (sum_j e_j s_j)^g / g! as a polynomial in the series variables
LaurentPoly linear_power(const std::vector<std::string>& vars, const std::vector<int>& e, int g) {
  const size_t d = e.size();
  LaurentPoly lin(vars);
  for (size_t j = 0; j < d; ++j) {
    if (e[j] == 0) continue;
    Exponent ex(vars.size(), 0);
    ex[j] = 1;
    lin.add_term(ex, FieldElem(e[j]));
  }
  LaurentPoly p = lin.pow(static_cast<unsigned>(g));
  return p * FieldElem(Rational(1) / Rational(factorial(g)));
}

// sum_e c_e x0^e exp(i e.s / sqrt n) for a Laurent polynomial f
GradedSeries exp_substitution(const LaurentPoly& f, const std::vector<FieldElem>& saddle, int truncation) {
  const int d = static_cast<int>(saddle.size());
  auto vars = series_vars(d);
  GradedSeries out(vars, truncation);
  std::map<int, LaurentPoly> comps;
  for (auto& [e, c] : f.terms()) {
    FieldElem scale = c;
    for (int j = 0; j < d; ++j) scale *= saddle[j].pow(e[j]);
    for (int g = 0; g <= truncation; ++g) {
      auto it = comps.try_emplace(g, vars).first;
      it->second += linear_power(vars, e, g) * scale;
    }
  }
  for (auto& [g, p] : comps) out.set_component(g, p);
  return out;
}

std::vector<std::vector<FieldElem>> invert(const Matrix& m) {
  const size_t d = m.rows();
  std::vector<std::vector<FieldElem>> inv(d, std::vector<FieldElem>(d));
  for (size_t c = 0; c < d; ++c) {
    std::vector<FieldElem> e(d, FieldElem(0));
    e[c] = FieldElem(1);
    auto sol = solve_linear(m, e);
    if (!sol) throw Error(ErrorCode::NotPositiveDefinite, "singular quadratic form");
    for (size_t r = 0; r < d; ++r) inv[r][c] = (*sol)[r];
  }
  return inv;
}

// E[s^a] for the Gaussian with covariance cov
class WickMoments {
 public:
  explicit WickMoments(std::vector<std::vector<FieldElem>> cov) : cov_(std::move(cov)) {}
  FieldElem operator()(const Exponent& a) {
    int total = 0;
    for (int v : a) total += v;
    if (total == 0) return FieldElem(1);
    if (total % 2) return FieldElem(0);
    auto it = memo_.find(a);
    if (it != memo_.end()) return it->second;
    size_t i = 0;
    while (a[i] == 0) ++i;
    Exponent b = a;
    --b[i];
    FieldElem acc(0);
    for (size_t j = 0; j < a.size(); ++j) {
      if (b[j] == 0 || cov_[i][j].is_zero()) continue;
      Exponent c = b;
      --c[j];
      acc += cov_[i][j] * FieldElem(b[j]) * (*this)(c);
    }
    memo_.emplace(a, acc);
    return acc;
  }

 private:
  std::vector<std::vector<FieldElem>> cov_;
  std::map<Exponent, FieldElem> memo_;
};

std::vector<std::vector<FieldElem>> covariance(const Matrix& q) {
  auto inv = invert(q);
  for (auto& row : inv)
    for (auto& v : row) v /= FieldElem(2);
  return inv;
}

FieldElem inverse_sqrt_det(const Matrix& q) {
  FieldElem det = determinant(q);
  if (det.sign() <= 0) throw Error(ErrorCode::NotPositiveDefinite, "quadratic form has nonpositive determinant");
  return det.sqrt().inverse();
}

}  // namespace

SPowerExpansion expand_S_power(const Model& m, const std::vector<FieldElem>& saddle, int truncation) {
  const int d = m.dimension();
  auto S = step_polynomial(m);
  FieldElem gamma = S.eval(saddle);
  Matrix q = local_qform(m, saddle);
  GradedSeries ratio = exp_substitution(S, saddle, truncation + 2).scaled(gamma.inverse());
  GradedSeries lg = ratio.log();
  auto vars = series_vars(d);
  if (!lg.component(1).is_zero()) throw Error(ErrorCode::InvalidArgument, "saddle is not a critical point");
  GradedSeries nb(vars, truncation);
  for (int g = 1; g <= truncation; ++g) nb.set_component(g, -lg.component(g + 2));
  return {gamma, q, nb, nb.exp()};
}

GradedSeries expand_numerator(const RatFunc& n, const std::vector<FieldElem>& saddle, int truncation) {
  auto reg = numerator_regular_at(saddle, n);
  if (!reg.regular) throw Error(ErrorCode::NumeratorSingularAtSaddle, "numerator has a pole at the dominant saddle");
  GradedSeries num = exp_substitution(n.num(), saddle, truncation);
  if (n.den().is_monomial()) {
    auto [e, c] = n.den().leading_term();
    LaurentPoly inv(n.den().vars());
    for (size_t j = 0; j < e.size(); ++j) e[j] = -e[j];
    inv.add_term(e, c.inverse());
    return exp_substitution(n.num() * inv, saddle, truncation);
  }
  return num * exp_substitution(n.den(), saddle, truncation).reciprocal();
}

GradedSeries expand_endpoint_monomial(int d, int truncation) {
  auto vars = series_vars(d);
  LaurentPoly lin(vars);
  for (int j = 0; j < d; ++j) {
    Exponent s(vars.size(), 0), sk(vars.size(), 0);
    s[j] = 1;
    sk[j] = 1;
    sk[d + j] = 1;
    lin.add_term(s, FieldElem(-1));
    lin.add_term(sk, FieldElem(-1));
  }
  GradedSeries out(vars, truncation);
  LaurentPoly pw = LaurentPoly::constant(vars, FieldElem(1));
  for (int g = 0; g <= truncation; ++g) {
    if (g > 0) pw *= lin;
    out.set_component(g, pw * FieldElem(Rational(1) / Rational(factorial(g))));
  }
  return out;
}

ScaledCoefficient gaussian_moment(const Matrix& q, const Exponent& a) {
  WickMoments w(covariance(q));
  return {inverse_sqrt_det(q) * w(a), static_cast<int>(q.rows())};
}

long AsymptoticExpansion::twist_sum(const Point& end, long n) const {
  std::complex<double> acc = 0;
  for (auto& t : twists) {
    Rational e = t.zeta.exponent() * Rational(n);
    for (size_t j = 0; j < end.size(); ++j) e += t.alphas[j].exponent() * Rational(start[j] - end[j]);
    acc += RootOfUnity(e).value();
  }
  return std::lround(acc.real());
}

BigFloat AsymptoticExpansion::term_value(int p, const Point& end, long prec) const {
  std::vector<FieldElem> pt;
  for (int v : end) pt.push_back(FieldElem(v));
  ScaledCoefficient sc{terms.at(p - 1).eval(pt), pi_twice};
  BigFloat v = sc.to_bigfloat(prec);
  for (size_t j = 0; j < end.size(); ++j)
    if (!exp_bases[j].is_one()) v = v * exp_bases[j].to_bigfloat(prec).pow_si(end[j]);
  return v;
}

BigFloat AsymptoticExpansion::predict(const Point& end, long n, int ord, long prec) const {
  long tw = twist_sum(end, n);
  BigFloat sum(0.0, prec);
  if (tw == 0) return sum;
  BigFloat nn(static_cast<double>(n), prec);
  for (int p = 1; p <= std::min(ord, order()); ++p) sum += term_value(p, end, prec) / nn.pow_si(p);
  BigFloat cexp(c, prec);
  BigFloat lead = gamma.to_bigfloat(prec).pow_si(n) / nn.pow(cexp);
  return sum * lead * BigFloat(static_cast<double>(tw), prec);
}

AsymptoticExpansion assemble_expansion(const Model& m, const RatFunc& numerator, int order, const Point& start) {
  if (order < 1) throw Error(ErrorCode::InvalidArgument, "order must be positive");
  const int d = m.dimension();
  auto sys = saddle_system(m);
  auto vars = series_vars(d);
  RatFunc num = RatFunc(numerator.num().with_vars(default_vars(d)), numerator.den().with_vars(default_vars(d)));

  GradedSeries probe = expand_numerator(num, sys.dominant, 2 * order + 24);
  int b0 = probe.lowest_grade();
  if (b0 > probe.truncation()) throw Error(ErrorCode::NotOrbitSummable, "numerator vanishes to high order at the saddle");
  auto cov = covariance(sys.qform);
  FieldElem isd = inverse_sqrt_det(sys.qform);

  int trunc = 2 * b0 + 2 * order;
  while (true) {
    auto sp = expand_S_power(m, sys.dominant, trunc);
    GradedSeries nser = expand_numerator(num, sys.dominant, trunc);
    GradedSeries eser = expand_endpoint_monomial(d, trunc);
    GradedSeries prod = sp.tail * nser * eser;
    WickMoments wick(cov);
    std::map<int, LaurentPoly> integrals;
    auto kvars = default_vars(d, "k");
    for (auto& [g, poly] : prod.components()) {
      LaurentPoly acc(kvars);
      for (auto& [e, c] : poly.terms()) {
        Exponent sa(e.begin(), e.begin() + d), ka(e.begin() + d, e.end());
        FieldElem mom = wick(sa);
        if (!mom.is_zero()) acc.add_term(ka, c * mom);
      }
      if (g % 2 == 1 && !acc.is_zero())
        throw Error(ErrorCode::InvalidArgument, "odd grade " + std::to_string(g) + " integrates to a nonzero value");
      if (!acc.is_zero()) integrals.emplace(g, acc);
    }
    if (integrals.empty() || integrals.begin()->first + 2 * (order - 1) > trunc) {
      int g0 = integrals.empty() ? trunc + 2 : integrals.begin()->first;
      if (trunc > 4 * b0 + 2 * order + 40) throw Error(ErrorCode::NotOrbitSummable, "no nonvanishing Gaussian integral found");
      trunc = std::max(trunc + 2, g0 + 2 * (order - 1));
      continue;
    }
    int g0 = integrals.begin()->first;
    AsymptoticExpansion ex;
    ex.gamma = sys.gamma;
    ex.c = Rational(g0 + d, 2) - 1;
    ex.c.canonicalize();
    if (d == 2 && sys.exact) {
      bool zero = std::all_of(sys.dominant.begin(), sys.dominant.end(), [](const FieldElem& x) { return x.is_one(); });
      auto corr = correlation_coefficient(zero ? m : reweight(m, sys.dominant));
      if (corr.pi_over_theta && *corr.pi_over_theta != ex.c)
        throw Error(ErrorCode::InvalidArgument, "first nonvanishing grade gives c=" + to_string(ex.c) +
                                                    " but pi/theta=" + to_string(*corr.pi_over_theta));
    }
    ex.pi_twice = -d;
    ex.dominant = sys.dominant;
    ex.vars = kvars;
    ex.twists = sys.twists;
    ex.start = start;
    ex.lowest_grade = g0;
    FieldElem constant = isd * FieldElem(Rational(1, 1u << d));
    for (int j = 0; j < d; ++j) {
      ex.exp_bases.push_back(sys.dominant[j].inverse());
      constant *= sys.dominant[j].inverse();
    }
    for (int p = 1; p <= order; ++p) {
      int g = g0 + 2 * (p - 1);
      auto it = integrals.find(g);
      LaurentPoly v = it == integrals.end() ? LaurentPoly(kvars) : it->second;
      FieldElem sgn((g / 2) % 2 ? -1 : 1);
      ex.terms.push_back(v * (constant * sgn));
    }
    return ex;
  }
}

AsymptoticExpansion expand_from_start(const Model& m, const Point& start, int order) {
  if (m.dimension() != 2 || start.size() != 2) throw Error(ErrorCode::InvalidArgument, "orbit sums need a two-dimensional start");
  auto os = orbit_sum(m, start[0], start[1]);
  return assemble_expansion(m, os.numerator, order, start);
}

InterpolatedTerms interpolate_vp(const Model& m, int order, int held_out) {
  auto dr = drift(m);
  for (auto& v : dr)
    if (!v.is_zero()) throw Error(ErrorCode::NonzeroDrift, "interpolation needs a zero-drift model");
  auto group = group_closure(m);
  auto base = assemble_expansion(m, orbit_sum(group, 0, 0).numerator, order, {0, 0});
  InterpolatedTerms out;
  out.c = base.c;
  out.gamma = base.gamma;
  out.pi_twice = base.pi_twice;
  out.twists = base.twists;
  if (base.c.get_den() != 1) throw Error(ErrorCode::InvalidArgument, "non-integer exponent");
  const int c = static_cast<int>(base.c.get_num().get_si());
  const int bound = c + 2 * order - 1;
  out.degree_bound = bound;

  std::vector<std::pair<int, int>> pts, extra;
  for (int s = 0; s <= bound; ++s)
    for (int u = 0; u <= s; ++u) pts.push_back({u, s - u});
  for (int i = 0; i < held_out; ++i) extra.push_back({bound + 1 - i / 2, 1 + i});
  std::vector<std::pair<int, int>> mons;
  for (int s = 0; s <= bound; ++s)
    for (int a = 0; a <= s; ++a) mons.push_back({a, s - a});

  std::vector<std::vector<LaurentPoly>> samples;  // [point][p]
  for (auto& pt : pts) {
    auto ex = pt == std::make_pair(0, 0) ? base : assemble_expansion(m, orbit_sum(group, pt.first, pt.second).numerator, order, {pt.first, pt.second});
    samples.push_back(ex.terms);
  }
  Matrix vand(pts.size(), mons.size());
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = 0; j < mons.size(); ++j)
      vand(i, j) = FieldElem(rational_pow(Rational(pts[i].first), mons[j].first) * rational_pow(Rational(pts[i].second), mons[j].second));
  // invert once, then combine the sampled polynomials
  std::vector<std::vector<FieldElem>> inv = invert(vand);
  std::vector<std::string> vars4 = {"k", "l", "u", "v"};
  for (int p = 0; p < order; ++p) {
    LaurentPoly poly(vars4);
    int deg = 0;
    for (size_t j = 0; j < mons.size(); ++j) {
      LaurentPoly coef(default_vars(2, "k"));
      for (size_t i = 0; i < pts.size(); ++i)
        if (!inv[j][i].is_zero()) coef += samples[i][p] * inv[j][i];
      if (coef.is_zero()) continue;
      deg = std::max(deg, mons[j].first + mons[j].second);
      for (auto& [e, cf] : coef.terms()) poly.add_term({e[0], e[1], mons[j].first, mons[j].second}, cf);
    }
    out.terms.push_back(poly);
    out.observed_degree.push_back(deg);
  }
  for (auto& pt : extra) {
    auto ex = assemble_expansion(m, orbit_sum(group, pt.first, pt.second).numerator, order, {pt.first, pt.second});
    if (ex.c != base.c) throw Error(ErrorCode::DegreeBoundViolated, "exponent changes with the start point");
    for (int p = 0; p < order; ++p) {
      LaurentPoly spec(default_vars(2, "k"));
      for (auto& [e, cf] : out.terms[p].terms())
        spec.add_term({e[0], e[1]}, cf * FieldElem(rational_pow(Rational(pt.first), e[2]) * rational_pow(Rational(pt.second), e[3])));
      if (spec != ex.terms[p])
        throw Error(ErrorCode::DegreeBoundViolated, "held-out start (" + std::to_string(pt.first) + "," + std::to_string(pt.second) + ") disagrees for p=" + std::to_string(p + 1));
    }
  }
  return out;
}

}  // namespace qwalk
