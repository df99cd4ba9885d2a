#include <cmath>

#include "doctest.h"
#include "qwalk/cli.hpp"
#include "qwalk/errors.hpp"
#include "qwalk/expansion.hpp"
#include "qwalk/group.hpp"
#include "qwalk/oracle.hpp"
#include "qwalk/polyharmonic.hpp"
#include "test_support.hpp"

using namespace qwalk;
using namespace qwalk::testing;

namespace {

const std::vector<std::string> STKL = {"s", "t", "k", "l"};
const std::vector<std::string> KL = {"k", "l"};
const std::vector<std::string> KLM = {"k", "l", "m"};
const std::vector<std::string> KLUV = {"k", "l", "u", "v"};

LaurentPoly m4(int a, int b, int c, int d, const FieldElem& coef = FieldElem(1)) {
  return LaurentPoly::monomial(STKL, {a, b, c, d}, coef);
}

Matrix identity2() {
  Matrix q(2, 2);
  q(0, 0) = q(1, 1) = FieldElem(1);
  return q;
}

// a / b when it is one scalar for every term
std::optional<FieldElem> constant_ratio(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.terms().size() != b.terms().size() || b.is_zero()) return std::nullopt;
  std::optional<FieldElem> r;
  for (auto& [e, c] : b.terms()) {
    FieldElem q = a.coefficient(e) / c;
    if (r && *r != q) return std::nullopt;
    r = q;
  }
  return r;
}

bool is_odd_polynomial(const LaurentPoly& p) {
  for (auto& [e, c] : p.terms())
    if ((e[0] + e[1]) % 2 == 0) return false;
  return true;
}

AsymptoticExpansion gb_expansion() {
  static auto e = expand_from_start(corpus_model("gb"), {0, 0}, 3);
  return e;
}

AsymptoticExpansion appA_expansion() {
  static auto e = assemble_expansion(corpus_model("appA"), load_numerator("data/numerators/appA.num", 2), 3, {0, 0});
  return e;
}

AsymptoticExpansion appB_expansion() {
  static auto e = assemble_expansion(corpus_model("appB"), load_numerator("data/numerators/appB.num", 3), 3, {0, 0, 0});
  return e;
}

}  // namespace

TEST_CASE("series of S^n") {
  auto sw = expand_S_power(corpus_model("sw"), {1, 1}, 0);
  CHECK(sw.tail == GradedSeries::constant(STKL, 0, 1));
  CHECK(sw.gamma == FieldElem(4));
  auto gb = expand_S_power(corpus_model("gb"), {1, 1}, 6);
  for (int g = 1; g <= 6; g += 2) CHECK(is_odd_polynomial(gb.tail.component(g)));
  for (int g = 1; g <= 6; ++g) CHECK((gb.tail.component(g).is_zero() || gb.tail.component(g).total_degree() <= 3 * g));
  // grade r of n B is homogeneous of degree r + 2
  for (int g = 1; g <= 6; ++g) {
    auto c = gb.nb.component(g);
    if (!c.is_zero()) CHECK(c.homogeneous_part(g + 2) == c);
  }
}

TEST_CASE("series of numerators") {
  auto sw = orbit_sum(corpus_model("sw"), 0, 0).numerator;
  auto n = expand_numerator(sw, {1, 1}, 4);
  CHECK(n.component(0).is_zero());
  CHECK(n.component(1).is_zero());
  // grade g carries i^g, so i^2 * 4st = (2is)(2it)
  CHECK(n.component(2) == m4(1, 1, 0, 0, 4));
  std::vector<std::string> xy = {"x", "y"};
  auto one = expand_numerator(RatFunc(LaurentPoly::constant(xy, 1)), {1, 1}, 4);
  CHECK(one == GradedSeries::constant(STKL, 4, 1));
  auto gbn = expand_numerator(orbit_sum(corpus_model("gb"), 0, 0).numerator, {1, 1}, 6);
  for (int g = 0; g <= 6; ++g) {
    auto c = gbn.component(g);
    if (!c.is_zero()) CHECK(c.homogeneous_part(g) == c);
  }
  std::vector<std::string> xy2 = {"x", "y"};
  RatFunc pole(LaurentPoly::constant(xy2, 1), LaurentPoly::variable(xy2, 0) - LaurentPoly::constant(xy2, 1));
  CHECK_THROWS_AS(expand_numerator(pole, {1, 1}, 2), Error);
}

TEST_CASE("endpoint monomial series") {
  auto e = expand_endpoint_monomial(2, 3);
  CHECK(e.component(0) == m4(0, 0, 0, 0));
  auto lin = m4(1, 0, 1, 0) + m4(1, 0, 0, 0) + m4(0, 1, 0, 1) + m4(0, 1, 0, 0);
  CHECK(e.component(1) == -lin);
  CHECK(e.component(2) == lin * lin * LaurentPoly::constant(STKL, Rational(1, 2)));
}

TEST_CASE("gaussian moments") {
  auto z = gaussian_moment(identity2(), {0, 0});
  CHECK(z.value == FieldElem(1));
  CHECK(z.pi_twice == 2);
  CHECK(gaussian_moment(identity2(), {1, 1}).value.is_zero());
  CHECK(gaussian_moment(identity2(), {2, 0}).value == FieldElem(Rational(1, 2)));
  CHECK(gaussian_moment(identity2(), {4, 2}).value == FieldElem(Rational(3, 8)));
  Matrix gb(2, 2);
  gb(0, 0) = Rational(1, 2);
  gb(0, 1) = gb(1, 0) = Rational(-1, 4);
  gb(1, 1) = Rational(1, 4);
  auto g = gaussian_moment(gb, {0, 0});
  CHECK(g.value == FieldElem(4));
  CHECK(g.pi_twice == 2);
  // numeric quadrature of s^2 exp(-Q) for the GB form
  double acc = 0, h = 0.02;
  for (double s = -14; s <= 14; s += h)
    for (double t = -14; t <= 14; t += h) acc += s * s * std::exp(-(s * s / 2 - s * t / 2 + t * t / 4)) * h * h;
  auto g2 = gaussian_moment(gb, {2, 0});
  CHECK(acc == doctest::Approx(g2.to_bigfloat().to_double()).epsilon(1e-6));
}

TEST_CASE("Gouyou-Beauchamps expansion") {
  auto e = gb_expansion();
  CHECK(e.gamma == FieldElem(4));
  CHECK(e.c == Rational(4));
  CHECK(e.twists.size() == 2);
  for (int p = 1; p <= 3; ++p) {
    int pi = 0;
    auto expected = fixture("gb_v" + std::to_string(p), KL, &pi);
    CHECK_MESSAGE(e.terms[p - 1] == expected, "v_" << p);
    CHECK(e.pi_twice == pi);
  }
}

TEST_CASE("large step expansion") {
  auto e = appA_expansion();
  CHECK(e.gamma == FieldElem(2) * sqrt_of(3));
  CHECK(e.c == Rational(3));
  CHECK(e.exp_bases == std::vector<FieldElem>{sqrt_of(3).inverse(), sqrt_of(3).inverse()});
  // displays carry sqrt3^(-1-k-l) and sqrt3^(-3-k-l); the engine keeps sqrt3^(-k-l) outside v_p
  const FieldElem expected_ratio[] = {FieldElem(3), FieldElem(3), FieldElem(9)};
  for (int p = 1; p <= 3; ++p) {
    int pi = 0;
    auto fx = fixture("appA_v" + std::to_string(p), KL, &pi);
    auto r = constant_ratio(e.terms[p - 1], fx);
    REQUIRE_MESSAGE(r, "v_" << p);
    CHECK(*r == expected_ratio[p - 1]);
    CHECK(e.pi_twice == pi);
    for (int k = 0; k <= 9; ++k) {
      Point pt = {k, (3 * k + 1) % 7};
      double got = e.term_value(p, pt).to_double();
      double want = (fx.eval({FieldElem(pt[0]), FieldElem(pt[1])}) * expected_ratio[p - 1] *
                     sqrt_of(3).pow(-pt[0] - pt[1]))
                        .to_double() /
                    M_PI;
      CHECK(got == doctest::Approx(want).epsilon(1e-12));
    }
  }
}

TEST_CASE("three dimensional expansion") {
  auto e = appB_expansion();
  CHECK(e.gamma == FieldElem(2) * radical_power(2, Rational(3, 4)));
  CHECK(e.c == Rational(7, 2));
  CHECK(e.twists.size() == 8);
  int pi = 0;
  CHECK(e.terms[0] == fixture("appB_v1", KLM, &pi));
  CHECK(e.pi_twice == pi);
  for (int p = 2; p <= 3; ++p) {
    auto fx = fixture("appB_v" + std::to_string(p), KLM);
    for (int i = 0; i < 10; ++i) {
      Point pt = {i % 4, (2 * i + 1) % 5, (i * i) % 3};
      auto want = fx.eval({FieldElem(pt[0]), FieldElem(pt[1]), FieldElem(pt[2])}).to_double();
      auto got = e.terms[p - 1].eval({FieldElem(pt[0]), FieldElem(pt[1]), FieldElem(pt[2])}).to_double();
      CHECK(got == doctest::Approx(want).epsilon(1e-12));
    }
  }
}

TEST_CASE("c agrees with pi over theta") {
  for (auto name : {"sw", "tandem", "gb", "vsym_ne_se_sw_nw", "double_tandem"}) {
    auto m = corpus_model(name);
    auto e = expand_from_start(m, {0, 0}, 1);
    auto corr = correlation_coefficient(m);
    REQUIRE(corr.pi_over_theta);
    CHECK_MESSAGE(e.c == *corr.pi_over_theta, name);
  }
}

TEST_CASE("start point dependence of the simple walk") {
  auto sw = corpus_model("sw");
  auto a = expand_from_start(sw, {0, 0}, 1);
  auto b = expand_from_start(sw, {1, 1}, 1);
  auto r = constant_ratio(b.terms[0], a.terms[0]);
  REQUIRE(r);
  CHECK(*r == FieldElem(4));
  auto X = LaurentPoly::variable(KL, 0), Y = LaurentPoly::variable(KL, 1), one = LaurentPoly::constant(KL, 1);
  CHECK(constant_ratio(a.terms[0], (X + one) * (Y + one)).has_value());
}

TEST_CASE("reversal exchanges start and end") {
  auto m = corpus_model("tandem");
  auto rev = reverse(m);
  for (Point a : {Point{0, 0}, Point{1, 2}})
    for (Point b : {Point{0, 0}, Point{2, 1}, Point{3, 0}}) {
      auto fwd = expand_from_start(m, a, 1);
      auto back = expand_from_start(rev, b, 1);
      auto x = fwd.terms[0].eval({FieldElem(b[0]), FieldElem(b[1])});
      auto y = back.terms[0].eval({FieldElem(a[0]), FieldElem(a[1])});
      CHECK(x == y);
    }
}

TEST_CASE("vanishing twist sums match vanishing counts") {
  for (auto name : {"sw", "tandem", "gb", "diagonal"}) {
    auto m = corpus_model(name);
    auto e = expand_from_start(m, {0, 0}, 1);
    auto t = count_paths(m, {0, 0}, 16);
    for (int k = 0; k <= 4; ++k)
      for (int l = 0; l <= 4; ++l)
        for (int n = k + l; n <= 16; ++n)
          if (e.twist_sum({k, l}, n) == 0) CHECK_MESSAGE(t.at({k, l}, n).is_zero(), name << " " << k << "," << l << " n=" << n);
  }
}

TEST_CASE("first coefficient is positive") {
  for (auto name : {"sw", "tandem", "gb", "vsym_ne_e_se_s_sw_w_nw"}) {
    auto m = corpus_model(name);
    auto e = expand_from_start(m, {0, 0}, 1);
    for (int k = 0; k <= 10; ++k)
      for (int l = 0; l <= 10; ++l) CHECK(e.terms[0].eval({FieldElem(k), FieldElem(l)}).sign() > 0);
  }
  auto a = appA_expansion();
  for (int k = 0; k <= 10; ++k) CHECK(a.term_value(1, {k, 10 - k}).to_double() > 0);
}

TEST_CASE("starting point interpolation for the simple walk") {
  auto it = interpolate_vp(corpus_model("sw"), 3);
  CHECK(it.c == Rational(2));
  REQUIRE(it.terms.size() == 3);
  for (int p = 1; p <= 3; ++p) {
    auto shifted = translate(it.terms[p - 1], {-1, -1, -1, -1});
    auto expected = fixture("sw_v" + std::to_string(p), KLUV);
    CHECK_MESSAGE(primitive_part(shifted) == expected, "v_" << p);
    CHECK(it.observed_degree[p - 1] == 2 * p);
  }
  CHECK(constant_ratio(translate(it.terms[0], {-1, -1, -1, -1}), fixture("sw_v1", KLUV)).value_or(0) == FieldElem(16));
}

TEST_CASE("expansion errors") {
  CHECK_THROWS_AS(expand_from_start(corpus_model("kreweras"), {0, 0}, 2), Error);
  CHECK_THROWS_AS(expand_from_start(corpus_model("halfplane"), {0, 0}, 2), Error);
}
