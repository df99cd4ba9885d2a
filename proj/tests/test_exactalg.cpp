#include <random>

#include "doctest.h"
#include "qwalk/cyclotomic.hpp"
#include "qwalk/errors.hpp"
#include "qwalk/linalg.hpp"
#include "qwalk/polyio.hpp"
#include "qwalk/ratfunc.hpp"
#include "qwalk/series.hpp"

using namespace qwalk;

namespace {

const std::vector<std::string> XY = {"x", "y"};

LaurentPoly P(const std::vector<std::string>& lines) { return parse_poly(lines, XY); }

LaurentPoly random_poly(std::mt19937& rng, int terms, int lo, int hi) {
  std::uniform_int_distribution<int> ex(lo, hi), co(-5, 5);
  LaurentPoly p(XY);
  for (int i = 0; i < terms; ++i) p.add_term({ex(rng), ex(rng)}, FieldElem(Rational(co(rng), 1 + std::abs(co(rng)))));
  return p;
}

FieldElem sqrt3() { return radical_power(3, Rational(1, 2)); }

}  // namespace

TEST_CASE("rational parsing and formatting") {
  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK(parse_rational("-4") == -4);
  CHECK(to_string(Rational(-7, 3)) == "-7/3");
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("abc"), Error);
}

TEST_CASE("laurent arithmetic examples") {
  LaurentPoly x = LaurentPoly::variable({"x"}, 0);
  LaurentPoly xinv = LaurentPoly::monomial({"x"}, {-1});
  LaurentPoly prod = (x + xinv) * (x - xinv);
  LaurentPoly expect = LaurentPoly::monomial({"x"}, {2}) - LaurentPoly::monomial({"x"}, {-2});
  CHECK(prod == expect);
  CHECK(prod + LaurentPoly({"x"}) == prod);
  LaurentPoly X = LaurentPoly::variable(XY, 0), Y = LaurentPoly::variable(XY, 1);
  CHECK((X + Y) * (X - Y) == X * X - Y * Y);
}

TEST_CASE("laurent ring axioms on random instances") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    auto f = random_poly(rng, 5, -2, 3), g = random_poly(rng, 4, -3, 2), h = random_poly(rng, 3, -1, 2);
    CHECK((f + g) * h == f * h + g * h);
    CHECK((f * g) * h == f * (g * h));
    CHECK(f * g == g * f);
    CHECK(f - f == LaurentPoly(XY));
    if (!g.is_zero()) {
      auto q = divide_exact(f * g, g);
      REQUIRE(q.has_value());
      CHECK(*q == f);
    }
  }
}

TEST_CASE("no zero coefficients are stored") {
  LaurentPoly p(XY);
  p.add_term({1, 0}, FieldElem(2));
  p.add_term({1, 0}, FieldElem(-2));
  CHECK(p.is_zero());
  CHECK(p.size() == 0);
}

TEST_CASE("laurent evaluation") {
  LaurentPoly gb = P({"1 -1 1", "1 1 -1", "1 -1 0", "1 1 0"});
  CHECK(gb.eval({FieldElem(1), FieldElem(1)}) == FieldElem(4));
  CHECK(gb.eval({FieldElem(-1), FieldElem(1)}) == FieldElem(-4));
  LaurentPoly appA = P({"1 1 0", "1 -1 0", "1 0 -1", "1 -2 1"});
  FieldElem r3 = sqrt3();
  CHECK(appA.eval({r3, r3}) == FieldElem(2) * r3);
  CHECK_THROWS_AS(appA.eval({FieldElem(0), FieldElem(1)}), Error);
  try {
    appA.eval({FieldElem(0), FieldElem(1)});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PoleAtPoint);
  }
}

TEST_CASE("radical fields") {
  FieldElem r3 = sqrt3();
  CHECK(r3 * r3 == FieldElem(3));
  CHECK((r3 + FieldElem(1)) * (r3 - FieldElem(1)) == FieldElem(2));
  CHECK((FieldElem(1) / (r3 + FieldElem(2))) * (r3 + FieldElem(2)) == FieldElem(1));
  FieldElem t = radical_power(2, Rational(3, 4));
  FieldElem s = radical_power(2, Rational(1, 2));
  CHECK(t * t == FieldElem(2) * s);
  CHECK(t.pow(4) == FieldElem(8));
  CHECK(r3.sign() == 1);
  CHECK((r3 - FieldElem(Rational(173, 100))).sign() == 1);
  CHECK((r3 - FieldElem(Rational(174, 100))).sign() == -1);
  CHECK(radical_power(4, Rational(1, 2)) == FieldElem(2));
  CHECK_THROWS_AS(r3 + radical_power(2, Rational(1, 2)), Error);
  CHECK(FieldElem(Rational(1, 12)).sqrt() * FieldElem(6) == r3);
  CHECK(FieldElem(12).sqrt() == FieldElem(2) * r3);
  CHECK((FieldElem(2) * s).sqrt() == t);
}

TEST_CASE("ball radii cover propagated input radii") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> d(1, 1000);
  auto inside = [](const Ball& ball, const Rational& exact) {
    BigFloat diff = (ball.mid() - BigFloat(exact, 400)).abs();
    return !(ball.rad() < diff);
  };
  for (int i = 0; i < 50; ++i) {
    Rational qa(d(rng), d(rng)), qb(d(rng), d(rng));
    qa.canonicalize();
    qb.canonicalize();
    Ball a(qa, 128), b(qb, 128);
    Ball wa(a.mid(), BigFloat(1e-20, 128)), wb(b.mid(), BigFloat(3e-20, 128));
    CHECK(!((wa + wb).rad() < wa.rad() + wb.rad()));
    CHECK(!((wa - wb).rad() < wa.rad() + wb.rad()));
    CHECK(!((wa * wb).rad() < wa.mid().abs() * wb.rad() + wb.mid().abs() * wa.rad()));
    CHECK(!((wa / wb).rad() < wa.rad() / wb.mid().abs()));
    CHECK(inside(a + b, qa + qb));
    CHECK(inside(a * b, qa * qb));
    CHECK(inside(a / b, qa / qb));
    CHECK(inside((a * b - b) / a, (qa * qb - qb) / qa));
  }
  Ball root2 = Ball::root(2, 2, 200);
  CHECK((root2 * root2 - Ball(Rational(2), 200)).contains_zero());
}

TEST_CASE("roots of unity") {
  RootOfUnity z(1, 3);
  CHECK(z.pow(3).is_one());
  CHECK(z * z == RootOfUnity(2, 3));
  CHECK(RootOfUnity(3, 6) == RootOfUnity(1, 2));
  CHECK(RootOfUnity(-1, 4) == RootOfUnity(3, 4));
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> b(1, 30);
  for (int i = 0; i < 100; ++i) {
    long bb = b(rng), a = b(rng) % bb;
    RootOfUnity w(a, bb);
    CHECK(w.pow(w.order()).is_one());
    CHECK(w * w.inverse() == RootOfUnity());
    RootOfUnity v(b(rng) % 7, 7);
    Rational diff = (w * v).exponent() - w.exponent() - v.exponent();
    CHECK(diff.get_den() == 1);
  }
}

TEST_CASE("cyclotomic arithmetic") {
  Cyclotomic one = Cyclotomic::from_rational(3, 1);
  Cyclotomic w = Cyclotomic::from_root(3, RootOfUnity(1, 3));
  CHECK((one + w + w * w).is_zero());
  CHECK(w * w * w == one);
  Cyclotomic i = Cyclotomic::from_root(4, RootOfUnity(1, 4));
  CHECK(i * i == Cyclotomic::from_rational(4, -1));
}

TEST_CASE("rational function composition") {
  RatFunc x(LaurentPoly::variable(XY, 0)), y(LaurentPoly::variable(XY, 1));
  RatFunc xy(LaurentPoly::monomial(XY, {1, 1}));
  // GB: c(x)/a(x) = x^2 / 1 with the t-factor removed
  RatFunc phi_y(LaurentPoly::monomial(XY, {2, 0}), LaurentPoly::monomial(XY, {0, 1}));
  RatFunc img = xy.compose({x, phi_y});
  CHECK(img == RatFunc(LaurentPoly::monomial(XY, {3, -1})));
  CHECK(xy.compose({x, y}) == xy);
  RatFunc phi2 = phi_y.compose({x, phi_y});
  CHECK(phi2 == y);
  RatFunc f(P({"1 1 0", "1 0 1"}), P({"1 0 0", "-1 1 1"}));
  CHECK(f.compose({x, y}) == f);
  CHECK(f * (RatFunc(P({"1 0 0"})) / f) == RatFunc(P({"1 0 0"})));
  CHECK_THROWS_AS(RatFunc(P({"1 1 0"}), LaurentPoly(XY)), Error);
  RatFunc g(P({"1 1 0", "-1 0 1"}));
  CHECK_THROWS_AS(RatFunc(P({"1 0 0"})).compose({x, y}) / g.compose({y, y}), Error);
}

TEST_CASE("rational function field axioms") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    auto a = random_poly(rng, 3, -1, 2), b = random_poly(rng, 2, 0, 2), c = random_poly(rng, 3, -1, 2),
         d = random_poly(rng, 2, 0, 2);
    if (b.is_zero() || d.is_zero() || c.is_zero()) continue;
    RatFunc f(a, b), g(c, d);
    CHECK((f + g) - g == f);
    CHECK((f * g) / g == f);
    CHECK(f * (g + f) == f * g + f * f);
  }
}

TEST_CASE("graded series") {
  std::vector<std::string> st = {"s", "t"};
  auto s = LaurentPoly::variable(st, 0), t = LaurentPoly::variable(st, 1);
  // S_SW(e^{i s/sqrt n}, e^{i t/sqrt n}) / 4 in the phase convention
  GradedSeries f(st, 6);
  f.set_component(0, LaurentPoly::constant(st, 1));
  for (int g = 1; g <= 6; ++g) {
    LaurentPoly m = (s.pow(g) + t.pow(g)) * FieldElem(Rational(1, 2) / Rational(factorial(g)));
    if (g % 2 == 0) f.set_component(g, m);
  }
  GradedSeries l = f.log();
  CHECK(l.component(2) == (s * s + t * t) * FieldElem(Rational(1, 4)));
  CHECK(l.exp() == f);
  GradedSeries z = l.scaled(FieldElem(3));
  CHECK(z.exp().log() == z);
  CHECK((f * f.reciprocal()) == GradedSeries::constant(st, 6, FieldElem(1)));
  GradedSeries bad = GradedSeries::constant(st, 4, FieldElem(2));
  CHECK_THROWS_AS(bad.log(), Error);
  CHECK_THROWS_AS(bad.exp(), Error);
}

TEST_CASE("random series log/exp round trip") {
  std::vector<std::string> st = {"s"};
  std::mt19937 rng(9);
  std::uniform_int_distribution<int> co(-4, 4);
  for (int trial = 0; trial < 10; ++trial) {
    GradedSeries g(st, 7);
    for (int k = 1; k <= 7; ++k) g.set_component(k, LaurentPoly::monomial(st, {k}, FieldElem(Rational(co(rng), 3))));
    CHECK(g.exp().log() == g);
    GradedSeries one = GradedSeries::constant(st, 7, FieldElem(1)) + g;
    CHECK(one.log().exp() == one);
  }
}

TEST_CASE("polynomial serialization round trip") {
  LaurentPoly p(XY);
  p.add_term({2, -1}, FieldElem(Rational(-3, 7)));
  p.add_term({0, 0}, sqrt3() + FieldElem(1));
  auto lines = serialize_poly(p, -1);
  int pi = 0;
  CHECK(parse_poly(lines, XY, &pi) == p);
  CHECK(pi == -1);
  auto c = parse_coefficient("64*pi^(-1)");
  CHECK(c.value == FieldElem(64));
  CHECK(c.pi_twice == -2);
  auto r = parse_coefficient("2*rad(2,3/4)*pi^(-3/2)");
  CHECK(r.value == FieldElem(2) * radical_power(2, Rational(3, 4)));
  CHECK(r.pi_twice == -3);
  CHECK_THROWS_AS(parse_poly({"1 2"}, XY), Error);
}

TEST_CASE("linear algebra") {
  Matrix m(2, 3);
  m(0, 0) = 1;
  m(0, 1) = 2;
  m(0, 2) = 3;
  m(1, 0) = 2;
  m(1, 1) = 4;
  m(1, 2) = 7;
  auto ns = nullspace(m);
  REQUIRE(ns.size() == 1);
  CHECK(ns[0][0] == FieldElem(-2));
  CHECK(ns[0][1] == FieldElem(1));
  CHECK(ns[0][2] == FieldElem(0));
  auto sol = solve_linear(m, {FieldElem(1), FieldElem(3)});
  REQUIRE(sol.has_value());
  Matrix sq(2, 2);
  sq(0, 0) = Rational(1, 2);
  sq(0, 1) = Rational(-1, 4);
  sq(1, 0) = Rational(-1, 4);
  sq(1, 1) = Rational(1, 4);
  CHECK(determinant(sq) == FieldElem(Rational(1, 16)));
  auto snf = smith_normal_form({{2, 0}, {0, 2}, {2, 2}});
  CHECK(snf.diagonal == std::vector<long>{2, 2});
  auto snf2 = smith_normal_form({{2, 1, -1}, {-2, -1, 1}});
  CHECK(snf2.diagonal == std::vector<long>{1, 0});
}
