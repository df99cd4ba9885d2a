#include <set>

#include "doctest.h"
#include "qwalk/errors.hpp"
#include "qwalk/group.hpp"
#include "qwalk/saddle.hpp"
#include "test_support.hpp"

using namespace qwalk;
using namespace qwalk::testing;

namespace {

std::vector<FieldElem> ones(int d) { return std::vector<FieldElem>(d, FieldElem(1)); }

Matrix mat2(Rational a, Rational b, Rational c) {
  Matrix q(2, 2);
  q(0, 0) = a;
  q(0, 1) = q(1, 0) = b;
  q(1, 1) = c;
  return q;
}

bool same_matrix(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

// S(alpha x) as a polynomial with cyclotomic coefficients is zeta S(x): check termwise
bool twist_scales_steps(const Model& m, const Twist& t) {
  for (auto& s : m.steps()) {
    RootOfUnity r(0, 1);
    for (size_t j = 0; j < s.offset.size(); ++j) r = r * t.alphas[j].pow(s.offset[j]);
    if (!(r == t.zeta)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("dominant saddle points") {
  auto gb = find_dominant(corpus_model("gb"));
  CHECK(gb.coords == ones(2));
  CHECK(gb.gamma == FieldElem(4));
  CHECK(gb.exact);
  auto a = find_dominant(corpus_model("appA"));
  CHECK(a.coords == std::vector<FieldElem>{sqrt_of(3), sqrt_of(3)});
  CHECK(a.gamma == FieldElem(2) * sqrt_of(3));
  auto b = find_dominant(corpus_model("appB"));
  CHECK(b.coords ==
        std::vector<FieldElem>{radical_power(2, Rational(3, 4)), radical_power(2, Rational(1, 2)), FieldElem(1)});
  CHECK(b.gamma == FieldElem(2) * radical_power(2, Rational(3, 4)));
  CHECK_THROWS_AS(find_dominant(corpus_model("halfplane")), Error);
}

TEST_CASE("zero drift puts the saddle at the all-ones point") {
  for (auto& name : orbit_summable_corpus()) {
    auto m = corpus_model(name);
    bool zero = true;
    for (auto& d : drift(m)) zero = zero && d.is_zero();
    auto dom = find_dominant(m);
    CHECK_MESSAGE(zero == (dom.coords == ones(2)), name);
    CHECK(dom.gamma.sign() > 0);
  }
}

TEST_CASE("saddles outside the radical class are certified balls") {
  auto m = parse_model("dim 2\nstep 1 0 2\nstep 2 0 1\nstep -1 0 1\nstep 0 1 1\nstep 0 -1 1\n");
  auto d = find_dominant(m);
  CHECK_FALSE(d.exact);
  // critical point of 2x + x^2 + 1/x: 2x^3 + 2x^2 - 1 = 0
  double x = d.coords[0].to_double();
  CHECK(std::abs(2 * x * x * x + 2 * x * x - 1) < 1e-12);
  CHECK(d.coords[1].to_double() == doctest::Approx(1.0));
}

TEST_CASE("associated saddles") {
  auto gb = associated_saddles(corpus_model("gb"));
  REQUIRE(gb.size() == 2);
  std::set<std::string> text;
  for (auto& t : gb) text.insert(t.to_string());
  CHECK(text == std::set<std::string>{"(1,1;1)", "(-1,1;-1)"});
  auto sw = associated_saddles(corpus_model("sw"));
  text.clear();
  for (auto& t : sw) text.insert(t.to_string());
  CHECK(text == std::set<std::string>{"(1,1;1)", "(-1,-1;-1)"});
  CHECK(associated_saddles(corpus_model("diagonal")).size() == 4);
  CHECK(associated_saddles(corpus_model("appB")).size() == 8);
}

TEST_CASE("twists scale the step polynomial") {
  auto names = orbit_summable_corpus();
  for (auto extra : {"diagonal", "kreweras", "appA", "appB", "sw"}) names.push_back(extra);
  for (auto& name : names) {
    auto m = corpus_model(name);
    auto twists = associated_saddles(m);
    long count = static_cast<long>(twists.size());
    bool has_trivial = false;
    for (auto& t : twists) {
      CHECK_MESSAGE(twist_scales_steps(m, t), name << " " << t.to_string());
      for (auto& a : t.alphas) CHECK(count % a.order() == 0);
      has_trivial = has_trivial || t.is_trivial();
    }
    CHECK(has_trivial);
  }
}

TEST_CASE("zetas of irreducible periodic models are the roots of unity of the period") {
  for (auto name : {"sw", "tandem", "gb", "kreweras"}) {
    auto m = corpus_model(name);
    long per = periodicity(m);
    std::set<RootOfUnity> zetas;
    auto twists = associated_saddles(m);
    for (auto& t : twists) zetas.insert(t.zeta);
    CHECK_MESSAGE(static_cast<long>(twists.size()) == per, name);
    std::set<RootOfUnity> expected;
    for (long j = 0; j < per; ++j) expected.insert(RootOfUnity(j, per));
    CHECK_MESSAGE(zetas == expected, name);
  }
  // the diagonal walk is 2-periodic but reducible: four saddles, zetas +-1 twice each
  auto diag = associated_saddles(corpus_model("diagonal"));
  std::multiset<RootOfUnity> z;
  for (auto& t : diag) z.insert(t.zeta);
  CHECK(z.count(RootOfUnity(0, 1)) == 2);
  CHECK(z.count(RootOfUnity(1, 2)) == 2);
}

TEST_CASE("local quadratic forms") {
  CHECK(same_matrix(local_qform(corpus_model("sw"), ones(2)), mat2(Rational(1, 4), 0, Rational(1, 4))));
  auto gb = local_qform(corpus_model("gb"), ones(2));
  CHECK(same_matrix(gb, mat2(Rational(1, 2), Rational(-1, 4), Rational(1, 4))));
  CHECK(determinant(gb) == FieldElem(Rational(1, 16)));
  // diagonal entries of a zero-drift model with no correlation
  auto m = parse_model("dim 2\nstep 1 0 2\nstep -1 0 2\nstep 0 1 1\nstep 0 -1 1\n");
  CHECK(same_matrix(local_qform(m, ones(2)), mat2(Rational(4, 12), 0, Rational(2, 12))));
  for (auto& name : orbit_summable_corpus()) {
    auto s = saddle_system(corpus_model(name));
    CHECK_MESSAGE(is_positive_definite(s.qform), name);
    CHECK(s.qform(0, 1) == s.qform(1, 0));
  }
  CHECK_FALSE(is_positive_definite(mat2(1, 2, 1)));
}

TEST_CASE("local form away from a minimizer is rejected") {
  // (2,1) is not a critical point of the simple walk
  CHECK_THROWS_AS(local_qform(corpus_model("sw"), {FieldElem(2), FieldElem(1)}), Error);
}

TEST_CASE("numerator regularity") {
  auto gb = corpus_model("gb");
  auto n = orbit_sum(gb, 0, 0).numerator;
  auto r = numerator_regular_at(ones(2), n);
  CHECK(r.regular);
  CHECK(r.value.is_zero());
  auto a = numerator_regular_at({sqrt_of(3), sqrt_of(3)}, load_numerator("data/numerators/appA.num", 2));
  CHECK(a.regular);
  CHECK(a.value.is_zero());
  std::vector<std::string> xy = {"x", "y"};
  RatFunc pole(LaurentPoly::constant(xy, 1), LaurentPoly::variable(xy, 0) - LaurentPoly::constant(xy, 1));
  CHECK_FALSE(numerator_regular_at(ones(2), pole).regular);
}
