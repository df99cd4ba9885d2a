#include <cmath>

#include "doctest.h"
#include "qwalk/diagnostics.hpp"
#include "qwalk/errors.hpp"
#include "qwalk/expansion.hpp"
#include "qwalk/oracle.hpp"
#include "test_support.hpp"

using namespace qwalk;
using namespace qwalk::testing;

namespace {

// brute force over all step words, for cross-checking the dynamic programme
Rational enumerate(const Model& m, Point at, const Point& end, int n) {
  for (int c : at)
    if (c < 0) return 0;
  if (n == 0) return at == end ? Rational(1) : Rational(0);
  Rational total = 0;
  for (auto& s : m.steps()) {
    Point next = at;
    for (size_t j = 0; j < next.size(); ++j) next[j] += s.offset[j];
    total += s.weight.rational() * enumerate(m, next, end, n - 1);
  }
  return total;
}

}  // namespace

TEST_CASE("small counts") {
  auto sw = corpus_model("sw");
  auto t = count_paths(sw, {0, 0}, 12);
  CHECK(t.at({0, 0}, 2) == FieldElem(2));
  for (int n = 1; n <= 12; n += 2) CHECK(t.at({0, 0}, n).is_zero());
  CHECK(t.at({0, 0}, 0) == FieldElem(1));
  CHECK(t.at({1, 0}, 0).is_zero());
  CHECK(t.at({-1, 0}, 1).is_zero());
  auto tandem = count_paths(corpus_model("tandem"), {0, 0}, 6);
  CHECK(tandem.at({0, 0}, 3) == FieldElem(1));
  CHECK(tandem.at({0, 0}, 6) == FieldElem(5));
}

TEST_CASE("dynamic programme agrees with enumeration") {
  auto w = parse_model("dim 2\nstep 1 0 2\nstep -1 0 1/3\nstep 0 1 1\nstep -1 -1 5\nstep 1 1 1\n");
  for (auto name : {"gb", "tandem", "kreweras"}) {
    auto m = corpus_model(name);
    auto t = count_paths(m, {1, 0}, 7);
    for (int n = 0; n <= 7; ++n)
      for (int k = 0; k <= 3; ++k)
        for (int l = 0; l <= 3; ++l) CHECK_MESSAGE(t.at({k, l}, n).rational() == enumerate(m, {1, 0}, {k, l}, n), name);
  }
  auto t = count_paths(w, {0, 1}, 6);
  auto fast = count_at_endpoints(w, {0, 1}, {{0, 0}, {2, 1}}, 6);
  for (int n = 0; n <= 6; ++n) {
    CHECK(t.at({0, 0}, n).rational() == enumerate(w, {0, 1}, {0, 0}, n));
    CHECK(fast[0][n] == enumerate(w, {0, 1}, {0, 0}, n));
    CHECK(fast[1][n] == enumerate(w, {0, 1}, {2, 1}, n));
  }
}

TEST_CASE("three dimensional counts") {
  auto m = parse_model("dim 3\nstep 1 0 0 1\nstep 0 1 0 1\nstep 0 0 1 1\nstep -1 -1 -1 1\n");
  auto t = count_paths(m, {0, 0, 0}, 8);
  for (int n = 0; n <= 8; ++n) CHECK(t.at({1, 0, 2}, n).rational() == enumerate(m, {0, 0, 0}, {1, 0, 2}, n));
}

TEST_CASE("end and start recurrences") {
  for (auto name : {"sw", "gb"}) {
    auto m = corpus_model(name);
    std::map<Point, CountTable> tables;
    for (int u = 0; u <= 4; ++u)
      for (int v = 0; v <= 4; ++v) tables.emplace(Point{u, v}, count_paths(m, {u, v}, 8));
    auto rc = dual_recurrence_check(m, tables, 100);
    CHECK_MESSAGE(rc.pass, rc.witness);
    CHECK(rc.checked >= 100);
  }
}

TEST_CASE("a perturbed table fails the recurrence check") {
  auto m = corpus_model("sw");
  std::map<Point, CountTable> tables;
  auto t = count_paths(m, {0, 0}, 4);
  t.set({1, 1}, 2, t.at({1, 1}, 2) + FieldElem(1));
  tables.emplace(Point{0, 0}, t);
  auto rc = dual_recurrence_check(m, tables, 2000);
  CHECK_FALSE(rc.pass);
  CHECK_FALSE(rc.witness.empty());
}

TEST_CASE("path reversal") {
  for (auto name : {"tandem", "gb", "kreweras", "vsym_ne_se_sw_nw"}) {
    auto m = corpus_model(name);
    auto forward = count_paths(m, {2, 1}, 10);
    for (Point b : {Point{0, 0}, Point{3, 1}, Point{1, 4}}) {
      auto back = count_at_endpoints(reverse(m), b, {{2, 1}}, 10)[0];
      for (int n = 0; n <= 10; ++n) CHECK_MESSAGE(forward.at(b, n).rational() == back[n], name);
    }
  }
}

TEST_CASE("reweighted counts pick up the multipliers of the displacement") {
  // weights w_s * a^s give q'(A,B;n) = a^(B-A) q(A,B;n)
  auto m = corpus_model("gb");
  auto r = reweight(m, {FieldElem(2), FieldElem(Rational(1, 3))});
  Point a = {1, 2};
  auto q = count_paths(m, a, 8);
  auto q2 = count_paths(r, a, 8);
  for (int n = 0; n <= 8; ++n)
    for (int k = 0; k <= 5; ++k)
      for (int l = 0; l <= 5; ++l) {
        auto f = FieldElem(2).pow(k - a[0]) * FieldElem(Rational(1, 3)).pow(l - a[1]);
        CHECK(q2.at({k, l}, n) == f * q.at({k, l}, n));
      }
  auto app = cramer_transform(corpus_model("appA"));
  auto qa = count_paths(corpus_model("appA"), {0, 0}, 6);
  auto qh = count_paths(app.model, {0, 0}, 6);
  for (int n = 0; n <= 6; ++n)
    for (int k = 0; k <= 3; ++k)
      CHECK(qh.at({k, 1}, n) == app.multipliers[0].pow(k) * app.multipliers[1] * qa.at({k, 1}, n));
}

TEST_CASE("first order prediction ratio tends to one") {
  auto sw = corpus_model("sw");
  auto e = expand_from_start(sw, {0, 0}, 1);
  auto rep = convergence_diagnostics(e, sw, {{0, 0}}, 1, 20, 200, 20)[0];
  REQUIRE(rep.rows.size() == 10);
  for (size_t i = 1; i < rep.rows.size(); ++i) CHECK(rep.rows[i].rel_error < rep.rows[i - 1].rel_error);
  CHECK(rep.rows.back().rel_error.to_double() < 0.05);
}

TEST_CASE("third order accuracy") {
  auto sw = corpus_model("sw");
  auto e = expand_from_start(sw, {0, 0}, 3);
  auto rep = convergence_diagnostics(e, sw, {{0, 0}}, 3, 100, 100)[0];
  REQUIRE(rep.rows.size() == 1);
  CHECK(rep.rows[0].rel_error.to_double() < 1e-2);
  auto gb = corpus_model("gb");
  auto eg = expand_from_start(gb, {0, 0}, 3);
  auto rg = convergence_diagnostics(eg, gb, {{0, 0}}, 3, 24, 240, 8)[0];
  CHECK(rg.normalized_slope == doctest::Approx(-1.0).epsilon(0.3));
  CHECK(std::abs(rg.remainder_slope + 8.0) < 0.3);
}

TEST_CASE("off-period lengths are skipped") {
  auto sw = corpus_model("sw");
  auto e = expand_from_start(sw, {0, 0}, 2);
  auto rep = convergence_diagnostics(e, sw, {{1, 0}}, 2, 41, 60)[0];
  for (auto& row : rep.rows) CHECK(row.n % 2 == 1);
  CHECK(convergence_csv(rep).rfind("n,exact,predicted,rel_error,normalized_remainder\n", 0) == 0);
}

TEST_CASE("low precision is reported") {
  auto sw = corpus_model("sw");
  auto e = expand_from_start(sw, {0, 0}, 3);
  // counts that agree with the prediction to double precision leave no measurable remainder
  std::vector<std::vector<Rational>> counts(1, std::vector<Rational>(101));
  counts[0][100] = Rational(e.predict({0, 0}, 100, 3).to_double());
  try {
    convergence_diagnostics(e, counts, {{0, 0}}, 3, 100, 100, 1, 64);
    FAIL("expected PrecisionInsufficient");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::PrecisionInsufficient);
  }
  CHECK_THROWS_AS(convergence_diagnostics(e, counts, {{0, 0}}, 3, 100, 100, 1, 20), Error);
}

TEST_CASE("least squares slope") {
  std::vector<double> x = {1, 2, 3, 4}, y = {3, 5, 7, 9};
  CHECK(least_squares_slope(x, y) == doctest::Approx(2.0));
}
