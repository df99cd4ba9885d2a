#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "qwalk/cli.hpp"
#include "qwalk/diagnostics.hpp"
#include "qwalk/errors.hpp"
#include "qwalk/expansion.hpp"
#include "qwalk/group.hpp"
#include "qwalk/polyharmonic.hpp"
#include "test_support.hpp"

using namespace qwalk;
using namespace qwalk::testing;

namespace {

const std::vector<std::string> KL = {"k", "l"};
const std::vector<std::string> KLM = {"k", "l", "m"};
const std::vector<std::string> KLUV = {"k", "l", "u", "v"};

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

int failures = 0;
std::set<int> selected;

void criterion(int id, const std::string& title, const std::function<void(Outcome&)>& body) {
  if (!selected.empty() && !selected.count(id)) return;
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail << " [exception: " << e.what() << "]";
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!o.pass) ++failures;
  std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << id << " (" << title << ", " << std::fixed
            << std::setprecision(1) << secs << "s):" << o.detail.str() << std::endl;
}

double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

std::set<std::string> twist_texts(const std::vector<Twist>& tw) {
  std::set<std::string> out;
  for (auto& t : tw) out.insert(t.to_string());
  return out;
}

std::set<std::string> coefficient_values(const Decomposition& d) {
  std::set<std::string> out;
  for (auto& t : d.terms) out.insert(t.coefficient.to_string());
  return out;
}

std::string join(const std::set<std::string>& s) {
  std::string out;
  for (auto& x : s) out += (out.empty() ? "" : ",") + x;
  return "{" + out + "}";
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

bool in_orthant(const Point& x) {
  for (int c : x)
    if (c < 0) return false;
  return true;
}

void gb_golden(Outcome& o) {
  auto e = expand_from_start(corpus_model("gb"), {0, 0}, 3);
  o.require(e.gamma == FieldElem(4), "gamma = 4");
  o.require(twist_texts(e.twists) == std::set<std::string>{"(1,1;1)", "(-1,1;-1)"}, "twists");
  for (int p = 1; p <= 3; ++p) {
    int pi = 0;
    auto fx = fixture("gb_v" + std::to_string(p), KL, &pi);
    o.require(e.terms[p - 1] == fx && e.pi_twice == pi, "v_" + std::to_string(p));
  }
  o.detail << " gamma=" << e.gamma.to_string() << " c=" << e.c.get_str() << " twists=" << join(twist_texts(e.twists))
           << " v_1..v_3 compared termwise";
}

void sw_golden(Outcome& o) {
  auto m = corpus_model("sw");
  auto it = interpolate_vp(m, 3);
  std::vector<LaurentPoly> v;
  for (int p = 1; p <= 3; ++p) {
    v.push_back(primitive_part(translate(it.terms[p - 1], {-1, -1, -1, -1})));
    o.require(v.back() == fixture("sw_v" + std::to_string(p), KLUV), "v_" + std::to_string(p) + " display");
  }
  auto basis = load_basis("data/fixtures/sw_h", {"k", "l"}, 1, 4);
  auto adjoint = load_basis("data/fixtures/sw_h", {"u", "v"}, 1, 4);
  const std::vector<std::set<std::string>> paper = {
      {"1"}, {"4", "2", "15"}, {"192/5", "64/5", "4", "64", "128", "24", "576", "288", "951"}};
  for (int p = 1; p <= 3; ++p) {
    try {
      auto d = decompose(v[p - 1], basis, adjoint, p);
      auto got = coefficient_values(d);
      o.detail << " p=" << p << " coefficients " << join(got);
      o.require(got == paper[p - 1], "p=" + std::to_string(p) + " coefficient set, expected " + join(paper[p - 1]));
    } catch (const Error& e) {
      o.require(false, std::string("p=") + std::to_string(p) + " " + e.what());
    }
  }
}

void appA_golden(Outcome& o) {
  auto m = corpus_model("appA");
  auto e = assemble_expansion(m, load_numerator("data/numerators/appA.num", 2), 3, {0, 0});
  FieldElem s3 = sqrt_of(3);
  o.require(e.gamma == FieldElem(2) * s3, "gamma = 2 sqrt3");
  o.require(e.c == Rational(3), "c = 3");
  double worst = 0;
  for (int p = 1; p <= 3; ++p) {
    int pi = 0;
    auto fx = fixture("appA_v" + std::to_string(p), KL, &pi);
    auto r = constant_ratio(e.terms[p - 1], fx);
    // the displays and the engine differ only by an even power of sqrt3
    bool power_of_three = false;
    int shift = 0;
    if (r && r->is_rational())
      for (int j = -4; j <= 4; ++j)
        if (*r == FieldElem(3).pow(j)) {
          power_of_three = true;
          shift = j;
        }
    o.require(power_of_three && pi == e.pi_twice, "v_" + std::to_string(p) + " up to the sqrt3 prefactor");
    o.detail << " v_" << p << "=display*sqrt3^" << 2 * shift;
    for (int i = 0; i < 10; ++i) {
      Point pt = {i, (3 * i + 1) % 7};
      double got = e.term_value(p, pt).to_double();
      double want = (fx.eval({FieldElem(pt[0]), FieldElem(pt[1])}) * FieldElem(3).pow(shift) * s3.pow(-pt[0] - pt[1]))
                        .to_double() /
                    M_PI;
      worst = std::max(worst, rel_diff(got, want));
    }
  }
  o.require(worst < 1e-12, "10-point numeric agreement");
  o.detail << " max rel diff at 10 points " << std::scientific << std::setprecision(1) << worst << std::fixed;
}

void appB_golden(Outcome& o) {
  auto m = corpus_model("appB");
  auto e = assemble_expansion(m, load_numerator("data/numerators/appB.num", 3), 3, {0, 0, 0});
  o.require(e.gamma == FieldElem(2) * radical_power(2, Rational(3, 4)), "gamma = 2*2^(3/4)");
  o.require(e.c == Rational(7, 2), "c = 7/2");
  o.require(e.twists.size() == 8, "8 twists");
  int pi = 0;
  o.require(e.terms[0] == fixture("appB_v1", KLM, &pi) && pi == e.pi_twice, "v_1 exact");
  double worst = 0;
  for (int p = 2; p <= 3; ++p) {
    auto fx = fixture("appB_v" + std::to_string(p), KLM);
    for (int i = 0; i < 10; ++i) {
      std::vector<FieldElem> pt = {FieldElem(i % 4), FieldElem((2 * i + 1) % 5), FieldElem((i * i) % 3)};
      worst = std::max(worst, rel_diff(e.terms[p - 1].eval(pt).to_double(), fx.eval(pt).to_double()));
    }
  }
  o.require(worst < 1e-12, "v_2, v_3 at 10 points");
  o.detail << " gamma=" << e.gamma.to_string() << " c=" << e.c.get_str() << " twists=" << e.twists.size()
           << " max rel diff " << std::scientific << std::setprecision(1) << worst << std::fixed;
}

void polyharmonic_suite(Outcome& o) {
  long univariate = 0, multivariate = 0;
  for (auto name : {"sw", "gb", "tandem"}) {
    auto m = corpus_model(name);
    auto e = expand_from_start(m, {0, 0}, 3);
    for (int p = 1; p <= 3; ++p) {
      auto f = PolyharmonicFn::from_poly(e.terms[p - 1], e.gamma, 0, p);
      auto r = verify_polyharmonic(m, f, p, {0, 0}, {30, 30});
      univariate += r.checked;
      o.require(r.pass, std::string(name) + " v_" + std::to_string(p) + " on [0,30]^2");
    }
    auto it = interpolate_vp(m, 3);
    std::mt19937 rng(2024);
    std::vector<Point> pts;
    for (int i = 0; i < 500; ++i) pts.push_back({int(rng() % 16), int(rng() % 16), int(rng() % 16), int(rng() % 16)});
    auto fwd = laplacian_stencil(m, it.gamma, 4, 0, false), adj = laplacian_stencil(m, it.gamma, 4, 2, true);
    for (int p = 1; p <= 3; ++p) {
      const auto& poly = it.terms[p - 1];
      std::map<Point, FieldElem> cache;
      Evaluator f = [&](const Point& x) {
        auto hit = cache.find(x);
        if (hit != cache.end()) return hit->second;
        std::vector<FieldElem> at;
        for (int c : x) at.push_back(FieldElem(c));
        return cache.emplace(x, poly.eval(at)).first->second;
      };
      for (int a = 0; a <= p; ++a) {
        std::vector<Stencil> ops(a, fwd);
        ops.insert(ops.end(), p - a, adj);
        auto r = verify_operator_sequence(ops, f, {0, 0, 0, 0}, pts);
        multivariate += r.checked;
        o.require(r.pass, std::string(name) + " multivariate p=" + std::to_string(p) + " a=" + std::to_string(a));
      }
    }
  }
  o.detail << " " << univariate << " window checks, " << multivariate << " multivariate checks on 500-point grids";
}

void oracle_convergence(Outcome& o) {
  const int M = 3;
  std::vector<Point> ends = {{0, 0}, {1, 0}, {2, 1}};
  for (auto name : {"sw", "gb"}) {
    auto m = corpus_model(name);
    auto e = expand_from_start(m, {0, 0}, M);
    auto reps = convergence_diagnostics(e, m, ends, M, 40, 240);
    double target = -(e.c.get_d() + M + 1);
    for (auto& r : reps) {
      double last = r.rows.back().rel_error.to_double();
      std::string tag = std::string(name) + " end (" + std::to_string(r.end[0]) + "," + std::to_string(r.end[1]) + ")";
      o.require(last < 1e-2, tag + " rel error");
      o.require(r.rel_error_decreasing_top_half, tag + " monotone");
      o.require(std::abs(r.remainder_slope - target) <= 0.3, tag + " slope");
      o.detail << " " << tag << ": rel " << std::scientific << std::setprecision(1) << last << std::fixed
               << std::setprecision(2) << " slope " << r.remainder_slope << "/" << target << ";";
    }
  }
}

void certificate_suite(Outcome& o) {
  int passed = 0;
  for (auto& name : orbit_summable_corpus()) {
    auto m = corpus_model(name);
    for (const Model& model : {m, reverse(m)}) {
      bool ok = certify_orbit_summable(model, 0, 0, 8).pass;
      o.require(ok, name + (&model == &m ? "" : " reversed"));
      passed += ok;
    }
  }
  auto gb = corpus_model("gb");
  auto n = orbit_sum(gb, 0, 0).numerator;
  LaurentPoly flipped(n.num().vars());
  bool first = true;
  for (auto& [e, c] : n.num().terms()) {
    flipped.add_term(e, first ? -c : c);
    first = false;
  }
  auto control = certify_numerator(gb, RatFunc(flipped, n.den()), {0, 0}, 8);
  o.require(!control.pass, "corrupted numerator control must fail");
  o.detail << " " << passed << "/38 certificates at depth 8; corrupted control "
           << (control.pass ? "passed" : "failed at n=" + std::to_string(control.failure->n));
}

void periodicity_suite(Outcome& o) {
  auto zetas = [](const Model& m) {
    std::multiset<std::string> z;
    for (auto& t : associated_saddles(m)) z.insert(t.zeta.to_string());
    return z;
  };
  auto sw = corpus_model("sw"), tandem = corpus_model("tandem"), diag = corpus_model("diagonal");
  auto zs = zetas(sw), zt = zetas(tandem), zd = zetas(diag);
  o.require(periodicity(sw) == 2 && zs == std::multiset<std::string>{"1", "-1"}, "SW");
  std::multiset<std::string> cube;
  for (int j = 0; j < 3; ++j) cube.insert(RootOfUnity(j, 3).to_string());
  o.require(periodicity(tandem) == 3 && zt == cube, "Tandem");
  o.require(periodicity(diag) == 2 && zd.size() == 4, "Diagonal");
  auto show = [](const std::multiset<std::string>& s) {
    std::string out;
    for (auto& x : s) out += (out.empty() ? "" : ",") + x;
    return "{" + out + "}";
  };
  o.detail << " SW m=" << periodicity(sw) << " zeta " << show(zs) << "; Tandem m=" << periodicity(tandem) << " zeta "
           << show(zt) << "; Diagonal m=" << periodicity(diag) << " with " << zd.size() << " saddles " << show(zd);
}

void scaling_limit(Outcome& o) {
  auto it = interpolate_vp(corpus_model("sw"), 3);
  auto v3 = primitive_part(translate(it.terms[2], {-1, -1, -1, -1}));
  auto lim = primitive_part(leading_homogeneous(v3));
  auto limit = fixture("sw_v3_limit", KLUV), f3 = fixture("sw_f3", KLUV);
  o.require(lim == limit, "limit display");
  auto diff = f3 - lim;
  std::set<Exponent> where;
  for (auto& [e, c] : diff.terms()) where.insert(e);
  o.require(where == std::set<Exponent>{{3, 1, 3, 1}, {1, 3, 1, 3}}, "difference only in k^2u^2 and l^2v^2");
  o.require(f3.coefficient({3, 1, 3, 1}) == FieldElem(22) && lim.coefficient({3, 1, 3, 1}) == FieldElem(10),
            "22 vs 10");
  o.detail << " k^2u^2: f3 " << f3.coefficient({3, 1, 3, 1}).to_string() << " vs limit "
           << lim.coefficient({3, 1, 3, 1}).to_string() << "; l^2v^2: f3 " << f3.coefficient({1, 3, 1, 3}).to_string()
           << " vs limit " << lim.coefficient({1, 3, 1, 3}).to_string() << "; " << diff.terms().size()
           << " differing monomials";
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) selected.insert(std::stoi(argv[i]));
  criterion(1, "Gouyou-Beauchamps golden", gb_golden);
  criterion(2, "simple walk starting-point golden", sw_golden);
  criterion(3, "large-step golden in Q(sqrt3)", appA_golden);
  criterion(4, "three-dimensional golden in Q(2^(1/4))", appB_golden);
  criterion(5, "polyharmonicity suite", polyharmonic_suite);
  criterion(6, "oracle convergence", oracle_convergence);
  criterion(7, "certificate suite", certificate_suite);
  criterion(8, "periodicity and twists", periodicity_suite);
  criterion(9, "scaling limit", scaling_limit);
  int ran = selected.empty() ? 9 : int(selected.size());
  std::cout << (ran - failures) << "/" << ran << " criteria pass" << std::endl;
  return failures == 0 ? 0 : 1;
}
