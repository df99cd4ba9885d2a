#include "qwalk/group.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <optional>
#include <sstream>

#include "qwalk/errors.hpp"
#include "qwalk/polyio.hpp"

namespace qwalk {

namespace {

void require_small_2d(const Model& m) {
  if (m.dimension() != 2) throw Error(ErrorCode::InvalidArgument, "group operations need a two-dimensional model");
  if (!m.small_steps()) throw Error(ErrorCode::NotSmallSteps, "the kernel is not quadratic; supply the numerator explicitly");
}

// coefficient of var^power in p, as a polynomial in the remaining variables
LaurentPoly slice(const LaurentPoly& p, size_t var, int power) {
  LaurentPoly out(p.vars());
  for (auto& [e, c] : p.terms()) {
    if (e[var] != power) continue;
    auto e2 = e;
    e2[var] = 0;
    out.add_term(e2, c);
  }
  return out;
}

using u64 = unsigned long long;
constexpr u64 kPrime = (1ULL << 61) - 1;

u64 mul_mod(u64 a, u64 b) { return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % kPrime); }

u64 pow_mod(u64 a, u64 e) {
  u64 r = 1;
  for (; e; e >>= 1, a = mul_mod(a, a))
    if (e & 1) r = mul_mod(r, a);
  return r;
}

u64 inv_mod(u64 a) { return pow_mod(a, kPrime - 2); }

u64 reduce_int(const BigInt& z) {
  BigInt r;
  BigInt p(std::to_string(kPrime));
  mpz_fdiv_r(r.get_mpz_t(), z.get_mpz_t(), p.get_mpz_t());
  return std::stoull(r.get_str());
}

std::optional<u64> eval_mod(const LaurentPoly& f, u64 x, u64 y) {
  u64 acc = 0;
  for (auto& [e, c] : f.terms()) {
    if (!c.is_rational()) return std::nullopt;
    u64 den = reduce_int(c.rational().get_den());
    if (den == 0) return std::nullopt;
    u64 v = mul_mod(reduce_int(c.rational().get_num()), inv_mod(den));
    v = mul_mod(v, e[0] >= 0 ? pow_mod(x, e[0]) : pow_mod(inv_mod(x), -e[0]));
    v = mul_mod(v, e[1] >= 0 ? pow_mod(y, e[1]) : pow_mod(inv_mod(y), -e[1]));
    acc = (acc + v) % kPrime;
  }
  return acc;
}

std::optional<u64> eval_mod(const RatFunc& f, u64 x, u64 y) {
  auto n = eval_mod(f.num(), x, y), d = eval_mod(f.den(), x, y);
  if (!n || !d || *d == 0) return std::nullopt;
  return mul_mod(*n, inv_mod(*d));
}

// Order of the group from the orbit of a generic point modulo a prime;
// nullopt when the test is inconclusive.
std::optional<int> generic_order(const GroupElement& phi, const GroupElement& psi, int max_order) {
  for (u64 seed : {1234567891ULL, 99999999977ULL, 314159265358979ULL}) {
    u64 x0 = seed % kPrime, y0 = (seed * 7919 + 17) % kPrime;
    u64 x = x0, y = y0;
    bool ok = true;
    for (int k = 1; 2 * k <= max_order; ++k) {
      for (const GroupElement* g : {&phi, &psi}) {
        auto nx = eval_mod(g->images[0], x, y), ny = eval_mod(g->images[1], x, y);
        if (!nx || !ny || *nx == 0 || *ny == 0) {
          ok = false;
          break;
        }
        x = *nx;
        y = *ny;
      }
      if (!ok) break;
      if (x == x0 && y == y0) return 2 * k;
    }
    if (ok) return 0;
  }
  return std::nullopt;
}

}  // namespace

KernelDecomposition kernel(const Model& m) {
  require_small_2d(m);
  std::vector<std::string> vars = {"x", "y", "t"};
  LaurentPoly k(vars);
  k.add_term({1, 1, 0}, FieldElem(1));
  for (auto& s : m.steps()) k.add_term({s.offset[0] + 1, s.offset[1] + 1, 1}, -s.weight);
  KernelDecomposition kd;
  kd.kernel = k;
  kd.a = slice(k, 1, 2);
  kd.b = slice(k, 1, 1);
  kd.c = slice(k, 1, 0);
  kd.at = slice(k, 0, 2);
  kd.bt = slice(k, 0, 1);
  kd.ct = slice(k, 0, 0);
  return kd;
}

std::pair<GroupElement, GroupElement> generators(const Model& m) {
  require_small_2d(m);
  if (!check_nondegenerate(m)) throw Error(ErrorCode::DegenerateModel, "group needs a nondegenerate model");
  auto S = step_polynomial(m);
  auto vars = S.vars();
  auto X = RatFunc(LaurentPoly::variable(vars, 0));
  auto Y = RatFunc(LaurentPoly::variable(vars, 1));
  // c(x)/a(x) equals [y^-1]S / [y^1]S since the common factor -tx cancels
  RatFunc phi_y = RatFunc(slice(S, 1, -1), slice(S, 1, 1)) / Y;
  RatFunc psi_x = RatFunc(slice(S, 0, -1), slice(S, 0, 1)) / X;
  GroupElement phi{{X, phi_y}, "Phi", -1};
  GroupElement psi{{psi_x, Y}, "Psi", -1};
  return {phi, psi};
}

std::vector<GroupElement> group_closure(const Model& m, int max_order) {
  auto [phi, psi] = generators(m);
  if (auto order = generic_order(phi, psi, max_order); order && *order == 0)
    throw Error(ErrorCode::GroupInfinite, "no element of order up to " + std::to_string(max_order / 2) + " closes the orbit");
  auto vars = step_polynomial(m).vars();
  GroupElement id{{RatFunc(LaurentPoly::variable(vars, 0)), RatFunc(LaurentPoly::variable(vars, 1))}, "", 1};
  std::vector<GroupElement> elems = {id};
  std::deque<size_t> queue = {0};
  while (!queue.empty()) {
    size_t i = queue.front();
    queue.pop_front();
    for (const GroupElement* gen : {&phi, &psi}) {
      GroupElement g;
      g.images = {elems[i].images[0].compose(gen->images), elems[i].images[1].compose(gen->images)};
      g.word = gen->word + (elems[i].word.empty() ? "" : "*" + elems[i].word);
      g.sign = -elems[i].sign;
      bool seen = std::any_of(elems.begin(), elems.end(),
                              [&](const GroupElement& e) { return e.images[0] == g.images[0] && e.images[1] == g.images[1]; });
      if (seen) continue;
      elems.push_back(g);
      if (static_cast<int>(elems.size()) > max_order)
        throw Error(ErrorCode::GroupInfinite, "group closure exceeds " + std::to_string(max_order) + " elements");
      queue.push_back(elems.size() - 1);
    }
  }
  return elems;
}

OrbitSum orbit_sum(const std::vector<GroupElement>& group, int u, int v) {
  if (u < 0 || v < 0) throw Error(ErrorCode::InvalidArgument, "start point outside the quadrant");
  if (group.empty()) throw Error(ErrorCode::InvalidArgument, "empty group");
  RatFunc total(LaurentPoly(group[0].images[0].vars()));
  for (auto& g : group) {
    RatFunc term = g.images[0].pow(u + 1) * g.images[1].pow(v + 1);
    total = g.sign > 0 ? total + term : total - term;
  }
  return {total, {u + 1, v + 1}};
}

OrbitSum orbit_sum(const Model& m, int u, int v) { return orbit_sum(group_closure(m), u, v); }

LaurentPoly laurent_expand(const RatFunc& f, const Exponent& lower) {
  const auto& num = f.num();
  const auto& den = f.den();
  const size_t d = num.nvars();
  if (num.is_zero()) return num;
  // leading term of the denominator in the lexicographic order where each
  // variable's degree counts downward (expansion around infinity)
  Exponent lead;
  FieldElem lead_c;
  for (auto& [e, c] : den.terms()) {
    if (lead.empty() || std::lexicographical_compare(lead.begin(), lead.end(), e.begin(), e.end())) {
      lead = e;
      lead_c = c;
    }
  }
  // 1/den = lead^-1 * sum_j R^j, R = 1 - den/lead
  LaurentPoly r(den.vars());
  for (auto& [e, c] : den.terms()) {
    if (e == lead) continue;
    Exponent de(d);
    for (size_t j = 0; j < d; ++j) de[j] = e[j] - lead[j];
    r.add_term(de, -c / lead_c);
  }
  Exponent num_max(d);
  for (size_t j = 0; j < d; ++j) num_max[j] = num.max_degree(j) - lead[j];
  // how much later coordinates can still grow per unit drop of an earlier one
  std::vector<Rational> gain(d, Rational(0));
  for (auto& [e, c] : r.terms()) {
    for (size_t j = 0; j < d; ++j) {
      if (e[j] == 0) continue;
      for (size_t k = j + 1; k < d; ++k)
        if (e[k] > 0) {
          Rational g(e[k], -e[j]);
          g.canonicalize();
          gain[k] = std::max(gain[k], g);
        }
      break;
    }
  }
  auto prunable = [&](const Exponent& e) {
    Rational room0(e[0] + num_max[0] - lower[0]);
    if (room0 < 0) return true;
    if (d > 1 && Rational(e[1] + num_max[1] - lower[1]) + gain[1] * room0 < 0) return true;
    return false;
  };
  LaurentPoly series = LaurentPoly::constant(den.vars(), FieldElem(1));
  LaurentPoly power = series;
  for (int it = 0; it < 100000; ++it) {
    LaurentPoly next = power * r;
    LaurentPoly kept(den.vars());
    for (auto& [e, c] : next.terms())
      if (!prunable(e)) kept.add_term(e, c);
    if (kept.is_zero()) break;
    series += kept;
    power = kept;
    if (it == 99999) throw Error(ErrorCode::InvalidArgument, "Laurent expansion does not terminate");
  }
  Exponent neg(d);
  for (size_t j = 0; j < d; ++j) neg[j] = -lead[j];
  LaurentPoly full = num * series.shifted(neg) * LaurentPoly::constant(den.vars(), lead_c.inverse());
  LaurentPoly out(num.vars());
  for (auto& [e, c] : full.terms()) {
    bool keep = true;
    for (size_t j = 0; j < d; ++j) keep = keep && e[j] >= lower[j];
    if (keep) out.add_term(e, c);
  }
  return out;
}

Certificate certify_numerator(const Model& m, const RatFunc& numerator, const Point& start, int depth) {
  const int d = m.dimension();
  auto table = count_paths(m, start, depth);
  auto S = step_polynomial(m).with_vars(numerator.vars());
  Certificate cert;
  Exponent lower(d, 1);
  LaurentPoly sn = LaurentPoly::constant(numerator.vars(), FieldElem(1));
  for (int n = 0; n <= depth; ++n) {
    if (n > 0) sn *= S;
    LaurentPoly coeffs = laurent_expand(RatFunc(sn * numerator.num(), numerator.den()), lower);
    // every endpoint with coordinate sum <= depth
    Point b(d, 0);
    while (true) {
      Exponent e(d);
      for (int j = 0; j < d; ++j) e[j] = b[j] + 1;
      FieldElem got = coeffs.coefficient(e);
      FieldElem expected = table.at(b, n);
      ++cert.checked;
      if (got != expected) {
        cert.pass = false;
        cert.failure = CertificateFailure{b, n, expected, got};
        return cert;
      }
      int j = d - 1;
      while (j >= 0) {
        ++b[j];
        int sum = 0;
        for (int v : b) sum += v;
        if (sum <= depth) break;
        b[j] = 0;
        --j;
      }
      if (j < 0) break;
    }
  }
  return cert;
}

Certificate certify_orbit_summable(const Model& m, int u, int v, int depth) {
  auto os = orbit_sum(m, u, v);
  return certify_numerator(m, os.numerator, {u, v}, depth);
}

}  // namespace qwalk

namespace qwalk {

RatFunc parse_numerator(const std::string& text, int dimension) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> num, den;
  std::vector<std::string>* cur = nullptr;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos) continue;
    line = line.substr(a);
    if (line.rfind("num:", 0) == 0) {
      cur = &num;
      continue;
    }
    if (line.rfind("den:", 0) == 0) {
      cur = &den;
      continue;
    }
    if (!cur) throw Error(ErrorCode::ParseError, "term line before a num: or den: header");
    cur->push_back(line);
  }
  auto vars = default_vars(dimension);
  LaurentPoly n = parse_poly(num, vars);
  LaurentPoly d = den.empty() ? LaurentPoly::constant(vars, FieldElem(1)) : parse_poly(den, vars);
  if (d.is_zero()) throw Error(ErrorCode::DivisionByZero, "zero denominator in numerator file");
  return RatFunc(n, d);
}

std::string serialize_numerator(const RatFunc& n) {
  std::string out = "num:\n";
  for (auto& l : serialize_poly(n.num())) out += l + "\n";
  out += "den:\n";
  for (auto& l : serialize_poly(n.den())) out += l + "\n";
  return out;
}

RatFunc load_numerator(const std::string& path, int dimension) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorCode::ParseError, "cannot open numerator file " + path);
  std::stringstream buf;
  buf << f.rdbuf();
  return parse_numerator(buf.str(), dimension);
}

}  // namespace qwalk
