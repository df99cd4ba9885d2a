#include "qwalk/polyio.hpp"

#include <fstream>
#include <numeric>
#include <sstream>

#include "qwalk/errors.hpp"

namespace qwalk {

BigFloat ScaledCoefficient::to_bigfloat(long prec) const {
  BigFloat v = value.to_bigfloat(prec);
  if (pi_twice == 0) return v;
  BigFloat pi = BigFloat::pi(prec);
  BigFloat half(0.5, prec);
  BigFloat e(static_cast<double>(pi_twice), prec);
  return v * pi.pow(e * half);
}

std::string ScaledCoefficient::to_string() const {
  auto parts = format_coefficient(value, pi_twice);
  std::string out;
  for (auto& p : parts) {
    if (!out.empty()) out += "+";
    out += p;
  }
  return out;
}

FieldElem radical_power(const Rational& radicand, const Rational& exponent) {
  if (radicand <= 0) throw Error(ErrorCode::ParseError, "radicand must be positive");
  auto fn = factor_small(radicand.get_num());
  auto fd = factor_small(radicand.get_den());
  long g = 0;
  for (auto& [p, e] : fn) g = std::gcd(g, e);
  for (auto& [p, e] : fd) g = std::gcd(g, e);
  if (g == 0) return FieldElem(1);
  Rational base(1);
  for (auto& [p, e] : fn) base *= rational_pow(Rational(p), e / g);
  for (auto& [p, e] : fd) base /= rational_pow(Rational(p), e / g);
  Rational e = exponent * g;
  if (base < 1) {
    base = 1 / base;
    e = -e;
  }
  e.canonicalize();
  if (!e.get_num().fits_slong_p() || !e.get_den().fits_slong_p())
    throw Error(ErrorCode::ParseError, "radical exponent too large");
  long a = e.get_num().get_si(), b = e.get_den().get_si();
  long r = ((a % b) + b) % b;
  long whole = (a - r) / b;
  FieldElem out(rational_pow(base, whole));
  if (r == 0) return out;
  return out * FieldElem::theta_power(make_field(base, static_cast<int>(b)), r);
}

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_factors(const std::string& token) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char ch : token) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == '*' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

Ball parse_ball(const std::string& inner) {
  auto comma = inner.find(',');
  if (comma == std::string::npos) throw Error(ErrorCode::ParseError, "bad ball literal");
  std::string m = inner.substr(0, comma), r = inner.substr(comma + 1);
  BigFloat mid(kDefaultPrecision), rad(kDefaultPrecision);
  if (mpfr_set_str(mid.get(), m.c_str(), 0, MPFR_RNDN) != 0 || mpfr_set_str(rad.get(), r.c_str(), 0, MPFR_RNDU) != 0)
    throw Error(ErrorCode::ParseError, "bad ball literal");
  return Ball(mid, rad);
}

std::string hex(const BigFloat& x) {
  char* s = nullptr;
  mpfr_asprintf(&s, "%Ra", x.get());
  std::string out(s);
  mpfr_free_str(s);
  return out;
}

}  // namespace

ParsedCoefficient parse_coefficient(const std::string& raw) {
  std::string token = trim(raw);
  if (token.empty()) throw Error(ErrorCode::ParseError, "empty coefficient");
  ParsedCoefficient out;
  auto factors = split_factors(token);
  bool first = true;
  out.value = FieldElem(1);
  for (auto& f : factors) {
    if (f.rfind("rad(", 0) == 0 && f.back() == ')') {
      std::string inner = f.substr(4, f.size() - 5);
      auto comma = inner.find(',');
      if (comma == std::string::npos) throw Error(ErrorCode::ParseError, "bad rad factor '" + f + "'");
      out.value *= radical_power(parse_rational(inner.substr(0, comma)), parse_rational(inner.substr(comma + 1)));
    } else if (f.rfind("pi^", 0) == 0) {
      std::string e = f.substr(3);
      if (!e.empty() && e.front() == '(' && e.back() == ')') e = e.substr(1, e.size() - 2);
      Rational r = parse_rational(e) * 2;
      if (r.get_den() != 1) throw Error(ErrorCode::ParseError, "pi power must be a half-integer");
      out.pi_twice += static_cast<int>(r.get_num().get_si());
    } else if (f == "pi") {
      out.pi_twice += 2;
    } else if (f.rfind("ball(", 0) == 0 && f.back() == ')') {
      out.value *= FieldElem(parse_ball(f.substr(5, f.size() - 6)));
    } else if (first) {
      out.value *= FieldElem(parse_rational(f));
    } else {
      throw Error(ErrorCode::ParseError, "unknown coefficient factor '" + f + "'");
    }
    first = false;
  }
  return out;
}

std::vector<std::string> format_coefficient(const FieldElem& value, int pi_twice) {
  std::string pi_suffix;
  if (pi_twice != 0) {
    if (pi_twice % 2 == 0)
      pi_suffix = "*pi^(" + std::to_string(pi_twice / 2) + ")";
    else
      pi_suffix = "*pi^(" + std::to_string(pi_twice) + "/2)";
  }
  std::vector<std::string> out;
  switch (value.kind()) {
    case FieldElem::Kind::Rational: out.push_back(to_string(value.rational()) + pi_suffix); break;
    case FieldElem::Kind::Radical: {
      auto c = value.coords();
      FieldPtr f = value.field();
      for (size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0) continue;
        std::string s = to_string(c[i]);
        if (i > 0) {
          long q = f->degree();
          long g = std::gcd(static_cast<long>(i), q);
          s += "*rad(" + to_string(f->radicand()) + "," + std::to_string(static_cast<long>(i) / g) + "/" +
               std::to_string(q / g) + ")";
        }
        out.push_back(s + pi_suffix);
      }
      break;
    }
    default: {
      const Ball& b = value.ball();
      out.push_back("ball(" + hex(b.mid()) + "," + hex(b.rad()) + ")" + pi_suffix);
    }
  }
  return out;
}

std::vector<std::string> serialize_poly(const LaurentPoly& p, int pi_twice) {
  std::vector<std::string> lines;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    std::ostringstream ex;
    for (int e : it->first) ex << " " << e;
    for (auto& c : format_coefficient(it->second, pi_twice)) lines.push_back(c + ex.str());
  }
  return lines;
}

LaurentPoly parse_poly(const std::vector<std::string>& lines, const std::vector<std::string>& vars, int* pi_twice) {
  LaurentPoly p(vars);
  bool have_pi = false;
  int pi = 0;
  for (auto& raw : lines) {
    std::string line = trim(raw);
    auto hash = line.find('#');
    if (hash != std::string::npos) line = trim(line.substr(0, hash));
    if (line.empty()) continue;
    std::istringstream is(line);
    std::string coef;
    is >> coef;
    Exponent e;
    std::string tok;
    while (is >> tok) {
      try {
        size_t used = 0;
        int v = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        e.push_back(v);
      } catch (const std::exception&) {
        throw Error(ErrorCode::ParseError, "bad exponent '" + tok + "' in line '" + line + "'");
      }
    }
    if (e.size() != vars.size())
      throw Error(ErrorCode::ParseError, "expected " + std::to_string(vars.size()) + " exponents in '" + line + "'");
    auto c = parse_coefficient(coef);
    if (have_pi && c.pi_twice != pi) throw Error(ErrorCode::ParseError, "mixed pi powers in one polynomial");
    have_pi = true;
    pi = c.pi_twice;
    p.add_term(e, c.value);
  }
  if (pi_twice) *pi_twice = pi;
  return p;
}

LaurentPoly load_poly(const std::string& path, const std::vector<std::string>& vars, int* pi_twice) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorCode::ParseError, "cannot open polynomial file " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(f, line)) lines.push_back(line);
  return parse_poly(lines, vars, pi_twice);
}

std::vector<std::string> default_vars(size_t d, const std::string& family) {
  static const char* xyz[] = {"x", "y", "z", "w"};
  static const char* kl[] = {"k", "l", "m", "j"};
  static const char* uv[] = {"u", "v", "r", "q"};
  static const char* st[] = {"s", "t", "r", "w"};
  std::vector<std::string> out;
  for (size_t i = 0; i < d; ++i) {
    const char* name = nullptr;
    if (i < 4) {
      if (family == "x") name = xyz[i];
      if (family == "k") name = kl[i];
      if (family == "u") name = uv[i];
      if (family == "s") name = st[i];
    }
    out.push_back(name ? std::string(name) : family + std::to_string(i + 1));
  }
  return out;
}

}  // namespace qwalk
