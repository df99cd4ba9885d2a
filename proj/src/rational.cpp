#include "qwalk/rational.hpp"

#include "qwalk/errors.hpp"

#include <cctype>

namespace qwalk {

Rational parse_rational(const std::string& text) {
  std::string t;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
  if (t.empty()) throw Error(ErrorCode::ParseError, "empty rational");
  auto slash = t.find('/');
  auto valid_int = [](const std::string& s) {
    if (s.empty()) return false;
    size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
  };
  auto strip_plus = [](std::string s) {
    if (!s.empty() && s[0] == '+') s.erase(0, 1);
    return s;
  };
  if (slash == std::string::npos) {
    if (!valid_int(t)) throw Error(ErrorCode::ParseError, "bad rational '" + text + "'");
    return Rational(BigInt(strip_plus(t)));
  }
  std::string a = t.substr(0, slash), b = t.substr(slash + 1);
  if (!valid_int(a) || !valid_int(b) || b[0] == '-')
    throw Error(ErrorCode::ParseError, "bad rational '" + text + "'");
  BigInt den(strip_plus(b));
  if (den == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + text + "'");
  Rational q(BigInt(strip_plus(a)), den);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }
std::string to_string(const BigInt& z) { return z.get_str(); }

Rational rational_pow(const Rational& base, long exponent) {
  if (exponent < 0) {
    if (base == 0) throw Error(ErrorCode::DivisionByZero, "0 to a negative power");
    return 1 / rational_pow(base, -exponent);
  }
  BigInt num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(exponent));
  Rational r(num, den);
  r.canonicalize();
  return r;
}

BigInt binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

BigInt factorial(long n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

std::vector<std::pair<BigInt, long>> factor_small(BigInt n) {
  std::vector<std::pair<BigInt, long>> out;
  if (n < 0) n = -n;
  for (BigInt p = 2; p * p <= n; ++p) {
    long e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e > 0) out.emplace_back(p, e);
    if (p > 1000000) break;
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::pair<Rational, BigInt> extract_square(const Rational& r) {
  if (r <= 0) throw Error(ErrorCode::InvalidArgument, "extract_square needs a positive rational");
  // sqrt(a/b) = sqrt(a*b)/b
  BigInt ab = r.get_num() * r.get_den();
  BigInt square = 1, rest = 1;
  for (auto& [p, e] : factor_small(ab)) {
    for (long i = 0; i < e / 2; ++i) square *= p;
    if (e % 2) rest *= p;
  }
  Rational s(square, r.get_den());
  s.canonicalize();
  return {s, rest};
}

}  // namespace qwalk
