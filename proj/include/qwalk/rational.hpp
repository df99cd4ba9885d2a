#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace qwalk {

using BigInt = mpz_class;
using Rational = mpq_class;

Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);
std::string to_string(const BigInt& z);

Rational rational_pow(const Rational& base, long exponent);
BigInt binomial(long n, long k);
BigInt factorial(long n);

// r = s^2 * m with s rational and m a squarefree positive integer.
std::pair<Rational, BigInt> extract_square(const Rational& r);

// Trial-division factorization, used for small saddle radicands only.
std::vector<std::pair<BigInt, long>> factor_small(BigInt n);

}  // namespace qwalk
