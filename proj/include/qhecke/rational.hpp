#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace qhecke {

// Exact rational in lowest terms with positive denominator. Used both for
// coefficients and for exponents of q.
using Rational = mpq_class;

Rational make_rational(long num, long den = 1);

bool is_integer(const Rational& r);

// Requires an integral value that fits in int64.
std::int64_t to_int64(const Rational& r);
std::int64_t to_int64(const mpz_class& z);

mpz_class floor_of(const Rational& r);
mpz_class ceil_of(const Rational& r);

// w(w-1)/2, valid for any rational w.
Rational binom2(const Rational& w);
inline std::int64_t binom2(std::int64_t n) { return n * (n - 1) / 2; }

// c^n for integer n; c must be nonzero when n < 0.
Rational ipow(const Rational& c, std::int64_t n);

std::int64_t lcm64(std::int64_t a, std::int64_t b);
std::int64_t den64(const Rational& r);

// "p" or "p/r".
std::string to_string(const Rational& r);

// Accepts "p", "-p", "p/r"; throws Error(ParseError) otherwise.
Rational parse_rational(std::string_view text);

}  // namespace qhecke
