#pragma once

// Exact integer and rational arithmetic used throughout the library.
// Backed by GMP; every verdict-bearing computation goes through these types.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace odo {

using Integer = mpz_class;
using Rational = mpq_class;

Integer pow_int(unsigned long base, unsigned long exponent);
inline Integer pow2(unsigned long exponent) { return pow_int(2, exponent); }

// 1 / base^exponent as an exact rational.
Rational inv_pow(unsigned long base, unsigned long exponent);

Rational pow(const Rational& x, unsigned long exponent);
Rational abs(const Rational& x);

// Floor division and non-negative remainder for a positive modulus.
Integer floor_div(const Integer& a, const Integer& m);
Integer mod(const Integer& a, const Integer& m);

// "num/den", always with an explicit denominator.
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

// Accepts "a", "-a", "a/b". Throws std::invalid_argument on malformed input
// or a zero denominator.
Rational parse_rational(std::string_view text);
Integer parse_integer(std::string_view text);

// Number of binary digits of |z| (0 for z == 0).
std::size_t bit_length(const Integer& z);

}  // namespace odo
