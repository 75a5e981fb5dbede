#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace perbase {

using BigInt = mpz_class;
using BigRational = mpq_class;

// Parses "p", "-p", "p/q" (whitespace tolerated); throws ParseError.
BigRational parse_rational(std::string_view text);
BigInt parse_integer(std::string_view text);

std::string to_string(const BigInt& v);
// "p/q", or "p" when the denominator is 1.
std::string to_string(const BigRational& v);

BigInt floor_div(const BigInt& a, const BigInt& b);
BigInt floor(const BigRational& v);
BigInt ceil(const BigRational& v);

BigInt pow(const BigInt& base, unsigned long exp);
BigRational pow(const BigRational& base, long exp);

inline int sign(const BigInt& v) { return sgn(v); }
inline int sign(const BigRational& v) { return sgn(v); }

// Hash suitable for unordered containers of exact values.
std::size_t hash_value(const BigInt& v) noexcept;

// Largest integer r with r*r <= v (v >= 0).
BigInt isqrt(const BigInt& v);

// Rational lower/upper bounds on sqrt(v) with error <= 2^-bits.
BigRational sqrt_lower(const BigRational& v, unsigned bits);
BigRational sqrt_upper(const BigRational& v, unsigned bits);

// Round outward to the dyadic grid 2^-bits.
BigRational round_down(const BigRational& v, unsigned bits);
BigRational round_up(const BigRational& v, unsigned bits);

}  // namespace perbase
