#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace ila {

using BigInt = mpz_class;
using Rational = mpq_class;

// Accepts decimal, optional sign, optional 0x prefix.
BigInt parse_bigint(std::string_view text);

// Accepts "p", "p/q" or a finite decimal like "0.25".
Rational parse_rational(std::string_view text);

std::string to_string(const BigInt& v);
std::string to_string(const Rational& v);

// log2 of a non-negative rational; -infinity for zero. Works far beyond the
// range of double (q can have hundreds of bits).
double log2_of(const Rational& v);
double log2_of(const BigInt& v);

BigInt floor_of(const Rational& v);
BigInt ceil_of(const Rational& v);
// Nearest integer, ties away from zero.
BigInt round_of(const Rational& v);

inline Rational rat(long v) { return Rational(v); }
inline Rational rat(const BigInt& v) { return Rational(v); }

std::size_t bit_length(const BigInt& v);

}  // namespace ila
