#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace kcross {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(const BigInt& num, const BigInt& den) {
    return Rational(num, den);
}

inline BigInt numerator_of(const Rational& q) { return boost::multiprecision::numerator(q); }
inline BigInt denominator_of(const Rational& q) { return boost::multiprecision::denominator(q); }

/// Binomial coefficient C(n, 2) without overflow for any 64-bit n.
inline BigInt choose2(std::uint64_t n) {
    if (n < 2) return 0;
    return BigInt(n) * BigInt(n - 1) / 2;
}

BigInt choose(std::uint64_t n, std::uint64_t k);

/// Parses "p/q", an integer, or a finite decimal ("0.75") into an exact rational.
/// Throws std::invalid_argument on malformed text or a zero denominator.
Rational parse_rational(const std::string& text);

/// "p/q" (or "p" when q = 1).
std::string to_fraction_string(const Rational& q);

/// Decimal rendering for reports only; never fed back into a computation.
std::string to_decimal_string(const Rational& q, int digits = 12);

double to_double(const Rational& q);

/// Largest power of two 2^-j (j >= 0) that does not exceed q. Requires q > 0.
Rational dyadic_floor(const Rational& q);

} // namespace kcross
