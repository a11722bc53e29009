#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <string_view>

namespace tccc {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

/// Parses "p", "-p" or "p/q" into a canonical rational. Throws InputError.
Rational parse_rational(std::string_view text);

/// "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& value);

Integer floor(const Rational& value);
Integer ceil(const Rational& value);
bool is_integer(const Rational& value);

inline Integer numerator_of(const Rational& value) { return boost::multiprecision::numerator(value); }
inline Integer denominator_of(const Rational& value) { return boost::multiprecision::denominator(value); }

} // namespace tccc
