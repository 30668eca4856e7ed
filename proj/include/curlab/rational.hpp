#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace curlab {

/// Exact rational number. Every value handled by the library is one of these;
/// probabilities, prices, profits and utilities never touch floating point.
using Rat = mpq_class;
using Int = mpz_class;

/// Canonical rational from an integer pair. Throws ParameterError on a zero
/// denominator.
Rat rat(long numerator, long denominator = 1);

/// Parses "num/den" or a bare integer "num". Throws ParseError.
Rat rat_from_string(std::string_view text);

/// Serializes as "num/den", always including the denominator ("1/1", "0/1").
std::string rat_to_string(const Rat& value);

/// Fixed-precision decimal rendering, rounded half away from zero.
std::string rat_to_decimal(const Rat& value, int digits = 6);

/// Exact base^exponent for a nonnegative base and rational exponent.
/// Throws ParameterError when the result is not a rational number
/// (e.g. (1/2)^(1/2)).
Rat rat_pow(const Rat& base, const Rat& exponent);

/// Sign of b1^e1 - b2^e2 for bases in [0,1] and positive rational exponents.
/// Exact even when the powers themselves are irrational.
int compare_pow(const Rat& base1, const Rat& exp1, const Rat& base2, const Rat& exp2);

/// True when the value lies in [0,1].
bool is_probability(const Rat& value);

}  // namespace curlab
