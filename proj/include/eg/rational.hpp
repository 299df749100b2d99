#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <string>
#include <string_view>

namespace eg {

/// Exact arbitrary-precision rational; every quantity in this library is one.
using Rat = boost::multiprecision::mpq_rational;
using Int = boost::multiprecision::mpz_int;

/// Parses "p/q", integers, and decimal literals ("0.61", ".9", "2e-3") to an
/// exact rational. Throws ErrorCode::syntax on anything else.
Rat rat_from_string(std::string_view text);

/// Canonical exact rendering: "p/q", or just "p" when the denominator is 1.
std::string rat_to_string(const Rat& value);

/// Fixed-point decimal with `digits` places, rounding half away from zero.
std::string rat_to_decimal(const Rat& value, int digits = 4);

/// "p/q (~0.xxxx)" combined form used by text reports.
std::string rat_display(const Rat& value, int digits = 4);

} // namespace eg
