#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace slmc {

/// Exact rational number, always normalized (lowest terms, positive
/// denominator).
using Rational = mpq_class;

/// "P" or "P/Q".
std::string to_string(const Rational& q);

/// Accepts an optional sign followed by "P" or "P/Q". Returns nullopt on
/// anything else, including a zero denominator.
std::optional<Rational> parse_rational(std::string_view text);

Rational factorial(unsigned k);

}  // namespace slmc
