// Exact rational numbers for probabilities.
#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace pcplus {

using Rational = mpq_class;

/// Parses "0.95", "1", "3/4" or ".5" into an exact rational. Returns nullopt
/// on malformed input or a zero denominator.
std::optional<Rational> parse_rational(std::string_view text);

/// "171/200"; integers render without a denominator.
std::string to_fraction_string(const Rational& q);

/// Six significant digits, trailing zeros trimmed ("0.855", "0.92289").
std::string to_decimal_string(const Rational& q);

/// Exact decimal expansion when the denominator divides a power of ten,
/// otherwise the fraction. Used by the pretty-printer so values survive a
/// round trip.
std::string to_exact_literal(const Rational& q);

}  // namespace pcplus
