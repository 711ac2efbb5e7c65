#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace multifol {

using Rational = mpq_class;
using Vector = std::vector<Rational>;

/// Parses "p/q", "k" or "-k" into a canonical rational. Throws
/// Error(SchemaError) on malformed input or zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical text form: "k" for integers, "p/q" otherwise.
std::string format_rational(const Rational& value);

}  // namespace multifol
