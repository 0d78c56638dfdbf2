#pragma once

#include "fwred/expression.hpp"

#include <string>
#include <vector>

namespace fwred {

enum class Format { text, latex, json };

/// Parses "text", "latex" or "json"; throws UsageError otherwise.
Format format_from_string(const std::string& s);

/// Monomials in display order: effective order descending, then beta
/// exponents, then word.
std::vector<const Expression::Terms::value_type*> display_order(const Expression& a);

/// Deterministic rendering. Text output parses back to the same expression,
/// e.g. "(1/2) * b1 * m1^-1 * c^-2 * OE*OE"; zero renders as "0".
std::string render(const Expression& a, Format format);

}  // namespace fwred
