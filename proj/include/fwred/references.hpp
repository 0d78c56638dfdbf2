#pragma once

#include "fwred/expression.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fwred {

enum class ReferenceId { eq3_oe, eq3_eo, eq3_oo, eq4, eq6, eq7, eq8, eq9, eq26, eq29a, eq29b };

std::string to_string(ReferenceId id);
std::optional<ReferenceId> reference_from_string(std::string_view name);
const std::vector<ReferenceId>& all_references();

/// Table a reference is defined over: the one-body table for eq7, the
/// commuting two-body table for eq6/eq8/eq9, the general two-body table otherwise.
TablePtr reference_table(ReferenceId id);

/// Expanded canonical form of a built-in reference over `table`.
/// Throws ReferenceError if the table lacks a required symbol or relation.
Expression reference_expression(ReferenceId id, const TablePtr& table);

/// One labelled line of a multi-line reference ('a'..'j' for eq4 and eq6,
/// 'a'..'b' for eq9).
Expression reference_line(ReferenceId id, char line, const TablePtr& table);

struct CoefficientMismatch {
  MonomialKey key;
  Coefficient candidate;
  Coefficient reference;
};

/// Monomial-level classification of candidate - reference.
struct DiffReport {
  Expression missing;  // reference monomials absent from the candidate
  Expression extra;    // candidate-only monomials plus the excess on mismatched ones
  std::vector<CoefficientMismatch> mismatches;

  [[nodiscard]] bool empty() const { return missing.is_zero() && extra.is_zero() && mismatches.empty(); }
  /// candidate - reference rebuilt from the report.
  [[nodiscard]] Expression difference() const;
};

DiffReport diff_report(const Expression& candidate, const Expression& reference);

}  // namespace fwred
