#pragma once

#include "fwred/engine.hpp"
#include "fwred/expression.hpp"

#include <json.hpp>

namespace fwred {

using Json = nlohmann::ordered_json;

/// Polynomial as [{coef, d1, d2}, ...] in graded-lex order; coef is a decimal string.
Json to_json(const MassPoly& p);
MassPoly mass_poly_from_json(const Json& j);

/// Expression as an array of {beta, word, c_exp, coeff:{real, imag}} terms.
Json to_json(const Expression& a);
/// Throws UsageError on malformed input or names missing from `table`.
Expression expression_from_json(const Json& j, const TablePtr& table);

Json to_json(const SymbolTable& t);
SymbolTable symbol_table_from_json(const Json& j);

/// {table, trunc_order, steps:[{round, kind, generator}], hamiltonian}.
Json to_json(const ReductionTrace& trace);
ReductionTrace trace_from_json(const Json& j);

}  // namespace fwred
