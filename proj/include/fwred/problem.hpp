#pragma once

#include "fwred/engine.hpp"
#include "fwred/expression.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fwred {

/// Settings of the optional `numeric` block.
struct NumericSettings {
  long double m1 = 1;
  long double m2 = 2;
  std::vector<long double> c_values{8, 16, 32, 64, 128};
  std::uint64_t seed = 0;
  int aux_dim = 2;
};

struct ProblemFile {
  TablePtr table;
  Expression hamiltonian;
  ReductionConfig config;
  std::optional<NumericSettings> numeric;
};

/// Parses a problem file:
///
///   symbol OE odd even order 1;
///   commute OE EO;
///   config trunc = -4;           # sequence, trunc, cleanup, masses_equal,
///                                # cleanup_first_order_only, max_rounds
///   numeric c = 8, 16, 32, 64;   # m1, m2, c, seed, aux_dim
///   H = b1*m1*c^2 + OE;
///
/// Declarations must precede H. Throws ParseError with line and column.
ProblemFile parse_problem(std::string_view text);

/// Parses the expression grammar alone over an existing table.
Expression parse_expression(std::string_view text, const TablePtr& table);

}  // namespace fwred
