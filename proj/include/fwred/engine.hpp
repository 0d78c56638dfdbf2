#pragma once

#include "fwred/expression.hpp"

#include <string>
#include <vector>

namespace fwred {

/// Which off-diagonal sector a generator removes; `ee` marks the even-even
/// cleanup generator.
enum class Component { oe, eo, oo, ee };

std::string to_string(Component c);
/// Parses "oe", "eo", "oo" or "ee"; throws UsageError otherwise.
Component component_from_string(const std::string& s);
Parity sector_of(Component c);

struct ReductionConfig {
  std::vector<Component> sequence{Component::oe, Component::eo, Component::oo};
  int trunc_order = -4;
  bool cleanup = false;
  bool masses_equal = false;
  /// Cleanup uses H + i[S_ee, H] instead of the full series.
  bool cleanup_first_order_only = true;
  int max_rounds = 16;

  /// Throws UsageError if the sequence is not a permutation of a nonempty
  /// subset of {oe, eo, oo}, or EqualMassError if it asks for oo with equal masses.
  void validate() const;
};

struct TraceStep {
  int round = 0;
  Component kind = Component::oe;
  Expression generator;
};

struct ReductionTrace {
  std::vector<TraceStep> steps;
  Expression hamiltonian;
  int trunc_order = -4;
};

/// Generator removing the current `kind` component of H:
///   oe: -i b1 / (2 m1 c^2) P_oe(H)
///   eo: -i b2 / (2 m2 c^2) P_eo(H)
///   oo: -i (b1 m1 - b2 m2) / (2 (m1^2 - m2^2) c^2) P_oo(H)
Expression build_generator(const Expression& H, Component kind, const ReductionConfig& config);

/// e^{iS} H e^{-iS} = sum_n i^n/n! ad_S^n(H), every partial term truncated at
/// `min_order`. The series stops at the first vanishing term.
Expression conjugate_bch(const Expression& H, const Expression& S, int min_order);

/// Iterated elimination of the odd sectors down to config.trunc_order. Each
/// round builds every generator of config.sequence from the Hamiltonian at
/// the start of the round, then applies them in sequence order.
ReductionTrace reduce(const Expression& H, const ReductionConfig& config);

/// [S_oe, [S_eo, S_oo]] from the round-one generators of `trace`, truncated at
/// the trace's order.
Expression cleanup_generator(const ReductionTrace& trace);

/// Applies an even-even generator to a reduced Hamiltonian.
Expression apply_cleanup(const Expression& H_tr, const Expression& S_ee, const ReductionConfig& config);

/// Single-particle reduction of b1 m1 c^2 + E + O with S = -i b1 O' / (2 m1 c^2).
Expression one_body_reduce(const Expression& H, int trunc);

/// Largest effective order among monomials outside the even-even sector
/// (INT_MIN when there are none).
int residual_order(const Expression& H);

}  // namespace fwred
