#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fwred {

/// Per-particle grading of an operator with respect to beta_1 and beta_2.
struct Parity {
  bool odd1 = false;
  bool odd2 = false;

  static constexpr Parity even_even() { return {false, false}; }
  static constexpr Parity odd_even() { return {true, false}; }
  static constexpr Parity even_odd() { return {false, true}; }
  static constexpr Parity odd_odd() { return {true, true}; }

  friend constexpr Parity operator*(Parity a, Parity b) { return {a.odd1 != b.odd1, a.odd2 != b.odd2}; }
  friend constexpr bool operator==(Parity, Parity) = default;
  [[nodiscard]] std::string to_string() const;
};

using SymbolId = std::uint16_t;

struct SymbolDecl {
  std::string name;
  Parity parity;
  /// Intrinsic power of c carried by the operator.
  int c_order = 0;
  bool hermitian = true;

  friend bool operator==(const SymbolDecl&, const SymbolDecl&) = default;
};

/// Immutable set of operator symbols and the pairs declared to commute.
/// Declaration order is the canonical total order used for word sorting.
class SymbolTable {
 public:
  [[nodiscard]] const std::vector<SymbolDecl>& symbols() const { return symbols_; }
  [[nodiscard]] std::size_t size() const { return symbols_.size(); }
  [[nodiscard]] const SymbolDecl& decl(SymbolId id) const { return symbols_.at(id); }
  [[nodiscard]] std::optional<SymbolId> find(std::string_view name) const;
  /// Throws DeclarationError for unknown names.
  [[nodiscard]] SymbolId id(std::string_view name) const;
  [[nodiscard]] bool commute(SymbolId a, SymbolId b) const;
  [[nodiscard]] const std::set<std::pair<SymbolId, SymbolId>>& relations() const { return relations_; }

  friend bool operator==(const SymbolTable&, const SymbolTable&) = default;

 private:
  friend SymbolTable declare_symbol(const SymbolTable&, SymbolDecl);
  friend SymbolTable declare_commuting(const SymbolTable&, std::string_view, std::string_view);
  friend SymbolTable with_order(const SymbolTable&, std::string_view, int);

  std::vector<SymbolDecl> symbols_;
  // Stored with first < second.
  std::set<std::pair<SymbolId, SymbolId>> relations_;
};

using TablePtr = std::shared_ptr<const SymbolTable>;

/// Returns a copy of `table` with `decl` appended; duplicate names are rejected.
SymbolTable declare_symbol(const SymbolTable& table, SymbolDecl decl);
/// Declares that two already-declared symbols commute.
SymbolTable declare_commuting(const SymbolTable& table, std::string_view a, std::string_view b);
/// Same table with one symbol's intrinsic c-order replaced.
SymbolTable with_order(const SymbolTable& table, std::string_view name, int c_order);

/// EE, OE, EO, OO in that order, all of order c^0 except OE and EO (c^1).
/// `commuting_oe_eo` declares [OE, EO] = 0; `oo_order` overrides the order of OO.
TablePtr standard_table(bool commuting_oe_eo, int oo_order = 0);
/// Single-particle table: E (even) of order 0 and O (odd) of order 1.
TablePtr one_body_table();

}  // namespace fwred
