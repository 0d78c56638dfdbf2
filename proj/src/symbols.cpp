#include "fwred/symbols.hpp"

#include "fwred/error.hpp"

namespace fwred {

std::string Parity::to_string() const {
  return std::string(odd1 ? "odd" : "even") + "," + (odd2 ? "odd" : "even");
}

std::optional<SymbolId> SymbolTable::find(std::string_view name) const {
  for (std::size_t k = 0; k < symbols_.size(); ++k) {
    if (symbols_[k].name == name) return static_cast<SymbolId>(k);
  }
  return std::nullopt;
}

SymbolId SymbolTable::id(std::string_view name) const {
  if (auto k = find(name)) return *k;
  throw DeclarationError("undeclared symbol '" + std::string(name) + "'");
}

bool SymbolTable::commute(SymbolId a, SymbolId b) const {
  if (a == b) return true;
  return relations_.count(a < b ? std::pair{a, b} : std::pair{b, a}) != 0;
}

SymbolTable declare_symbol(const SymbolTable& table, SymbolDecl decl) {
  static const char* const reserved[] = {"i", "b1", "b2", "m1", "m2", "c", "H", "comm", "acomm"};
  for (const char* r : reserved) {
    if (decl.name == r) throw DeclarationError("'" + decl.name + "' is a reserved name");
  }
  if (decl.name.empty()) throw DeclarationError("empty symbol name");
  if (table.find(decl.name)) throw DeclarationError("symbol '" + decl.name + "' already declared");
  if (table.size() >= 0xFFFF) throw DeclarationError("too many symbols");
  SymbolTable out = table;
  out.symbols_.push_back(std::move(decl));
  return out;
}

SymbolTable declare_commuting(const SymbolTable& table, std::string_view a, std::string_view b) {
  const SymbolId x = table.id(a);
  const SymbolId y = table.id(b);
  SymbolTable out = table;
  if (x != y) out.relations_.insert(x < y ? std::pair{x, y} : std::pair{y, x});
  return out;
}

SymbolTable with_order(const SymbolTable& table, std::string_view name, int c_order) {
  SymbolTable out = table;
  out.symbols_[table.id(name)].c_order = c_order;
  return out;
}

TablePtr standard_table(bool commuting_oe_eo, int oo_order) {
  SymbolTable t;
  t = declare_symbol(t, {"EE", Parity::even_even(), 0, true});
  t = declare_symbol(t, {"OE", Parity::odd_even(), 1, true});
  t = declare_symbol(t, {"EO", Parity::even_odd(), 1, true});
  t = declare_symbol(t, {"OO", Parity::odd_odd(), oo_order, true});
  if (commuting_oe_eo) t = declare_commuting(t, "OE", "EO");
  return std::make_shared<const SymbolTable>(std::move(t));
}

TablePtr one_body_table() {
  SymbolTable t;
  t = declare_symbol(t, {"E", Parity::even_even(), 0, true});
  t = declare_symbol(t, {"O", Parity::odd_even(), 1, true});
  return std::make_shared<const SymbolTable>(std::move(t));
}

}  // namespace fwred
