#pragma once

#include "fwred/coefficient.hpp"
#include "fwred/symbols.hpp"

#include <climits>
#include <compare>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fwred {

using Word = std::vector<SymbolId>;

/// Everything that identifies a monomial except its coefficient:
/// beta_1^b1 beta_2^b2 * c^c_exp * word.
struct MonomialKey {
  Word word;
  std::uint8_t b1 = 0;
  std::uint8_t b2 = 0;
  int c_exp = 0;

  friend auto operator<=>(const MonomialKey&, const MonomialKey&) = default;
  friend bool operator==(const MonomialKey&, const MonomialKey&) = default;
};

/// Canonical sum of monomials over one symbol table.
///
/// Words are kept in trace-monoid lexicographic normal form, beta factors sit
/// to the left of every word with exponents in {0, 1}, and no stored
/// coefficient is zero. Structural equality is therefore algebraic equality.
class Expression {
 public:
  using Terms = std::map<MonomialKey, Coefficient>;

  explicit Expression(TablePtr table);

  static Expression scalar(TablePtr table, Coefficient coeff, int c_exp = 0);
  static Expression symbol(TablePtr table, std::string_view name);
  /// beta_1 or beta_2.
  static Expression beta(TablePtr table, int particle);
  /// c^k as an expression.
  static Expression c_power(TablePtr table, int k);
  /// Builds one monomial, canonicalizing the word first.
  static Expression monomial(TablePtr table, MonomialKey key, Coefficient coeff);

  [[nodiscard]] const TablePtr& table_ptr() const { return table_; }
  [[nodiscard]] const SymbolTable& table() const { return *table_; }
  [[nodiscard]] const Terms& terms() const { return terms_; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] std::size_t size() const { return terms_.size(); }

  /// c_exp plus the intrinsic orders of the word's symbols.
  [[nodiscard]] int effective_order(const MonomialKey& key) const;
  /// Largest / smallest effective order present; INT_MIN / INT_MAX when zero.
  [[nodiscard]] int max_order() const;
  [[nodiscard]] int min_order() const;

  /// Adds coeff * key; key must already be canonical.
  void accumulate(const MonomialKey& key, const Coefficient& coeff);

  Expression operator-() const;
  Expression& operator+=(const Expression& o);
  Expression& operator-=(const Expression& o);
  friend Expression operator+(Expression a, const Expression& b) { return a += b; }
  friend Expression operator-(Expression a, const Expression& b) { return a -= b; }
  friend Expression operator*(const Expression& a, const Expression& b);
  friend Expression operator*(const Coefficient& s, const Expression& a);
  friend Expression operator*(const Expression& a, const Coefficient& s) { return s * a; }

  /// Same table (by identity or by value) and same terms.
  friend bool operator==(const Expression& a, const Expression& b);

 private:
  TablePtr table_;
  Terms terms_;
};

enum class BracketKind { commutator, anticommutator };

/// Lexicographic normal form of `word` in the trace monoid of `table`.
Word canonical_word(const SymbolTable& table, std::span<const SymbolId> word);
Parity word_parity(const SymbolTable& table, std::span<const SymbolId> word);

/// Canonical product. Throws UsageError for expressions over different tables.
Expression multiply(const Expression& a, const Expression& b);
/// Product with every monomial of effective order below `min_order` skipped.
Expression multiply_truncated(const Expression& a, const Expression& b, int min_order);
Expression bracket(BracketKind kind, const Expression& a, const Expression& b);
Expression commutator(const Expression& a, const Expression& b);
Expression anticommutator(const Expression& a, const Expression& b);
/// [a, b] truncated below `min_order` without forming the dropped products.
Expression commutator_truncated(const Expression& a, const Expression& b, int min_order);

/// Hermitian conjugate; only Hermitian symbols are supported.
Expression adjoint(const Expression& a);
bool is_hermitian(const Expression& a);

/// Sub-sum whose word parity equals `sector` (beta factors count as even-even).
Expression project(const Expression& a, Parity sector);
/// Drops monomials with effective order below `min_order`.
Expression truncate(const Expression& a, int min_order);

bool is_zero(const Expression& a);
bool equals(const Expression& a, const Expression& b);

/// Limit m_particle -> infinity, monomial by monomial. Vanishing monomials are
/// dropped, finite ones replaced by their limit; divergent ones raise LimitError.
Expression mass_limit(const Expression& a, int particle);

/// Re-expresses `a` over `target`, mapping symbol names through `renames`
/// (unlisted names map to themselves).
Expression rename_symbols(const Expression& a, TablePtr target,
                          const std::vector<std::pair<std::string, std::string>>& renames);

/// True if any monomial's word contains `symbol`.
bool contains_symbol(const Expression& a, SymbolId symbol);

}  // namespace fwred
