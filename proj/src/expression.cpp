#include "fwred/expression.hpp"

#include "fwred/error.hpp"

#include <algorithm>

namespace fwred {

namespace {

void require_same_table(const Expression& a, const Expression& b) {
  if (a.table_ptr() != b.table_ptr() && a.table() != b.table()) {
    throw UsageError("expressions belong to different symbol tables");
  }
}

// Sign picked up by moving beta_1^e1 beta_2^e2 from the right of `word` to its left.
int beta_sign(const SymbolTable& table, std::span<const SymbolId> word, int e1, int e2) {
  if (e1 == 0 && e2 == 0) return 1;
  const Parity p = word_parity(table, word);
  const int flips = (e1 && p.odd1 ? 1 : 0) + (e2 && p.odd2 ? 1 : 0);
  return flips % 2 ? -1 : 1;
}

std::string describe(const SymbolTable& table, const MonomialKey& key) {
  std::string s;
  if (key.b1) s += "b1 ";
  if (key.b2) s += "b2 ";
  s += "c^" + std::to_string(key.c_exp);
  for (SymbolId id : key.word) s += " " + table.decl(id).name;
  return s;
}

}  // namespace

Word canonical_word(const SymbolTable& table, std::span<const SymbolId> word) {
  if (table.relations().empty() || word.size() < 2) return Word(word.begin(), word.end());
  // Repeatedly extract the smallest letter that can be commuted to the front.
  Word rest(word.begin(), word.end());
  Word out;
  out.reserve(rest.size());
  while (!rest.empty()) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < rest.size(); ++j) {
      if (rest[j] >= rest[best]) continue;
      bool movable = true;
      for (std::size_t k = 0; k < j && movable; ++k) {
        movable = rest[k] != rest[j] && table.commute(rest[k], rest[j]);
      }
      if (movable) best = j;
    }
    out.push_back(rest[best]);
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return out;
}

Parity word_parity(const SymbolTable& table, std::span<const SymbolId> word) {
  Parity p = Parity::even_even();
  for (SymbolId id : word) p = p * table.decl(id).parity;
  return p;
}

Expression::Expression(TablePtr table) : table_(std::move(table)) {
  if (!table_) throw UsageError("expression requires a symbol table");
}

Expression Expression::scalar(TablePtr table, Coefficient coeff, int c_exp) {
  Expression e(std::move(table));
  e.accumulate(MonomialKey{{}, 0, 0, c_exp}, coeff);
  return e;
}

Expression Expression::symbol(TablePtr table, std::string_view name) {
  const SymbolId id = table->id(name);
  Expression e(std::move(table));
  e.accumulate(MonomialKey{{id}, 0, 0, 0}, Coefficient(1));
  return e;
}

Expression Expression::beta(TablePtr table, int particle) {
  if (particle != 1 && particle != 2) throw UsageError("beta index must be 1 or 2");
  Expression e(std::move(table));
  e.accumulate(MonomialKey{{}, static_cast<std::uint8_t>(particle == 1), static_cast<std::uint8_t>(particle == 2), 0},
               Coefficient(1));
  return e;
}

Expression Expression::c_power(TablePtr table, int k) { return scalar(std::move(table), Coefficient(1), k); }

Expression Expression::monomial(TablePtr table, MonomialKey key, Coefficient coeff) {
  if (key.b1 > 1 || key.b2 > 1) throw UsageError("beta exponents must be 0 or 1");
  for (SymbolId id : key.word) {
    if (id >= table->size()) throw UsageError("symbol id out of range");
  }
  key.word = canonical_word(*table, key.word);
  Expression e(std::move(table));
  e.accumulate(key, coeff);
  return e;
}

int Expression::effective_order(const MonomialKey& key) const {
  int order = key.c_exp;
  for (SymbolId id : key.word) order += table_->decl(id).c_order;
  return order;
}

int Expression::max_order() const {
  int m = INT_MIN;
  for (const auto& [k, c] : terms_) m = std::max(m, effective_order(k));
  return m;
}

int Expression::min_order() const {
  int m = INT_MAX;
  for (const auto& [k, c] : terms_) m = std::min(m, effective_order(k));
  return m;
}

void Expression::accumulate(const MonomialKey& key, const Coefficient& coeff) {
  if (coeff.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(key, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Expression Expression::operator-() const {
  Expression r = *this;
  for (auto& [k, c] : r.terms_) c = -c;
  return r;
}

Expression& Expression::operator+=(const Expression& o) {
  require_same_table(*this, o);
  for (const auto& [k, c] : o.terms_) accumulate(k, c);
  return *this;
}

Expression& Expression::operator-=(const Expression& o) {
  require_same_table(*this, o);
  for (const auto& [k, c] : o.terms_) accumulate(k, -c);
  return *this;
}

Expression operator*(const Expression& a, const Expression& b) { return multiply(a, b); }

Expression operator*(const Coefficient& s, const Expression& a) {
  Expression r(a.table_ptr());
  if (s.is_zero()) return r;
  for (const auto& [k, c] : a.terms()) r.accumulate(k, s * c);
  return r;
}

bool operator==(const Expression& a, const Expression& b) {
  if (a.table_ptr() != b.table_ptr() && a.table() != b.table()) return false;
  return a.terms_ == b.terms_;
}

Expression multiply_truncated(const Expression& a, const Expression& b, int min_order) {
  require_same_table(a, b);
  const SymbolTable& table = a.table();
  Expression r(a.table_ptr());
  if (a.is_zero() || b.is_zero()) return r;

  struct Entry {
    const MonomialKey* key;
    const Coefficient* coeff;
    int order;
    Parity parity;
  };
  auto entries = [&](const Expression& e) {
    std::vector<Entry> out;
    out.reserve(e.size());
    for (const auto& [k, c] : e.terms()) out.push_back({&k, &c, e.effective_order(k), word_parity(table, k.word)});
    return out;
  };
  const auto left = entries(a);
  const auto right = entries(b);
  const bool plain_concat = table.relations().empty();

  Word buffer;
  for (const auto& x : left) {
    for (const auto& y : right) {
      if (min_order != INT_MIN && x.order + y.order < min_order) continue;
      const MonomialKey& kx = *x.key;
      const MonomialKey& ky = *y.key;
      const int flips = (ky.b1 && x.parity.odd1 ? 1 : 0) + (ky.b2 && x.parity.odd2 ? 1 : 0);
      buffer.assign(kx.word.begin(), kx.word.end());
      buffer.insert(buffer.end(), ky.word.begin(), ky.word.end());
      MonomialKey key{plain_concat ? buffer : canonical_word(table, buffer),
                      static_cast<std::uint8_t>(kx.b1 ^ ky.b1), static_cast<std::uint8_t>(kx.b2 ^ ky.b2),
                      kx.c_exp + ky.c_exp};
      Coefficient c = *x.coeff * *y.coeff;
      r.accumulate(key, flips % 2 ? -c : c);
    }
  }
  return r;
}

Expression multiply(const Expression& a, const Expression& b) { return multiply_truncated(a, b, INT_MIN); }

Expression bracket(BracketKind kind, const Expression& a, const Expression& b) {
  Expression ab = multiply(a, b);
  Expression ba = multiply(b, a);
  return kind == BracketKind::commutator ? ab - ba : ab + ba;
}

Expression commutator(const Expression& a, const Expression& b) { return bracket(BracketKind::commutator, a, b); }

Expression anticommutator(const Expression& a, const Expression& b) {
  return bracket(BracketKind::anticommutator, a, b);
}

Expression commutator_truncated(const Expression& a, const Expression& b, int min_order) {
  return multiply_truncated(a, b, min_order) - multiply_truncated(b, a, min_order);
}

Expression adjoint(const Expression& a) {
  const SymbolTable& table = a.table();
  Expression r(a.table_ptr());
  for (const auto& [k, c] : a.terms()) {
    for (SymbolId id : k.word) {
      if (!table.decl(id).hermitian) {
        throw UnsupportedError("adjoint of non-Hermitian symbol '" + table.decl(id).name + "'");
      }
    }
    Word reversed(k.word.rbegin(), k.word.rend());
    const int sign = beta_sign(table, reversed, k.b1, k.b2);
    MonomialKey key{canonical_word(table, reversed), k.b1, k.b2, k.c_exp};
    Coefficient conj = c.conj();
    r.accumulate(key, sign < 0 ? -conj : conj);
  }
  return r;
}

bool is_hermitian(const Expression& a) { return adjoint(a) == a; }

Expression project(const Expression& a, Parity sector) {
  Expression r(a.table_ptr());
  for (const auto& [k, c] : a.terms()) {
    if (word_parity(a.table(), k.word) == sector) r.accumulate(k, c);
  }
  return r;
}

Expression truncate(const Expression& a, int min_order) {
  Expression r(a.table_ptr());
  for (const auto& [k, c] : a.terms()) {
    if (a.effective_order(k) >= min_order) r.accumulate(k, c);
  }
  return r;
}

bool is_zero(const Expression& a) { return a.is_zero(); }

bool equals(const Expression& a, const Expression& b) { return a == b; }

Expression mass_limit(const Expression& a, int particle) {
  if (particle != 1 && particle != 2) throw UsageError("particle must be 1 or 2");
  Expression r(a.table_ptr());
  auto limit_part = [&](const MassFraction& f, const MonomialKey& key) -> MassFraction {
    if (f.is_zero()) return f;
    const int degree = f.num().degree_in(particle) - f.den().degree_in(particle);
    if (degree < 0) return MassFraction{};
    if (degree > 0) {
      throw LimitError("monomial [" + describe(a.table(), key) + "] diverges as m" + std::to_string(particle) +
                       " -> infinity");
    }
    return MassFraction(f.num().leading_in(particle), f.den().leading_in(particle));
  };
  for (const auto& [k, c] : a.terms()) {
    Coefficient lim{limit_part(c.re, k), limit_part(c.im, k)};
    r.accumulate(k, lim);
  }
  return r;
}

Expression rename_symbols(const Expression& a, TablePtr target,
                          const std::vector<std::pair<std::string, std::string>>& renames) {
  const SymbolTable& source = a.table();
  std::vector<SymbolId> map(source.size());
  for (std::size_t k = 0; k < source.size(); ++k) {
    std::string name = source.decl(static_cast<SymbolId>(k)).name;
    for (const auto& [from, to] : renames) {
      if (from == name) {
        name = to;
        break;
      }
    }
    const auto found = target->find(name);
    map[k] = found ? *found : SymbolId{0xFFFF};
  }
  Expression r(target);
  for (const auto& [k, c] : a.terms()) {
    Word w;
    for (SymbolId id : k.word) {
      if (map[id] == 0xFFFF) {
        throw UsageError("symbol '" + source.decl(id).name + "' has no counterpart in the target table");
      }
      w.push_back(map[id]);
    }
    r += Expression::monomial(target, MonomialKey{std::move(w), k.b1, k.b2, k.c_exp}, c);
  }
  return r;
}

bool contains_symbol(const Expression& a, SymbolId symbol) {
  for (const auto& [k, c] : a.terms()) {
    if (std::find(k.word.begin(), k.word.end(), symbol) != k.word.end()) return true;
  }
  return false;
}

}  // namespace fwred
