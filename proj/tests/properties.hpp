#pragma once

#include "fwred/numoracle.hpp"
#include "fwred/references.hpp"
#include "support.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <set>

namespace fwred::testing {

/// Five letters p<q<r<s<u with p-r, p-s, q-s, q-u, r-u commuting.
inline TablePtr pentagon_table() {
  SymbolTable t;
  for (const char* n : {"p", "q", "r", "s", "u"}) t = declare_symbol(t, {n, Parity::even_even(), 0, true});
  for (auto [x, y] : {std::pair{"p", "r"}, {"p", "s"}, {"q", "s"}, {"q", "u"}, {"r", "u"}}) {
    t = declare_commuting(t, x, y);
  }
  return std::make_shared<const SymbolTable>(t);
}

/// Lex-least word of the commutation class, by exhaustive adjacent swaps.
inline Word brute_force_normal_form(const SymbolTable& t, const Word& w) {
  std::set<Word> seen{w};
  std::queue<Word> todo;
  todo.push(w);
  while (!todo.empty()) {
    const Word cur = todo.front();
    todo.pop();
    for (std::size_t k = 0; k + 1 < cur.size(); ++k) {
      if (cur[k] == cur[k + 1] || !t.commute(cur[k], cur[k + 1])) continue;
      Word next = cur;
      std::swap(next[k], next[k + 1]);
      if (seen.insert(next).second) todo.push(next);
    }
  }
  return *seen.begin();
}

/// Runs `check` on `cases` seeded draws and counts the failures.
inline int count_failures(int cases, std::uint64_t seed, const std::function<bool(std::mt19937_64&, int)>& check) {
  std::mt19937_64 rng(seed);
  int failures = 0;
  for (int k = 0; k < cases; ++k) failures += check(rng, k) ? 0 : 1;
  return failures;
}

inline const TablePtr& alternating_table(int k) {
  static const TablePtr commuting = standard_table(true);
  static const TablePtr general = standard_table(false);
  return k % 2 == 0 ? commuting : general;
}

inline bool associativity_case(std::mt19937_64& rng, int k) {
  const TablePtr& t = alternating_table(k);
  const Expression a = random_expression(t, rng), b = random_expression(t, rng), c = random_expression(t, rng);
  return (a * b) * c == a * (b * c);
}

inline bool distributivity_case(std::mt19937_64& rng, int k) {
  const TablePtr& t = alternating_table(k);
  const Expression a = random_expression(t, rng), b = random_expression(t, rng), c = random_expression(t, rng);
  return a * (b + c) == a * b + a * c && (b + c) * a == b * a + c * a;
}

inline bool adjoint_case(std::mt19937_64& rng, int k) {
  const TablePtr& t = alternating_table(k);
  const Expression a = random_expression(t, rng), b = random_expression(t, rng);
  return adjoint(a * b) == adjoint(b) * adjoint(a) && adjoint(a + b) == adjoint(a) + adjoint(b) &&
         truncate(adjoint(a), -2) == adjoint(truncate(a, -2));
}

inline bool sector_partition_case(std::mt19937_64& rng, int k) {
  const Expression x = random_expression(alternating_table(k), rng, 6, 4);
  Expression sum(x.table_ptr());
  std::size_t count = 0;
  for (Parity p : {Parity::even_even(), Parity::odd_even(), Parity::even_odd(), Parity::odd_odd()}) {
    const Expression px = project(x, p);
    if (project(px, p) != px) return false;
    count += px.size();
    sum += px;
  }
  return sum == x && count == x.size();
}

inline bool confluence_case(std::mt19937_64& rng, int k) {
  static const TablePtr pentagon = pentagon_table();
  const TablePtr& t = k % 3 == 0 ? alternating_table(0) : pentagon;
  std::uniform_int_distribution<int> len(0, 7), letter(0, static_cast<int>(t->size()) - 1);
  Word w;
  for (int j = len(rng); j > 0; --j) w.push_back(static_cast<SymbolId>(letter(rng)));
  const Word nf = canonical_word(*t, w);
  if (nf != brute_force_normal_form(*t, w)) return false;
  if (w.size() < 2) return true;
  // Random walk inside the commutation class, then product re-association.
  Word moved = w;
  std::uniform_int_distribution<std::size_t> pos(0, w.size() - 2);
  for (int s = 0; s < 10; ++s) {
    const std::size_t p = pos(rng);
    if (moved[p] != moved[p + 1] && t->commute(moved[p], moved[p + 1])) std::swap(moved[p], moved[p + 1]);
  }
  if (canonical_word(*t, moved) != nf) return false;
  auto letter_expr = [&](SymbolId id) { return Expression::symbol(t, t->decl(id).name); };
  Expression left = letter_expr(w[0]);
  for (std::size_t j = 1; j < w.size(); ++j) left = left * letter_expr(w[j]);
  Expression right = letter_expr(w.back());
  for (std::size_t j = w.size() - 1; j-- > 0;) right = letter_expr(w[j]) * right;
  return left == right;
}

/// Homomorphism of evaluate() on 16 x 16 realizations, relative tolerance `tol`.
inline std::function<bool(std::mt19937_64&, int)> evaluate_homomorphism_case(long double tol) {
  struct State {
    num::MatrixAssignment general = num::MatrixAssignment::random(alternating_table(1), {1, 2, 1, 7});
    num::MatrixAssignment commuting = num::MatrixAssignment::random(alternating_table(0), {1, 2, 1, 8});
  };
  auto state = std::make_shared<State>();
  return [state, tol](std::mt19937_64& rng, int k) {
    const TablePtr& t = alternating_table(k);
    const num::MatrixAssignment& asg = k % 2 == 0 ? state->commuting : state->general;
    const Expression a = random_expression(t, rng, 3, 3), b = random_expression(t, rng, 3, 3);
    const long double c = 1.5L;
    const num::Matrix ma = num::evaluate(a, asg, c), mb = num::evaluate(b, asg, c);
    auto close = [&](const num::Matrix& x, const num::Matrix& y) {
      return (x - y).norm() <= tol * std::max<long double>(1, std::max(x.norm(), y.norm()));
    };
    return close(num::evaluate(a * b, asg, c), ma * mb) && close(num::evaluate(a + b, asg, c), ma + mb) &&
           close(num::evaluate(commutator(a, b), asg, c), ma * mb - mb * ma) &&
           close(num::evaluate(adjoint(a), asg, c), ma.adjoint());
  };
}

}  // namespace fwred::testing
