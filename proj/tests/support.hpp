#pragma once

#include "fwred/expression.hpp"

#include <random>

namespace fwred::testing {

inline Expression sym(const TablePtr& t, const char* name) { return Expression::symbol(t, name); }

inline Expression large_terms(const TablePtr& t) {
  return Expression::scalar(t, MassFraction::m1(), 2) * Expression::beta(t, 1) +
         Expression::scalar(t, MassFraction::m2(), 2) * Expression::beta(t, 2);
}

/// beta_1 m1 c^2 + beta_2 m2 c^2 + EE + OE + EO + OO.
inline Expression generic_hamiltonian(const TablePtr& t) {
  return large_terms(t) + sym(t, "EE") + sym(t, "OE") + sym(t, "EO") + sym(t, "OO");
}

/// Random small rational times an optional mass monomial or mass difference.
inline MassFraction random_fraction(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-5, 5), den(1, 4), kind(0, 4);
  MassFraction f = MassFraction::rational(num(rng), den(rng));
  switch (kind(rng)) {
    case 1: return f * MassFraction::m1();
    case 2: return f / MassFraction::m2();
    case 3: return f / (MassFraction::m1() - MassFraction::m2());
    default: return f;
  }
}

inline Coefficient random_coefficient(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> kind(0, 2);
  switch (kind(rng)) {
    case 0: return Coefficient(random_fraction(rng));
    case 1: return Coefficient(MassFraction{}, random_fraction(rng));
    default: return Coefficient(random_fraction(rng), random_fraction(rng));
  }
}

/// Up to `max_terms` monomials with words of length <= `max_word`.
inline Expression random_expression(const TablePtr& t, std::mt19937_64& rng, int max_terms = 4, int max_word = 3) {
  std::uniform_int_distribution<int> nterms(1, max_terms), len(0, max_word), bit(0, 1), cexp(-4, 2);
  std::uniform_int_distribution<int> letter(0, static_cast<int>(t->size()) - 1);
  Expression out(t);
  const int n = nterms(rng);
  for (int k = 0; k < n; ++k) {
    MonomialKey key;
    key.b1 = static_cast<std::uint8_t>(bit(rng));
    key.b2 = static_cast<std::uint8_t>(bit(rng));
    key.c_exp = cexp(rng);
    const int l = len(rng);
    for (int j = 0; j < l; ++j) key.word.push_back(static_cast<SymbolId>(letter(rng)));
    out += Expression::monomial(t, key, random_coefficient(rng));
  }
  return out;
}

/// X + adjoint(X): Hermitian by construction.
inline Expression random_hermitian(const TablePtr& t, std::mt19937_64& rng, int max_terms = 3, int max_word = 3) {
  const Expression x = random_expression(t, rng, max_terms, max_word);
  return x + adjoint(x);
}

}  // namespace fwred::testing
