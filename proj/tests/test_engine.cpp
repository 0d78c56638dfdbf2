#include "fwred/engine.hpp"
#include "fwred/error.hpp"
#include "fwred/references.hpp"
#include "support.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>

using namespace fwred;
using fwred::testing::generic_hamiltonian;
using fwred::testing::large_terms;
using fwred::testing::random_hermitian;
using fwred::testing::sym;

namespace {

const TablePtr kCommuting = standard_table(true);
const TablePtr kGeneral = standard_table(false);

// Direct sum_{n<=N} i^n/n! ad_S^n(H) without intermediate truncation.
Expression brute_force_bch(const Expression& H, const Expression& S, int min_order, int terms) {
  Expression sum = H;
  Expression ad = H;
  Coefficient factor = 1;
  for (int n = 1; n <= terms; ++n) {
    ad = multiply(S, ad) - multiply(ad, S);
    factor = factor * Coefficient(MassFraction{}, MassFraction::rational(1, n));
    sum += factor * ad;
  }
  return truncate(sum, min_order);
}

ReductionConfig config_for(std::vector<Component> sequence, int trunc) {
  ReductionConfig c;
  c.sequence = std::move(sequence);
  c.trunc_order = trunc;
  return c;
}

bool all_at_order(const Expression& e, int order) {
  return std::all_of(e.terms().begin(), e.terms().end(),
                     [&](const auto& t) { return e.effective_order(t.first) == order; });
}

}  // namespace

TEST_CASE("build_generator matches the first-iteration generators") {
  const Expression H = generic_hamiltonian(kGeneral);
  const ReductionConfig config;
  CHECK(build_generator(H, Component::oe, config) == reference_expression(ReferenceId::eq3_oe, kGeneral));
  CHECK(build_generator(H, Component::eo, config) == reference_expression(ReferenceId::eq3_eo, kGeneral));
  CHECK(build_generator(H, Component::oo, config) == reference_expression(ReferenceId::eq3_oo, kGeneral));

  const Expression even = large_terms(kGeneral) + sym(kGeneral, "EE");
  CHECK(build_generator(even, Component::oo, config).is_zero());

  ReductionConfig equal;
  equal.masses_equal = true;
  CHECK_THROWS_AS(build_generator(H, Component::oo, equal), EqualMassError);
  CHECK_THROWS_AS(build_generator(H, Component::ee, config), UsageError);
}

TEST_CASE("config validation") {
  CHECK_THROWS_AS(config_for({}, -4).validate(), UsageError);
  CHECK_THROWS_AS(config_for({Component::oe, Component::oe}, -4).validate(), UsageError);
  CHECK_THROWS_AS(config_for({Component::ee}, -4).validate(), UsageError);
  ReductionConfig equal;
  equal.masses_equal = true;
  CHECK_THROWS_AS(equal.validate(), EqualMassError);
  equal.sequence = {Component::eo, Component::oe};
  CHECK_NOTHROW(equal.validate());
}

TEST_CASE("conjugate_bch") {
  const TablePtr& t = kGeneral;
  const Expression H = generic_hamiltonian(t);
  CHECK(conjugate_bch(H, Expression(t), -4) == truncate(H, -4));

  SECTION("single odd-even term against the direct series") {
    const Expression h = Expression::scalar(t, MassFraction::m1(), 2) * Expression::beta(t, 1) + sym(t, "OE");
    const Expression S = reference_expression(ReferenceId::eq3_oe, t);
    const Expression out = conjugate_bch(h, S, -2);
    CHECK(out == brute_force_bch(h, S, -2, 4));
    const Expression expected_even = Expression::scalar(t, MassFraction::m1(), 2) * Expression::beta(t, 1) +
                                     Expression::scalar(t, MassFraction::rational(1, 2) / MassFraction::m1(), -2) *
                                         Expression::beta(t, 1) * sym(t, "OE") * sym(t, "OE");
    // OE^4 / c^6 also survives at order -2; compare down to order -1.
    CHECK(truncate(project(out, Parity::even_even()), -1) == expected_even);
    const Expression odd = project(out, Parity::odd_even());
    CHECK(odd.max_order() <= -1);
  }

  SECTION("random Hermitian inputs against the direct series") {
    std::mt19937_64 rng(31);
    for (int k = 0; k < 60; ++k) {
      const Expression h = random_hermitian(t, rng, 3, 2);
      Expression S = random_hermitian(t, rng, 2, 2);
      S = S - truncate(S, 0);
      const int min_order = -3;
      if (h.is_zero()) continue;
      const int terms = S.is_zero() ? 0 : std::max(0, h.max_order() - min_order);
      REQUIRE(conjugate_bch(h, S, min_order) == brute_force_bch(h, S, min_order, terms));
    }
  }

  SECTION("generators of order zero are rejected") {
    CHECK_THROWS_AS(conjugate_bch(H, sym(t, "EE"), -4), NonterminationError);
    CHECK_THROWS_AS(conjugate_bch(H, Coefficient::i() * Expression::scalar(t, 1, -2) * sym(t, "EE"), -4), UsageError);
  }
}

TEST_CASE("second order is independent of the generator order") {
  std::vector<Component> seq{Component::eo, Component::oe, Component::oo};
  std::sort(seq.begin(), seq.end());
  const Expression eq4 = reference_expression(ReferenceId::eq4, kGeneral);
  const Expression H = generic_hamiltonian(kGeneral);
  int permutations = 0;
  do {
    const ReductionTrace trace = reduce(H, config_for(seq, -2));
    INFO("sequence " << to_string(seq[0]) << "," << to_string(seq[1]) << "," << to_string(seq[2]));
    CHECK(diff_report(trace.hamiltonian, eq4).empty());
    ++permutations;
  } while (std::next_permutation(seq.begin(), seq.end()));
  CHECK(permutations == 6);
}

TEST_CASE("fourth-order reduction with commuting odd-even and even-odd") {
  const Expression H = generic_hamiltonian(kCommuting);
  const Expression eq6 = reference_expression(ReferenceId::eq6, kCommuting);
  const ReductionTrace trace = reduce(H, ReductionConfig{});
  CHECK(diff_report(trace.hamiltonian, eq6).empty());
  CHECK(is_hermitian(trace.hamiltonian));
  CHECK(project(trace.hamiltonian, Parity::even_even()) == trace.hamiltonian);
  for (const auto& step : trace.steps) CHECK(adjoint(step.generator) == step.generator);
  CHECK(trace.steps.front().round == 1);

  SECTION("eo-first agrees") {
    const ReductionTrace eo = reduce(H, config_for({Component::eo, Component::oe, Component::oo}, -4));
    CHECK(eo.hamiltonian == eq6);
  }

  SECTION("oo-first leaves the extra fourth-order terms") {
    const ReductionTrace oo = reduce(H, config_for({Component::oo, Component::oe, Component::eo}, -4));
    const Expression extra = oo.hamiltonian - eq6;
    CHECK(extra == reference_expression(ReferenceId::eq8, kCommuting));
    CHECK(all_at_order(extra, -4));
    CHECK(truncate(oo.hamiltonian, -3) == truncate(eq6, -3));
  }
}

TEST_CASE("reduce rejects bad input") {
  const TablePtr& t = kGeneral;
  const Expression H = generic_hamiltonian(t);

  ReductionConfig capped;
  capped.max_rounds = 1;
  CHECK_THROWS_AS(reduce(H, capped), DivergenceError);

  CHECK_THROWS_AS(reduce(H + Coefficient::i() * sym(t, "EE"), ReductionConfig{}), UsageError);
  CHECK_THROWS_AS(reduce(H - Expression::scalar(t, MassFraction::m2(), 2) * Expression::beta(t, 2), ReductionConfig{}),
                  UsageError);

  // OE * EO products feed the odd-odd sector, which only the oo generator removes.
  CHECK_THROWS_AS(reduce(H - sym(t, "OO"), config_for({Component::oe, Component::eo}, -2)), DivergenceError);

  ReductionConfig equal = config_for({Component::oe}, -4);
  equal.masses_equal = true;
  CHECK_THROWS_AS(reduce(H, equal), EqualMassError);
  const Expression particle_one = large_terms(t) + sym(t, "EE") + sym(t, "OE");
  const ReductionTrace r = reduce(particle_one, equal);
  CHECK(project(r.hamiltonian, Parity::even_even()) == r.hamiltonian);
  CHECK_FALSE(r.hamiltonian.is_zero());
}

TEST_CASE("cleanup generator") {
  const Expression H = generic_hamiltonian(kCommuting);
  const ReductionTrace trace = reduce(H, ReductionConfig{});
  const Expression S_ee = cleanup_generator(trace);
  CHECK(S_ee == reference_expression(ReferenceId::eq9, kCommuting));
  CHECK(is_hermitian(S_ee));
  for (Parity p : {Parity::odd_even(), Parity::even_odd(), Parity::odd_odd()}) CHECK(project(S_ee, p).is_zero());
  CHECK(commutator(S_ee, large_terms(kCommuting)).is_zero());

  const ReductionTrace one = reduce(large_terms(kCommuting) + sym(kCommuting, "OE"), config_for({Component::oe}, -4));
  CHECK_THROWS_AS(cleanup_generator(one), UnsupportedError);
}

TEST_CASE("cleanup removes the oo-first extra terms") {
  const Expression H = generic_hamiltonian(kCommuting);
  const Expression eq6 = reference_expression(ReferenceId::eq6, kCommuting);
  ReductionConfig config = config_for({Component::oo, Component::oe, Component::eo}, -4);
  const ReductionTrace oo = reduce(H, config);
  CHECK(apply_cleanup(oo.hamiltonian, cleanup_generator(oo), config) == eq6);

  config.cleanup = true;
  const ReductionTrace cleaned = reduce(H, config);
  CHECK(cleaned.hamiltonian == eq6);
  CHECK(cleaned.steps.back().kind == Component::ee);

  CHECK(apply_cleanup(oo.hamiltonian, Expression(kCommuting), config) == oo.hamiltonian);
  CHECK_THROWS_AS(apply_cleanup(oo.hamiltonian, reference_expression(ReferenceId::eq3_oe, kCommuting), config),
                  UsageError);

  config.cleanup_first_order_only = false;
  CHECK(apply_cleanup(oo.hamiltonian, cleanup_generator(oo), config) == eq6);
}

TEST_CASE("abstract even-even generator only touches order -4") {
  const TablePtr t = reference_table(ReferenceId::eq26);
  const ReductionTrace trace = reduce(generic_hamiltonian(t), ReductionConfig{});
  const Expression S = reference_expression(ReferenceId::eq26, t);
  const Expression out = apply_cleanup(trace.hamiltonian, S, ReductionConfig{});
  const Expression change = out - trace.hamiltonian;
  CHECK_FALSE(change.is_zero());
  CHECK(all_at_order(change, -4));
  CHECK(project(change, Parity::even_even()) == change);
}

TEST_CASE("one-body reduction") {
  const TablePtr t = one_body_table();
  const Expression rest = Expression::scalar(t, MassFraction::m1(), 2) * Expression::beta(t, 1);
  const Expression H = rest + sym(t, "E") + sym(t, "O");
  CHECK(one_body_reduce(H, -4) == reference_expression(ReferenceId::eq7, t));
  CHECK(one_body_reduce(rest + sym(t, "E"), -4) == rest + sym(t, "E"));

  const ReductionTrace two = reduce(generic_hamiltonian(kCommuting), ReductionConfig{});
  const Expression limit = mass_limit(two.hamiltonian - Expression::scalar(kCommuting, MassFraction::m2(), 2) *
                                                            Expression::beta(kCommuting, 2),
                                      2);
  CHECK(rename_symbols(limit, t, {{"OE", "O"}, {"EE", "E"}}) == reference_expression(ReferenceId::eq7, t));

  CHECK_THROWS_AS(one_body_reduce(generic_hamiltonian(kGeneral), -4), UsageError);
}

TEST_CASE("residual order") {
  const TablePtr& t = kGeneral;
  CHECK(residual_order(large_terms(t)) == INT_MIN);
  CHECK(residual_order(generic_hamiltonian(t)) == 1);
  CHECK(residual_order(large_terms(t) + sym(t, "OO")) == 0);
}
