#include "fwred/engine.hpp"

#include "fwred/error.hpp"

#include <algorithm>
#include <climits>
#include <utility>
#include <vector>
#include <sstream>

namespace fwred {

namespace {

Coefficient minus_i_over(const MassFraction& f) { return Coefficient(MassFraction{}, -f); }

bool has_large_term(const Expression& H, int particle) {
  const MonomialKey key{{}, static_cast<std::uint8_t>(particle == 1), static_cast<std::uint8_t>(particle == 2), 2};
  const auto it = H.terms().find(key);
  return it != H.terms().end() && it->second == Coefficient(particle == 1 ? MassFraction::m1() : MassFraction::m2());
}

std::string describe_residual(const Expression& H) {
  std::ostringstream os;
  for (Component c : {Component::oe, Component::eo, Component::oo}) {
    const Expression p = project(H, sector_of(c));
    if (!p.is_zero()) os << " " << to_string(c) << ": " << p.size() << " monomials, max order " << p.max_order() << ";";
  }
  return os.str();
}

}  // namespace

std::string to_string(Component c) {
  switch (c) {
    case Component::oe: return "oe";
    case Component::eo: return "eo";
    case Component::oo: return "oo";
    case Component::ee: return "ee";
  }
  return "?";
}

Component component_from_string(const std::string& s) {
  if (s == "oe") return Component::oe;
  if (s == "eo") return Component::eo;
  if (s == "oo") return Component::oo;
  if (s == "ee") return Component::ee;
  throw UsageError("unknown component '" + s + "'");
}

Parity sector_of(Component c) {
  switch (c) {
    case Component::oe: return Parity::odd_even();
    case Component::eo: return Parity::even_odd();
    case Component::oo: return Parity::odd_odd();
    case Component::ee: return Parity::even_even();
  }
  return Parity::even_even();
}

void ReductionConfig::validate() const {
  if (sequence.empty()) throw UsageError("reduction sequence is empty");
  for (std::size_t k = 0; k < sequence.size(); ++k) {
    if (sequence[k] == Component::ee) throw UsageError("the ee generator cannot appear in the sequence");
    for (std::size_t j = 0; j < k; ++j) {
      if (sequence[j] == sequence[k]) throw UsageError("reduction sequence repeats '" + to_string(sequence[k]) + "'");
    }
  }
  if (masses_equal && std::count(sequence.begin(), sequence.end(), Component::oo) != 0) {
    throw EqualMassError("the oo generator is applicable only for unequal masses");
  }
  if (max_rounds < 1) throw UsageError("max_rounds must be positive");
}

Expression build_generator(const Expression& H, Component kind, const ReductionConfig& config) {
  const TablePtr& t = H.table_ptr();
  const Expression residue = project(H, sector_of(kind));
  switch (kind) {
    case Component::oe:
      return minus_i_over(MassFraction(1) / (MassFraction(2) * MassFraction::m1())) *
             (Expression::beta(t, 1) * Expression::c_power(t, -2) * residue);
    case Component::eo:
      return minus_i_over(MassFraction(1) / (MassFraction(2) * MassFraction::m2())) *
             (Expression::beta(t, 2) * Expression::c_power(t, -2) * residue);
    case Component::oo: {
      if (config.masses_equal) throw EqualMassError("the oo generator is applicable only for unequal masses");
      const MassFraction m1 = MassFraction::m1();
      const MassFraction m2 = MassFraction::m2();
      const MassFraction denom = MassFraction(2) * (m1 * m1 - m2 * m2);
      const Expression mass_beta = Expression::scalar(t, m1 / denom) * Expression::beta(t, 1) -
                                   Expression::scalar(t, m2 / denom) * Expression::beta(t, 2);
      return minus_i_over(MassFraction(1)) * (mass_beta * Expression::c_power(t, -2) * residue);
    }
    case Component::ee:
      break;
  }
  throw UsageError("build_generator does not construct the ee generator");
}

Expression conjugate_bch(const Expression& H, const Expression& S, int min_order) {
  if (!S.is_zero() && S.max_order() >= 0) {
    throw NonterminationError("generator has a monomial of effective order " + std::to_string(S.max_order()) +
                              "; the series would not terminate");
  }
  if (!is_hermitian(S)) throw UsageError("generator is not Hermitian");
  Expression result = truncate(H, min_order);
  if (S.is_zero()) return result;
  Expression term = result;
  for (int n = 1;; ++n) {
    term = Coefficient(MassFraction{}, MassFraction::rational(1, n)) * commutator_truncated(S, term, min_order);
    if (term.is_zero()) break;
    result += term;
  }
  return result;
}

int residual_order(const Expression& H) {
  int order = INT_MIN;
  for (const auto& [k, c] : H.terms()) {
    if (word_parity(H.table(), k.word) != Parity::even_even()) order = std::max(order, H.effective_order(k));
  }
  return order;
}

ReductionTrace reduce(const Expression& H0, const ReductionConfig& config) {
  config.validate();
  if (!is_hermitian(H0)) throw UsageError("Hamiltonian is not Hermitian");
  const bool needs1 = std::count(config.sequence.begin(), config.sequence.end(), Component::eo) !=
                      static_cast<long>(config.sequence.size());
  const bool needs2 = std::count(config.sequence.begin(), config.sequence.end(), Component::oe) !=
                      static_cast<long>(config.sequence.size());
  if (needs1 && !has_large_term(H0, 1)) throw UsageError("Hamiltonian lacks the large term b1*m1*c^2");
  if (needs2 && !has_large_term(H0, 2)) throw UsageError("Hamiltonian lacks the large term b2*m2*c^2");
  if (config.masses_equal && !project(H0, Parity::odd_odd()).is_zero()) {
    throw EqualMassError("odd-odd component present but masses are declared equal");
  }

  ReductionTrace trace{{}, truncate(H0, config.trunc_order), config.trunc_order};
  Expression& H = trace.hamiltonian;
  int previous = residual_order(H);
  int round = 0;
  while (previous >= config.trunc_order) {
    if (++round > config.max_rounds) {
      throw DivergenceError("no even-even form after " + std::to_string(config.max_rounds) +
                            " rounds; residual:" + describe_residual(H));
    }
    // All generators of a round come from the Hamiltonian at the start of the round.
    std::vector<std::pair<Component, Expression>> generators;
    for (Component kind : config.sequence) generators.emplace_back(kind, build_generator(H, kind, config));
    for (auto& [kind, S] : generators) {
      if (S.is_zero()) continue;
      H = conjugate_bch(H, S, config.trunc_order);
      trace.steps.push_back({round, kind, std::move(S)});
    }
    const int current = residual_order(H);
    if (current >= previous) {
      throw DivergenceError("round " + std::to_string(round) + " did not lower the residual order (" +
                            std::to_string(current) + ");" + describe_residual(H));
    }
    previous = current;
  }
  H = project(H, Parity::even_even());

  if (config.cleanup) {
    Expression S_ee = cleanup_generator(trace);
    H = apply_cleanup(H, S_ee, config);
    trace.steps.push_back({round + 1, Component::ee, std::move(S_ee)});
  }
  return trace;
}

Expression cleanup_generator(const ReductionTrace& trace) {
  const Expression* first[3] = {nullptr, nullptr, nullptr};
  for (const auto& step : trace.steps) {
    if (step.round != 1 || step.kind == Component::ee) continue;
    first[static_cast<int>(step.kind)] = &step.generator;
  }
  if (first[static_cast<int>(Component::oo)] == nullptr) {
    throw UnsupportedError("cleanup needs a first-round oo generator (unequal-mass three-generator runs only)");
  }
  const Expression& S_oo = *first[static_cast<int>(Component::oo)];
  if (first[0] == nullptr || first[1] == nullptr) return Expression(S_oo.table_ptr());
  const int order = trace.trunc_order;
  return truncate(commutator_truncated(*first[0], commutator_truncated(*first[1], S_oo, INT_MIN), order), order);
}

Expression apply_cleanup(const Expression& H_tr, const Expression& S_ee, const ReductionConfig& config) {
  if (project(S_ee, Parity::even_even()) != S_ee) throw UsageError("cleanup generator is not even-even");
  if (!config.cleanup_first_order_only) return conjugate_bch(H_tr, S_ee, config.trunc_order);
  if (!is_hermitian(S_ee)) throw UsageError("cleanup generator is not Hermitian");
  const Expression shift = Coefficient::i() * commutator_truncated(S_ee, H_tr, config.trunc_order);
  return truncate(H_tr + shift, config.trunc_order);
}

Expression one_body_reduce(const Expression& H, int trunc) {
  for (const auto& d : H.table().symbols()) {
    if (d.parity.odd2) throw UsageError("one-body reduction needs symbols even in the second particle");
  }
  for (const auto& [k, c] : H.terms()) {
    const bool m2_dependent = c.re.num().degree_in(2) > 0 || c.re.den().degree_in(2) > 0 ||
                              c.im.num().degree_in(2) > 0 || c.im.den().degree_in(2) > 0;
    if (k.b2 || m2_dependent) throw UsageError("one-body Hamiltonian refers to the second particle");
  }
  ReductionConfig config;
  config.sequence = {Component::oe};
  config.trunc_order = trunc;
  return reduce(H, config).hamiltonian;
}

}  // namespace fwred
