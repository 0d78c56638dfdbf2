#include "fwred/error.hpp"
#include "fwred/references.hpp"
#include "fwred/serialize.hpp"
#include "support.hpp"

#include <catch_amalgamated.hpp>

#include <boost/rational.hpp>

#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

using namespace fwred;
using fwred::testing::sym;

namespace {

const TablePtr kCommuting = standard_table(true);
const TablePtr kGeneral = standard_table(false);

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Coefficient coefficient_at(const Expression& e, const MonomialKey& key) {
  const auto it = e.terms().find(key);
  return it == e.terms().end() ? Coefficient{} : it->second;
}

MonomialKey key(const TablePtr& t, std::initializer_list<const char*> word, int b1, int b2, int c_exp) {
  MonomialKey k;
  for (const char* n : word) k.word.push_back(t->id(n));
  k.b1 = static_cast<std::uint8_t>(b1);
  k.b2 = static_cast<std::uint8_t>(b2);
  k.c_exp = c_exp;
  return k;
}

// Minimal one-particle algebra over strings of 'E'/'O' with a leading beta,
// used to expand the one-body formula independently of the library.
using Rat = boost::rational<long long>;
struct Mono {
  int beta;
  int c_exp;
  int m_exp;
  std::string word;
  auto operator<=>(const Mono&) const = default;
};
using Poly = std::map<Mono, Rat>;

Poly single(int beta, int c_exp, int m_exp, std::string word, Rat r) {
  Poly p;
  p.emplace(Mono{beta, c_exp, m_exp, std::move(word)}, r);
  return p;
}

Poly add(Poly a, const Poly& b, Rat s = 1) {
  for (const auto& [m, c] : b) {
    a[m] += s * c;
    if (a[m].numerator() == 0) a.erase(m);
  }
  return a;
}

Poly mul(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ma, ca] : a) {
    for (const auto& [mb, cb] : b) {
      const long odd = std::count(ma.word.begin(), ma.word.end(), 'O');
      const Rat sign = (mb.beta && odd % 2) ? -1 : 1;
      out = add(out, single((ma.beta + mb.beta) % 2, ma.c_exp + mb.c_exp, ma.m_exp + mb.m_exp, ma.word + mb.word,
                            sign * ca * cb));
    }
  }
  return out;
}

Poly comm(const Poly& a, const Poly& b) { return add(mul(a, b), mul(b, a), -1); }
Poly scaled(const Poly& a, Rat r, int beta, int m_exp, int c_exp) {
  return mul(single(beta, c_exp, m_exp, "", r), a);
}

Poly one_body_formula() {
  const Poly E = single(0, 0, 0, "E", 1), O = single(0, 0, 0, "O", 1);
  const Poly O2 = mul(O, O), O3 = mul(O2, O), O4 = mul(O2, O2), O6 = mul(O4, O2);
  const Poly OE = comm(O, E);
  Poly h = single(1, 2, 1, "", 1);
  h = add(h, E);
  h = add(h, scaled(O2, Rat(1, 2), 1, -1, -2));
  h = add(h, scaled(comm(O, comm(E, O)), Rat(1, 8), 0, -2, -4));
  h = add(h, scaled(O4, Rat(-1, 8), 1, -3, -6));
  h = add(h, scaled(mul(OE, OE), Rat(-1, 8), 1, -3, -6));
  h = add(h, scaled(comm(O, comm(O, comm(O, OE))), Rat(1, 384), 0, -4, -8));
  h = add(h, scaled(comm(O3, OE), Rat(1, 12), 0, -4, -8));
  h = add(h, scaled(O6, Rat(1, 16), 1, -5, -10));
  return h;
}

}  // namespace

TEST_CASE("second-order reference coefficients") {
  const Expression eq4 = reference_expression(ReferenceId::eq4, kGeneral);
  const MassFraction m1 = MassFraction::m1(), m2 = MassFraction::m2();
  const MassFraction q = MassFraction(2) * (m1 * m1 - m2 * m2);
  CHECK(coefficient_at(eq4, key(kGeneral, {"OO", "OO"}, 1, 0, -2)) == Coefficient(m1 / q));
  CHECK(coefficient_at(eq4, key(kGeneral, {"OO", "OO"}, 0, 1, -2)) == Coefficient(-m2 / q));
}

TEST_CASE("fourth-order reference contains the sixth power of OE") {
  const Expression eq6 = reference_expression(ReferenceId::eq6, kCommuting);
  const MonomialKey k = key(kCommuting, {"OE", "OE", "OE", "OE", "OE", "OE"}, 1, 0, -10);
  CHECK(coefficient_at(eq6, k) == Coefficient(MassFraction::rational(1, 16) * MassFraction::mass_power(1, -5)));
}

TEST_CASE("one-body reference agrees with an independent expansion") {
  const TablePtr t = one_body_table();
  const Expression eq7 = reference_expression(ReferenceId::eq7, t);
  const Poly oracle = one_body_formula();
  REQUIRE(eq7.size() == oracle.size());
  for (const auto& [m, c] : oracle) {
    MonomialKey k;
    k.b1 = static_cast<std::uint8_t>(m.beta);
    k.c_exp = m.c_exp;
    for (char ch : m.word) k.word.push_back(t->id(std::string(1, ch)));
    const Coefficient expected(MassFraction::rational(c.numerator(), c.denominator()) *
                               MassFraction::mass_power(1, m.m_exp));
    INFO("word " << m.word);
    CHECK(coefficient_at(eq7, k) == expected);
  }
  CHECK(coefficient_at(eq7, key(t, {"O", "O", "O", "E", "O"}, 0, 0, -8)) != Coefficient{});
}

TEST_CASE("references are Hermitian and even-even") {
  for (ReferenceId id : all_references()) {
    const TablePtr t = reference_table(id);
    const Expression e = reference_expression(id, t);
    INFO(to_string(id));
    CHECK_FALSE(e.is_zero());
    CHECK(is_hermitian(e));
    const bool generator = id == ReferenceId::eq3_oe || id == ReferenceId::eq3_eo || id == ReferenceId::eq3_oo;
    if (!generator) {
      for (Parity p : {Parity::odd_even(), Parity::even_odd(), Parity::odd_odd()}) CHECK(project(e, p).is_zero());
    }
  }
  const Expression eq8 = reference_expression(ReferenceId::eq8, kCommuting);
  for (const auto& [k, c] : eq8.terms()) CHECK(eq8.effective_order(k) == -4);
}

TEST_CASE("reference preconditions") {
  CHECK_THROWS_AS(reference_expression(ReferenceId::eq6, kGeneral), ReferenceError);
  CHECK_THROWS_AS(reference_expression(ReferenceId::eq8, kGeneral), ReferenceError);
  CHECK_THROWS_AS(reference_expression(ReferenceId::eq9, kGeneral), ReferenceError);
  CHECK_THROWS_AS(reference_expression(ReferenceId::eq4, one_body_table()), ReferenceError);
  CHECK_THROWS_AS(reference_expression(ReferenceId::eq7, kGeneral), ReferenceError);
  CHECK(reference_from_string("eq6") == ReferenceId::eq6);
  CHECK_FALSE(reference_from_string("eq5"));
}

TEST_CASE("diff reports") {
  const Expression eq6 = reference_expression(ReferenceId::eq6, kCommuting);
  const Expression eq8 = reference_expression(ReferenceId::eq8, kCommuting);

  CHECK(diff_report(eq6, eq6).empty());

  const DiffReport plus = diff_report(eq6 + eq8, eq6);
  CHECK(plus.extra == eq8);
  CHECK(plus.missing.is_zero());
  // Shared monomials show up as mismatches; their excess is part of `extra`.
  for (const auto& m : plus.mismatches) CHECK(eq6.terms().count(m.key) == 1);
  CHECK(plus.difference() == eq8);

  const DiffReport minus = diff_report(eq6 - eq8, eq6);
  CHECK(minus.missing.is_zero());
  CHECK(minus.extra == -eq8);

  const DiffReport collapse = diff_report(truncate(eq6, -2), reference_expression(ReferenceId::eq4, kCommuting));
  CHECK(collapse.empty());

  const Expression doubled = Coefficient(2) * eq6;
  const DiffReport scaled = diff_report(doubled, eq6);
  CHECK(scaled.mismatches.size() == eq6.size());
  CHECK(scaled.difference() == eq6);

  const Expression half = truncate(eq6, -2);
  const DiffReport partial = diff_report(half, eq6);
  CHECK(partial.missing == eq6 - half);
  CHECK(partial.difference() == half - eq6);
}

TEST_CASE("goldens match the builders bit-exactly") {
  for (ReferenceId id : all_references()) {
    const TablePtr t = reference_table(id);
    const Json j{{"table", to_json(*t)}, {"expression", to_json(reference_expression(id, t))}};
    const std::string golden = read_file(std::string(FWRED_SOURCE_DIR) + "/tests/golden/" + to_string(id) + ".json");
    INFO(to_string(id));
    CHECK(golden == j.dump(2) + "\n");
    const Json parsed = Json::parse(golden);
    const TablePtr table = std::make_shared<const SymbolTable>(symbol_table_from_json(parsed.at("table")));
    CHECK(expression_from_json(parsed.at("expression"), table) == reference_expression(id, table));
  }
}
