#include "fwred/references.hpp"

#include "fwred/error.hpp"

#include <array>

namespace fwred {

namespace {

// Small operator DSL over one table. Prefactors are scalar-and-beta
// expressions multiplied from the left, as printed.
struct Ops {
  TablePtr t;

  [[nodiscard]] Expression sym(std::string_view name) const { return Expression::symbol(t, name); }
  [[nodiscard]] Expression b1() const { return Expression::beta(t, 1); }
  [[nodiscard]] Expression b2() const { return Expression::beta(t, 2); }
  [[nodiscard]] Expression one() const { return Expression::scalar(t, Coefficient(1)); }
  /// f * c^k
  [[nodiscard]] Expression k(const MassFraction& f, int c_exp = 0) const { return Expression::scalar(t, f, c_exp); }
  /// -i * f * c^k
  [[nodiscard]] Expression mi(const MassFraction& f, int c_exp = 0) const {
    return Expression::scalar(t, Coefficient(MassFraction{}, -f), c_exp);
  }
  [[nodiscard]] Expression pow(const Expression& x, int n) const {
    Expression r = one();
    for (int j = 0; j < n; ++j) r = r * x;
    return r;
  }
};

Expression comm(const Expression& a, const Expression& b) { return commutator(a, b); }
Expression acomm(const Expression& a, const Expression& b) { return anticommutator(a, b); }

MassFraction frac(long long n, long long d) { return MassFraction::rational(n, d); }
MassFraction mp(int mass, int k) { return MassFraction::mass_power(mass, k); }
// 1 / (m1^2 - m2^2)
MassFraction inv_q(int power = 1) {
  const MassFraction q = mp(1, 2) - mp(2, 2);
  MassFraction r(1);
  for (int j = 0; j < power; ++j) r = r / q;
  return r;
}

void require_symbols(const SymbolTable& table, std::initializer_list<std::pair<const char*, Parity>> needed) {
  for (const auto& [name, parity] : needed) {
    const auto id = table.find(name);
    if (!id) throw ReferenceError(std::string("reference needs symbol '") + name + "'");
    if (table.decl(*id).parity != parity) {
      throw ReferenceError(std::string("symbol '") + name + "' has parity " + table.decl(*id).parity.to_string());
    }
  }
}

void require_default_orders(const SymbolTable& table, std::initializer_list<std::pair<const char*, int>> orders) {
  for (const auto& [name, order] : orders) {
    if (table.decl(table.id(name)).c_order != order) {
      throw ReferenceError(std::string("reference assumes order ") + std::to_string(order) + " for '" + name + "'");
    }
  }
}

void require_two_body(const SymbolTable& table) {
  require_symbols(table, {{"EE", Parity::even_even()},
                          {"OE", Parity::odd_even()},
                          {"EO", Parity::even_odd()},
                          {"OO", Parity::odd_odd()}});
  require_default_orders(table, {{"EE", 0}, {"OE", 1}, {"EO", 1}});
  // The Salpeter-type table reassigns OO to order -2; the references carry
  // explicit c powers, so they stay valid there.
  const int oo = table.decl(table.id("OO")).c_order;
  if (oo != 0 && oo != -2) throw ReferenceError("reference assumes order 0 or -2 for 'OO'");
}

void require_relation5(const SymbolTable& table) {
  if (!table.commute(table.id("OE"), table.id("EO"))) {
    throw ReferenceError("reference requires OE and EO to be declared commuting");
  }
}

struct TwoBody {
  Ops o;
  Expression EE, OE, EO, OO, b1, b2;
  MassFraction m1 = MassFraction::m1();
  MassFraction m2 = MassFraction::m2();

  explicit TwoBody(const TablePtr& t)
      : o{t}, EE(o.sym("EE")), OE(o.sym("OE")), EO(o.sym("EO")), OO(o.sym("OO")), b1(o.b1()), b2(o.b2()) {}

  // b1 m1 - b2 m2
  [[nodiscard]] Expression b1m1_b2m2() const { return o.k(m1) * b1 - o.k(m2) * b2; }
  [[nodiscard]] Expression large() const { return o.k(m1, 2) * b1 + o.k(m2, 2) * b2; }
};

Expression eq4_line(const TwoBody& x, char line) {
  const Ops& o = x.o;
  switch (line) {
    case 'a':
      return x.large() + x.EE;
    case 'b':
      return o.k(frac(1, 2) * mp(1, -1), -2) * x.b1 * o.pow(x.OE, 2) +
             o.k(frac(1, 2) * mp(2, -1), -2) * x.b2 * o.pow(x.EO, 2);
    case 'c':
      return o.k(frac(1, 8) * mp(1, -2), -4) * comm(x.OE, comm(x.EE, x.OE)) +
             o.k(frac(1, 8) * mp(2, -2), -4) * comm(x.EO, comm(x.EE, x.EO));
    case 'd':
      return o.k(frac(-1, 8) * mp(1, -3), -6) * x.b1 * o.pow(x.OE, 4) +
             o.k(frac(-1, 8) * mp(2, -3), -6) * x.b2 * o.pow(x.EO, 4);
    case 'e':
      return o.k(frac(1, 8) * mp(1, -1) * mp(2, -1), -4) * x.b1 * x.b2 *
             (acomm(x.OE, acomm(x.EO, x.OO)) + acomm(x.EO, acomm(x.OE, x.OO)));
    case 'f':
      return o.k(frac(1, 2) * inv_q(), -2) * x.b1m1_b2m2() * o.pow(x.OO, 2);
    case 'g':
      return o.k(frac(1, 8) * mp(1, -1) * mp(2, -1) * inv_q(), -6) * (o.k(x.m1) * x.b2 - o.k(x.m2) * x.b1) *
             o.pow(comm(x.OE, x.EO), 2);
    case 'h':
      return o.k(frac(-1, 16) * mp(1, -2) * mp(2, -2), -6) * (o.k(x.m1) * x.b1 + o.k(x.m2) * x.b2) *
             acomm(o.pow(x.OE, 2), o.pow(x.EO, 2));
    case 'i':
      return o.k(frac(1, 8) * mp(1, -1) * mp(2, -2), -6) * x.b1 * x.EO * o.pow(x.OE, 2) * x.EO +
             o.k(frac(1, 8) * mp(1, -2) * mp(2, -1), -6) * x.b2 * x.OE * o.pow(x.EO, 2) * x.OE;
    case 'j':
      return o.k(frac(1, 8) * mp(1, -1) * mp(2, -1) * inv_q(), -4) *
             (o.k(x.m1 * x.m1 + x.m2 * x.m2) * x.b1 * x.b2 - o.k(MassFraction(2) * x.m1 * x.m2)) *
             comm(comm(x.EO, x.OE), x.OO);
    default:
      break;
  }
  throw ReferenceError(std::string("eq4 has no line '") + line + "'");
}

Expression eq6_line(const TwoBody& x, char line) {
  const Ops& o = x.o;
  const auto& [EE, OE, EO, OO] = std::tie(x.EE, x.OE, x.EO, x.OO);
  const auto& b1 = x.b1;
  const auto& b2 = x.b2;
  switch (line) {
    case 'a':
      return x.large() + EE + o.k(frac(1, 2) * mp(1, -1), -2) * b1 * o.pow(OE, 2) +
             o.k(frac(1, 2) * mp(2, -1), -2) * b2 * o.pow(EO, 2) +
             o.k(frac(1, 2) * inv_q(), -2) * x.b1m1_b2m2() * o.pow(OO, 2) +
             o.k(frac(1, 8) * mp(1, -2), -4) * comm(OE, comm(EE, OE)) +
             o.k(frac(1, 8) * mp(2, -2), -4) * comm(EO, comm(EE, EO)) +
             o.k(frac(1, 4) * mp(1, -1) * mp(2, -1), -4) * b1 * b2 * acomm(OE, acomm(EO, OO)) +
             o.k(frac(-1, 8) * mp(1, -3), -6) * b1 * o.pow(OE, 4) +
             o.k(frac(-1, 8) * mp(2, -3), -6) * b2 * o.pow(EO, 4);
    case 'b':
      return o.k(frac(-1, 8) * mp(1, -3), -6) * b1 * o.pow(comm(OE, EE), 2) +
             o.k(frac(-1, 8) * mp(2, -3), -6) * b2 * o.pow(comm(EO, EE), 2);
    case 'c':
      return o.k(frac(1, 8) * mp(1, -1) * mp(2, -2), -6) * b1 * o.pow(acomm(EO, OO), 2) +
             o.k(frac(1, 8) * mp(1, -2) * mp(2, -1), -6) * b2 * o.pow(acomm(OE, OO), 2);
    case 'd': {
      const Expression bm = x.b1m1_b2m2();
      return o.k(frac(-1, 16) * mp(1, -2) * inv_q(), -6) * bm * acomm(OO, acomm(OE, acomm(OE, OO))) +
             o.k(frac(-1, 16) * mp(1, -1) * inv_q(2), -6) * b1 * bm * bm * acomm(OO, acomm(OO, o.pow(OE, 2))) +
             o.k(frac(-1, 16) * mp(2, -2) * inv_q(), -6) * bm * acomm(OO, acomm(EO, acomm(EO, OO))) +
             o.k(frac(-1, 16) * mp(2, -1) * inv_q(2), -6) * b2 * bm * bm * acomm(OO, acomm(OO, o.pow(EO, 2)));
    }
    case 'e':
      return o.k(frac(-1, 8) * mp(1, -1) * mp(2, -1) * inv_q(), -6) * (o.k(x.m2) * b1 - o.k(x.m1) * b2) *
                 acomm(OO, comm(OE, comm(EO, EE))) +
             o.k(frac(1, 8) * mp(1, -1) * mp(2, -2), -6) * b1 * comm(comm(EO, EE), acomm(OE, OO)) +
             o.k(frac(1, 8) * mp(1, -2) * mp(2, -1), -6) * b2 * comm(comm(OE, EE), acomm(EO, OO));
    case 'f': {
      const Expression bm = x.b1m1_b2m2();
      return o.k(frac(1, 8) * inv_q(2), -4) * bm * bm * comm(OO, comm(EE, OO));
    }
    case 'g':
      return o.k(frac(1, 384) * mp(1, -4), -8) *
                 (comm(OE, comm(OE, comm(OE, comm(OE, EE)))) + o.k(32) * comm(o.pow(OE, 3), comm(OE, EE))) +
             o.k(frac(1, 384) * mp(2, -4), -8) *
                 (comm(EO, comm(EO, comm(EO, comm(EO, EE)))) + o.k(32) * comm(o.pow(EO, 3), comm(EO, EE)));
    case 'h':
      return o.k(frac(1, 64) * mp(1, -2) * mp(2, -2), -8) * comm(OE, comm(OE, comm(EO, comm(EO, EE))));
    case 'i':
      return o.k(frac(-1, 96) * mp(1, -3) * mp(2, -1), -8) * b1 * b2 *
                 (acomm(OE, acomm(OE, acomm(OE, acomm(EO, OO)))) + o.k(8) * acomm(o.pow(OE, 3), acomm(EO, OO))) +
             o.k(frac(-1, 96) * mp(1, -1) * mp(2, -3), -8) * b1 * b2 *
                 (acomm(OE, acomm(EO, acomm(EO, acomm(EO, OO)))) + o.k(8) * acomm(OE, acomm(o.pow(EO, 3), OO)));
    case 'j':
      return o.k(frac(1, 16) * mp(1, -5), -10) * b1 * o.pow(OE, 6) +
             o.k(frac(1, 16) * mp(2, -5), -10) * b2 * o.pow(EO, 6);
    default:
      break;
  }
  throw ReferenceError(std::string("eq6 has no line '") + line + "'");
}

Expression eq9_line(const TwoBody& x, char line) {
  const Ops& o = x.o;
  const MassFraction pre = frac(1, 8) * mp(1, -1) * mp(2, -1) * inv_q();
  switch (line) {
    case 'a':
      return o.mi(pre, -6) * (o.k(x.m2) * x.b1 - o.k(x.m1) * x.b2) * comm(x.OO, x.OE * x.EO);
    case 'b':
      return o.mi(pre, -6) * (o.k(x.m2) * x.b1 + o.k(x.m1) * x.b2) * (x.OE * x.OO * x.EO - x.EO * x.OO * x.OE);
    default:
      break;
  }
  throw ReferenceError(std::string("eq9 has no line '") + line + "'");
}

Expression eq8(const TwoBody& x) {
  const Ops& o = x.o;
  const auto& [EE, OE, EO, OO] = std::tie(x.EE, x.OE, x.EO, x.OO);
  const Expression b1b2 = x.b1 * x.b2;
  const Expression p = comm(OE * EO, OO);               // [(OE)(EO), OO]
  const Expression q = EO * OO * OE - OE * OO * EO;     // (EO)(OO)(OE) - (OE)(OO)(EO)
  const MassFraction six = frac(1, 8) * mp(1, -1) * mp(2, -1) * inv_q();
  const MassFraction eight1 = frac(1, 16) * mp(1, -2) * mp(2, -1) * inv_q();
  const MassFraction eight2 = frac(1, 16) * mp(1, -1) * mp(2, -2) * inv_q();
  return o.k(six, -6) * (o.k(x.m2) * x.b1 - o.k(x.m1) * x.b2) * comm(p, EE) +
         o.k(six, -6) * (o.k(x.m2) * x.b1 + o.k(x.m1) * x.b2) * comm(q, EE) +
         o.k(eight1, -8) * (o.k(x.m2) - o.k(x.m1) * b1b2) * comm(p, o.pow(OE, 2)) +
         o.k(eight2, -8) * (o.k(x.m2) * b1b2 - o.k(x.m1)) * comm(p, o.pow(EO, 2)) +
         o.k(eight1, -8) * (o.k(x.m2) + o.k(x.m1) * b1b2) * comm(q, o.pow(OE, 2)) +
         o.k(eight2, -8) * (o.k(x.m2) * b1b2 + o.k(x.m1)) * comm(q, o.pow(EO, 2));
}

Expression eq7(const TablePtr& t) {
  require_symbols(*t, {{"E", Parity::even_even()}, {"O", Parity::odd_even()}});
  require_default_orders(*t, {{"E", 0}, {"O", 1}});
  const Ops o{t};
  const Expression E = o.sym("E");
  const Expression O = o.sym("O");
  const Expression b = o.b1();
  return o.k(mp(1, 1), 2) * b + E + o.k(frac(1, 2) * mp(1, -1), -2) * b * o.pow(O, 2) +
         o.k(frac(1, 8) * mp(1, -2), -4) * comm(O, comm(E, O)) +
         o.k(frac(-1, 8) * mp(1, -3), -6) * b * o.pow(O, 4) +
         o.k(frac(-1, 8) * mp(1, -3), -6) * b * o.pow(comm(O, E), 2) +
         o.k(frac(1, 384) * mp(1, -4), -8) * comm(O, comm(O, comm(O, comm(O, E)))) +
         o.k(frac(1, 12) * mp(1, -4), -8) * comm(o.pow(O, 3), comm(O, E)) +
         o.k(frac(1, 16) * mp(1, -5), -10) * b * o.pow(O, 6);
}

}  // namespace

std::string to_string(ReferenceId id) {
  switch (id) {
    case ReferenceId::eq3_oe: return "eq3_oe";
    case ReferenceId::eq3_eo: return "eq3_eo";
    case ReferenceId::eq3_oo: return "eq3_oo";
    case ReferenceId::eq4: return "eq4";
    case ReferenceId::eq6: return "eq6";
    case ReferenceId::eq7: return "eq7";
    case ReferenceId::eq8: return "eq8";
    case ReferenceId::eq9: return "eq9";
    case ReferenceId::eq26: return "eq26";
    case ReferenceId::eq29a: return "eq29a";
    case ReferenceId::eq29b: return "eq29b";
  }
  return "?";
}

const std::vector<ReferenceId>& all_references() {
  static const std::vector<ReferenceId> ids = {ReferenceId::eq3_oe, ReferenceId::eq3_eo, ReferenceId::eq3_oo,
                                               ReferenceId::eq4,    ReferenceId::eq6,    ReferenceId::eq7,
                                               ReferenceId::eq8,    ReferenceId::eq9,    ReferenceId::eq26,
                                               ReferenceId::eq29a,  ReferenceId::eq29b};
  return ids;
}

std::optional<ReferenceId> reference_from_string(std::string_view name) {
  for (ReferenceId id : all_references()) {
    if (to_string(id) == name) return id;
  }
  return std::nullopt;
}

TablePtr reference_table(ReferenceId id) {
  static const TablePtr general = standard_table(false);
  static const TablePtr commuting = standard_table(true);
  static const TablePtr single = one_body_table();
  switch (id) {
    case ReferenceId::eq7: return single;
    case ReferenceId::eq6:
    case ReferenceId::eq8:
    case ReferenceId::eq9: return commuting;
    default: return general;
  }
}

Expression reference_line(ReferenceId id, char line, const TablePtr& table) {
  if (id != ReferenceId::eq4 && id != ReferenceId::eq6 && id != ReferenceId::eq9) {
    throw ReferenceError(to_string(id) + " has no labelled lines");
  }
  require_two_body(*table);
  if (id == ReferenceId::eq6 || id == ReferenceId::eq9) require_relation5(*table);
  const TwoBody x(table);
  if (id == ReferenceId::eq4) return eq4_line(x, line);
  if (id == ReferenceId::eq6) return eq6_line(x, line);
  return eq9_line(x, line);
}

Expression reference_expression(ReferenceId id, const TablePtr& table) {
  if (id == ReferenceId::eq7) return eq7(table);
  require_two_body(*table);
  const TwoBody x(table);
  const Ops& o = x.o;
  auto lines = [&](ReferenceId which, std::string_view labels) {
    Expression sum(table);
    for (char l : labels) sum += reference_line(which, l, table);
    return sum;
  };
  switch (id) {
    case ReferenceId::eq3_oe:
      return o.mi(frac(1, 2) * mp(1, -1), -2) * x.b1 * x.OE;
    case ReferenceId::eq3_eo:
      return o.mi(frac(1, 2) * mp(2, -1), -2) * x.b2 * x.EO;
    case ReferenceId::eq3_oo:
      return o.mi(frac(1, 2) * inv_q(), -2) * x.b1m1_b2m2() * x.OO;
    case ReferenceId::eq4:
      return lines(id, "abcdefghij");
    case ReferenceId::eq6:
      return lines(id, "abcdefghij");
    case ReferenceId::eq8:
      require_relation5(*table);
      return eq8(x);
    case ReferenceId::eq9:
      return lines(id, "ab");
    case ReferenceId::eq26:
      return o.mi(frac(1, 16), -6) *
             comm(o.k(mp(1, -3)) * x.b1 * o.pow(x.OE, 2) + o.k(mp(2, -3)) * x.b2 * o.pow(x.EO, 2), x.EE);
    case ReferenceId::eq29a:
      return o.mi(frac(1, 16) * mp(1, -1) * mp(2, -2), -6) * x.b1 * comm(acomm(x.OE, x.OO), x.EO);
    case ReferenceId::eq29b:
      return o.mi(frac(1, 16) * mp(1, -2) * mp(2, -1), -6) * x.b2 * comm(acomm(x.EO, x.OO), x.OE);
    case ReferenceId::eq7:
      break;
  }
  throw ReferenceError("unknown reference");
}

Expression DiffReport::difference() const { return extra - missing; }

DiffReport diff_report(const Expression& candidate, const Expression& reference) {
  if (candidate.table_ptr() != reference.table_ptr() && candidate.table() != reference.table()) {
    throw UsageError("diff_report over different symbol tables");
  }
  DiffReport report{Expression(candidate.table_ptr()), Expression(candidate.table_ptr()), {}};
  const auto& ref = reference.terms();
  const auto& cand = candidate.terms();
  for (const auto& [k, c] : ref) {
    if (!cand.count(k)) report.missing.accumulate(k, c);
  }
  for (const auto& [k, c] : cand) {
    const auto it = ref.find(k);
    if (it == ref.end()) {
      report.extra.accumulate(k, c);
    } else if (!(it->second == c)) {
      report.extra.accumulate(k, c - it->second);
      report.mismatches.push_back({k, c, it->second});
    }
  }
  return report;
}

}  // namespace fwred
