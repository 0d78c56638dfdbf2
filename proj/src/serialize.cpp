#include "fwred/serialize.hpp"

#include "fwred/error.hpp"

#include <regex>

namespace fwred {

namespace {

template <class T>
T field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw UsageError(std::string("JSON object lacks field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw UsageError(std::string("JSON field '") + key + "' has the wrong type");
  }
}

Json fraction_json(const MassFraction& f) { return Json{{"num", to_json(f.num())}, {"den", to_json(f.den())}}; }

MassFraction fraction_from_json(const Json& j) {
  const MassPoly num = mass_poly_from_json(field<Json>(j, "num"));
  const MassPoly den = mass_poly_from_json(field<Json>(j, "den"));
  if (den.is_zero()) throw UsageError("zero denominator in JSON coefficient");
  MassFraction f(num, den);
  if (f.num() != num || f.den() != den) {
    throw UsageError("JSON coefficient is not in reduced canonical form");
  }
  return f;
}

}  // namespace

Json to_json(const MassPoly& p) {
  Json out = Json::array();
  for (const auto& t : p.terms()) out.push_back(Json{{"coef", t.coef.str()}, {"d1", t.d1}, {"d2", t.d2}});
  return out;
}

MassPoly mass_poly_from_json(const Json& j) {
  if (!j.is_array()) throw UsageError("polynomial JSON must be an array");
  std::vector<MassTerm> terms;
  for (const auto& t : j) {
    const auto coef = field<std::string>(t, "coef");
    const auto d1 = field<int>(t, "d1");
    const auto d2 = field<int>(t, "d2");
    if (d1 < 0 || d2 < 0) throw UsageError("negative exponent in polynomial JSON");
    // Plain decimal only: cpp_int would read "0x.." or a leading zero as another base.
    static const std::regex kDecimal("-?(0|[1-9][0-9]*)");
    if (!std::regex_match(coef, kDecimal)) throw UsageError("malformed integer '" + coef + "' in polynomial JSON");
    const Int value(coef);
    terms.push_back({value, d1, d2});
  }
  return MassPoly::from_terms(terms);
}

Json to_json(const Expression& a) {
  Json out = Json::array();
  const SymbolTable& t = a.table();
  for (const auto& [key, coeff] : a.terms()) {
    Json word = Json::array();
    for (SymbolId id : key.word) word.push_back(t.decl(id).name);
    out.push_back(Json{{"beta", Json::array({key.b1, key.b2})},
                       {"word", word},
                       {"c_exp", key.c_exp},
                       {"coeff", Json{{"real", fraction_json(coeff.re)}, {"imag", fraction_json(coeff.im)}}}});
  }
  return out;
}

Expression expression_from_json(const Json& j, const TablePtr& table) {
  if (!j.is_array()) throw UsageError("expression JSON must be an array of terms");
  Expression out(table);
  for (const auto& term : j) {
    const auto beta = field<std::vector<int>>(term, "beta");
    if (beta.size() != 2 || beta[0] < 0 || beta[0] > 1 || beta[1] < 0 || beta[1] > 1) {
      throw UsageError("beta exponents must be a pair of 0/1 values");
    }
    MonomialKey key;
    key.b1 = static_cast<std::uint8_t>(beta[0]);
    key.b2 = static_cast<std::uint8_t>(beta[1]);
    key.c_exp = field<int>(term, "c_exp");
    for (const auto& name : field<std::vector<std::string>>(term, "word")) {
      const auto id = table->find(name);
      if (!id) throw UsageError("unknown symbol '" + name + "' in expression JSON");
      key.word.push_back(*id);
    }
    const Json coeff = field<Json>(term, "coeff");
    out += Expression::monomial(table, key,
                                Coefficient(fraction_from_json(field<Json>(coeff, "real")),
                                            fraction_from_json(field<Json>(coeff, "imag"))));
  }
  return out;
}

Json to_json(const SymbolTable& t) {
  Json symbols = Json::array();
  for (const auto& d : t.symbols()) {
    symbols.push_back(Json{{"name", d.name},
                           {"parity", Json::array({d.parity.odd1 ? "odd" : "even", d.parity.odd2 ? "odd" : "even"})},
                           {"order", d.c_order}});
  }
  Json relations = Json::array();
  for (const auto& [a, b] : t.relations()) relations.push_back(Json::array({t.decl(a).name, t.decl(b).name}));
  return Json{{"symbols", symbols}, {"commute", relations}};
}

SymbolTable symbol_table_from_json(const Json& j) {
  SymbolTable t;
  for (const auto& s : field<Json>(j, "symbols")) {
    const auto parity = field<std::vector<std::string>>(s, "parity");
    if (parity.size() != 2) throw UsageError("parity must list two gradings");
    SymbolDecl d;
    d.name = field<std::string>(s, "name");
    for (int k = 0; k < 2; ++k) {
      if (parity[k] != "even" && parity[k] != "odd") throw UsageError("parity entries must be 'even' or 'odd'");
    }
    d.parity = {parity[0] == "odd", parity[1] == "odd"};
    d.c_order = field<int>(s, "order");
    t = declare_symbol(t, d);
  }
  for (const auto& r : field<Json>(j, "commute")) {
    const auto pair = r.get<std::vector<std::string>>();
    if (pair.size() != 2) throw UsageError("commute entries must be pairs");
    t = declare_commuting(t, pair[0], pair[1]);
  }
  return t;
}

Json to_json(const ReductionTrace& trace) {
  Json steps = Json::array();
  for (const auto& s : trace.steps) {
    steps.push_back(Json{{"round", s.round}, {"kind", to_string(s.kind)}, {"generator", to_json(s.generator)}});
  }
  return Json{{"table", to_json(trace.hamiltonian.table())},
              {"trunc_order", trace.trunc_order},
              {"steps", steps},
              {"hamiltonian", to_json(trace.hamiltonian)}};
}

ReductionTrace trace_from_json(const Json& j) {
  const auto table = std::make_shared<const SymbolTable>(symbol_table_from_json(field<Json>(j, "table")));
  ReductionTrace trace{{}, expression_from_json(field<Json>(j, "hamiltonian"), table), field<int>(j, "trunc_order")};
  for (const auto& s : field<Json>(j, "steps")) {
    trace.steps.push_back({field<int>(s, "round"), component_from_string(field<std::string>(s, "kind")),
                           expression_from_json(field<Json>(s, "generator"), table)});
  }
  return trace;
}

}  // namespace fwred
