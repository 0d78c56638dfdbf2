#include "fwred/render.hpp"

#include "fwred/error.hpp"
#include "fwred/serialize.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace fwred {

namespace {

// f = sign * (p/q) * m1^a1 * m2^a2 * N / D with N, D primitive, free of
// monomial factors and with positive leading coefficients.
struct Split {
  bool negative = false;
  Int p = 1;
  Int q = 1;
  int a1 = 0;
  int a2 = 0;
  MassPoly N = 1;
  MassPoly D = 1;
};

Split split(const MassFraction& f) {
  Split s;
  auto strip = [](const MassPoly& poly, Int& content, int& e1, int& e2, bool& flip) {
    content = poly.integer_content();
    const auto [d1, d2] = poly.monomial_content();
    e1 = d1;
    e2 = d2;
    MassPoly rest = poly.divided_integer(content).divided_monomial(d1, d2);
    flip = rest.leading_coefficient() < 0;
    return flip ? -rest : rest;
  };
  int n1 = 0, n2 = 0, d1 = 0, d2 = 0;
  bool flip_n = false, flip_d = false;
  s.N = strip(f.num(), s.p, n1, n2, flip_n);
  s.D = strip(f.den(), s.q, d1, d2, flip_d);
  s.negative = flip_n != flip_d;
  s.a1 = n1 - d1;
  s.a2 = n2 - d2;
  return s;
}

std::string power(const char* base, int e) { return e == 1 ? base : std::string(base) + "^" + std::to_string(e); }

void text_term(std::ostringstream& os, const Expression& a, const MonomialKey& key, const MassFraction& f,
               bool imaginary, bool first) {
  const Split s = split(f);
  if (first) {
    if (s.negative) os << "-";
  } else {
    os << (s.negative ? " - " : " + ");
  }
  std::vector<std::string> factors;
  if (s.q != 1) {
    factors.push_back("(" + s.p.str() + "/" + s.q.str() + ")");
  } else if (s.p != 1) {
    factors.push_back(s.p.str());
  }
  if (imaginary) factors.emplace_back("i");
  if (key.b1 != 0) factors.emplace_back("b1");
  if (key.b2 != 0) factors.emplace_back("b2");
  if (s.a1 != 0) factors.push_back(power("m1", s.a1));
  if (s.a2 != 0) factors.push_back(power("m2", s.a2));
  if (!s.N.is_one()) factors.push_back("(" + s.N.to_string() + ")");
  std::string out;
  for (const auto& x : factors) out += (out.empty() ? "" : " * ") + x;
  if (!s.D.is_one()) out += (out.empty() ? "1" : "") + std::string(" / (") + s.D.to_string() + ")";
  if (key.c_exp != 0) out += (out.empty() ? "" : " * ") + power("c", key.c_exp);
  if (!key.word.empty()) {
    std::string word;
    for (SymbolId id : key.word) word += (word.empty() ? "" : "*") + a.table().decl(id).name;
    out += (out.empty() ? "" : " * ") + word;
  }
  os << (out.empty() ? "1" : out);
}

std::string latex_poly(const MassPoly& p) {
  std::string s = p.to_string();
  std::string out;
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (s[k] == 'm' && k + 1 < s.size()) {
      out += std::string("m_") + s[++k];
    } else if (s[k] == '^') {
      std::size_t e = k + 1;
      while (e < s.size() && std::isdigit(static_cast<unsigned char>(s[e]))) ++e;
      out += "^{" + s.substr(k + 1, e - k - 1) + "}";
      k = e - 1;
    } else if (s[k] == '*') {
      out += ' ';
    } else {
      out += s[k];
    }
  }
  return out;
}

std::string latex_power(const std::string& base, int e) {
  return e == 1 ? base : base + "^{" + std::to_string(e) + "}";
}

void latex_term(std::ostringstream& os, const Expression& a, const MonomialKey& key, const MassFraction& f,
                bool imaginary, bool first) {
  const Split s = split(f);
  if (first) {
    if (s.negative) os << "-";
  } else {
    os << (s.negative ? " - " : " + ");
  }
  std::vector<std::string> num, den;
  if (s.p != 1) num.push_back(s.p.str());
  if (s.q != 1) den.push_back(s.q.str());
  if (s.a1 > 0) num.push_back(latex_power("m_1", s.a1));
  if (s.a2 > 0) num.push_back(latex_power("m_2", s.a2));
  if (s.a1 < 0) den.push_back(latex_power("m_1", -s.a1));
  if (s.a2 < 0) den.push_back(latex_power("m_2", -s.a2));
  if (!s.N.is_one()) num.push_back("(" + latex_poly(s.N) + ")");
  if (!s.D.is_one()) den.push_back("(" + latex_poly(s.D) + ")");
  if (key.c_exp > 0) num.push_back(latex_power("c", key.c_exp));
  if (key.c_exp < 0) den.push_back(latex_power("c", -key.c_exp));
  auto join = [](const std::vector<std::string>& v) {
    std::string out;
    for (const auto& x : v) out += (out.empty() ? "" : " ") + x;
    return out;
  };
  std::vector<std::string> parts;
  if (!den.empty()) {
    parts.push_back("\\frac{" + (num.empty() ? std::string("1") : join(num)) + "}{" + join(den) + "}");
  } else if (!num.empty()) {
    parts.push_back(join(num));
  }
  if (imaginary) parts.emplace_back("i");
  if (key.b1 != 0) parts.emplace_back("\\beta_1");
  if (key.b2 != 0) parts.emplace_back("\\beta_2");
  for (std::size_t k = 0; k < key.word.size();) {
    std::size_t e = k;
    while (e < key.word.size() && key.word[e] == key.word[k]) ++e;
    const std::string sym = "(\\mathcal{" + a.table().decl(key.word[k]).name + "})";
    parts.push_back(latex_power(sym, static_cast<int>(e - k)));
    k = e;
  }
  os << (parts.empty() ? "1" : join(parts));
}

}  // namespace

Format format_from_string(const std::string& s) {
  if (s == "text") return Format::text;
  if (s == "latex") return Format::latex;
  if (s == "json") return Format::json;
  throw UsageError("unknown output format '" + s + "'");
}

std::vector<const Expression::Terms::value_type*> display_order(const Expression& a) {
  std::vector<const Expression::Terms::value_type*> out;
  for (const auto& t : a.terms()) out.push_back(&t);
  std::stable_sort(out.begin(), out.end(), [&](const auto* x, const auto* y) {
    const int ox = a.effective_order(x->first);
    const int oy = a.effective_order(y->first);
    if (ox != oy) return ox > oy;
    if (x->first.b1 != y->first.b1) return x->first.b1 < y->first.b1;
    if (x->first.b2 != y->first.b2) return x->first.b2 < y->first.b2;
    return x->first.word < y->first.word;
  });
  return out;
}

std::string render(const Expression& a, Format format) {
  if (format == Format::json) return to_json(a).dump(2);
  if (a.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto* t : display_order(a)) {
    for (bool imaginary : {false, true}) {
      const MassFraction& f = imaginary ? t->second.im : t->second.re;
      if (f.is_zero()) continue;
      if (format == Format::text) {
        text_term(os, a, t->first, f, imaginary, first);
      } else {
        latex_term(os, a, t->first, f, imaginary, first);
      }
      first = false;
    }
  }
  return os.str();
}

}  // namespace fwred
