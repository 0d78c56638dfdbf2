#include "fwred/polynomial.hpp"

#include <algorithm>
#include <sstream>

namespace fwred {

namespace {

bool graded_lex_greater(const MassTerm& a, const MassTerm& b) {
  const int da = a.d1 + a.d2;
  const int db = b.d1 + b.d2;
  if (da != db) return da > db;
  return a.d1 > b.d1;
}

}  // namespace

MassPoly MassPoly::term(const Int& coef, int d1, int d2) {
  if (d1 < 0 || d2 < 0) throw std::invalid_argument("negative exponent in mass polynomial");
  return MassPoly(Rep::monomial(Inner::monomial(coef, static_cast<std::size_t>(d2)), static_cast<std::size_t>(d1)));
}

MassPoly MassPoly::from_terms(const std::vector<MassTerm>& terms) {
  MassPoly p;
  for (const auto& t : terms) p = p + term(t.coef, t.d1, t.d2);
  return p;
}

Int MassPoly::constant_value() const {
  if (rep_.is_zero()) return Int{0};
  return rep_.coeff(0).coeff(0);
}

std::vector<MassTerm> MassPoly::terms() const {
  std::vector<MassTerm> out;
  const auto& outer = rep_.coeffs();
  for (std::size_t i = 0; i < outer.size(); ++i) {
    const auto& inner = outer[i].coeffs();
    for (std::size_t j = 0; j < inner.size(); ++j) {
      if (!inner[j].is_zero()) out.push_back({inner[j], static_cast<int>(i), static_cast<int>(j)});
    }
  }
  std::sort(out.begin(), out.end(), graded_lex_greater);
  return out;
}

Int MassPoly::leading_coefficient() const {
  if (is_zero()) return Int{0};
  // Highest total degree, then highest m1 degree.
  int best_total = -1;
  int best_d1 = -1;
  Int best;
  const auto& outer = rep_.coeffs();
  for (std::size_t i = 0; i < outer.size(); ++i) {
    const auto& inner = outer[i];
    if (inner.is_zero()) continue;
    const int total = static_cast<int>(i) + inner.degree();
    if (total > best_total || (total == best_total && static_cast<int>(i) > best_d1)) {
      best_total = total;
      best_d1 = static_cast<int>(i);
      best = inner.lc();
    }
  }
  return best;
}

int MassPoly::degree_in(int mass) const {
  if (is_zero()) return -1;
  if (mass == 1) return rep_.degree();
  int d = -1;
  for (const auto& inner : rep_.coeffs()) d = std::max(d, inner.degree());
  return d;
}

MassPoly MassPoly::leading_in(int mass) const {
  if (is_zero()) return {};
  if (mass == 1) return MassPoly(Rep(rep_.lc()));
  const int d = degree_in(2);
  std::vector<Inner> outer;
  for (const auto& inner : rep_.coeffs()) outer.emplace_back(inner.coeff(static_cast<std::size_t>(d)));
  // The result is a polynomial in m1 only.
  return MassPoly(Rep(std::move(outer)));
}

Int MassPoly::integer_content() const {
  Int g{0};
  for (const auto& inner : rep_.coeffs()) {
    for (const auto& c : inner.coeffs()) {
      g = boost::multiprecision::gcd(g, c);
      if (g == 1) return g;
    }
  }
  return g;
}

std::pair<int, int> MassPoly::monomial_content() const {
  if (is_zero()) return {0, 0};
  int a = 0;
  const auto& outer = rep_.coeffs();
  while (outer[static_cast<std::size_t>(a)].is_zero()) ++a;
  int b = -1;
  for (const auto& inner : outer) {
    if (inner.is_zero()) continue;
    int low = 0;
    while (inner.coeffs()[static_cast<std::size_t>(low)].is_zero()) ++low;
    b = b < 0 ? low : std::min(b, low);
  }
  return {a, b};
}

MassPoly MassPoly::shifted(int d1, int d2) const {
  return *this * term(Int{1}, d1, d2);
}

MassPoly MassPoly::divided_monomial(int d1, int d2) const {
  return divexact(*this, term(Int{1}, d1, d2));
}

MassPoly operator*(const MassPoly& a, const MassPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.is_constant()) return b.scaled(a.constant_value());
  if (b.is_constant()) return a.scaled(b.constant_value());
  return MassPoly(a.rep_ * b.rep_);
}

MassPoly gcd(const MassPoly& a, const MassPoly& b) {
  if (a.is_zero()) return b.leading_coefficient() < 0 ? -b : b;
  if (b.is_zero()) return a.leading_coefficient() < 0 ? -a : a;
  if (a.is_constant() || b.is_constant()) {
    return MassPoly(boost::multiprecision::gcd(a.integer_content(), b.integer_content()));
  }
  return MassPoly(MassPoly::Rep::gcd(a.rep_, b.rep_));
}

MassPoly divexact(const MassPoly& a, const MassPoly& b) {
  if (b.is_constant()) return a.divided_integer(b.constant_value());
  return MassPoly(MassPoly::Rep::exact_quotient(a.rep_, b.rep_));
}

std::string MassPoly::to_string() const {
  const auto ts = terms();
  if (ts.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : ts) {
    Int mag = t.coef < 0 ? Int(-t.coef) : t.coef;
    if (first) {
      if (t.coef < 0) os << "-";
    } else {
      os << (t.coef < 0 ? " - " : " + ");
    }
    first = false;
    bool need_star = false;
    if (mag != 1 || (t.d1 == 0 && t.d2 == 0)) {
      os << mag;
      need_star = true;
    }
    if (t.d1 > 0) {
      if (need_star) os << "*";
      os << "m1";
      if (t.d1 > 1) os << "^" << t.d1;
      need_star = true;
    }
    if (t.d2 > 0) {
      if (need_star) os << "*";
      os << "m2";
      if (t.d2 > 1) os << "^" << t.d2;
    }
  }
  return os.str();
}

}  // namespace fwred
