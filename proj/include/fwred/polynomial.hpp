#pragma once

// Dense univariate polynomials over an integral domain, nested to give the
// bivariate ring Z[m1, m2] that carries every mass-dependent coefficient.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fwred {

using Int = boost::multiprecision::cpp_int;

template <class R>
struct RingTraits;

template <>
struct RingTraits<Int> {
  static bool is_zero(const Int& a) { return a.is_zero(); }
  static Int zero() { return Int{0}; }
  static Int one() { return Int{1}; }
  static Int gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }
  static Int divexact(const Int& a, const Int& b) {
    Int q, r;
    boost::multiprecision::divide_qr(a, b, q, r);
    if (!r.is_zero()) throw std::logic_error("inexact integer division");
    return q;
  }
  static int sign(const Int& a) { return a.sign(); }
};

/// Polynomial in one variable with coefficients in R, lowest degree first.
/// Trailing zero coefficients are always trimmed, so zero is the empty vector.
template <class R>
class UPoly {
 public:
  using Traits = RingTraits<R>;

  UPoly() = default;
  explicit UPoly(R constant) {
    if (!Traits::is_zero(constant)) coeffs_.push_back(std::move(constant));
  }
  explicit UPoly(std::vector<R> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  static UPoly monomial(R coeff, std::size_t degree) {
    if (Traits::is_zero(coeff)) return {};
    std::vector<R> c(degree + 1, Traits::zero());
    c[degree] = std::move(coeff);
    return UPoly(std::move(c));
  }

  [[nodiscard]] bool is_zero() const { return coeffs_.empty(); }
  /// Degree; -1 for the zero polynomial.
  [[nodiscard]] int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  [[nodiscard]] const R& lc() const { return coeffs_.back(); }
  [[nodiscard]] const std::vector<R>& coeffs() const { return coeffs_; }
  [[nodiscard]] R coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Traits::zero(); }

  friend bool operator==(const UPoly&, const UPoly&) = default;

  UPoly operator-() const {
    UPoly r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }

  UPoly& operator+=(const UPoly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Traits::zero());
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
    trim();
    return *this;
  }
  UPoly& operator-=(const UPoly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Traits::zero());
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
    trim();
    return *this;
  }
  friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
  friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }

  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<R> c(a.coeffs_.size() + b.coeffs_.size() - 1, Traits::zero());
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (Traits::is_zero(a.coeffs_[i])) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return UPoly(std::move(c));
  }

  [[nodiscard]] UPoly scaled(const R& s) const {
    if (Traits::is_zero(s)) return {};
    UPoly r = *this;
    for (auto& c : r.coeffs_) c = c * s;
    r.trim();
    return r;
  }

  /// Divides every coefficient by s; each division must be exact.
  [[nodiscard]] UPoly divided_coeffs(const R& s) const {
    UPoly r = *this;
    for (auto& c : r.coeffs_) c = Traits::divexact(c, s);
    return r;
  }

  /// GCD of the coefficients, normalized to positive leading sign.
  [[nodiscard]] R content() const {
    R g = Traits::zero();
    for (const auto& c : coeffs_) {
      g = Traits::gcd(g, c);
      if (is_unit(g)) break;
    }
    return g;
  }

  [[nodiscard]] UPoly primitive_part() const {
    if (is_zero()) return {};
    UPoly p = divided_coeffs(content());
    return p.sign() < 0 ? -p : p;
  }

  /// Sign of the leading coefficient, recursively.
  [[nodiscard]] int sign() const { return is_zero() ? 0 : Traits::sign(lc()); }

  /// lc(b)^(deg a - deg b + 1) * a  mod  b.
  static UPoly pseudo_remainder(UPoly a, const UPoly& b) {
    if (b.is_zero()) throw std::domain_error("pseudo-remainder by zero polynomial");
    const int db = b.degree();
    int steps = a.degree() - db + 1;
    while (!a.is_zero() && a.degree() >= db) {
      const int shift = a.degree() - db;
      R lead = a.lc();
      a = a.scaled(b.lc()) - UPoly::monomial(std::move(lead), static_cast<std::size_t>(shift)) * b;
      --steps;
    }
    for (; steps > 0; --steps) a = a.scaled(b.lc());
    return a;
  }

  /// Exact quotient a / b; throws when b does not divide a.
  static UPoly exact_quotient(UPoly a, const UPoly& b) {
    if (b.is_zero()) throw std::domain_error("division by zero polynomial");
    if (a.is_zero()) return {};
    if (a.degree() < b.degree()) throw std::logic_error("inexact polynomial division");
    std::vector<R> q(static_cast<std::size_t>(a.degree() - b.degree() + 1), Traits::zero());
    while (!a.is_zero()) {
      const int shift = a.degree() - b.degree();
      if (shift < 0) throw std::logic_error("inexact polynomial division");
      R t = Traits::divexact(a.lc(), b.lc());
      a -= UPoly::monomial(t, static_cast<std::size_t>(shift)) * b;
      q[static_cast<std::size_t>(shift)] = std::move(t);
    }
    return UPoly(std::move(q));
  }

  /// GCD by the primitive polynomial remainder sequence; positive leading sign.
  static UPoly gcd(const UPoly& a, const UPoly& b) {
    if (a.is_zero()) return b.primitive_part().scaled(abs_content(b));
    if (b.is_zero()) return a.primitive_part().scaled(abs_content(a));
    R c = Traits::gcd(a.content(), b.content());
    UPoly p = a.primitive_part();
    UPoly q = b.primitive_part();
    if (p.degree() < q.degree()) std::swap(p, q);
    while (!q.is_zero()) {
      if (q.degree() == 0) {
        p = UPoly(Traits::one());
        break;
      }
      UPoly r = pseudo_remainder(p, q);
      p = std::move(q);
      q = r.primitive_part();
    }
    return p.primitive_part().scaled(c);
  }

 private:
  static bool is_unit(const R& g) {
    if constexpr (std::is_same_v<R, Int>) {
      return g == 1;
    } else {
      return g.degree() == 0 && RingTraits<R>::is_unit_constant(g);
    }
  }
  static R abs_content(const UPoly& p) { return p.content(); }

  void trim() {
    while (!coeffs_.empty() && Traits::is_zero(coeffs_.back())) coeffs_.pop_back();
  }

  std::vector<R> coeffs_;
};

template <class R>
struct RingTraits<UPoly<R>> {
  using P = UPoly<R>;
  static bool is_zero(const P& a) { return a.is_zero(); }
  static P zero() { return P{}; }
  static P one() { return P(RingTraits<R>::one()); }
  static P gcd(const P& a, const P& b) { return P::gcd(a, b); }
  static P divexact(const P& a, const P& b) { return P::exact_quotient(a, b); }
  static int sign(const P& a) { return a.sign(); }
  static bool is_unit_constant(const P& a) {
    if constexpr (std::is_same_v<R, Int>) {
      return a.coeffs().size() == 1 && a.coeffs()[0] == 1;
    } else {
      return a.coeffs().size() == 1 && RingTraits<R>::is_unit_constant(a.coeffs()[0]);
    }
  }
};

/// One term c * m1^d1 * m2^d2 of a mass polynomial.
struct MassTerm {
  Int coef;
  int d1 = 0;
  int d2 = 0;
  friend bool operator==(const MassTerm&, const MassTerm&) = default;
};

/// Polynomial in the two masses with integer coefficients. Stored as a
/// polynomial in m1 whose coefficients are polynomials in m2.
class MassPoly {
 public:
  using Inner = UPoly<Int>;
  using Rep = UPoly<Inner>;

  MassPoly() = default;
  explicit MassPoly(Rep rep) : rep_(std::move(rep)) {}
  MassPoly(long long constant) : rep_(Inner(Int{constant})) {}  // NOLINT: implicit on purpose
  explicit MassPoly(const Int& constant) : rep_(Inner(constant)) {}

  static MassPoly m1() { return MassPoly(Rep::monomial(Inner(Int{1}), 1)); }
  static MassPoly m2() { return MassPoly(Rep(Inner::monomial(Int{1}, 1))); }
  static MassPoly term(const Int& coef, int d1, int d2);
  static MassPoly from_terms(const std::vector<MassTerm>& terms);

  [[nodiscard]] const Rep& rep() const { return rep_; }
  [[nodiscard]] bool is_zero() const { return rep_.is_zero(); }
  [[nodiscard]] bool is_constant() const { return rep_.degree() <= 0 && (rep_.is_zero() || rep_.lc().degree() == 0); }
  [[nodiscard]] bool is_one() const { return is_constant() && !is_zero() && constant_value() == 1; }
  /// Value of a constant polynomial (zero for the zero polynomial).
  [[nodiscard]] Int constant_value() const;

  /// Terms in graded-lexicographic order, m1 > m2, leading term first.
  [[nodiscard]] std::vector<MassTerm> terms() const;
  /// Coefficient of the graded-lex leading term.
  [[nodiscard]] Int leading_coefficient() const;
  [[nodiscard]] int degree_in(int mass) const;
  /// Coefficient of mass^degree_in(mass), as a polynomial in the other mass.
  [[nodiscard]] MassPoly leading_in(int mass) const;
  /// Integer content, always positive for nonzero polynomials.
  [[nodiscard]] Int integer_content() const;
  /// Largest m1^a m2^b dividing every term.
  [[nodiscard]] std::pair<int, int> monomial_content() const;
  [[nodiscard]] MassPoly shifted(int d1, int d2) const;  // multiply by m1^d1 m2^d2, d >= 0
  [[nodiscard]] MassPoly divided_monomial(int d1, int d2) const;

  template <class T>
  [[nodiscard]] T evaluate(T m1, T m2) const {
    T result{0};
    for (int i = rep_.degree(); i >= 0; --i) {
      const auto& inner = rep_.coeffs()[static_cast<std::size_t>(i)];
      T v{0};
      for (int j = inner.degree(); j >= 0; --j) v = v * m2 + static_cast<T>(inner.coeffs()[static_cast<std::size_t>(j)]);
      result = result * m1 + v;
    }
    return result;
  }

  friend bool operator==(const MassPoly&, const MassPoly&) = default;
  MassPoly operator-() const { return MassPoly(-rep_); }
  friend MassPoly operator+(const MassPoly& a, const MassPoly& b) { return MassPoly(a.rep_ + b.rep_); }
  friend MassPoly operator-(const MassPoly& a, const MassPoly& b) { return MassPoly(a.rep_ - b.rep_); }
  friend MassPoly operator*(const MassPoly& a, const MassPoly& b);
  [[nodiscard]] MassPoly scaled(const Int& s) const { return MassPoly(rep_.scaled(Inner(s))); }
  [[nodiscard]] MassPoly divided_integer(const Int& s) const { return MassPoly(rep_.divided_coeffs(Inner(s))); }

  friend MassPoly gcd(const MassPoly& a, const MassPoly& b);
  friend MassPoly divexact(const MassPoly& a, const MassPoly& b);

  /// Plain-text form, e.g. "m1^2 - 2*m1*m2 + 3".
  [[nodiscard]] std::string to_string() const;

 private:
  Rep rep_;
};

}  // namespace fwred
