#pragma once

#include "fwred/polynomial.hpp"

#include <complex>
#include <string>

namespace fwred {

/// Reduced fraction of mass polynomials.
///
/// Canonical form: gcd(num, den) = 1 including integer content, and the
/// graded-lex leading coefficient of den is positive. Zero is 0/1.
class MassFraction {
 public:
  MassFraction() : num_(0), den_(1) {}
  MassFraction(long long n) : num_(n), den_(1) {}  // NOLINT: implicit scalar promotion
  explicit MassFraction(MassPoly num) : num_(std::move(num)), den_(1) {}
  MassFraction(MassPoly num, MassPoly den);

  static MassFraction rational(const Int& n, const Int& d);
  static MassFraction m1() { return MassFraction(MassPoly::m1()); }
  static MassFraction m2() { return MassFraction(MassPoly::m2()); }
  /// m^k for either mass, k of any sign.
  static MassFraction mass_power(int mass, int k);

  [[nodiscard]] const MassPoly& num() const { return num_; }
  [[nodiscard]] const MassPoly& den() const { return den_; }
  [[nodiscard]] bool is_zero() const { return num_.is_zero(); }
  [[nodiscard]] bool is_one() const { return num_.is_one() && den_.is_one(); }
  [[nodiscard]] bool is_constant() const { return num_.is_constant() && den_.is_constant(); }

  friend bool operator==(const MassFraction&, const MassFraction&) = default;
  MassFraction operator-() const;
  friend MassFraction operator+(const MassFraction& a, const MassFraction& b);
  friend MassFraction operator-(const MassFraction& a, const MassFraction& b) { return a + (-b); }
  friend MassFraction operator*(const MassFraction& a, const MassFraction& b);
  friend MassFraction operator/(const MassFraction& a, const MassFraction& b);
  MassFraction& operator+=(const MassFraction& o) { return *this = *this + o; }

  template <class T>
  [[nodiscard]] T evaluate(T m1, T m2) const {
    return num_.evaluate(m1, m2) / den_.evaluate(m1, m2);
  }

  [[nodiscard]] std::string to_string() const;

 private:
  struct Reduced {};
  MassFraction(MassPoly num, MassPoly den, Reduced) : num_(std::move(num)), den_(std::move(den)) {}
  void fix_sign();

  MassPoly num_;
  MassPoly den_;
};

/// Complex coefficient whose real and imaginary parts are mass fractions.
struct Coefficient {
  MassFraction re;
  MassFraction im;

  Coefficient() = default;
  Coefficient(long long n) : re(n) {}  // NOLINT: implicit scalar promotion
  Coefficient(MassFraction r) : re(std::move(r)) {}  // NOLINT
  Coefficient(MassFraction r, MassFraction i) : re(std::move(r)), im(std::move(i)) {}

  static Coefficient i() { return {MassFraction(0), MassFraction(1)}; }

  [[nodiscard]] bool is_zero() const { return re.is_zero() && im.is_zero(); }
  [[nodiscard]] Coefficient conj() const { return {re, -im}; }
  /// Multiplication by the imaginary unit.
  [[nodiscard]] Coefficient times_i() const { return {-im, re}; }

  friend bool operator==(const Coefficient&, const Coefficient&) = default;
  Coefficient operator-() const { return {-re, -im}; }
  friend Coefficient operator+(const Coefficient& a, const Coefficient& b) { return {a.re + b.re, a.im + b.im}; }
  friend Coefficient operator-(const Coefficient& a, const Coefficient& b) { return {a.re - b.re, a.im - b.im}; }
  friend Coefficient operator*(const Coefficient& a, const Coefficient& b);
  Coefficient& operator+=(const Coefficient& o);

  template <class T>
  [[nodiscard]] std::complex<T> evaluate(T m1, T m2) const {
    return {re.is_zero() ? T{0} : re.evaluate(m1, m2), im.is_zero() ? T{0} : im.evaluate(m1, m2)};
  }

  [[nodiscard]] std::string to_string() const;
};

}  // namespace fwred
