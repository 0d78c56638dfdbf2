#include "fwred/coefficient.hpp"

#include <stdexcept>

namespace fwred {

MassFraction::MassFraction(MassPoly num, MassPoly den) {
  if (den.is_zero()) throw std::domain_error("mass fraction with zero denominator");
  if (num.is_zero()) {
    num_ = MassPoly(0);
    den_ = MassPoly(1);
    return;
  }
  MassPoly g = gcd(num, den);
  if (!g.is_one()) {
    num = divexact(num, g);
    den = divexact(den, g);
  }
  num_ = std::move(num);
  den_ = std::move(den);
  fix_sign();
}

MassFraction MassFraction::rational(const Int& n, const Int& d) {
  return MassFraction(MassPoly(n), MassPoly(d));
}

MassFraction MassFraction::mass_power(int mass, int k) {
  const MassPoly m = MassPoly::term(Int{1}, mass == 1 ? std::abs(k) : 0, mass == 2 ? std::abs(k) : 0);
  return k >= 0 ? MassFraction(m) : MassFraction(MassPoly(1), m, Reduced{});
}

void MassFraction::fix_sign() {
  if (den_.leading_coefficient() < 0) {
    num_ = -num_;
    den_ = -den_;
  }
}

MassFraction MassFraction::operator-() const { return MassFraction(-num_, den_, Reduced{}); }

MassFraction operator+(const MassFraction& a, const MassFraction& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_ == b.den_) {
    if (a.den_.is_one()) return MassFraction(a.num_ + b.num_, a.den_, MassFraction::Reduced{});
    return MassFraction(a.num_ + b.num_, a.den_);
  }
  const MassPoly g = gcd(a.den_, b.den_);
  const MassPoly bd = divexact(b.den_, g);
  const MassPoly ad = divexact(a.den_, g);
  return MassFraction(a.num_ * bd + b.num_ * ad, a.den_ * bd);
}

MassFraction operator*(const MassFraction& a, const MassFraction& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.is_one()) return b;
  if (b.is_one()) return a;
  // Cross-cancellation keeps the product reduced without a final gcd.
  const MassPoly g1 = gcd(a.num_, b.den_);
  const MassPoly g2 = gcd(b.num_, a.den_);
  auto div = [](const MassPoly& p, const MassPoly& g) { return g.is_one() ? p : divexact(p, g); };
  MassFraction r(div(a.num_, g1) * div(b.num_, g2), div(a.den_, g2) * div(b.den_, g1), MassFraction::Reduced{});
  r.fix_sign();
  return r;
}

MassFraction operator/(const MassFraction& a, const MassFraction& b) {
  if (b.is_zero()) throw std::domain_error("division by zero mass fraction");
  MassFraction inv(b.den_, b.num_, MassFraction::Reduced{});
  inv.fix_sign();
  return a * inv;
}

std::string MassFraction::to_string() const {
  if (den_.is_one()) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

Coefficient operator*(const Coefficient& a, const Coefficient& b) {
  if (a.im.is_zero() && b.im.is_zero()) return {a.re * b.re, MassFraction{}};
  if (a.re.is_zero() && b.re.is_zero()) return {-(a.im * b.im), MassFraction{}};
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

Coefficient& Coefficient::operator+=(const Coefficient& o) {
  if (!o.re.is_zero()) re += o.re;
  if (!o.im.is_zero()) im += o.im;
  return *this;
}

std::string Coefficient::to_string() const {
  if (im.is_zero()) return re.to_string();
  if (re.is_zero()) return "i*" + im.to_string();
  return re.to_string() + " + i*" + im.to_string();
}

}  // namespace fwred
