#include "hlrsk/scalar.hpp"

#include <cassert>
#include <stdexcept>

namespace hlrsk {

Scalar Scalar::reduced(Poly n, Poly d) {
  if (d.isZero()) throw std::domain_error("division by zero scalar");
  if (n.isZero()) return Scalar(Poly::zero(), Poly::one());
  if (!d.isOne()) {
    Poly g = Poly::gcd(n, d);
    if (!g.isOne()) {
      n = Poly::divExact(n, g);
      d = Poly::divExact(d, g);
    }
    BigInt cn = n.content(), cd = d.content();
    BigInt cg = intGcd(cn, cd);
    if (cg != 1 && cg != 0) {
      n = Poly::divExact(n, Poly::constant(cg));
      d = Poly::divExact(d, Poly::constant(cg));
    }
    if (d.leadingCoeff() < 0) {
      n = -n;
      d = -d;
    }
  }
  return Scalar(std::move(n), std::move(d));
}

Scalar Scalar::fromRational(const BigInt& p, const BigInt& q) {
  return reduced(Poly::constant(p), Poly::constant(q));
}

Scalar Scalar::fromPoly(const Poly& p) { return Scalar(p, Poly::one()); }

Scalar Scalar::fraction(const Poly& n, const Poly& d) { return reduced(n, d); }

Scalar Scalar::variable(int v, int e) {
  if (e >= 0) return Scalar(Poly::variable(v, e), Poly::one());
  return Scalar(Poly::one(), Poly::variable(v, -e));
}

Scalar Scalar::operator-() const { return Scalar(-num_, den_); }

Scalar Scalar::operator+(const Scalar& o) const {
  if (isZero()) return o;
  if (o.isZero()) return *this;
  if (den_ == o.den_) return reduced(num_ + o.num_, den_);
  Poly g = Poly::gcd(den_, o.den_);
  if (g.isOne())
    return reduced(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
  Poly da = Poly::divExact(den_, g);
  Poly db = Poly::divExact(o.den_, g);
  return reduced(num_ * db + o.num_ * da, da * o.den_);
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
  if (isZero() || o.isZero()) return Scalar();
  Poly g1 = Poly::gcd(num_, o.den_);
  Poly g2 = Poly::gcd(o.num_, den_);
  Poly n1 = g1.isOne() ? num_ : Poly::divExact(num_, g1);
  Poly d2 = g1.isOne() ? o.den_ : Poly::divExact(o.den_, g1);
  Poly n2 = g2.isOne() ? o.num_ : Poly::divExact(o.num_, g2);
  Poly d1 = g2.isOne() ? den_ : Poly::divExact(den_, g2);
  return reduced(n1 * n2, d1 * d2);
}

Scalar Scalar::operator/(const Scalar& o) const {
  if (o.isZero()) throw std::domain_error("division by zero scalar");
  return *this * o.inverse();
}

bool Scalar::operator==(const Scalar& o) const {
  return num_ == o.num_ && den_ == o.den_;
}

Scalar Scalar::inverse() const {
  if (isZero()) throw std::domain_error("inverse of zero");
  Poly n = den_, d = num_;
  if (d.leadingCoeff() < 0) {
    n = -n;
    d = -d;
  }
  return Scalar(std::move(n), std::move(d));
}

Scalar Scalar::pow(long n) const {
  if (n == 0) return Scalar(1);
  Scalar base = n < 0 ? inverse() : *this;
  unsigned long e = n < 0 ? -(unsigned long)n : (unsigned long)n;
  Scalar r(1);
  while (e) {
    if (e & 1) r = r * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return r;
}

Scalar Scalar::substitute(int v, const Scalar& value) const {
  // substitute into numerator and denominator separately; value is a scalar,
  // so clear its denominators by scaling both sides
  auto subPoly = [&](const Poly& p) -> Scalar {
    int d = p.degreeIn(v);
    if (d < 0 || !p.involves(v)) return Scalar::fromPoly(p);
    Scalar r;
    for (int k = d; k >= 0; --k) {
      Poly ck = p.coeffOfVarPow(v, k);
      r = r * value + Scalar::fromPoly(ck);
    }
    return r;
  };
  Scalar sn = subPoly(num_);
  Scalar sd = subPoly(den_);
  return sn / sd;
}

BigRat Scalar::evaluate(const std::array<BigRat, NVARS>& point) const {
  BigRat d = den_.evaluate(point);
  if (d == 0) throw std::domain_error("scalar evaluation hits pole");
  return num_.evaluate(point) / d;
}

double Scalar::evaluateDouble(const std::array<BigRat, NVARS>& point) const {
  return static_cast<double>(evaluate(point));
}

std::string Scalar::toString() const {
  if (den_.isOne()) return num_.toString();
  return "(" + num_.toString() + ")/(" + den_.toString() + ")";
}

Scalar sT() { return Scalar::variable(VT); }
Scalar sQ() { return Scalar::variable(VQ); }
Scalar sEps() { return Scalar::variable(VEPS); }
Scalar sU() { return Scalar::variable(VU); }
Scalar sVar(int v) { return Scalar::variable(v); }

}  // namespace hlrsk
