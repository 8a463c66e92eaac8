#pragma once

#include <string>

#include "hlrsk/poly.hpp"

namespace hlrsk {

// Element of the fraction field of the fixed polynomial ring.  Kept in
// canonical form: gcd(num, den) is a unit, integer contents are coprime,
// and the denominator's leading coefficient (graded-lex) is positive.
class Scalar {
 public:
  Scalar() : num_(Poly::zero()), den_(Poly::one()) {}
  explicit Scalar(long v) : num_(Poly::constant(v)), den_(Poly::one()) {}
  explicit Scalar(const BigInt& v) : num_(Poly::constant(v)), den_(Poly::one()) {}
  static Scalar fromRational(const BigInt& p, const BigInt& q);
  static Scalar fromPoly(const Poly& p);
  static Scalar fraction(const Poly& n, const Poly& d);  // reduces
  static Scalar variable(int v, int e = 1);

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }

  bool isZero() const { return num_.isZero(); }
  bool isOne() const { return num_.isOne() && den_.isOne(); }

  Scalar operator-() const;
  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }
  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  Scalar inverse() const;
  Scalar pow(long n) const;  // negative n inverts

  Scalar substitute(int v, const Scalar& value) const;
  BigRat evaluate(const std::array<BigRat, NVARS>& point) const;
  double evaluateDouble(const std::array<BigRat, NVARS>& point) const;

  std::string toString() const;  // "num/den", den omitted when 1

 private:
  Scalar(Poly n, Poly d) : num_(std::move(n)), den_(std::move(d)) {}
  static Scalar reduced(Poly n, Poly d);
  Poly num_, den_;
};

inline Scalar operator*(long a, const Scalar& s) { return Scalar(a) * s; }

// convenience symbols
Scalar sT();
Scalar sQ();
Scalar sEps();
Scalar sU();
Scalar sVar(int v);

}  // namespace hlrsk
