#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace hlrsk {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// Fixed, ordered indeterminate list for exact coefficients.  The deformation
// parameter t comes first, then the second parameter q, the perturbation eps,
// two formal bookkeeping variables x and y, the homogeneous product symbol u,
// and three inhomogeneity parameters per lattice direction.
enum Var : int {
  VT = 0,
  VQ,
  VEPS,
  VX,
  VY,
  VU,
  VA1,
  VA2,
  VA3,
  VB1,
  VB2,
  VB3,
  NVARS
};

const char* varName(int v);
std::optional<int> varIndex(const std::string& name);

using Mono = std::array<int16_t, NVARS>;

Mono monoOne();
Mono monoVar(int v, int e = 1);
Mono monoMul(const Mono& a, const Mono& b);
int monoDegree(const Mono& m);
// graded lexicographic: total degree first, then lex on the variable order.
bool monoLess(const Mono& a, const Mono& b);

// Sparse multivariate polynomial with integer coefficients.  Terms are kept
// sorted in decreasing monomial order with no zero coefficients.
class Poly {
 public:
  struct Term {
    Mono m;
    BigInt c;
  };

  Poly() = default;
  static Poly zero();
  static Poly one();
  static Poly constant(const BigInt& c);
  static Poly variable(int v, int e = 1);
  static Poly monomial(const Mono& m, const BigInt& c);
  static Poly fromTerms(std::vector<Term> terms);  // normalizes

  bool isZero() const { return terms_.empty(); }
  bool isConstant() const;
  bool isOne() const;
  const std::vector<Term>& terms() const { return terms_; }
  int totalDegree() const;        // -1 for zero
  int degreeIn(int v) const;      // -1 for zero
  bool involves(int v) const;

  Poly operator-() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }

  Poly mulMono(const Mono& m, const BigInt& c) const;
  Poly pow(unsigned n) const;

  const BigInt& leadingCoeff() const;  // under graded-lex; poly must be nonzero
  BigInt content() const;              // gcd of coefficients, sign of leading
  Mono monomialContent() const;        // per-variable minimum exponent

  // view as univariate in variable v: coefficient of v^k, as a Poly without v
  Poly coeffOfVarPow(int v, int k) const;
  Poly leadingCoeffIn(int v) const;

  // substitute variable v by the given polynomial
  Poly substitute(int v, const Poly& value) const;

  // evaluate at a full rational point (indexed by Var)
  BigRat evaluate(const std::array<BigRat, NVARS>& point) const;

  std::string toString() const;

  static Poly divExact(const Poly& a, const Poly& b);  // asserts divisibility
  // pseudo-division in variable v: lc(b)^k * a = q*b + r with deg_v r < deg_v b
  static void pseudoDivide(const Poly& a, const Poly& b, int v, Poly& q, Poly& r);
  static Poly gcd(const Poly& a, const Poly& b);

 private:
  void normalize();
  std::vector<Term> terms_;
};

BigInt intGcd(const BigInt& a, const BigInt& b);

}  // namespace hlrsk
