#pragma once

#include <map>
#include <vector>

#include "hlrsk/laurent.hpp"

namespace hlrsk {

// Certified numeric Laurent-coefficient extraction.  A product of factors,
// each either a finite Laurent polynomial or poly(z) * sum_{n>=0} (ratio *
// z^dir)^n, is expanded to a finite order and the requested coefficient is
// read off together with a rigorous error bound.  The bound is the classical
// torus estimate: on the polytorus |z_v| = radii[v], every dropped tail is
// dominated by a geometric series in the factor's effective ratio
// |ratio| * prod_v radii[v]^dir[v], and a coefficient of exponent e is at
// most the sup bound divided by prod_v radii[v]^e[v].

struct NumFactor {
  std::map<ExpVec, BigRat> poly;
  BigRat ratio = BigRat(0);
  ExpVec dir;
};

NumFactor numPolyFactor(std::map<ExpVec, BigRat> terms);
NumFactor numGeomFactor(std::map<ExpVec, BigRat> numer, const BigRat& ratio,
                        ExpVec dir);

// exponent vector with a single nonzero entry
ExpVec unitExp(int nvars, int var, int e);

struct NumExtraction {
  BigRat value;
  BigRat bound;
  long order = 0;
};

// Expands each infinite factor to truncation order T, doubling T until the
// certified tail bound at the target exponent drops below tol (or maxOrder is
// reached; the returned bound then reports what was achieved).  Throws
// std::domain_error if any factor has effective ratio >= 1 on the chosen
// polytorus, or on malformed input.
NumExtraction stabilizedCoefficient(const std::vector<NumFactor>& factors,
                                    int nvars,
                                    const std::vector<BigRat>& radii,
                                    const ExpVec& target, const BigRat& tol,
                                    long maxOrder = 1L << 14);

// Unit-radius convenience overload.
NumExtraction stabilizedCoefficient(const std::vector<NumFactor>& factors,
                                    int nvars, const ExpVec& target,
                                    const BigRat& tol,
                                    long maxOrder = 1L << 14);

BigRat ratPow(const BigRat& base, long e);

}  // namespace hlrsk
