#pragma once

#include <map>
#include <string>
#include <vector>

#include "hlrsk/laurent.hpp"
#include "hlrsk/rsk.hpp"
#include "hlrsk/signatures.hpp"

namespace hlrsk {

struct CauchyReport {
  Scalar lhs;
  Scalar rhs;
  bool equal = false;
};

// variant "A": one-variable generating identity with the (1-txy)/(1-xy)
// prefactor, checked as a windowed series in x, y up to degrees (k, l);
// the reported lhs/rhs are the x^k y^l coefficients and `equal` covers the
// whole window.  variant "AA": mixed-length coefficient identity with the
// r-sum.  variant "BB": same-length coefficient identity.  For A/AA the
// lengths are len(nu) + 1 = len(mu); for BB they are equal.
CauchyReport verifySkewCauchy(const std::string& variant, const Sig& mu,
                              const Sig& nu, long k, long l);

struct BijectReport {
  bool ok = true;
  long tuples = 0;
  std::string firstBad;
};

// Termwise refinement of the mixed-length identity: for every admissible
// (lambda, r, rho) the forward one-cell law balances the inverse one against
// the branching weights.  Checks every tuple where either side is nonzero.
BijectReport verifyBijectivization(const Sig& mu, const Sig& nu, long k,
                                   long l);

struct SignatureBasis {
  int length = 0;
  long partBound = 0;
  std::vector<Sig> states;
  std::map<Sig, int> index;
};

SignatureBasis makeBasis(int length, long partBound);

using Matrix = std::vector<std::vector<Scalar>>;

// kind 'A': raising by `degree` with same-length phi weights; kind 'B':
// lowering with same-length psi weights.  Images outside the part window
// [0, partBound] are dropped (documented truncation).
Matrix operatorMatrix(char kind, long degree, const SignatureBasis& basis);

struct CommutationReport {
  bool ok = true;
  std::string detail;
};

// Verifies A_k A_l = A_l A_k and B_k B_l = B_l B_k on the whole basis (the
// intermediate states of those products never leave the window), and
// A_k B_l = B_l A_k on matrix elements whose row and column states have all
// parts inside [maxDegree, partBound - maxDegree]; outside that band the
// window truncation can drop real intermediate states in one order but not
// the other, so only the band is a faithful test.
CommutationReport verifyCommutation(const SignatureBasis& basis,
                                    long maxDegree);

}  // namespace hlrsk
