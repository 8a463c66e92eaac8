#pragma once

#include <string>
#include <vector>

#include "hlrsk/laurent.hpp"
#include "hlrsk/numseries.hpp"
#include "hlrsk/scalar.hpp"
#include "hlrsk/signatures.hpp"

namespace hlrsk {

// ---- partition utilities (Young diagrams as nonnegative signatures) -------

// all partitions with weight <= maxWeight, including the empty one
std::vector<Sig> partitionsUpTo(long maxWeight);
Sig conjugatePartition(const Sig& la);
// la contains mu and la/mu has at most one box per column
bool isHorizontalStrip(const Sig& la, const Sig& mu);
// Gaussian binomial [n choose k] in the symbol q
Scalar gaussianBinomial(long n, long k, const Scalar& q);

// ---- one-variable branching weights on diagrams ---------------------------
// The column-multiplicity family (Hall-Littlewood corner): on a horizontal
// strip la/mu, P_{la/mu}(x) = psi * x^{|la/mu|} and Q_{la/mu}(x) =
// phi * x^{|la/mu|}; zero off horizontal strips.
Scalar hlPsiDiagram(const Sig& la, const Sig& mu, const Scalar& t);
Scalar hlPhiDiagram(const Sig& la, const Sig& mu, const Scalar& t);
Scalar hlBNorm(const Sig& la, const Scalar& t);  // Q_la = b_la * P_la

// The row-gap family (q-Whittaker corner), same conventions.
Scalar qwPsiDiagram(const Sig& la, const Sig& mu, const Scalar& q);
Scalar qwPhiDiagram(const Sig& la, const Sig& mu, const Scalar& q);
Scalar qwBNorm(const Sig& la, const Scalar& q);

// ---- full polynomials as series blocks ------------------------------------

enum class Corner { HL, QW };

// P_la / Q_la of the chosen one-parameter family in the block variables
// listed by varSlots; param is the deformation symbol.
Block cornerP(Corner fam, const Sig& la, const BlockVarsPtr& vars,
              const std::vector<int>& varSlots, const Scalar& param);
Block cornerQ(Corner fam, const Sig& la, const BlockVarsPtr& vars,
              const std::vector<int>& varSlots, const Scalar& param);

// sum over r-subsets of row positions of q^{-(selected parts)} t^{(positions)}
// with the infinite tail of zero parts summed in closed form
Scalar elementaryObservable(const Sig& la, long r, const Scalar& q,
                            const Scalar& t);

// ---- verification ---------------------------------------------------------

struct VerificationReport {
  std::string id;
  bool equal = false;
  std::string detail;  // first differing monomial when unequal
  long termsCompared = 0;
  std::string truncation;  // window metadata
};

// Exact windowed-series check of one measure observable identity.
// id in {mes-1..4, mes-11..44}.  Caps: M, N <= 3, r <= 2, D <= 5; throws
// std::invalid_argument beyond them or on an unknown id.
VerificationReport verifyMeasureIdentity(const std::string& id, int M, int N,
                                         long r, long D);

// Exact two-level process observable check (two block variables per X/Y
// set).  Caps: r1, r2 <= 2, D <= 4.
VerificationReport verifyProcessObservable(long r1, long r2, long D);

// ---- model formula evaluation ---------------------------------------------

struct ModelParams {
  std::vector<long> ms, ns;   // points
  std::vector<long> ks;       // exponents (two-point ids)
  std::vector<int> layers;    // layer selectors s(l) (two-layer ids)
  std::vector<BigRat> aParams, bParams;
  BigRat tValue{0};
  BigRat tau{0};
  long order = 0;  // tau-series order
  std::vector<BigRat> xParams, yParams;  // mixed-measure ids
  long r = 0;                            // observable order for those ids
};

struct ModelValue {
  std::string id, mode;
  // stabilized: certified extraction value and rigorous tail bound.
  // tau-series: series total at the given tau; bound is the size of the
  // last retained term (an indicator, not a certificate).
  double value = 0.0;
  double bound = 0.0;
  long order = 0;
  std::vector<Scalar> tauSeries;  // tau-series mode coefficients
};

// mode "stabilized" for {sixv-2pt, twolayer-kpt, qWHL-a, qWHL-b}, mode
// "tau-series" for {asep-2pt, twolayerAsep-kpt}.  Throws std::domain_error
// with an infeasible-expansion message when no radius assignment makes all
// geometric ratios contract, std::invalid_argument on bad ids/params.
ModelValue evaluateModelFormula(const std::string& id, const ModelParams& p,
                                const std::string& mode,
                                const BigRat& tol = BigRat(1, 10000000000LL));

// Exact tau-polynomial for the ASEP ids, coefficients in the t-symbol.
std::vector<Scalar> asepMomentTauSeries(const std::string& id,
                                        const ModelParams& p, long order);

// Optional nested-circle quadrature cross-check for the mixed-measure ids;
// throws std::domain_error when the radius feasibility test fails.
double quadratureMixedMeasure(const std::string& id, const ModelParams& p,
                              int points = 2048);

}  // namespace hlrsk
