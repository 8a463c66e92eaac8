#pragma once

#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "hlrsk/rsk.hpp"
#include "hlrsk/scalar.hpp"
#include "hlrsk/signatures.hpp"

namespace hlrsk {

// Two-dimensional growth model on the quadrant.  Each cell (i,j), i,j >= 1,
// consumes an independent geometric-type input r and applies the randomized
// column-insertion step to the three previously filled neighbours; boundary
// rows carry empty / all-zero signatures.

struct FieldParams {
    std::vector<BigRat> aParams;  // a_1 .. a_maxI, positive
    std::vector<BigRat> bParams;  // b_1 .. b_maxJ, positive
    BigRat tValue;                // in [0,1)
    long maxI = 0;
    long maxJ = 0;
    std::uint64_t seed = 0;
};

// Throws std::invalid_argument unless all parameters are in range and
// a_i * b_j < 1 for every cell of the extent.
void validateFieldParams(const FieldParams& params);

struct FieldState {
    FieldParams params;
    // sigs[i][j] = signature of length j at (i,j), 0 <= i <= maxI,
    // 0 <= j <= maxJ.  inputs[i][j] = consumed input count (i,j >= 1; the
    // boundary entries stay 0 and are meaningless).
    std::vector<std::vector<Sig>> sigs;
    std::vector<std::vector<long>> inputs;
};

// Mass P(r = d) = (1 - t*1_{d>=1}) (ab)^d (1-ab)/(1-t*ab) at rational
// parameters; throws std::domain_error unless 0 < ab < 1.
BigRat inputCountMass(const BigRat& a, const BigRat& b, const BigRat& t,
                      long d);

// Tail P(r >= d); closed form, same domain checks.
BigRat inputCountTail(const BigRat& a, const BigRat& b, const BigRat& t,
                      long d);

// Same mass as a rational function of the symbols ab (one scalar for the
// product) and t.
Scalar inputCountMassSymbolic(const Scalar& ab, const Scalar& t, long d);

// Samples the whole field.  Input counts are drawn by exact inverse-CDF
// against one 128-bit uniform per cell; the insertion step runs on a per-cell
// rng derived from (seed, i, j), so the fill is reproducible and order
// independent.  The returned state is re-checked against the interlacing
// constraints.
FieldState sampleField(const FieldParams& params);

// Serialization: params, seed and the row-major signature arrays.
std::string fieldStateToJson(const FieldState& state);
FieldState fieldStateFromJson(const std::string& text);

// Staircase path from (m_1, 0) up-left to (0, n_k); ms decreasing, ns
// increasing, all positive.
struct DownRightPath {
    std::vector<long> ms;
    std::vector<long> ns;
};

void validatePath(const DownRightPath& path);

// All lattice points of the path in chain order, from (m_1,0) to (0,n_k).
std::vector<std::pair<long, long>> pathLatticePoints(const DownRightPath& path);

// Exact distribution weight of a full chain of signatures along the path:
// every vertical step contributes a one-variable P-branching factor in b_j,
// every horizontal step a one-variable Q-branching factor in a_i, and the
// product is normalized by prod (1 - a*b)/(1 - t*a*b) over the cells under
// the path.  aVars/bVars may be symbolic; the result is rational in t (the
// global t slot) and those scalars.  Throws std::invalid_argument when the
// chain does not interlace or has wrong boundary values.  normalized=false
// drops the cell-product factor, which is the same for every chain of the
// path; with fully symbolic a/b this keeps all denominators univariate.
Scalar hlProcessWeightSymbolic(const DownRightPath& path,
                               const std::vector<Sig>& sigs,
                               const std::vector<Scalar>& aVars,
                               const std::vector<Scalar>& bVars,
                               bool normalized = true);

// Numeric wrapper: parameters from FieldParams, t substituted.
Scalar hlProcessWeight(const DownRightPath& path, const std::vector<Sig>& sigs,
                       const FieldParams& params);

// Exact probability that the sampled field agrees with `sigs` along the
// path, obtained by transfer-matrix dynamic programming over all cell
// fillings under the path.  The input of each cell is recovered from the
// size telescoping, and candidate signatures are pruned by the size/part
// monotonicity toward the pinned targets.  Same parameter conventions as
// above.
Scalar pathMarginalProbabilitySymbolic(const DownRightPath& path,
                                       const std::vector<Sig>& sigs,
                                       const std::vector<Scalar>& aVars,
                                       const std::vector<Scalar>& bVars);

Scalar pathMarginalProbability(const DownRightPath& path,
                               const std::vector<Sig>& sigs,
                               const FieldParams& params);

// Joint law of the chain along the path over all chains whose largest part
// is at most maxPart, keyed by the full chain in lattice-point order
// (including the deterministic end values).  One sweep over the cells below
// the path; exact for every returned chain because the interior cells are
// dominated by the chain corners.  Much cheaper than calling the per-chain
// marginal in a loop.  normalized=false drops the same common factor as
// above, so law and chain weights stay directly comparable.
std::map<std::vector<Sig>, Scalar> pathMarginalLawSymbolic(
    const DownRightPath& path, long maxPart, const std::vector<Scalar>& aVars,
    const std::vector<Scalar>& bVars, bool normalized = true);

}  // namespace hlrsk
