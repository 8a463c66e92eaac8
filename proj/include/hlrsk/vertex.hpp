#pragma once

#include <map>
#include <random>
#include <utility>
#include <vector>

#include "hlrsk/rsk.hpp"

namespace hlrsk {

// Stochastic six-vertex chain on the quadrant in height form.  d(i,j) is the
// height at lattice point (i,j) with boundary d(i,0) = 0, d(0,j) = j.  A cell
// (i,j) reads nw = d(i-1,j), sw = d(i-1,j-1), se = d(i,j-1) and emits
// ne = d(i,j).  Admissible inputs satisfy nw in {sw, sw+1} and
// se in {sw-1, sw}; the output always lies in {se, se+1} and {nw-1, nw}.

// Exact one-cell law: list of (ne, probability), rational in t and the cell
// parameter u = a*b.  Throws std::invalid_argument on inadmissible input.
std::vector<std::pair<long long, Scalar>> sixVertexLocalLaw(long long nw,
                                                            long long sw,
                                                            long long se,
                                                            const Scalar& u);

// One sampled cell output at numeric parameters.
long long sixVertexLocalStep(long long nw, long long sw, long long se,
                             double ab, double t, std::mt19937_64& rng);

// Exact joint law of the full height grid {d(i,j)}, 1 <= i <= maxM,
// 1 <= j <= maxN, flattened row-major (i outer, j inner).  aParams/bParams
// supply per-row and per-column scalars; the cell parameter is their product.
std::map<std::vector<long long>, Scalar> sixVertexGridLaw(
    long maxM, long maxN, const std::vector<Scalar>& aParams,
    const std::vector<Scalar>& bParams, long cellCap = 12);

// Exact expectation of prod_i t^{ks[i] * d(ms[i], ns[i])} over the quadrant
// extent maxM x maxN by exhaustive enumeration.
Scalar sixVertexExactExpectation(const std::vector<long>& ms,
                                 const std::vector<long>& ns,
                                 const std::vector<long>& ks, long maxM,
                                 long maxN, const std::vector<Scalar>& aParams,
                                 const std::vector<Scalar>& bParams,
                                 long cellCap = 12);

// Sampled height grid at numeric parameters; grid[i-1][j-1] = d(i,j).
std::vector<std::vector<long long>> sampleSixVertexGrid(
    long maxM, long maxN, const std::vector<BigRat>& aParams,
    const std::vector<BigRat>& bParams, const BigRat& tValue, uint64_t seed);

// Column-count projection of a signature: (number of parts equal to 0, ...,
// number of parts equal to c-1).
using DTuple = std::vector<long long>;
DTuple projectColumns(const Sig& s, int c);

struct KernelKey {
  DTuple nw, sw, se;
  bool operator<(const KernelKey& o) const;
  bool operator==(const KernelKey& o) const;
};

using KernelRow = std::vector<std::pair<DTuple, Scalar>>;

// Markov kernel of the first-c-columns projection of the one-cell update.
// Rows are derived on demand by realizing the column data with explicit
// signatures (several representatives: minimal fill, fill shifted up by two,
// and both lengths), marginalizing the exact cell update over the input count
// r with a detected stabilization tail, and asserting that every
// representative yields the same law.  Entries are rational in t and the
// homogeneous cell symbol u.
class ProjectionKernel {
 public:
  explicit ProjectionKernel(int c);

  int columns() const { return c_; }

  // Derives and caches.  Throws std::invalid_argument when no pattern
  // representative realizes the key, std::logic_error on representative
  // dependence (which would falsify the projection's Markov property).
  const KernelRow& row(const KernelKey& key) const;

  const std::map<KernelKey, KernelRow>& rows() const { return cache_; }

 private:
  int c_;
  mutable std::map<KernelKey, KernelRow> cache_;
};

// Kernel with every key reachable on an extent x extent quadrant precomputed.
ProjectionKernel deriveProjectionKernel(int c, long extent = 3);

// Exact joint law of the projected tuple grid on a quadrant, via kernel rows
// with u substituted by a_i * b_j per cell.  Grid flattened row-major.
std::map<std::vector<DTuple>, Scalar> projectedGridLaw(
    const ProjectionKernel& kernel, long maxM, long maxN,
    const std::vector<Scalar>& aParams, const std::vector<Scalar>& bParams,
    long cellCap = 12);

// Exact expectation of prod_i t^{ks[i] * h_{ss[i]}(ms[i], ns[i])} where
// h_s = d_0 + ... + d_s, via the projected chain.
Scalar projectedExactExpectation(const ProjectionKernel& kernel,
                                 const std::vector<long>& ms,
                                 const std::vector<long>& ns,
                                 const std::vector<long>& ks,
                                 const std::vector<int>& ss, long maxM,
                                 long maxN, const std::vector<Scalar>& aParams,
                                 const std::vector<Scalar>& bParams,
                                 long cellCap = 12);

// One row-transfer sweep: pre and post are tuple rows indexed by lattice
// position i = 0..I (post[0] is the boundary tuple of the new row).  Factor i
// is the kernel probability of post[i] from (nw = post[i-1], sw = pre[i-1],
// se = pre[i]); the product over i is the conditional probability of the post
// row.  Entries stay rational in t and u.
std::vector<Scalar> rowUpdateFactors(const ProjectionKernel& kernel,
                                     const std::vector<DTuple>& pre,
                                     const std::vector<DTuple>& post);
Scalar rowUpdateProbability(const ProjectionKernel& kernel,
                            const std::vector<DTuple>& pre,
                            const std::vector<DTuple>& post);

// The u -> 1 deterministic continuation of a row: each cell keeps the unique
// output whose probability tends to 1.
std::vector<DTuple> frozenRowUpdate(const ProjectionKernel& kernel,
                                    const std::vector<DTuple>& pre,
                                    const DTuple& boundary);

// Substitute u = 1 - (1-t)*eps and split into (value at eps = 0, coefficient
// of eps^1).  Requires the denominator to be regular at eps = 0.
std::pair<Scalar, Scalar> epsilonExpand(const Scalar& f);

// Continuous-time limit of a kernel row: the eps^0 part selects the frozen
// target (all other targets must vanish at eps = 0); eps^1 coefficients of
// the remaining targets are their jump rates.
struct RateRow {
  DTuple frozen;
  std::vector<std::pair<DTuple, Scalar>> rates;
};

struct RateTable {
  int c = 0;
  std::map<KernelKey, RateRow> rows;
};

RateTable kernelEpsilonExpansion(const ProjectionKernel& kernel);

}  // namespace hlrsk
