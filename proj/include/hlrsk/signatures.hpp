#pragma once

#include <climits>
#include <cstdint>
#include <string>
#include <vector>

#include "hlrsk/laurent.hpp"
#include "hlrsk/scalar.hpp"

namespace hlrsk {

// A signature is a finite non-increasing integer sequence; entries may be
// negative.  Young diagrams are the signatures with nonnegative parts.
using Sig = std::vector<long long>;

constexpr long long SIG_PINF = LLONG_MAX;
constexpr long long SIG_NINF = LLONG_MIN;

bool isSignature(const Sig& s);
long long sigWeight(const Sig& s);
// part with boundary conventions: part 0 is +infinity, parts beyond the
// length are -infinity
long long sigPart(const Sig& s, size_t i);
// number of parts >= k
long long sigCountGE(const Sig& s, long long k);
// column counts (lambda'_1, ..., lambda'_c) for a nonnegative signature
std::vector<long long> colCounts(const Sig& s, int c);
// number of parts equal to v
long long sigCountEq(const Sig& s, long long v);
// negate and reverse: (-s_N, ..., -s_1)
Sig sigNegate(const Sig& s);
std::string sigToString(const Sig& s);

// interlacing lower < upper for len(upper) == len(lower) or len(lower)+1
bool interlaces(const Sig& lower, const Sig& upper);

// all signatures of given length with parts in [minPart, maxPart]
std::vector<Sig> allSignatures(int length, long long minPart, long long maxPart);
// all upper with lower < upper, len(upper) = len(lower) (+1 if grow),
// |upper| - |lower| = delta, parts bounded above by maxPart
std::vector<Sig> interlacingAbove(const Sig& lower, bool grow, long long delta,
                                  long long maxPart);
// all lower with lower < upper, len(lower) = len(upper) (-1 if shrink),
// |upper| - |lower| = delta
std::vector<Sig> interlacingBelow(const Sig& upper, bool shrink, long long delta);

// one-variable branching coefficients of the deformed symmetric functions;
// tparam is the deformation parameter (an exact scalar, usually the symbol t)
Scalar psiCoeff(const Sig& upper, const Sig& lower, const Scalar& tparam);
Scalar phiCoeff(const Sig& upper, const Sig& lower, const Scalar& tparam);

enum class BranchKind { P, Q };

// Skew polynomial in nvars variables via interlacing chains.  Variable names
// supply the block dimensions; the window must cover degree |upper|-|lower|.
// For kind P the chain lengths step by one per variable when lengths differ;
// chainLengths gives the signature length after each variable (size nvars+1,
// chainLengths[0] = len(lower), chainLengths[nvars] = len(upper), each step
// equal or +1).
Block skewDeformed(BranchKind kind, const Sig& upper, const Sig& lower,
                   const std::vector<int>& chainLengths,
                   const BlockVarsPtr& vars, const std::vector<int>& varSlots,
                   const Scalar& tparam);

// Full P_lambda / Q_lambda in n variables (lambda nonnegative), via chains
// from the empty signature
Block deformedP(const Sig& lambda, int nvars, const BlockVarsPtr& vars,
                const std::vector<int>& varSlots, const Scalar& tparam);
Block deformedQ(const Sig& lambda, int nvars, const BlockVarsPtr& vars,
                const std::vector<int>& varSlots, const Scalar& tparam);

// independent oracles used to pin expected values in tests
// symmetrization formula for the one-parameter family
Block oracleSymmetrizedP(const Sig& lambda, int nvars, const BlockVarsPtr& vars,
                         const std::vector<int>& varSlots, const Scalar& tparam);
// Gram-Schmidt constructed two-parameter family (P or Q), abstract-basis
// computation specialized to nvars variables
Block oracleGramSchmidt(BranchKind kind, const Sig& lambda, int nvars,
                        const BlockVarsPtr& vars,
                        const std::vector<int>& varSlots, const Scalar& qparam,
                        const Scalar& tparam);

// normalization constant b_lambda with Q_lambda = b_lambda * P_lambda for the
// two-parameter family
Scalar gramSchmidtB(const Sig& lambda, const Scalar& qparam,
                    const Scalar& tparam);

// partitions of n (weakly decreasing positive parts)
std::vector<Sig> partitionsOf(int n);

}  // namespace hlrsk
