#include "hlrsk/identities.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace hlrsk {

namespace {

Scalar one() { return Scalar(1); }

std::string tupleName(const Sig& la, long r, const Sig& rho) {
  std::ostringstream os;
  os << "(la=" << sigToString(la) << ", r=" << r << ", rho=" << sigToString(rho)
     << ")";
  return os.str();
}

}  // namespace

CauchyReport verifySkewCauchy(const std::string& variant, const Sig& mu,
                              const Sig& nu, long k, long l) {
  if (k < 0 || l < 0) throw std::domain_error("verifySkewCauchy: k,l >= 0");
  const Scalar t = sT();
  CauchyReport rep;

  if (variant == "A") {
    if (nu.size() + 1 != mu.size())
      throw std::domain_error("verifySkewCauchy A: need len(nu)+1 = len(mu)");
    BlockVarsPtr vars = makeBlockVars({"x", "y"}, {0, 0},
                                      {static_cast<int>(k), static_cast<int>(l)});
    // (1 - t x y) / (1 - x y)
    Block pref = (Block::one(vars) +
                  Block::monomial(vars, {1, 1}, -t)) *
                 Block::geometric(vars, one(), {1, 1});
    Block lhsSum(vars);
    for (long d1 = 0; d1 <= k; ++d1) {
      for (const Sig& la : interlacingBelow(mu, 1, d1)) {
        if (!interlaces(la, nu)) continue;
        long d2 = sigWeight(nu) - sigWeight(la);
        if (d2 < 0 || d2 > l) continue;
        Scalar w = psiCoeff(mu, la, t) * phiCoeff(nu, la, t);
        lhsSum = lhsSum + Block::monomial(vars,
                                          {static_cast<int>(d1),
                                           static_cast<int>(d2)},
                                          w);
      }
    }
    Block lhs = pref * lhsSum;
    Block rhs(vars);
    for (long d2 = 0; d2 <= l; ++d2) {
      long top = sigPart(mu, 1) + d2;
      for (const Sig& rho : interlacingAbove(mu, 0, d2, top)) {
        if (!interlaces(nu, rho)) continue;
        long d1 = sigWeight(rho) - sigWeight(nu);
        if (d1 < 0 || d1 > k) continue;
        Scalar w = psiCoeff(rho, nu, t) * phiCoeff(rho, mu, t);
        rhs = rhs + Block::monomial(vars,
                                    {static_cast<int>(d1),
                                     static_cast<int>(d2)},
                                    w);
      }
    }
    rep.lhs = lhs.coefficient({static_cast<int>(k), static_cast<int>(l)});
    rep.rhs = rhs.coefficient({static_cast<int>(k), static_cast<int>(l)});
    rep.equal = lhs.sameSeries(rhs);
    return rep;
  }

  if (variant == "AA") {
    if (nu.size() + 1 != mu.size())
      throw std::domain_error("verifySkewCauchy AA: need len(nu)+1 = len(mu)");
    Scalar lhs = Scalar();
    for (long r = 0; r <= std::min(k, l); ++r) {
      Scalar pref = one();
      if (r >= 1) pref = pref - t;
      for (const Sig& la : interlacingBelow(mu, 1, k - r)) {
        if (!interlaces(la, nu)) continue;
        if (sigWeight(nu) - sigWeight(la) != l - r) continue;
        lhs = lhs + pref * phiCoeff(nu, la, t) * psiCoeff(mu, la, t);
      }
    }
    Scalar rhs = Scalar();
    long top = sigPart(mu, 1) + l;
    for (const Sig& rho : interlacingAbove(mu, 0, l, top)) {
      if (!interlaces(nu, rho)) continue;
      if (sigWeight(rho) - sigWeight(nu) != k) continue;
      rhs = rhs + psiCoeff(rho, nu, t) * phiCoeff(rho, mu, t);
    }
    rep.lhs = lhs;
    rep.rhs = rhs;
    rep.equal = (lhs - rhs).isZero();
    return rep;
  }

  if (variant == "BB") {
    if (nu.size() != mu.size())
      throw std::domain_error("verifySkewCauchy BB: need equal lengths");
    Scalar lhs = Scalar();
    for (const Sig& la : interlacingBelow(mu, 0, k)) {
      if (!interlaces(la, nu)) continue;
      if (sigWeight(nu) - sigWeight(la) != l) continue;
      lhs = lhs + phiCoeff(nu, la, t) * psiCoeff(mu, la, t);
    }
    Scalar rhs = Scalar();
    long top = sigPart(mu, 1) + l;
    for (const Sig& rho : interlacingAbove(mu, 0, l, top)) {
      if (!interlaces(nu, rho)) continue;
      if (sigWeight(rho) - sigWeight(nu) != k) continue;
      rhs = rhs + psiCoeff(rho, nu, t) * phiCoeff(rho, mu, t);
    }
    rep.lhs = lhs;
    rep.rhs = rhs;
    rep.equal = (lhs - rhs).isZero();
    return rep;
  }

  throw std::domain_error("verifySkewCauchy: unknown variant " + variant);
}

BijectReport verifyBijectivization(const Sig& mu, const Sig& nu, long k,
                                   long l) {
  if (nu.size() + 1 != mu.size())
    throw std::domain_error("verifyBijectivization: need len(nu)+1 = len(mu)");
  const Scalar t = sT();
  BijectReport rep;

  struct Key {
    Sig la;
    long r;
    Sig rho;
    bool operator<(const Key& o) const {
      if (la != o.la) return la < o.la;
      if (r != o.r) return r < o.r;
      return rho < o.rho;
    }
  };
  std::map<Key, std::pair<Scalar, Scalar>> table;

  for (long r = 0; r <= std::min(k, l); ++r) {
    Scalar pref = one();
    if (r >= 1) pref = pref - t;
    for (const Sig& la : interlacingBelow(mu, 1, k - r)) {
      if (!interlaces(la, nu)) continue;
      if (sigWeight(nu) - sigWeight(la) != l - r) continue;
      Scalar base = pref * phiCoeff(nu, la, t) * psiCoeff(mu, la, t);
      for (const auto& [rho, p] : inputLaw(mu, la, nu, r)) {
        Scalar term = base * p;
        if (term.isZero()) continue;
        table[{la, r, rho}].first = term;
      }
    }
  }

  long top = sigPart(mu, 1) + l;
  for (const Sig& rho : interlacingAbove(mu, 0, l, top)) {
    if (!interlaces(nu, rho)) continue;
    if (sigWeight(rho) - sigWeight(nu) != k) continue;
    Scalar base = phiCoeff(rho, mu, t) * psiCoeff(rho, nu, t);
    for (const auto& [la, r, p] : invLaw(rho, mu, nu)) {
      Scalar term = base * p;
      if (term.isZero()) continue;
      table[{la, r, rho}].second = term;
    }
  }

  for (const auto& [key, sides] : table) {
    ++rep.tuples;
    if (!(sides.first - sides.second).isZero()) {
      if (rep.ok) rep.firstBad = tupleName(key.la, key.r, key.rho);
      rep.ok = false;
    }
  }
  return rep;
}

SignatureBasis makeBasis(int length, long partBound) {
  SignatureBasis b;
  b.length = length;
  b.partBound = partBound;
  b.states = allSignatures(length, 0, partBound);
  for (size_t i = 0; i < b.states.size(); ++i)
    b.index[b.states[i]] = static_cast<int>(i);
  return b;
}

Matrix operatorMatrix(char kind, long degree, const SignatureBasis& basis) {
  if (degree < 0) throw std::domain_error("operatorMatrix: degree >= 0");
  const Scalar t = sT();
  size_t n = basis.states.size();
  Matrix m(n, std::vector<Scalar>(n));
  for (size_t j = 0; j < n; ++j) {
    const Sig& s = basis.states[j];
    if (kind == 'A') {
      long top = sigPart(s, 1) + degree;
      for (const Sig& up : interlacingAbove(s, 0, degree, top)) {
        auto it = basis.index.find(up);
        if (it == basis.index.end()) continue;
        m[it->second][j] = phiCoeff(up, s, t);
      }
    } else if (kind == 'B') {
      for (const Sig& down : interlacingBelow(s, 0, degree)) {
        auto it = basis.index.find(down);
        if (it == basis.index.end()) continue;
        m[it->second][j] = psiCoeff(s, down, t);
      }
    } else {
      throw std::domain_error("operatorMatrix: kind must be 'A' or 'B'");
    }
  }
  return m;
}

namespace {

Matrix matMul(const Matrix& a, const Matrix& b) {
  size_t n = a.size();
  Matrix c(n, std::vector<Scalar>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t p = 0; p < n; ++p) {
      if (a[i][p].isZero()) continue;
      for (size_t j = 0; j < n; ++j) {
        if (b[p][j].isZero()) continue;
        c[i][j] = c[i][j] + a[i][p] * b[p][j];
      }
    }
  return c;
}

bool inBand(const Sig& s, long lo, long hi) {
  for (long p : s)
    if (p < lo || p > hi) return false;
  return true;
}

}  // namespace

CommutationReport verifyCommutation(const SignatureBasis& basis,
                                    long maxDegree) {
  if (maxDegree < 0 || 2 * maxDegree > basis.partBound)
    throw std::domain_error("verifyCommutation: unsafe-region request");
  CommutationReport rep;
  size_t n = basis.states.size();

  std::vector<Matrix> A, B;
  for (long d = 0; d <= maxDegree; ++d) {
    A.push_back(operatorMatrix('A', d, basis));
    B.push_back(operatorMatrix('B', d, basis));
  }

  auto fail = [&](const std::string& what, size_t i, size_t j) {
    if (rep.ok)
      rep.detail = what + " at (" + sigToString(basis.states[i]) + ", " +
                   sigToString(basis.states[j]) + ")";
    rep.ok = false;
  };

  for (long k = 0; k <= maxDegree; ++k)
    for (long l = k + 1; l <= maxDegree; ++l) {
      Matrix akal = matMul(A[k], A[l]);
      Matrix alak = matMul(A[l], A[k]);
      Matrix bkbl = matMul(B[k], B[l]);
      Matrix blbk = matMul(B[l], B[k]);
      for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
          if (!(akal[i][j] - alak[i][j]).isZero())
            fail("A-commutator k=" + std::to_string(k) +
                     " l=" + std::to_string(l),
                 i, j);
          if (!(bkbl[i][j] - blbk[i][j]).isZero())
            fail("B-commutator k=" + std::to_string(k) +
                     " l=" + std::to_string(l),
                 i, j);
        }
    }

  long lo = maxDegree, hi = basis.partBound - maxDegree;
  std::vector<char> safe(n, 0);
  for (size_t i = 0; i < n; ++i) safe[i] = inBand(basis.states[i], lo, hi);

  for (long k = 0; k <= maxDegree; ++k)
    for (long l = 0; l <= maxDegree; ++l) {
      Matrix ab = matMul(A[k], B[l]);
      Matrix ba = matMul(B[l], A[k]);
      for (size_t i = 0; i < n; ++i) {
        if (!safe[i]) continue;
        for (size_t j = 0; j < n; ++j) {
          if (!safe[j]) continue;
          if (!(ab[i][j] - ba[i][j]).isZero())
            fail("AB-commutation k=" + std::to_string(k) +
                     " l=" + std::to_string(l),
                 i, j);
        }
      }
    }

  return rep;
}

}  // namespace hlrsk
