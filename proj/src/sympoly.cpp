#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <numeric>

#include "hlrsk/signatures.hpp"

namespace hlrsk {

namespace {

// v_lambda(t): product over part multiplicities (zeros included) of
// prod_{i=1}^{m} (1-t^i)/(1-t)
Scalar symNormalizer(const Sig& padded, const Scalar& tparam) {
  std::map<long long, int> mult;
  for (long long p : padded) mult[p]++;
  Scalar r(1);
  for (auto& [v, m] : mult)
    for (int i = 2; i <= m; ++i) {
      Scalar num = Scalar(1) - tparam.pow(i);
      Scalar den = Scalar(1) - tparam;
      r = r * (num / den);
    }
  return r;
}

}  // namespace

Block oracleSymmetrizedP(const Sig& lambda, int nvars, const BlockVarsPtr& vars,
                         const std::vector<int>& varSlots,
                         const Scalar& tparam) {
  assert(int(lambda.size()) <= nvars);
  Sig padded = lambda;
  while (int(padded.size()) < nvars) padded.push_back(0);

  // internal workspace over exactly nvars series variables with a wide window
  int K = int(sigWeight(padded)) + nvars * nvars + 2;
  std::vector<std::string> names;
  std::vector<int> lo(nvars, 0), hi(nvars, K);
  for (int i = 0; i < nvars; ++i) names.push_back("xx" + std::to_string(i));
  auto wvars = makeBlockVars(names, lo, hi);

  std::vector<int> perm(nvars);
  std::iota(perm.begin(), perm.end(), 0);
  Block numer(wvars);
  do {
    // sign of permutation
    int sgn = 1;
    for (int i = 0; i < nvars; ++i)
      for (int j = i + 1; j < nvars; ++j)
        if (perm[i] > perm[j]) sgn = -sgn;
    ExpVec mono(nvars, 0);
    for (int a = 0; a < nvars; ++a) mono[perm[a]] += int(padded[a]);
    Block term = Block::monomial(wvars, mono, Scalar(sgn));
    for (int i = 0; i < nvars; ++i)
      for (int j = i + 1; j < nvars; ++j) {
        Block lin(wvars);
        ExpVec ei(nvars, 0), ej(nvars, 0);
        ei[perm[i]] = 1;
        ej[perm[j]] = 1;
        lin.add(ei, Scalar(1));
        lin.add(ej, -tparam);
        term = term * lin;
      }
    numer = numer + term;
  } while (std::next_permutation(perm.begin(), perm.end()));

  Block vand = Block::one(wvars);
  for (int i = 0; i < nvars; ++i)
    for (int j = i + 1; j < nvars; ++j) {
      Block lin(wvars);
      ExpVec ei(nvars, 0), ej(nvars, 0);
      ei[i] = 1;
      ej[j] = 1;
      lin.add(ei, Scalar(1));
      lin.add(ej, Scalar(-1));
      vand = vand * lin;
    }
  Block quot = Block::divExactPoly(numer, vand);
  Scalar scale = symNormalizer(padded, tparam).inverse();

  Block result(vars);
  for (const auto& [e, c] : quot.coeffs()) {
    ExpVec out(vars->size(), 0);
    for (int i = 0; i < nvars; ++i) out[varSlots[i]] = e[i];
    result.add(out, c * scale);
  }
  return result;
}

namespace {

// dense exponent-map polynomials in `d` abstract variables, used only for
// the abstract monomial-basis bookkeeping
using DenseKey = std::vector<int>;
using DensePoly = std::map<DenseKey, BigInt>;

DensePoly densePowerSum(int k, int d) {
  DensePoly p;
  for (int i = 0; i < d; ++i) {
    DenseKey key(d, 0);
    key[i] = k;
    p[key] += 1;
  }
  return p;
}

DensePoly denseMul(const DensePoly& a, const DensePoly& b, int maxDeg) {
  DensePoly r;
  for (auto& [ka, ca] : a)
    for (auto& [kb, cb] : b) {
      DenseKey k(ka.size());
      int deg = 0;
      for (size_t i = 0; i < k.size(); ++i) {
        k[i] = ka[i] + kb[i];
        deg += k[i];
      }
      if (deg > maxDeg) continue;
      r[k] += ca * cb;
    }
  for (auto it = r.begin(); it != r.end();)
    it = it->second == 0 ? r.erase(it) : std::next(it);
  return r;
}

Sig keyToPartition(const DenseKey& k) {
  Sig s;
  for (int e : k)
    if (e > 0) s.push_back(e);
  std::sort(s.begin(), s.end(), std::greater<>());
  return s;
}

DenseKey partitionToKey(const Sig& p, int d) {
  DenseKey k(d, 0);
  for (size_t i = 0; i < p.size(); ++i) k[i] = int(p[i]);
  return k;
}

BigInt zLambda(const Sig& p) {
  std::map<long long, int> mult;
  for (long long v : p) mult[v]++;
  BigInt z = 1;
  for (auto& [v, m] : mult) {
    for (int i = 1; i <= m; ++i) z *= i;
    for (int i = 0; i < m; ++i) z *= BigInt(v);
  }
  return z;
}

struct GSData {
  std::vector<Sig> parts;                       // dominance-compatible order
  std::vector<std::vector<Scalar>> coeffP;      // P_lambda in m-basis
  std::vector<Scalar> norm;                     // <P,P>
};

// abstract Gram-Schmidt family for one degree; cached per parameter pair
const GSData& gramSchmidtDegree(int d, const Scalar& qparam,
                                const Scalar& tparam) {
  static std::map<std::string, GSData> cache;
  std::string key = std::to_string(d) + "|" + qparam.toString() + "|" +
                    tparam.toString();
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  GSData data;
  data.parts = partitionsOf(d);
  // increasing lexicographic order refines dominance (smaller first)
  std::sort(data.parts.begin(), data.parts.end());
  int n = int(data.parts.size());

  // transition matrix: p_mu = sum_lambda R[mu][lambda] m_lambda
  std::vector<std::vector<Scalar>> R(n, std::vector<Scalar>(n, Scalar()));
  for (int mi = 0; mi < n; ++mi) {
    DensePoly prod;
    prod[DenseKey(d, 0)] = 1;
    for (long long part : data.parts[mi])
      prod = denseMul(prod, densePowerSum(int(part), d), d);
    for (auto& [kk, c] : prod) {
      Sig lam = keyToPartition(kk);
      if (int(sigWeight(lam)) != d) continue;
      // coefficient of m_lambda = coefficient of its dominant representative
      if (kk == partitionToKey(lam, d)) {
        auto pos = std::find(data.parts.begin(), data.parts.end(), lam);
        assert(pos != data.parts.end());
        R[mi][pos - data.parts.begin()] = Scalar(c);
      }
    }
  }

  // invert R (exact Gaussian elimination)
  std::vector<std::vector<Scalar>> inv(n, std::vector<Scalar>(n, Scalar()));
  {
    auto A = R;
    for (int i = 0; i < n; ++i) inv[i][i] = Scalar(1);
    for (int col = 0; col < n; ++col) {
      int piv = -1;
      for (int r = col; r < n; ++r)
        if (!A[r][col].isZero()) {
          piv = r;
          break;
        }
      assert(piv >= 0);
      std::swap(A[piv], A[col]);
      std::swap(inv[piv], inv[col]);
      Scalar s = A[col][col].inverse();
      for (int c2 = 0; c2 < n; ++c2) {
        A[col][c2] *= s;
        inv[col][c2] *= s;
      }
      for (int r = 0; r < n; ++r) {
        if (r == col || A[r][col].isZero()) continue;
        Scalar f = A[r][col];
        for (int c2 = 0; c2 < n; ++c2) {
          A[r][c2] -= f * A[col][c2];
          inv[r][c2] -= f * inv[col][c2];
        }
      }
    }
  }

  // Gram matrix of m-basis: G = inv * Z * inv^T with Z the p-basis norms
  std::vector<Scalar> Z(n);
  for (int i = 0; i < n; ++i) {
    Scalar z(zLambda(data.parts[i]));
    for (long long part : data.parts[i]) {
      Scalar num = Scalar(1) - qparam.pow(long(part));
      Scalar den = Scalar(1) - tparam.pow(long(part));
      z = z * (num / den);
    }
    Z[i] = z;
  }
  std::vector<std::vector<Scalar>> G(n, std::vector<Scalar>(n, Scalar()));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Scalar s;
      for (int k = 0; k < n; ++k) s += inv[i][k] * Z[k] * inv[j][k];
      G[i][j] = s;
    }

  auto dot = [&](const std::vector<Scalar>& a,
                 const std::vector<Scalar>& b) {
    Scalar s;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (a[i].isZero() || b[j].isZero()) continue;
        s += a[i] * G[i][j] * b[j];
      }
    return s;
  };

  // Gram-Schmidt in dominance-compatible order
  for (int i = 0; i < n; ++i) {
    std::vector<Scalar> v(n, Scalar());
    v[i] = Scalar(1);  // start from m_{parts[i]}
    for (int p = 0; p < int(data.coeffP.size()); ++p) {
      Scalar c = dot(v, data.coeffP[p]) / data.norm[p];
      if (c.isZero()) continue;
      for (int k = 0; k < n; ++k) v[k] -= c * data.coeffP[p][k];
    }
    data.norm.push_back(dot(v, v));
    data.coeffP.push_back(std::move(v));
  }

  auto [pos, ok] = cache.emplace(key, std::move(data));
  return pos->second;
}

// monomial symmetric polynomial in block variables
Block monomialSym(const Sig& p, int nvars, const BlockVarsPtr& vars,
                  const std::vector<int>& varSlots) {
  Block b(vars);
  if (int(p.size()) > nvars) return b;
  DenseKey base(nvars, 0);
  for (size_t i = 0; i < p.size(); ++i) base[i] = int(p[i]);
  std::sort(base.begin(), base.end());
  do {
    ExpVec e(vars->size(), 0);
    for (int i = 0; i < nvars; ++i) e[varSlots[i]] = base[i];
    b.add(e, Scalar(1));
  } while (std::next_permutation(base.begin(), base.end()));
  return b;
}

}  // namespace

Block oracleGramSchmidt(BranchKind kind, const Sig& lambda, int nvars,
                        const BlockVarsPtr& vars,
                        const std::vector<int>& varSlots, const Scalar& qparam,
                        const Scalar& tparam) {
  Sig stripped;
  for (long long p : lambda)
    if (p != 0) stripped.push_back(p);
  int d = int(sigWeight(stripped));
  if (d == 0) return Block::one(vars);
  const GSData& gs = gramSchmidtDegree(d, qparam, tparam);
  auto pos = std::find(gs.parts.begin(), gs.parts.end(), stripped);
  assert(pos != gs.parts.end());
  int idx = int(pos - gs.parts.begin());
  Block out(vars);
  for (int k = 0; k < int(gs.parts.size()); ++k) {
    const Scalar& c = gs.coeffP[idx][k];
    if (c.isZero()) continue;
    Block m = monomialSym(gs.parts[k], nvars, vars, varSlots);
    out = out + m.scaled(c);
  }
  if (kind == BranchKind::Q) out = out.scaled(gs.norm[idx].inverse());
  return out;
}

Scalar gramSchmidtB(const Sig& lambda, const Scalar& qparam,
                    const Scalar& tparam) {
  Sig stripped;
  for (long long p : lambda)
    if (p != 0) stripped.push_back(p);
  int d = int(sigWeight(stripped));
  if (d == 0) return Scalar(1);
  const GSData& gs = gramSchmidtDegree(d, qparam, tparam);
  auto pos = std::find(gs.parts.begin(), gs.parts.end(), stripped);
  assert(pos != gs.parts.end());
  return gs.norm[pos - gs.parts.begin()].inverse();
}

}  // namespace hlrsk
