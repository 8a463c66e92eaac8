#include "hlrsk/observables.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "hlrsk/poly.hpp"

namespace hlrsk {

namespace {

Sig stripZeros(const Sig& s) {
  Sig out;
  for (long long p : s)
    if (p > 0) out.push_back(p);
  return out;
}

// 1-based row access, zero beyond the end
long long partAt(const Sig& s, size_t i) {
  return (i >= 1 && i <= s.size()) ? s[i - 1] : 0;
}

bool diagramContains(const Sig& big, const Sig& small) {
  for (size_t i = 1; i <= small.size(); ++i)
    if (partAt(small, i) > partAt(big, i)) return false;
  return true;
}

std::map<long long, int> partMultiplicities(const Sig& s) {
  std::map<long long, int> m;
  for (long long p : s)
    if (p > 0) m[p]++;
  return m;
}

// (a; q)_n
Scalar qPochhammer(const Scalar& a, const Scalar& q, int n) {
  Scalar out(1), f = a;
  for (int i = 0; i < n; ++i) {
    out = out * (Scalar(1) - f);
    f = f * q;
  }
  return out;
}

long factorialOf(long n) {
  long f = 1;
  for (long i = 2; i <= n; ++i) f *= i;
  return f;
}

// number of boxes of la in the first r columns
long long columnSum(const Sig& la, long r) {
  long long s = 0;
  for (long long p : la) s += std::min(p, (long long)r);
  return s;
}

}  // namespace

// ---- partition utilities --------------------------------------------------

std::vector<Sig> partitionsUpTo(long maxWeight) {
  std::vector<Sig> out;
  for (long n = 0; n <= maxWeight; ++n) {
    auto ps = partitionsOf(int(n));
    out.insert(out.end(), ps.begin(), ps.end());
  }
  return out;
}

Sig conjugatePartition(const Sig& la) {
  Sig s = stripZeros(la);
  Sig out;
  if (s.empty()) return out;
  for (long long j = 1; j <= s[0]; ++j) {
    long long c = 0;
    for (long long p : s)
      if (p >= j) ++c;
    out.push_back(c);
  }
  return out;
}

bool isHorizontalStrip(const Sig& la, const Sig& mu) {
  Sig a = stripZeros(la), b = stripZeros(mu);
  if (b.size() > a.size()) return false;
  for (size_t i = 1; i <= a.size(); ++i) {
    long long m = partAt(b, i);
    if (m > partAt(a, i) || partAt(a, i + 1) > m) return false;
  }
  return true;
}

Scalar gaussianBinomial(long n, long k, const Scalar& q) {
  if (k < 0 || k > n) return Scalar(0);
  Scalar num(1), den(1);
  for (long u = 1; u <= k; ++u) {
    num = num * (Scalar(1) - q.pow(n - k + u));
    den = den * (Scalar(1) - q.pow(u));
  }
  return num / den;
}

// ---- one-variable branching weights ---------------------------------------

Scalar hlPsiDiagram(const Sig& la, const Sig& mu, const Scalar& t) {
  if (!isHorizontalStrip(la, mu)) return Scalar(0);
  auto ml = partMultiplicities(la), mm = partMultiplicities(mu);
  Scalar out(1);
  for (const auto& [part, mult] : mm) {
    auto it = ml.find(part);
    int inLa = it == ml.end() ? 0 : it->second;
    if (mult == inLa + 1) out = out * (Scalar(1) - t.pow(mult));
  }
  return out;
}

Scalar hlPhiDiagram(const Sig& la, const Sig& mu, const Scalar& t) {
  if (!isHorizontalStrip(la, mu)) return Scalar(0);
  auto ml = partMultiplicities(la), mm = partMultiplicities(mu);
  Scalar out(1);
  for (const auto& [part, mult] : ml) {
    auto it = mm.find(part);
    int inMu = it == mm.end() ? 0 : it->second;
    if (mult == inMu + 1) out = out * (Scalar(1) - t.pow(mult));
  }
  return out;
}

Scalar hlBNorm(const Sig& la, const Scalar& t) {
  Scalar out(1);
  for (const auto& [part, mult] : partMultiplicities(la))
    for (int j = 1; j <= mult; ++j) out = out * (Scalar(1) - t.pow(j));
  return out;
}

Scalar qwPsiDiagram(const Sig& la, const Sig& mu, const Scalar& q) {
  if (!isHorizontalStrip(la, mu)) return Scalar(0);
  Sig a = stripZeros(la);
  Scalar out(1);
  for (size_t i = 1; i <= a.size(); ++i)
    out = out * gaussianBinomial(partAt(a, i) - partAt(a, i + 1),
                                 partAt(a, i) - partAt(mu, i), q);
  return out;
}

Scalar qwBNorm(const Sig& la, const Scalar& q) {
  Sig a = stripZeros(la);
  Scalar out(1);
  for (size_t i = 1; i <= a.size(); ++i)
    out = out / qPochhammer(q, q, int(partAt(a, i) - partAt(a, i + 1)));
  return out;
}

Scalar qwPhiDiagram(const Sig& la, const Sig& mu, const Scalar& q) {
  Scalar psi = qwPsiDiagram(la, mu, q);
  if (psi.isZero()) return psi;
  return qwBNorm(la, q) / qwBNorm(mu, q) * psi;
}

// ---- corner polynomials ---------------------------------------------------

namespace {

// all nu with mu <= nu <= cap rowwise and nu/mu a horizontal strip
std::vector<Sig> stripsBetween(const Sig& mu, const Sig& cap) {
  std::vector<Sig> out;
  if (!diagramContains(cap, mu)) return out;
  Sig capS = stripZeros(cap);
  size_t rows = capS.size();
  Sig cur;
  std::function<void(size_t)> rec = [&](size_t i) {
    if (i > rows) {
      out.push_back(stripZeros(cur));
      return;
    }
    long long lo = partAt(mu, i);
    long long hi = partAt(capS, i);
    if (i >= 2) hi = std::min(hi, partAt(mu, i - 1));
    for (long long v = hi; v >= lo; --v) {
      cur.push_back(v);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(1);
  return out;
}

Scalar branchWeight(Corner fam, bool phi, const Sig& upper, const Sig& lower,
                    const Scalar& param) {
  if (fam == Corner::HL)
    return phi ? hlPhiDiagram(upper, lower, param)
               : hlPsiDiagram(upper, lower, param);
  return phi ? qwPhiDiagram(upper, lower, param)
             : qwPsiDiagram(upper, lower, param);
}

// skew P or Q of the chosen family over chains of horizontal strips
Block cornerSkew(Corner fam, bool phi, const Sig& la, const Sig& base,
                 const BlockVarsPtr& vars, const std::vector<int>& varSlots,
                 const Scalar& param) {
  Block out(vars);
  if (!diagramContains(la, base)) return out;
  int n = int(varSlots.size());
  Sig target = stripZeros(la);
  ExpVec e(vars->size(), 0);
  std::function<void(int, const Sig&, const Scalar&)> rec =
      [&](int step, const Sig& mu, const Scalar& acc) {
        if (step == n) {
          if (stripZeros(mu) == target) out.add(e, acc);
          return;
        }
        for (const Sig& nu : stripsBetween(mu, la)) {
          Scalar c = branchWeight(fam, phi, nu, mu, param);
          if (c.isZero()) continue;
          int d = int(sigWeight(nu) - sigWeight(mu));
          e[varSlots[step]] += d;
          rec(step + 1, nu, acc * c);
          e[varSlots[step]] -= d;
        }
      };
  rec(0, stripZeros(base), Scalar(1));
  return out;
}

}  // namespace

Block cornerP(Corner fam, const Sig& la, const BlockVarsPtr& vars,
              const std::vector<int>& varSlots, const Scalar& param) {
  return cornerSkew(fam, false, la, Sig{}, vars, varSlots, param);
}

Block cornerQ(Corner fam, const Sig& la, const BlockVarsPtr& vars,
              const std::vector<int>& varSlots, const Scalar& param) {
  return cornerSkew(fam, true, la, Sig{}, vars, varSlots, param);
}

// ---- row-subset observable ------------------------------------------------

Scalar elementaryObservable(const Sig& la, long r, const Scalar& q,
                            const Scalar& t) {
  Sig s = stripZeros(la);
  long L = long(s.size());
  Scalar total(0);
  for (long j = 0; j <= r; ++j) {
    long m = r - j;  // rows taken among the first L
    if (m > L) continue;
    Scalar subsetSum(0);
    std::vector<long> pick;
    std::function<void(long)> rec = [&](long next) {
      if (long(pick.size()) == m) {
        Scalar term(1);
        for (long i : pick)
          term = term * q.pow(-partAt(s, size_t(i))) * t.pow(i - 1);
        subsetSum += term;
        return;
      }
      for (long i = next; i <= L; ++i) {
        pick.push_back(i);
        rec(i + 1);
        pick.pop_back();
      }
    };
    rec(1);
    // rows below the diagram: positions L+1, L+2, ... carry q^0
    Scalar tail = t.pow(j * L + j * (j - 1) / 2);
    for (long u = 1; u <= j; ++u) tail = tail / (Scalar(1) - t.pow(u));
    total += subsetSum * tail;
  }
  return total;
}

// ---- measure identity engine ----------------------------------------------

namespace {

using CoeffMap = std::map<ExpVec, Scalar>;

ExpVec subAt(const ExpVec& e, const std::vector<int>& slots) {
  ExpVec out;
  out.reserve(slots.size());
  for (int s : slots) out.push_back(e[s]);
  return out;
}

ExpVec slotExp(size_t nvars, const std::vector<int>& slots, int value) {
  ExpVec e(nvars, 0);
  for (int s : slots) e[s] = value;
  return e;
}

// drop terms whose total degree over xSlots or ySlots exceeds cap
Block filterDeg(const Block& b, const std::vector<int>& xSlots,
                const std::vector<int>& ySlots, long cap) {
  Block out(b.vars());
  for (const auto& [e, c] : b.coeffs()) {
    long sx = 0, sy = 0;
    for (int s : xSlots) sx += e[s];
    for (int s : ySlots) sy += e[s];
    if (sx <= cap && sy <= cap) out.add(e, c);
  }
  return out;
}

CoeffMap toMapAt(const Block& b, const std::vector<int>& keep) {
  CoeffMap out;
  for (const auto& [e, c] : b.coeffs()) {
    auto& tgt = out[subAt(e, keep)];
    tgt += c;
  }
  for (auto it = out.begin(); it != out.end();)
    it = it->second.isZero() ? out.erase(it) : std::next(it);
  return out;
}

// coefficient extraction at fixed exponent on wSlots of acc * cross, keeping
// the keepSlots exponents; cross is looked up by complementary w-exponent
CoeffMap sliceProduct(const Block& acc, const Block& cross,
                      const std::vector<int>& wSlots, int target,
                      const std::vector<int>& keepSlots) {
  std::map<ExpVec, std::vector<std::pair<ExpVec, Scalar>>> byW;
  for (const auto& [e, c] : cross.coeffs())
    byW[subAt(e, wSlots)].push_back({subAt(e, keepSlots), c});
  CoeffMap out;
  for (const auto& [e, c] : acc.coeffs()) {
    ExpVec need(wSlots.size());
    for (size_t s = 0; s < wSlots.size(); ++s)
      need[s] = target - e[wSlots[s]];
    auto it = byW.find(need);
    if (it == byW.end()) continue;
    ExpVec base = subAt(e, keepSlots);
    for (const auto& [ke, kc] : it->second) {
      ExpVec key = base;
      for (size_t i = 0; i < key.size(); ++i) key[i] += ke[i];
      auto& tgt = out[key];
      tgt += c * kc;
    }
  }
  for (auto it = out.begin(); it != out.end();)
    it = it->second.isZero() ? out.erase(it) : std::next(it);
  return out;
}

std::string monoLabel(const std::vector<std::string>& names, const ExpVec& e) {
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < e.size(); ++i)
    if (e[i] != 0) {
      if (!first) os << " ";
      os << names[i] << "^" << e[i];
      first = false;
    }
  if (first) os << "1";
  return os.str();
}

bool compareMaps(const CoeffMap& lhs, const CoeffMap& rhs,
                 const std::vector<std::string>& keyNames, std::string* detail,
                 long* compared) {
  std::set<ExpVec> keys;
  for (const auto& [k, v] : lhs) keys.insert(k);
  for (const auto& [k, v] : rhs) keys.insert(k);
  *compared = long(keys.size());
  for (const ExpVec& k : keys) {
    auto la = lhs.find(k);
    auto rb = rhs.find(k);
    Scalar a = la == lhs.end() ? Scalar(0) : la->second;
    Scalar b = rb == rhs.end() ? Scalar(0) : rb->second;
    if (!(a - b).isZero()) {
      *detail = monoLabel(keyNames, k) + ": lhs=" + a.toString() +
                ", rhs=" + b.toString();
      return false;
    }
  }
  return true;
}

// factor types shared by the identity and process engines; dir couples one
// series variable with one alphabet variable
Block xFactorBlock(char type, const BlockVarsPtr& vars, int ws, int xs) {
  ExpVec dir(vars->size(), 0);
  dir[ws] = 1;
  dir[xs] = 1;
  ExpVec zero(vars->size(), 0);
  Scalar q = sQ(), t = sT();
  Block poly(vars);
  Scalar ratio(1);
  switch (type) {
    case 'A':  // (1 - t w x)/(1 - w x)
      poly.add(zero, Scalar(1));
      poly.add(dir, Scalar(0) - t);
      ratio = Scalar(1);
      break;
    case 'B':  // (1 + w x)/(1 + q w x)
      poly.add(zero, Scalar(1));
      poly.add(dir, Scalar(1));
      ratio = Scalar(0) - q;
      break;
    case 'C':  // 1/(1 - w x)
      poly.add(zero, Scalar(1));
      ratio = Scalar(1);
      break;
    default:
      assert(false);
  }
  return poly * Block::geometric(vars, ratio, dir);
}

Block yFactorBlock(char type, const BlockVarsPtr& vars, int ws, int ys) {
  ExpVec dir(vars->size(), 0);
  dir[ws] = -1;
  dir[ys] = 1;
  ExpVec zero(vars->size(), 0);
  Scalar q = sQ(), t = sT();
  Block poly(vars);
  Scalar ratio(1);
  switch (type) {
    case 'A':  // (1 - t q^-1 w^-1 y)/(1 - q^-1 w^-1 y)
      poly.add(zero, Scalar(1));
      poly.add(dir, Scalar(0) - t / q);
      ratio = Scalar(1) / q;
      break;
    case 'D':  // (1 + q^-1 w^-1 y)/(1 + w^-1 y)
      poly.add(zero, Scalar(1));
      poly.add(dir, Scalar(1) / q);
      ratio = Scalar(-1);
      break;
    case 'E':  // 1/(1 - q^-1 w^-1 y)
      poly.add(zero, Scalar(1));
      ratio = Scalar(1) / q;
      break;
    default:
      assert(false);
  }
  return poly * Block::geometric(vars, ratio, dir);
}

// ordered pair of factors (1 - g)(1 - g^-1)/((1 - t g)(1 - t g^-1)) with
// g = w_k^-1 w_l
Block crossPairBlock(const BlockVarsPtr& vars, int wk, int wl) {
  ExpVec g(vars->size(), 0);
  g[wk] = -1;
  g[wl] = 1;
  ExpVec ginv(vars->size(), 0);
  ginv[wk] = 1;
  ginv[wl] = -1;
  ExpVec zero(vars->size(), 0);
  Block poly(vars);
  poly.add(zero, Scalar(2));
  poly.add(g, Scalar(-1));
  poly.add(ginv, Scalar(-1));
  return poly * Block::pairGeometric(vars, sT(), sT(), g);
}

// (1 - u^-1 v)/(1 - q^-1 u^-1 v) expanded in nonnegative powers of u^-1 v
Block crossLevelBlock(const BlockVarsPtr& vars, int u, int v) {
  ExpVec dir(vars->size(), 0);
  dir[u] = -1;
  dir[v] = 1;
  ExpVec zero(vars->size(), 0);
  Block poly(vars);
  poly.add(zero, Scalar(1));
  poly.add(dir, Scalar(-1));
  return poly * Block::geometric(vars, Scalar(1) / sQ(), dir);
}

Block vandermondeSq(const BlockVarsPtr& vars, const std::vector<int>& slots) {
  Block out = Block::one(vars);
  for (size_t k = 0; k < slots.size(); ++k)
    for (size_t l = k + 1; l < slots.size(); ++l) {
      Block f(vars);
      ExpVec e(vars->size(), 0);
      e[slots[k]] = 2;
      f.add(e, Scalar(1));
      e[slots[k]] = 1;
      e[slots[l]] = 1;
      f.add(e, Scalar(-2));
      e[slots[k]] = 0;
      e[slots[l]] = 2;
      f.add(e, Scalar(1));
      out = out * f;
    }
  return out;
}

// per-pair expansion coefficient of the normalizing kernel
Scalar kernelPairCoeff(char code, int k) {
  Scalar q = sQ(), t = sT();
  switch (code) {
    case 'Q':  // (q,t) family
      return qPochhammer(t, q, k) / qPochhammer(q, q, k);
    case 'T':  // (t,q) family
      return qPochhammer(q, t, k) / qPochhammer(t, t, k);
    case 'W':  // (q,0) family
      return Scalar(1) / qPochhammer(q, q, k);
    case 'Z':  // (0,q) family
      return k == 0 ? Scalar(1) : Scalar(1) - q;
    case 'D':  // dual pairing, 1 + x y
      return k <= 1 ? Scalar(1) : Scalar(0);
  }
  assert(false);
  return Scalar(0);
}

Block kernelBlock(char code, const BlockVarsPtr& vars,
                  const std::vector<int>& xSlots,
                  const std::vector<int>& ySlots, long D) {
  Block out = Block::one(vars);
  for (int xs : xSlots)
    for (int ys : ySlots) {
      Block pair(vars);
      for (int k = 0; k <= int(D); ++k) {
        Scalar c = kernelPairCoeff(code, k);
        if (c.isZero()) continue;
        ExpVec e(vars->size(), 0);
        e[xs] = k;
        e[ys] = k;
        pair.add(e, c);
      }
      out = filterDeg(out * pair, xSlots, ySlots, D);
    }
  return out;
}

// (1 - x y) / (1 - q x y) expanded in nonnegative powers of x y
Block invKernelPair(const BlockVarsPtr& vars, int xs, int ys) {
  ExpVec dir(vars->size(), 0);
  dir[xs] = 1;
  dir[ys] = 1;
  ExpVec zero(vars->size(), 0);
  Block poly(vars);
  poly.add(zero, Scalar(1));
  poly.add(dir, Scalar(-1));
  return poly * Block::geometric(vars, sQ(), dir);
}

struct MesSpec {
  char xType;
  char yType;
  char kernel;
  bool columns;  // observable reads column sums instead of row subsets
};

const std::map<std::string, MesSpec>& mesTable() {
  static const std::map<std::string, MesSpec> table = {
      {"mes-1", {'A', 'A', 'Q', false}}, {"mes-2", {'B', 'A', 'D', false}},
      {"mes-3", {'A', 'D', 'D', false}}, {"mes-4", {'B', 'D', 'T', false}},
      {"mes-11", {'C', 'E', 'W', true}}, {"mes-22", {'B', 'E', 'D', true}},
      {"mes-33", {'C', 'D', 'D', true}}, {"mes-44", {'B', 'D', 'Z', true}},
  };
  return table;
}

// the two symmetric polynomials attached to la in the weight of identity id
Block mesWeightPair(const std::string& id, const Sig& la,
                    const BlockVarsPtr& vars, const std::vector<int>& xS,
                    const std::vector<int>& yS) {
  Scalar q = sQ(), t = sT();
  int M = int(xS.size()), N = int(yS.size());
  Sig lc = conjugatePartition(la);
  if (id == "mes-1")
    return oracleGramSchmidt(BranchKind::P, la, M, vars, xS, q, t) *
           oracleGramSchmidt(BranchKind::Q, la, N, vars, yS, q, t);
  if (id == "mes-2")
    return oracleGramSchmidt(BranchKind::Q, lc, M, vars, xS, t, q) *
           oracleGramSchmidt(BranchKind::Q, la, N, vars, yS, q, t);
  if (id == "mes-3")
    return oracleGramSchmidt(BranchKind::P, la, M, vars, xS, q, t) *
           oracleGramSchmidt(BranchKind::P, lc, N, vars, yS, t, q);
  if (id == "mes-4")
    return oracleGramSchmidt(BranchKind::Q, lc, M, vars, xS, t, q) *
           oracleGramSchmidt(BranchKind::P, lc, N, vars, yS, t, q);
  if (id == "mes-11")
    return cornerP(Corner::QW, la, vars, xS, q) *
           cornerQ(Corner::QW, la, vars, yS, q);
  if (id == "mes-22")
    return cornerQ(Corner::HL, lc, vars, xS, q) *
           cornerQ(Corner::QW, la, vars, yS, q);
  if (id == "mes-33")
    return cornerP(Corner::QW, la, vars, xS, q) *
           cornerP(Corner::HL, lc, vars, yS, q);
  if (id == "mes-44")
    return cornerQ(Corner::HL, lc, vars, xS, q) *
           cornerP(Corner::HL, lc, vars, yS, q);
  throw std::invalid_argument("unknown identity id: " + id);
}

}  // namespace

VerificationReport verifyMeasureIdentity(const std::string& id, int M, int N,
                                         long r, long D) {
  auto specIt = mesTable().find(id);
  if (specIt == mesTable().end())
    throw std::invalid_argument("unknown identity id: " + id);
  const MesSpec& spec = specIt->second;
  if (M < 1 || M > 3 || N < 1 || N > 3)
    throw std::invalid_argument("variable counts must lie in [1, 3]");
  if (r < 0 || r > 2)
    throw std::invalid_argument("observable order must lie in [0, 2]");
  if (D < 0 || D > 5)
    throw std::invalid_argument("degree cutoff must lie in [0, 5]");

  const int W = int(2 * D + 8);
  std::vector<std::string> names;
  std::vector<int> lows, highs, wS, xS, yS;
  for (long s = 1; s <= r; ++s) {
    names.push_back("w" + std::to_string(s));
    lows.push_back(-W);
    highs.push_back(W);
    wS.push_back(int(names.size()) - 1);
  }
  for (int i = 1; i <= M; ++i) {
    names.push_back("x" + std::to_string(i));
    lows.push_back(0);
    highs.push_back(int(D));
    xS.push_back(int(names.size()) - 1);
  }
  for (int j = 1; j <= N; ++j) {
    names.push_back("y" + std::to_string(j));
    lows.push_back(0);
    highs.push_back(int(D));
    yS.push_back(int(names.size()) - 1);
  }
  BlockVarsPtr vars = makeBlockVars(names, lows, highs);
  std::vector<int> keep = xS;
  keep.insert(keep.end(), yS.begin(), yS.end());
  std::vector<std::string> keyNames;
  for (int s : keep) keyNames.push_back(names[s]);

  Scalar q = sQ(), t = sT();

  // weighted sum over diagrams
  Block lhs(vars);
  for (const Sig& la : partitionsUpTo(D)) {
    Scalar wgt = spec.columns ? q.pow(-columnSum(la, r))
                              : elementaryObservable(la, r, q, t);
    lhs = lhs + mesWeightPair(id, la, vars, xS, yS).scaled(wgt);
  }
  CoeffMap lhsMap = toMapAt(lhs, keep);

  // series-extraction side
  Block acc(vars);
  if (!spec.columns) {
    Scalar br = t.pow(r * (r - 1) / 2) /
                (Scalar(factorialOf(r)) * (Scalar(1) - t).pow(r));
    acc = Block::monomial(vars, slotExp(names.size(), wS, -1), br);
  } else {
    long sign = (r * (r - 1) / 2) % 2 == 0 ? 1 : -1;
    Scalar br = Scalar(sign) / Scalar(factorialOf(r));
    acc = Block::monomial(vars, slotExp(names.size(), wS, -int(r)), br) *
          vandermondeSq(vars, wS);
  }
  for (int ws : wS)
    for (int xs : xS)
      acc = filterDeg(acc * xFactorBlock(spec.xType, vars, ws, xs), xS, yS, D);
  for (int ws : wS)
    for (int ys : yS)
      acc = filterDeg(acc * yFactorBlock(spec.yType, vars, ws, ys), xS, yS, D);
  Block cross = Block::one(vars);
  if (!spec.columns)
    for (size_t k = 0; k < wS.size(); ++k)
      for (size_t l = k + 1; l < wS.size(); ++l)
        cross = cross * crossPairBlock(vars, wS[k], wS[l]);
  CoeffMap slice = sliceProduct(acc, cross, wS, -1, keep);

  Block sliceB(vars);
  for (const auto& [k, c] : slice) {
    ExpVec e(names.size(), 0);
    for (size_t i = 0; i < keep.size(); ++i) e[keep[i]] = k[i];
    sliceB.add(e, c);
  }
  Block rhsB =
      filterDeg(sliceB * kernelBlock(spec.kernel, vars, xS, yS, D), xS, yS, D);
  CoeffMap rhsMap = toMapAt(rhsB, keep);

  VerificationReport rep;
  rep.id = id;
  std::ostringstream tr;
  tr << "total x,y degree <= " << D << "; extraction window [" << -W << ", "
     << W << "]";
  rep.truncation = tr.str();
  rep.equal = compareMaps(lhsMap, rhsMap, keyNames, &rep.detail,
                          &rep.termsCompared);
  return rep;
}

// ---- two-level process engine ---------------------------------------------

VerificationReport verifyProcessObservable(long r1, long r2, long D) {
  if (r1 < 0 || r1 > 2 || r2 < 0 || r2 > 2)
    throw std::invalid_argument("observable orders must lie in [0, 2]");
  if (D < 0 || D > 4)
    throw std::invalid_argument("degree cutoff must lie in [0, 4]");

  const int W = int(2 * D + 8);
  std::vector<std::string> names = {"x1.1", "x2.1", "x1.2", "x2.2",
                                    "y1.1", "y2.1", "y1.2", "y2.2"};
  std::vector<int> lows(8, 0), highs(8, int(D));
  std::vector<int> X1 = {0, 1}, X2 = {2, 3}, Y1 = {4, 5}, Y2 = {6, 7};
  std::vector<int> v1S, v2S;
  for (long s = 1; s <= r1; ++s) {
    names.push_back("v" + std::to_string(s) + ".1");
    lows.push_back(-W);
    highs.push_back(W);
    v1S.push_back(int(names.size()) - 1);
  }
  for (long s = 1; s <= r2; ++s) {
    names.push_back("v" + std::to_string(s) + ".2");
    lows.push_back(-W);
    highs.push_back(W);
    v2S.push_back(int(names.size()) - 1);
  }
  BlockVarsPtr vars = makeBlockVars(names, lows, highs);
  std::vector<int> xAll = {0, 1, 2, 3}, yAll = {4, 5, 6, 7};
  std::vector<int> keep = {0, 1, 2, 3, 4, 5, 6, 7};
  std::vector<int> vAll = v1S;
  vAll.insert(vAll.end(), v2S.begin(), v2S.end());
  std::vector<std::string> keyNames;
  for (int s : keep) keyNames.push_back(names[s]);

  Scalar q = sQ();

  // chain measure summed over both diagrams with the skew interaction
  std::vector<Sig> parts = partitionsUpTo(D);
  int P = int(parts.size());
  std::vector<Block> pX1(P, Block(vars)), qY2(P, Block(vars));
  for (int a = 0; a < P; ++a) {
    pX1[a] = cornerSkew(Corner::HL, false, parts[a], Sig{}, vars, X1, q);
    qY2[a] = cornerSkew(Corner::HL, true, parts[a], Sig{}, vars, Y2, q);
  }
  Block lhs(vars);
  for (int a = 0; a < P; ++a) {
    if (pX1[a].isZero()) continue;
    for (int b = 0; b < P; ++b) {
      if (qY2[b].isZero()) continue;
      Block psi(vars);
      for (const Sig& nu : parts) {
        if (!diagramContains(parts[a], nu) || !diagramContains(parts[b], nu))
          continue;
        Block ps = cornerSkew(Corner::HL, false, parts[b], nu, vars, X2, q);
        if (ps.isZero()) continue;
        Block qs = cornerSkew(Corner::HL, true, parts[a], nu, vars, Y1, q);
        if (qs.isZero()) continue;
        psi = psi + ps * qs;
      }
      if (psi.isZero()) continue;
      Scalar wgt =
          q.pow(-columnSum(parts[a], r1)) * q.pow(-columnSum(parts[b], r2));
      lhs = lhs + (pX1[a] * psi * qY2[b]).scaled(wgt);
    }
  }
  for (int xs : X1)
    for (int ys : Y1)
      lhs = filterDeg(lhs * invKernelPair(vars, xs, ys), xAll, yAll, D);
  for (int xs : X1)
    for (int ys : Y2)
      lhs = filterDeg(lhs * invKernelPair(vars, xs, ys), xAll, yAll, D);
  for (int xs : X2)
    for (int ys : Y2)
      lhs = filterDeg(lhs * invKernelPair(vars, xs, ys), xAll, yAll, D);
  CoeffMap lhsMap = toMapAt(lhs, keep);

  // extraction side: per-level brackets, triangular factor pattern, and
  // one-sided cross-level couplings
  Block acc = Block::one(vars);
  for (int level = 1; level <= 2; ++level) {
    const std::vector<int>& vS = level == 1 ? v1S : v2S;
    long rm = long(vS.size());
    if (rm == 0) continue;
    long sign = (rm * (rm - 1) / 2) % 2 == 0 ? 1 : -1;
    Scalar br = Scalar(sign) / Scalar(factorialOf(rm));
    acc = acc * Block::monomial(vars, slotExp(names.size(), vS, -int(rm)), br) *
          vandermondeSq(vars, vS);
  }
  for (int level = 1; level <= 2; ++level) {
    const std::vector<int>& vS = level == 1 ? v1S : v2S;
    for (int vs : vS) {
      for (int alpha = 1; alpha <= level; ++alpha)
        for (int xs : alpha == 1 ? X1 : X2)
          acc = filterDeg(acc * xFactorBlock('B', vars, vs, xs), xAll, yAll, D);
      for (int beta = level; beta <= 2; ++beta)
        for (int ys : beta == 1 ? Y1 : Y2)
          acc = filterDeg(acc * yFactorBlock('D', vars, vs, ys), xAll, yAll, D);
    }
  }
  Block cross = Block::one(vars);
  for (int u : v1S)
    for (int v : v2S) cross = cross * crossLevelBlock(vars, u, v);
  CoeffMap rhsMap = sliceProduct(acc, cross, vAll, -1, keep);

  VerificationReport rep;
  rep.id = "genHL";
  std::ostringstream tr;
  tr << "total x,y degree <= " << D << "; extraction window [" << -W << ", "
     << W << "]";
  rep.truncation = tr.str();
  rep.equal = compareMaps(lhsMap, rhsMap, keyNames, &rep.detail,
                          &rep.termsCompared);
  return rep;
}

// ---- stabilized numeric evaluation ----------------------------------------

namespace {

double ratToDouble(const BigRat& x) { return x.convert_to<double>(); }

void requireArg(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

// decreasing radius chain: each later group contracts by 9t/20 so that
// every cross coupling ratio t^-1 rho_j / rho_i stays below 9/20
std::vector<BigRat> radiusChain(const BigRat& t, int groups,
                                const BigRat& maxLow, const BigRat& maxHigh) {
  // need rho_last > maxLow (inverse-direction factors) and
  // t * rho_1 * maxHigh < 1 (forward-direction factors)
  BigRat c = t * BigRat(9, 20);
  BigRat lo(0);
  if (maxLow > 0) {
    lo = maxLow;
    for (int g = 1; g < groups; ++g) lo /= c;
  }
  bool hiInf = maxHigh == 0;
  BigRat hi = hiInf ? BigRat(0) : BigRat(1) / (t * maxHigh);
  if (!hiInf && lo >= hi)
    throw std::domain_error(
        "infeasible expansion: no contour radii satisfy all contraction "
        "constraints");
  BigRat first;
  if (hiInf)
    first = lo > 0 ? 2 * lo : BigRat(1);
  else
    first = (lo + hi) / 2;
  std::vector<BigRat> radii(groups);
  for (int g = 0; g < groups; ++g) {
    radii[g] = first;
    first *= c;
  }
  return radii;
}

ModelValue evalSixVertex(const ModelParams& p, const BigRat& tol) {
  requireArg(p.ks.size() == 2 && p.ms.size() == 2 && p.ns.size() == 2,
             "sixv-2pt needs two points: ks, ms, ns of size 2");
  long k1 = p.ks[0], k2 = p.ks[1];
  long m1 = p.ms[0], m2 = p.ms[1], n1 = p.ns[0], n2 = p.ns[1];
  requireArg(k1 >= 0 && k2 >= 0, "exponents must be nonnegative");
  requireArg(m1 >= m2 && m2 >= 0, "column positions must satisfy m1 >= m2 >= 0");
  requireArg(0 <= n1 && n1 <= n2, "row positions must satisfy 0 <= n1 <= n2");
  requireArg(p.tValue > 0 && p.tValue < 1, "t must lie in (0, 1)");
  requireArg(long(p.aParams.size()) >= m1, "need a parameter per column");
  requireArg(long(p.bParams.size()) >= n2, "need b parameter per row");
  for (const BigRat& a : p.aParams) requireArg(a > 0, "a parameters positive");
  for (const BigRat& b : p.bParams) requireArg(b > 0, "b parameters positive");
  int K = int(k1 + k2);
  requireArg(K <= 8, "at most 8 extraction variables");

  ModelValue mv;
  mv.id = "sixv-2pt";
  mv.mode = "stabilized";
  BigRat t = p.tValue;
  BigRat pref = ratPow(t, n1 * k1 + n2 * k2);
  if (K == 0) {
    mv.value = ratToDouble(pref);
    return mv;
  }

  BigRat maxa(0), maxb(0);
  for (long i = 0; i < m1; ++i) maxa = std::max(maxa, p.aParams[size_t(i)]);
  for (long j = 0; j < n2; ++j) maxb = std::max(maxb, p.bParams[size_t(j)]);
  std::vector<BigRat> radii = radiusChain(t, K, maxa, maxb);

  ExpVec zero(K, 0);
  std::vector<NumFactor> fs;
  for (int i = 0; i < K; ++i)
    for (int j = i + 1; j < K; ++j) {
      ExpVec dir = zero;
      dir[i] = -1;
      dir[j] = 1;
      fs.push_back(
          numGeomFactor({{zero, BigRat(1)}, {dir, BigRat(-1)}}, 1 / t, dir));
    }
  for (int rIdx = 0; rIdx < K; ++rIdx) {
    long mg = rIdx < k1 ? m1 : m2;
    long ng = rIdx < k1 ? n1 : n2;
    for (long j = 0; j < ng; ++j) {
      BigRat b = p.bParams[size_t(j)];
      ExpVec up = unitExp(K, rIdx, 1);
      fs.push_back(numGeomFactor({{zero, BigRat(1)}, {up, b}}, -t * b, up));
    }
    for (long i = 0; i < mg; ++i) {
      BigRat a = p.aParams[size_t(i)];
      ExpVec dn = unitExp(K, rIdx, -1);
      fs.push_back(numGeomFactor({{zero, BigRat(1)}, {dn, a / t}}, -a, dn));
    }
  }
  // the 1/(z_1 ... z_K) bracket is folded into the target exponent
  NumExtraction ext = stabilizedCoefficient(fs, K, radii, zero, tol);
  mv.value = ratToDouble(pref * ext.value);
  mv.bound = ratToDouble(pref * ext.bound);
  mv.order = ext.order;
  return mv;
}

ModelValue evalTwoLayerPoints(const ModelParams& p, const BigRat& tol) {
  size_t k = p.ms.size();
  requireArg(k >= 1 && p.layers.size() == k,
             "twolayer-kpt needs ms and layers of equal positive size");
  requireArg(p.ns.size() == 1, "twolayer-kpt uses a single row position");
  long n = p.ns[0];
  requireArg(n >= 0, "row position must be nonnegative");
  for (size_t l = 0; l + 1 < k; ++l)
    requireArg(p.ms[l] >= p.ms[l + 1], "column positions must be decreasing");
  requireArg(p.ms[k - 1] >= 0, "column positions must be nonnegative");
  for (int s : p.layers) requireArg(s == 0 || s == 1, "layers entries in {0,1}");
  requireArg(p.tValue > 0 && p.tValue < 1, "t must lie in (0, 1)");
  long m1 = p.ms[0];
  requireArg(long(p.aParams.size()) >= m1, "need a parameter per column");
  requireArg(long(p.bParams.size()) >= n, "need b parameter per row");
  for (const BigRat& a : p.aParams) requireArg(a > 0, "a parameters positive");
  for (const BigRat& b : p.bParams) requireArg(b > 0, "b parameters positive");

  // flatten point variables
  std::vector<int> pointOf;
  std::vector<std::vector<int>> varsAt(k);
  for (size_t l = 0; l < k; ++l)
    for (int f = 0; f <= p.layers[l]; ++f) {
      varsAt[l].push_back(int(pointOf.size()));
      pointOf.push_back(int(l));
    }
  int K = int(pointOf.size());
  requireArg(K <= 8, "at most 8 extraction variables");

  BigRat t = p.tValue;
  BigRat maxa(0), maxb(0);
  for (long i = 0; i < m1; ++i) maxa = std::max(maxa, p.aParams[size_t(i)]);
  for (long j = 0; j < n; ++j) maxb = std::max(maxb, p.bParams[size_t(j)]);
  std::vector<BigRat> perPoint = radiusChain(t, int(k), maxa, maxb);
  std::vector<BigRat> radii(K);
  for (int v = 0; v < K; ++v) radii[v] = perPoint[size_t(pointOf[v])];

  ExpVec zero(K, 0);
  std::vector<NumFactor> fs;
  for (size_t i = 0; i < k; ++i)
    for (size_t j = i + 1; j < k; ++j)
      for (int u : varsAt[i])
        for (int v : varsAt[j]) {
          ExpVec dir = zero;
          dir[u] = -1;
          dir[v] = 1;
          fs.push_back(numGeomFactor({{zero, BigRat(1)}, {dir, BigRat(-1)}},
                                     1 / t, dir));
        }
  for (size_t l = 0; l < k; ++l) {
    if (p.layers[l] == 0) {
      std::map<ExpVec, BigRat> br;
      br[unitExp(K, varsAt[l][0], -1)] = BigRat(1);
      fs.push_back(numPolyFactor(br));
    } else {
      // -(z1 - z2)^2 / (2 z1^2 z2^2)
      int z1 = varsAt[l][0], z2 = varsAt[l][1];
      std::map<ExpVec, BigRat> br;
      br[unitExp(K, z1, -2)] = BigRat(-1, 2);
      ExpVec both = zero;
      both[z1] = -1;
      both[z2] = -1;
      br[both] = BigRat(1);
      br[unitExp(K, z2, -2)] = BigRat(-1, 2);
      fs.push_back(numPolyFactor(br));
    }
    for (int v : varsAt[l]) {
      for (long j = 0; j < n; ++j) {
        BigRat b = p.bParams[size_t(j)];
        ExpVec up = unitExp(K, v, 1);
        fs.push_back(numGeomFactor({{zero, BigRat(1)}, {up, b}}, -t * b, up));
      }
      for (long i = 0; i < p.ms[l]; ++i) {
        BigRat a = p.aParams[size_t(i)];
        ExpVec dn = unitExp(K, v, -1);
        fs.push_back(numGeomFactor({{zero, BigRat(1)}, {dn, a / t}}, -a, dn));
      }
    }
  }
  ExpVec target(K, -1);
  NumExtraction ext = stabilizedCoefficient(fs, K, radii, target, tol);
  BigRat pref = ratPow(t, n * long(k));
  ModelValue mv;
  mv.id = "twolayer-kpt";
  mv.mode = "stabilized";
  mv.value = ratToDouble(pref * ext.value);
  mv.bound = ratToDouble(pref * ext.bound);
  mv.order = ext.order;
  return mv;
}

// ---- exact tau expansion of the exclusion moment formulas -----------------

const std::array<int, 6>& zSlots() {
  static const std::array<int, 6> slots = {VA1, VA2, VA3, VB1, VB2, VB3};
  return slots;
}

// residue of f at v = shift; only shifts 0 and -1 ever occur
Scalar residueAt(const Scalar& f, int v, long shift) {
  Scalar g = shift == 0 ? f : f.substitute(v, sVar(v) + Scalar(shift));
  const Poly& num = g.num();
  const Poly& den = g.den();
  if (num.isZero()) return Scalar(0);
  int pN = num.monomialContent()[v];
  int pD = den.monomialContent()[v];
  int p = pD - pN;
  if (p < 1) return Scalar(0);
  Mono shiftN = monoOne(), shiftD = monoOne();
  shiftN[v] = int16_t(pN);
  shiftD[v] = int16_t(pD);
  Poly n0 = Poly::divExact(num, Poly::monomial(shiftN, BigInt(1)));
  Poly d0 = Poly::divExact(den, Poly::monomial(shiftD, BigInt(1)));
  Scalar lead = Scalar::fromPoly(d0.coeffOfVarPow(v, 0));
  std::vector<Scalar> s(static_cast<size_t>(p));
  for (int kk = 0; kk < p; ++kk) {
    Scalar acc = Scalar::fromPoly(n0.coeffOfVarPow(v, kk));
    for (int j = 1; j <= kk; ++j)
      acc -= Scalar::fromPoly(d0.coeffOfVarPow(v, j)) * s[size_t(kk - j)];
    s[size_t(kk)] = acc / lead;
  }
  return s[size_t(p - 1)];
}

Scalar hopFactor(int slot, long m) {
  // ((z + t^-1)/(z + 1))^m
  Scalar z = sVar(slot), t = sT();
  Scalar base = (z + t.pow(-1)) / (z + Scalar(1));
  return base.pow(m);
}

Scalar crossScalar(int si, int sj) {
  // t (z_i - z_j) / (t z_i - z_j)
  Scalar zi = sVar(si), zj = sVar(sj), t = sT();
  return t * (zi - zj) / (t * zi - zj);
}

// coefficients of exp(tau * E(z)) with E the jump-rate symbol of the site
// factor; E(z) = -z (1-t)^2 / ((1+z)(1+t z))
std::vector<Scalar> tauJet(int slot, long order) {
  Scalar z = sVar(slot), t = sT();
  Scalar E = (Scalar(1) - t) *
             (Scalar(1) / (Scalar(1) + z) - Scalar(1) / (Scalar(1) + t * z));
  std::vector<Scalar> jet(size_t(order + 1));
  jet[0] = Scalar(1);
  for (long p = 1; p <= order; ++p)
    jet[size_t(p)] = jet[size_t(p - 1)] * E / Scalar(p);
  return jet;
}

}  // namespace

std::vector<Scalar> asepMomentTauSeries(const std::string& id,
                                        const ModelParams& p, long order) {
  requireArg(order >= 0 && order <= 16, "series order must lie in [0, 16]");
  std::vector<int> slots;     // poly slot per extraction variable
  std::vector<long> site;     // lattice position per variable
  std::vector<std::pair<int, int>> crossPairs;
  std::vector<Scalar> brackets;
  if (id == "asep-2pt") {
    requireArg(p.ks.size() == 2 && p.ms.size() == 2,
               "asep-2pt needs ks and ms of size 2");
    requireArg(p.ks[0] >= 0 && p.ks[1] >= 0, "exponents must be nonnegative");
    requireArg(p.ms[0] >= p.ms[1], "positions must satisfy m1 >= m2");
    long K = p.ks[0] + p.ks[1];
    requireArg(K <= 6, "at most 6 extraction variables");
    for (long v = 0; v < K; ++v) {
      slots.push_back(zSlots()[size_t(v)]);
      site.push_back(v < p.ks[0] ? p.ms[0] : p.ms[1]);
      brackets.push_back(Scalar(1) / sVar(slots.back()));
    }
    for (size_t i = 0; i < slots.size(); ++i)
      for (size_t j = i + 1; j < slots.size(); ++j)
        crossPairs.push_back({slots[i], slots[j]});
  } else if (id == "twolayerAsep-kpt") {
    size_t k = p.ms.size();
    requireArg(k >= 1 && p.layers.size() == k,
               "twolayerAsep-kpt needs ms and layers of equal positive size");
    for (size_t l = 0; l + 1 < k; ++l)
      requireArg(p.ms[l] >= p.ms[l + 1], "positions must be decreasing");
    for (int s : p.layers)
      requireArg(s == 0 || s == 1, "layers entries in {0,1}");
    std::vector<std::vector<int>> at(k);
    for (size_t l = 0; l < k; ++l)
      for (int f = 0; f <= p.layers[l]; ++f) {
        requireArg(slots.size() < 6, "at most 6 extraction variables");
        at[l].push_back(zSlots()[slots.size()]);
        slots.push_back(zSlots()[slots.size()]);
        site.push_back(p.ms[l]);
      }
    for (size_t l = 0; l < k; ++l) {
      if (p.layers[l] == 0) {
        brackets.push_back(Scalar(1) / sVar(at[l][0]));
      } else {
        Scalar z1 = sVar(at[l][0]), z2 = sVar(at[l][1]);
        Scalar d = z1 - z2;
        brackets.push_back(Scalar(0) -
                           d * d / (Scalar(2) * z1 * z1 * z2 * z2));
      }
    }
    for (size_t i = 0; i < k; ++i)
      for (size_t j = i + 1; j < k; ++j)
        for (int u : at[i])
          for (int v : at[j]) crossPairs.push_back({u, v});
  } else {
    throw std::invalid_argument("unknown tau-series id: " + id);
  }

  Scalar pre(1);
  for (const auto& [u, v] : crossPairs) pre = pre * crossScalar(u, v);
  for (const Scalar& b : brackets) pre = pre * b;
  for (size_t v = 0; v < slots.size(); ++v)
    pre = pre * hopFactor(slots[v], site[v]);

  // truncated product of per-variable exponential jets
  std::vector<Scalar> total(size_t(order + 1));
  total[0] = pre;
  for (int slot : slots) {
    std::vector<Scalar> jet = tauJet(slot, order);
    std::vector<Scalar> next(size_t(order + 1));
    for (long a = 0; a <= order; ++a) {
      if (total[size_t(a)].isZero()) continue;
      for (long b = 0; a + b <= order; ++b)
        next[size_t(a + b)] += total[size_t(a)] * jet[size_t(b)];
    }
    total = std::move(next);
  }

  // innermost-first residue extraction; every pole lies at 0 or -1
  std::vector<Scalar> out(size_t(order + 1));
  for (long pw = 0; pw <= order; ++pw) {
    Scalar f = total[size_t(pw)];
    for (int vi = int(slots.size()) - 1; vi >= 0; --vi)
      f = residueAt(f, slots[vi], 0) + residueAt(f, slots[vi], -1);
    out[size_t(pw)] = f;
  }
  return out;
}

// ---- mixed-measure extraction ---------------------------------------------

namespace {

void validateMixed(const ModelParams& p) {
  requireArg(p.r >= 0 && p.r <= 3, "observable order must lie in [0, 3]");
  requireArg(p.tValue > 0 && p.tValue < 1,
             "deformation parameter must lie in (0, 1)");
  for (const BigRat& x : p.xParams) requireArg(x > 0, "x parameters positive");
  for (const BigRat& y : p.yParams) requireArg(y > 0, "y parameters positive");
}

BigRat mixedRadius(const std::string& id, const ModelParams& p) {
  BigRat maxx(0), maxy(0);
  for (const BigRat& x : p.xParams) maxx = std::max(maxx, x);
  for (const BigRat& y : p.yParams) maxy = std::max(maxy, y);
  BigRat lo = maxy;
  bool hiInf = maxx == 0;
  BigRat hi(0);
  if (!hiInf)
    hi = id == "qWHL-a" ? BigRat(1) / maxx : BigRat(1) / (p.tValue * maxx);
  if (!hiInf && lo >= hi)
    throw std::domain_error(
        "infeasible expansion: no circle radius separates the parameter "
        "singularities");
  if (hiInf) return lo > 0 ? 2 * lo : BigRat(1);
  return (lo + hi) / 2;
}

// Vandermonde-squared bracket over r variables shifted by w^-r, as one
// numeric Laurent polynomial factor
NumFactor mixedBracket(long r) {
  int R = int(r);
  std::map<ExpVec, BigRat> acc;
  acc[ExpVec(R, 0)] = BigRat(1);
  for (int k = 0; k < R; ++k)
    for (int l = k + 1; l < R; ++l) {
      std::map<ExpVec, BigRat> next;
      for (const auto& [e, c] : acc) {
        ExpVec e1 = e;
        e1[k] += 2;
        next[e1] += c;
        ExpVec e2 = e;
        e2[k] += 1;
        e2[l] += 1;
        next[e2] += BigRat(-2) * c;
        ExpVec e3 = e;
        e3[l] += 2;
        next[e3] += c;
      }
      acc = std::move(next);
    }
  long sign = (r * (r - 1) / 2) % 2 == 0 ? 1 : -1;
  BigRat scale = BigRat(sign) / BigRat(factorialOf(r));
  std::map<ExpVec, BigRat> out;
  for (const auto& [e, c] : acc) {
    ExpVec es = e;
    for (int v = 0; v < R; ++v) es[v] -= R;
    out[es] = c * scale;
  }
  return numPolyFactor(out);
}

ModelValue evalMixedMeasure(const std::string& id, const ModelParams& p,
                            const BigRat& tol) {
  validateMixed(p);
  long r = p.r;
  ModelValue mv;
  mv.id = id;
  mv.mode = "stabilized";
  if (r == 0) {
    mv.value = 1.0;
    return mv;
  }
  int R = int(r);
  BigRat q = p.tValue;
  BigRat rho = mixedRadius(id, p);
  std::vector<BigRat> radii(size_t(R), rho);
  ExpVec zero(R, 0);
  std::vector<NumFactor> fs = {mixedBracket(r)};
  for (int s = 0; s < R; ++s) {
    for (const BigRat& x : p.xParams) {
      ExpVec up = unitExp(R, s, 1);
      if (id == "qWHL-a")
        fs.push_back(numGeomFactor({{zero, BigRat(1)}}, x, up));
      else
        fs.push_back(numGeomFactor({{zero, BigRat(1)}, {up, x}}, -q * x, up));
    }
    for (const BigRat& y : p.yParams) {
      ExpVec dn = unitExp(R, s, -1);
      fs.push_back(numGeomFactor({{zero, BigRat(1)}, {dn, y / q}}, -y, dn));
    }
  }
  ExpVec target(R, -1);
  NumExtraction ext = stabilizedCoefficient(fs, R, radii, target, tol);
  mv.value = ratToDouble(ext.value);
  mv.bound = ratToDouble(ext.bound);
  mv.order = ext.order;
  return mv;
}

}  // namespace

double quadratureMixedMeasure(const std::string& id, const ModelParams& p,
                              int points) {
  requireArg(id == "qWHL-a" || id == "qWHL-b",
             "quadrature only covers the mixed-measure ids");
  validateMixed(p);
  requireArg(p.r <= 2, "quadrature supports observable order <= 2");
  requireArg(points >= 8, "need at least 8 quadrature points");
  long r = p.r;
  if (r == 0) return 1.0;
  double rho = ratToDouble(mixedRadius(id, p));
  double q = ratToDouble(p.tValue);
  std::vector<double> xs, ys;
  for (const BigRat& x : p.xParams) xs.push_back(ratToDouble(x));
  for (const BigRat& y : p.yParams) ys.push_back(ratToDouble(y));
  bool variantA = id == "qWHL-a";
  long sign = (r * (r - 1) / 2) % 2 == 0 ? 1 : -1;
  double scale = double(sign) / double(factorialOf(r));
  const double pi = std::acos(-1.0);
  std::complex<double> sum(0.0, 0.0);
  std::vector<int> idx(size_t(r), 0);
  std::vector<std::complex<double>> w(static_cast<size_t>(r));
  while (true) {
    for (size_t s = 0; s < size_t(r); ++s) {
      double th = 2.0 * pi * double(idx[s]) / double(points);
      w[s] = std::polar(rho, th);
    }
    std::complex<double> f(scale, 0.0);
    for (size_t k = 0; k < size_t(r); ++k)
      for (size_t l = k + 1; l < size_t(r); ++l) f *= (w[k] - w[l]) * (w[k] - w[l]);
    for (size_t s = 0; s < size_t(r); ++s) {
      for (long e = 0; e < r; ++e) f /= w[s];
      for (double x : xs)
        f *= variantA ? 1.0 / (1.0 - w[s] * x)
                      : (1.0 + w[s] * x) / (1.0 + q * w[s] * x);
      for (double y : ys) f *= (w[s] + y / q) / (w[s] + y);
      f *= w[s];  // measure dw / (2 pi i w)
    }
    sum += f;
    size_t pos = 0;
    while (pos < size_t(r) && ++idx[pos] == points) {
      idx[pos] = 0;
      ++pos;
    }
    if (pos == size_t(r)) break;
  }
  double cells = 1.0;
  for (long s = 0; s < r; ++s) cells *= double(points);
  return (sum / cells).real();
}

// ---- dispatch -------------------------------------------------------------

ModelValue evaluateModelFormula(const std::string& id, const ModelParams& p,
                                const std::string& mode, const BigRat& tol) {
  static const std::set<std::string> stabilizedIds = {
      "sixv-2pt", "twolayer-kpt", "qWHL-a", "qWHL-b"};
  static const std::set<std::string> tauIds = {"asep-2pt", "twolayerAsep-kpt"};
  if (stabilizedIds.count(id)) {
    if (mode != "stabilized")
      throw std::invalid_argument("id " + id + " requires mode stabilized");
    if (id == "sixv-2pt") return evalSixVertex(p, tol);
    if (id == "twolayer-kpt") return evalTwoLayerPoints(p, tol);
    return evalMixedMeasure(id, p, tol);
  }
  if (tauIds.count(id)) {
    if (mode != "tau-series")
      throw std::invalid_argument("id " + id + " requires mode tau-series");
    requireArg(p.tValue > 0 && p.tValue < 1, "t must lie in (0, 1)");
    requireArg(p.tau >= 0, "tau must be nonnegative");
    ModelValue mv;
    mv.id = id;
    mv.mode = mode;
    mv.order = p.order;
    mv.tauSeries = asepMomentTauSeries(id, p, p.order);
    std::array<BigRat, NVARS> pt{};
    pt[VT] = p.tValue;
    BigRat acc(0), tp(1), last(0);
    for (const Scalar& c : mv.tauSeries) {
      last = c.evaluate(pt) * tp;
      acc += last;
      tp *= p.tau;
    }
    mv.value = ratToDouble(acc);
    mv.bound = std::abs(ratToDouble(last));
    return mv;
  }
  throw std::invalid_argument("unknown formula id: " + id);
}

}  // namespace hlrsk
