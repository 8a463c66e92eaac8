#include "hlrsk/rsk.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <stdexcept>

namespace hlrsk {

namespace {

constexpr long long NEG = SIG_NINF;

enum class Box : unsigned char { Trivial, Zero, One };

using MS = std::map<long long, int>;

MS toMS(const Sig& s) {
  MS m;
  for (auto p : s) m[p]++;
  return m;
}

Sig toSig(const MS& m) {
  Sig s;
  for (auto it = m.rbegin(); it != m.rend(); ++it)
    for (int c = 0; c < it->second; ++c) s.push_back(it->first);
  return s;
}

void moveParticle(MS& m, long long p) {
  auto it = m.find(p);
  if (it == m.end() || it->second <= 0)
    throw std::logic_error("no particle to move");
  if (--it->second == 0) m.erase(it);
  m[p + 1]++;
}

int countAt(const MS& m, long long p) {
  auto it = m.find(p);
  return it == m.end() ? 0 : it->second;
}

// ascending start positions of the unit particle moves taking lower to upper
// (same length, interlacing: each column count differs by 0 or 1)
std::vector<long long> moveList(const Sig& lower, const Sig& upper) {
  assert(lower.size() == upper.size());
  std::vector<long long> out;
  if (lower.empty()) return out;
  for (long long k = lower.back() + 1; k <= upper.front(); ++k) {
    long long d = sigCountGE(upper, k) - sigCountGE(lower, k);
    assert(d == 0 || d == 1);
    if (d == 1) out.push_back(k - 1);
  }
  assert((long long)out.size() == sigWeight(upper) - sigWeight(lower));
  return out;
}

// Candidate weights for an undetermined cell whose south and west edges both
// carry label k.  "One" raises both outgoing edges to k+1, "zero" keeps k.
// leftCls / belowCls / diagCls are the classes of the already-resolved west,
// south, and south-west neighbor cells; hl / vb are the labels entering the
// cell's south-west corner from the west and from below; cnt is the number of
// coordinates equal to k at that corner.
struct BranchW {
  bool zeroAdmissible;
  Scalar wOne, wZero;
};

BranchW classify(Box leftCls, Box belowCls, Box diagCls, long long diagRbar,
                 long long hl, long long vb, long long k, int cnt) {
  bool leftOne = leftCls == Box::One, belowOne = belowCls == Box::One;
  // a kept-label cell never borders an undetermined one
  assert(leftCls != Box::Zero && belowCls != Box::Zero);
  assert(hl < k && vb < k);
  if (diagCls != Box::Trivial && diagRbar == k - 1) {
    if (diagCls == Box::Zero) {
      assert(!leftOne && !belowOne);
      return {true, Scalar(0), Scalar(1)};
    }
    return {!leftOne && !belowOne, Scalar(1), Scalar(0)};
  }
  if (leftOne || belowOne) return {false, Scalar(1), Scalar(0)};
  int eq = (hl == k - 1 ? 1 : 0) + (vb == k - 1 ? 1 : 0);
  assert(eq < 2);  // the double case always resolves through the diagonal
  if (eq == 1) return {true, Scalar(1) - sT(), sT()};
  assert(cnt >= 1);
  Scalar c = sT().pow(cnt);
  Scalar den = Scalar(1) - c;
  return {true, (Scalar(1) - sT()) / den, (sT() - c) / den};
}

// literal restatement of the per-cell weight table, used by the exhaustive
// oracle; cls is the class the cell resolved to
Scalar literalWeight(Box cls, long long k, Box leftCls, Box belowCls,
                     Box diagCls, long long diagRbar, long long hl,
                     long long vb, int cnt) {
  if (cls == Box::Trivial) return Scalar(1);
  int eq = (hl == k - 1 ? 1 : 0) + (vb == k - 1 ? 1 : 0);
  Scalar c = sT().pow(cnt);
  if (cls == Box::One) {
    if (leftCls == Box::One || belowCls == Box::One) return Scalar(1);
    if (diagCls == Box::One && diagRbar == k - 1) return Scalar(1);
    if (diagCls == Box::Zero && diagRbar == k - 1) return Scalar(0);
    if (eq == 1 && leftCls == Box::Trivial && belowCls == Box::Trivial)
      return Scalar(1) - sT();
    if (hl < k - 1 && vb < k - 1) return (Scalar(1) - sT()) / (Scalar(1) - c);
    throw std::logic_error("uncovered raised-cell configuration");
  }
  if (diagCls == Box::Zero && diagRbar == k - 1) return Scalar(1);
  if (diagCls == Box::One && diagRbar == k - 1) return Scalar(0);
  if (eq == 1) return sT();
  if (hl < k - 1 && vb < k - 1) return (sT() - c) / (Scalar(1) - c);
  throw std::logic_error("uncovered kept-cell configuration");
}

struct Grid {
  size_t m, n;
  std::vector<long long> hB, vL;  // bottom and left boundary move positions
  Sig la;
};

Grid makeGrid(const Sig& la, const Sig& nu, const Sig& mu) {
  Grid g{0, 0, moveList(la, nu), moveList(la, mu), la};
  g.m = g.hB.size();
  g.n = g.vL.size();
  return g;
}

bool sameLevelSupport(const Sig& mu, const Sig& la, const Sig& nu) {
  return mu.size() == la.size() && nu.size() == la.size() &&
         interlaces(la, nu) && interlaces(la, mu);
}

// state of the column-by-column sweep shared by all drivers
struct SweepState {
  size_t i = 0, j = 0;
  long long h = 0;
  Box below = Box::Trivial;
  std::vector<long long> vIn, vOut, prevH, newH, prevRbar, newRbar;
  std::vector<Box> prevCls, newCls;
  MS cur, bottom;
  Scalar w = Scalar(1);
};

SweepState initState(const Grid& g) {
  SweepState st;
  st.vIn = g.vL;
  st.prevH.assign(g.n, NEG);
  st.prevRbar.assign(g.n, NEG);
  st.prevCls.assign(g.n, Box::Trivial);
  st.bottom = toMS(g.la);
  return st;
}

void startColumn(const Grid& g, SweepState& st) {
  st.j = 0;
  st.h = g.hB[st.i];
  st.below = Box::Trivial;
  st.cur = st.bottom;
  st.vOut.assign(g.n, 0);
  st.newH.assign(g.n, 0);
  st.newRbar.assign(g.n, NEG);
  st.newCls.assign(g.n, Box::Trivial);
}

void finishColumn(const Grid& g, SweepState& st) {
  st.prevH = st.newH;
  st.prevCls = st.newCls;
  st.prevRbar = st.newRbar;
  st.vIn = st.vOut;
  moveParticle(st.bottom, g.hB[st.i]);
  st.i++;
}

// record the resolution of the current cell and advance; choiceOne is
// meaningful only when the cell was undetermined
void applyCell(SweepState& st, bool ambiguous, bool choiceOne) {
  size_t j = st.j;
  st.newH[j] = st.h;
  long long av = st.vIn[j];
  if (!ambiguous) {
    st.vOut[j] = av;
    st.newCls[j] = Box::Trivial;
    st.below = Box::Trivial;
  } else {
    long long k = st.h;
    if (choiceOne) {
      st.h = k + 1;
      st.vOut[j] = k + 1;
      st.newCls[j] = Box::One;
      st.newRbar[j] = k + 1;
    } else {
      st.vOut[j] = k;
      st.newCls[j] = Box::Zero;
      st.newRbar[j] = k;
    }
    st.below = st.newCls[j];
  }
  if (j > 0 && !(st.vOut[j] > st.vOut[j - 1]))
    throw std::logic_error("outgoing labels must strictly increase");
  moveParticle(st.cur, av);
  st.j++;
}

BranchW cellBranches(const SweepState& st) {
  size_t j = st.j;
  return classify(st.prevCls[j], st.below, j ? st.prevCls[j - 1] : Box::Trivial,
                  j ? st.prevRbar[j - 1] : NEG, st.prevH[j],
                  j ? st.vIn[j - 1] : NEG, st.h, countAt(st.cur, st.h));
}

Sig finalSignature(const SweepState& st, const Sig& nu) {
  MS top = toMS(nu);
  for (long long p : st.vIn) moveParticle(top, p);
  return toSig(top);
}

// deterministic single-pass density evaluation: the top boundary move list
// pins every undetermined cell (the column label must climb to its target,
// otherwise the probability vanishes)
Scalar sweepDensity(const Sig& mu, const Sig& rho, const Sig& la,
                    const Sig& nu) {
  if (!sameLevelSupport(mu, la, nu) || rho.size() != la.size() ||
      !interlaces(mu, rho) || !interlaces(nu, rho) ||
      sigWeight(nu) - sigWeight(la) != sigWeight(rho) - sigWeight(mu))
    return Scalar(0);
  Grid g = makeGrid(la, nu, mu);
  std::vector<long long> hT = moveList(mu, rho), vR = moveList(nu, rho);
  SweepState st = initState(g);
  for (st.i = 0; st.i < g.m;) {
    startColumn(g, st);
    long long target = hT[st.i];
    while (st.j < g.n) {
      if (st.h != st.vIn[st.j]) {
        applyCell(st, false, false);
        continue;
      }
      BranchW bw = cellBranches(st);
      bool one = st.h < target;
      if (one) {
        if (bw.wOne.isZero()) return Scalar(0);
        st.w *= bw.wOne;
      } else {
        if (!bw.zeroAdmissible || bw.wZero.isZero()) return Scalar(0);
        st.w *= bw.wZero;
      }
      applyCell(st, true, one);
    }
    if (st.h != target) return Scalar(0);
    finishColumn(g, st);
  }
  return st.vIn == vR ? st.w : Scalar(0);
}

void lawDFS(const Grid& g, SweepState st, const Sig& nu, bool literalTable,
            std::vector<std::pair<Sig, Scalar>>& out) {
  while (st.i < g.m) {
    if (st.j == g.n) {
      finishColumn(g, st);
      if (st.i == g.m) break;
      startColumn(g, st);
      continue;
    }
    if (st.h != st.vIn[st.j]) {
      applyCell(st, false, false);
      continue;
    }
    size_t j = st.j;
    Box leftCls = st.prevCls[j], belowCls = st.below;
    Box diagCls = j ? st.prevCls[j - 1] : Box::Trivial;
    long long diagRbar = j ? st.prevRbar[j - 1] : NEG;
    long long hl = st.prevH[j], vb = j ? st.vIn[j - 1] : NEG;
    long long k = st.h;
    int cnt = countAt(st.cur, k);
    if (literalTable) {
      bool forcedOne = leftCls == Box::One || belowCls == Box::One;
      for (bool one : {true, false}) {
        if (!one && forcedOne) continue;
        Scalar w = literalWeight(one ? Box::One : Box::Zero, k, leftCls,
                                 belowCls, diagCls, diagRbar, hl, vb, cnt);
        // zero-weight branches lead into states the dynamics cannot reach
        if (w.isZero()) continue;
        SweepState br = st;
        br.w *= w;
        applyCell(br, true, one);
        lawDFS(g, std::move(br), nu, literalTable, out);
      }
    } else {
      BranchW bw = cellBranches(st);
      if (!bw.wOne.isZero()) {
        SweepState br = st;
        br.w *= bw.wOne;
        applyCell(br, true, true);
        lawDFS(g, std::move(br), nu, literalTable, out);
      }
      if (bw.zeroAdmissible && !bw.wZero.isZero()) {
        SweepState br = st;
        br.w *= bw.wZero;
        applyCell(br, true, false);
        lawDFS(g, std::move(br), nu, literalTable, out);
      }
    }
    return;
  }
  out.emplace_back(finalSignature(st, nu), st.w);
}

std::vector<std::pair<Sig, Scalar>> runLaw(const Sig& mu, const Sig& la,
                                           const Sig& nu, bool literalTable) {
  if (!sameLevelSupport(mu, la, nu))
    throw std::invalid_argument("inputs must interlace over a common base");
  Grid g = makeGrid(la, nu, mu);
  SweepState st = initState(g);
  if (g.m > 0) startColumn(g, st);
  std::vector<std::pair<Sig, Scalar>> out;
  lawDFS(g, std::move(st), nu, literalTable, out);
  return out;
}

std::array<BigRat, NVARS> numericPoint(double t) {
  std::array<BigRat, NVARS> pt;
  pt.fill(BigRat(0));
  pt[VT] = BigRat(t);
  return pt;
}

// pad the lower chain one level down by a far-away sentinel coordinate
struct Padded {
  Sig laT, nuT;
  long long V;
};

Padded padInput(const Sig& mu, const Sig& la, const Sig& nu, long r,
                long padShift) {
  long long lo = 0;
  for (long long c : mu) lo = std::min(lo, c);
  for (long long c : nu) lo = std::min(lo, c);
  Padded p;
  p.V = padShift - lo;
  p.laT = la;
  p.laT.push_back(-p.V - r);
  p.nuT = nu;
  p.nuT.push_back(-p.V);
  return p;
}

long long sentinelBase(const Sig& mu, const Sig& nu, long padShift) {
  long long lo = 0;
  for (long long c : mu) lo = std::min(lo, c);
  for (long long c : nu) lo = std::min(lo, c);
  return padShift - lo;
}

}  // namespace

Scalar transitionProb(const Sig& mu, const Sig& rho, const Sig& la,
                      const Sig& nu) {
  return sweepDensity(mu, rho, la, nu);
}

std::vector<std::pair<Sig, Scalar>> transitionLaw(const Sig& mu, const Sig& la,
                                                  const Sig& nu) {
  auto leaves = runLaw(mu, la, nu, false);
  std::map<Sig, Scalar> agg;
  for (auto& [s, w] : leaves) {
    auto it = agg.find(s);
    if (it == agg.end())
      agg.emplace(s, w);
    else
      it->second += w;
  }
  return {agg.begin(), agg.end()};
}

std::vector<std::pair<Sig, Scalar>> gridOracleLaw(const Sig& mu, const Sig& la,
                                                  const Sig& nu) {
  return runLaw(mu, la, nu, true);
}

Sig transitionSample(const Sig& mu, const Sig& la, const Sig& nu, double t,
                     std::mt19937_64& rng) {
  if (!sameLevelSupport(mu, la, nu))
    throw std::invalid_argument("inputs must interlace over a common base");
  Grid g = makeGrid(la, nu, mu);
  auto pt = numericPoint(t);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  SweepState st = initState(g);
  for (st.i = 0; st.i < g.m;) {
    startColumn(g, st);
    while (st.j < g.n) {
      if (st.h != st.vIn[st.j]) {
        applyCell(st, false, false);
        continue;
      }
      BranchW bw = cellBranches(st);
      bool one;
      if (!bw.zeroAdmissible || bw.wZero.isZero())
        one = true;
      else if (bw.wOne.isZero())
        one = false;
      else
        one = unif(rng) < bw.wOne.evaluateDouble(pt);
      applyCell(st, true, one);
    }
    finishColumn(g, st);
  }
  return finalSignature(st, nu);
}

Scalar inputProb(const Sig& mu, const Sig& rho, const Sig& la, const Sig& nu,
                 long r, long padShift) {
  if (r < 0 || mu.size() != la.size() + 1 || nu.size() != la.size() ||
      rho.size() != mu.size())
    return Scalar(0);
  Padded p = padInput(mu, la, nu, r, padShift);
  return transitionProb(mu, rho, p.laT, p.nuT);
}

std::vector<std::pair<Sig, Scalar>> inputLaw(const Sig& mu, const Sig& la,
                                             const Sig& nu, long r,
                                             long padShift) {
  Padded p = padInput(mu, la, nu, r, padShift);
  return transitionLaw(mu, p.laT, p.nuT);
}

Sig inputSample(const Sig& mu, const Sig& la, const Sig& nu, long r, double t,
                std::mt19937_64& rng) {
  Padded p = padInput(mu, la, nu, r, 1);
  return transitionSample(mu, p.laT, p.nuT, t, rng);
}

Scalar invProb(const Sig& nu, const Sig& la, long r, const Sig& rho,
               const Sig& mu, long padShift) {
  if (r < 0) return Scalar(0);
  Padded p = padInput(mu, la, nu, r, padShift);
  return transitionProb(sigNegate(p.nuT), sigNegate(p.laT), sigNegate(rho),
                        sigNegate(mu));
}

std::vector<std::tuple<Sig, long, Scalar>> invLaw(const Sig& rho,
                                                  const Sig& mu, const Sig& nu,
                                                  long padShift) {
  long long V = sentinelBase(mu, nu, padShift);
  Sig nuT = nu;
  nuT.push_back(-V);
  auto law = transitionLaw(sigNegate(nuT), sigNegate(rho), sigNegate(mu));
  std::vector<std::tuple<Sig, long, Scalar>> out;
  for (auto& [sig, w] : law) {
    Sig laT = sigNegate(sig);
    long long sentinel = laT.back();
    laT.pop_back();
    long r = long(-sentinel - V);
    if (r < 0) throw std::logic_error("sentinel drifted upward");
    out.emplace_back(std::move(laT), r, w);
  }
  return out;
}

std::pair<Sig, long> invSample(const Sig& rho, const Sig& mu, const Sig& nu,
                               double t, std::mt19937_64& rng) {
  long long V = sentinelBase(mu, nu, 1);
  Sig nuT = nu;
  nuT.push_back(-V);
  Sig sig =
      transitionSample(sigNegate(nuT), sigNegate(rho), sigNegate(mu), t, rng);
  Sig laT = sigNegate(sig);
  long long sentinel = laT.back();
  laT.pop_back();
  long r = long(-sentinel - V);
  if (r < 0) throw std::logic_error("sentinel drifted upward");
  return {laT, r};
}

long triggerPosition(const Sig& laBar, const Sig& muBar, long d) {
  long long k = d;
  while (true) {
    bool drop = sigCountGE(muBar, k) > sigCountGE(muBar, k + 1) &&
                sigCountGE(muBar, k + 1) == sigCountGE(laBar, k + 1);
    if (drop) break;
    ++k;
    if (k > muBar.front() + 1) throw std::logic_error("trigger search ran off");
  }
  return long(k);
}

long classicalTriggeredMove(const Sig& la, const Sig& mu, const Sig& laBar,
                            const Sig& muBar, long d, long dPrev, long uPrev) {
  long k = triggerPosition(laBar, muBar, d);
  long long cE = sigCountEq(la, d);
  long long cHatE = sigCountEq(mu, d);
  if (uPrev == dPrev && dPrev == d - 1 && k > d && cHatE == cE) return d;
  return k;
}

}  // namespace hlrsk
