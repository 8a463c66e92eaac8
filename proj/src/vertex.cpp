#include "hlrsk/vertex.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

#include "hlrsk/field.hpp"

namespace hlrsk {

namespace {

void checkCellInput(long long nw, long long sw, long long se) {
  if (sw < 0 || nw < 0 || se < 0)
    throw std::invalid_argument("cell counts must be nonnegative");
  if (nw != sw && nw != sw + 1)
    throw std::invalid_argument("nw must be sw or sw+1");
  if (se != sw - 1 && se != sw)
    throw std::invalid_argument("se must be sw-1 or sw");
}

}  // namespace

std::vector<std::pair<long long, Scalar>> sixVertexLocalLaw(long long nw,
                                                            long long sw,
                                                            long long se,
                                                            const Scalar& u) {
  checkCellInput(nw, sw, se);
  Scalar one(1), t = sT();
  Scalar den = one - t * u;
  if (nw == sw + 1 && se == sw - 1) return {{sw, one}};
  if (nw == sw && se == sw) return {{sw, one}};
  if (nw == sw + 1 && se == sw)
    return {{sw + 1, (one - u) / den}, {sw, (one - t) * u / den}};
  // nw == sw, se == sw - 1
  return {{sw, (one - t) / den}, {sw - 1, t * (one - u) / den}};
}

long long sixVertexLocalStep(long long nw, long long sw, long long se,
                             double ab, double t, std::mt19937_64& rng) {
  checkCellInput(nw, sw, se);
  if (nw == sw + 1 && se == sw - 1) return sw;
  if (nw == sw && se == sw) return sw;
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double den = 1.0 - t * ab;
  if (nw == sw + 1 && se == sw)
    return unif(rng) < (1.0 - ab) / den ? sw + 1 : sw;
  return unif(rng) < (1.0 - t) / den ? sw : sw - 1;
}

namespace {

void checkGridParams(long maxM, long maxN, size_t na, size_t nb,
                     long cellCap) {
  if (maxM < 1 || maxN < 1) throw std::invalid_argument("extent must be >= 1");
  if (maxM * maxN > cellCap) throw std::invalid_argument("cell cap exceeded");
  if (long(na) < maxM || long(nb) < maxN)
    throw std::invalid_argument("not enough row/column parameters");
}

// DFS over height grids; visit(grid, weight) at each complete grid
void forEachHeightGrid(
    long maxM, long maxN, const std::vector<Scalar>& aParams,
    const std::vector<Scalar>& bParams,
    const std::function<void(const std::vector<long long>&, const Scalar&)>&
        visit) {
  std::vector<long long> grid(maxM * maxN, 0);
  auto at = [&](long i, long j) -> long long {
    if (j == 0) return 0;
    if (i == 0) return j;
    return grid[(i - 1) * maxN + (j - 1)];
  };
  std::function<void(long, long, const Scalar&)> go = [&](long i, long j,
                                                          const Scalar& w) {
    if (i > maxM) {
      visit(grid, w);
      return;
    }
    long ni = j == maxN ? i + 1 : i;
    long nj = j == maxN ? 1 : j + 1;
    Scalar u = aParams[i - 1] * bParams[j - 1];
    for (auto& [ne, p] : sixVertexLocalLaw(at(i - 1, j), at(i - 1, j - 1),
                                           at(i, j - 1), u)) {
      grid[(i - 1) * maxN + (j - 1)] = ne;
      go(ni, nj, w * p);
    }
  };
  go(1, 1, Scalar(1));
}

}  // namespace

std::map<std::vector<long long>, Scalar> sixVertexGridLaw(
    long maxM, long maxN, const std::vector<Scalar>& aParams,
    const std::vector<Scalar>& bParams, long cellCap) {
  checkGridParams(maxM, maxN, aParams.size(), bParams.size(), cellCap);
  std::map<std::vector<long long>, Scalar> law;
  forEachHeightGrid(maxM, maxN, aParams, bParams,
                    [&](const std::vector<long long>& g, const Scalar& w) {
                      law[g] += w;
                    });
  return law;
}

Scalar sixVertexExactExpectation(const std::vector<long>& ms,
                                 const std::vector<long>& ns,
                                 const std::vector<long>& ks, long maxM,
                                 long maxN, const std::vector<Scalar>& aParams,
                                 const std::vector<Scalar>& bParams,
                                 long cellCap) {
  checkGridParams(maxM, maxN, aParams.size(), bParams.size(), cellCap);
  if (ms.size() != ns.size() || ms.size() != ks.size())
    throw std::invalid_argument("point/exponent length mismatch");
  for (size_t p = 0; p < ms.size(); ++p)
    if (ms[p] < 1 || ms[p] > maxM || ns[p] < 1 || ns[p] > maxN)
      throw std::invalid_argument("observable point outside extent");
  Scalar total;
  forEachHeightGrid(maxM, maxN, aParams, bParams,
                    [&](const std::vector<long long>& g, const Scalar& w) {
                      long long e = 0;
                      for (size_t p = 0; p < ms.size(); ++p)
                        e += ks[p] * g[(ms[p] - 1) * maxN + (ns[p] - 1)];
                      total += w * sT().pow(e);
                    });
  return total;
}

std::vector<std::vector<long long>> sampleSixVertexGrid(
    long maxM, long maxN, const std::vector<BigRat>& aParams,
    const std::vector<BigRat>& bParams, const BigRat& tValue, uint64_t seed) {
  if (maxM < 1 || maxN < 1) throw std::invalid_argument("extent must be >= 1");
  if (long(aParams.size()) < maxM || long(bParams.size()) < maxN)
    throw std::invalid_argument("not enough row/column parameters");
  double t = tValue.convert_to<double>();
  std::mt19937_64 rng(seed);
  std::vector<std::vector<long long>> grid(maxM,
                                           std::vector<long long>(maxN, 0));
  auto at = [&](long i, long j) -> long long {
    if (j == 0) return 0;
    if (i == 0) return j;
    return grid[i - 1][j - 1];
  };
  for (long i = 1; i <= maxM; ++i)
    for (long j = 1; j <= maxN; ++j) {
      double ab =
          (aParams[i - 1] * bParams[j - 1]).convert_to<double>();
      grid[i - 1][j - 1] = sixVertexLocalStep(at(i - 1, j), at(i - 1, j - 1),
                                              at(i, j - 1), ab, t, rng);
    }
  return grid;
}

DTuple projectColumns(const Sig& s, int c) {
  DTuple d(c, 0);
  for (int k = 0; k < c; ++k) d[k] = sigCountEq(s, k);
  return d;
}

bool KernelKey::operator<(const KernelKey& o) const {
  if (nw != o.nw) return nw < o.nw;
  if (sw != o.sw) return sw < o.sw;
  return se < o.se;
}

bool KernelKey::operator==(const KernelKey& o) const {
  return nw == o.nw && sw == o.sw && se == o.se;
}

namespace {

long long tupleSum(const DTuple& d) {
  return std::accumulate(d.begin(), d.end(), 0LL);
}

// signature [F^(L-sum), (c-1)^counts[c-1], ..., 0^counts[0]]
Sig patternSig(const DTuple& counts, long long fill, long long length) {
  long long nf = length - tupleSum(counts);
  if (nf < 0) return {};
  Sig s;
  for (long long k = 0; k < nf; ++k) s.push_back(fill);
  for (int v = int(counts.size()) - 1; v >= 0; --v)
    for (long long k = 0; k < counts[v]; ++k) s.push_back(v);
  return s;
}

using LumpedLaw = std::map<DTuple, Scalar>;

bool sameLaw(const LumpedLaw& a, const LumpedLaw& b) {
  if (a.size() != b.size()) return false;
  for (auto ita = a.begin(), itb = b.begin(); ita != a.end(); ++ita, ++itb)
    if (ita->first != itb->first || ita->second != itb->second) return false;
  return true;
}

// full projected one-cell law for explicit witness signatures: marginalize
// the exact update over the input count with a detected stabilization tail
LumpedLaw cellLumpedLaw(int c, const Sig& la, const Sig& mu, const Sig& nu) {
  const long rCap = c + 10;
  std::vector<LumpedLaw> perR;
  for (long r = 0; r <= rCap; ++r) {
    LumpedLaw m;
    for (auto& [rho, p] : inputLaw(mu, la, nu, r)) m[projectColumns(rho, c)] += p;
    perR.push_back(std::move(m));
  }
  long R = -1;
  for (long cand = 1; cand + 3 <= rCap; ++cand)
    if (sameLaw(perR[cand], perR[cand + 1]) &&
        sameLaw(perR[cand], perR[cand + 2]) &&
        sameLaw(perR[cand], perR[cand + 3])) {
      R = cand;
      break;
    }
  if (R < 0) throw std::logic_error("projected input law did not stabilize");
  Scalar t = sT(), u = sU(), one(1);
  LumpedLaw total;
  for (long r = 0; r < R; ++r) {
    Scalar mass = inputCountMassSymbolic(u, t, r);
    for (auto& [d, p] : perR[r]) total[d] += mass * p;
  }
  Scalar tail = (one - t) * u.pow(R) / (one - t * u);
  for (auto& [d, p] : perR[R]) total[d] += tail * p;
  for (auto it = total.begin(); it != total.end();)
    it = it->second.isZero() ? total.erase(it) : std::next(it);
  return total;
}

}  // namespace

ProjectionKernel::ProjectionKernel(int c) : c_(c) {
  if (c < 1) throw std::invalid_argument("column count must be >= 1");
}

const KernelRow& ProjectionKernel::row(const KernelKey& key) const {
  auto hit = cache_.find(key);
  if (hit != cache_.end()) return hit->second;
  if (int(key.nw.size()) != c_ || int(key.sw.size()) != c_ ||
      int(key.se.size()) != c_)
    throw std::invalid_argument("key tuple length mismatch");
  for (auto* d : {&key.nw, &key.sw, &key.se})
    for (long long v : *d)
      if (v < 0) throw std::invalid_argument("negative column count");

  long long base =
      std::max({tupleSum(key.sw), tupleSum(key.se), tupleSum(key.nw)}) + 1;
  std::vector<LumpedLaw> laws;
  for (long long fill : {c_, c_ + 2})
    for (long long len : {base, base + 1}) {
      Sig la = patternSig(key.sw, fill, len);
      Sig nu = patternSig(key.se, fill, len);
      Sig mu = patternSig(key.nw, fill, len + 1);
      if ((long long)la.size() != len || (long long)nu.size() != len ||
          (long long)mu.size() != len + 1)
        continue;
      if (!isSignature(la) || !isSignature(nu) || !isSignature(mu)) continue;
      if (!interlaces(la, nu) || !interlaces(la, mu)) continue;
      laws.push_back(cellLumpedLaw(c_, la, mu, nu));
    }
  if (laws.size() < 2)
    throw std::invalid_argument("no pattern representatives realize the key");
  for (size_t k = 1; k < laws.size(); ++k)
    if (!sameLaw(laws[0], laws[k]))
      throw std::logic_error("projected cell law depends on the representative");

  KernelRow row(laws[0].begin(), laws[0].end());
  auto [pos, ok] = cache_.emplace(key, std::move(row));
  return pos->second;
}

ProjectionKernel deriveProjectionKernel(int c, long extent) {
  ProjectionKernel kernel(c);
  // boundary tuples: empty signature on the j = 0 row, all-zero signature of
  // length j on the i = 0 column
  auto boundaryLeft = [&](long j) {
    DTuple d(c, 0);
    d[0] = j;
    return d;
  };
  std::vector<std::vector<DTuple>> grid(
      extent + 1, std::vector<DTuple>(extent + 1, DTuple(c, 0)));
  for (long j = 0; j <= extent; ++j) grid[0][j] = boundaryLeft(j);
  std::function<void(long, long)> go = [&](long i, long j) {
    if (i > extent) return;
    long ni = j == extent ? i + 1 : i;
    long nj = j == extent ? 1 : j + 1;
    KernelKey key{grid[i - 1][j], grid[i - 1][j - 1], grid[i][j - 1]};
    for (auto& [d, p] : kernel.row(key)) {
      grid[i][j] = d;
      go(ni, nj);
    }
  };
  go(1, 1);
  return kernel;
}

std::map<std::vector<DTuple>, Scalar> projectedGridLaw(
    const ProjectionKernel& kernel, long maxM, long maxN,
    const std::vector<Scalar>& aParams, const std::vector<Scalar>& bParams,
    long cellCap) {
  checkGridParams(maxM, maxN, aParams.size(), bParams.size(), cellCap);
  int c = kernel.columns();
  std::map<std::vector<DTuple>, Scalar> law;
  std::vector<DTuple> grid(maxM * maxN, DTuple(c, 0));
  auto at = [&](long i, long j) -> DTuple {
    if (j == 0) return DTuple(c, 0);
    if (i == 0) {
      DTuple d(c, 0);
      d[0] = j;
      return d;
    }
    return grid[(i - 1) * maxN + (j - 1)];
  };
  std::function<void(long, long, const Scalar&)> go = [&](long i, long j,
                                                          const Scalar& w) {
    if (i > maxM) {
      law[grid] += w;
      return;
    }
    long ni = j == maxN ? i + 1 : i;
    long nj = j == maxN ? 1 : j + 1;
    Scalar u = aParams[i - 1] * bParams[j - 1];
    KernelKey key{at(i - 1, j), at(i - 1, j - 1), at(i, j - 1)};
    for (auto& [d, p] : kernel.row(key)) {
      grid[(i - 1) * maxN + (j - 1)] = d;
      go(ni, nj, w * p.substitute(VU, u));
    }
  };
  go(1, 1, Scalar(1));
  return law;
}

Scalar projectedExactExpectation(const ProjectionKernel& kernel,
                                 const std::vector<long>& ms,
                                 const std::vector<long>& ns,
                                 const std::vector<long>& ks,
                                 const std::vector<int>& ss, long maxM,
                                 long maxN, const std::vector<Scalar>& aParams,
                                 const std::vector<Scalar>& bParams,
                                 long cellCap) {
  if (ms.size() != ns.size() || ms.size() != ks.size() ||
      ms.size() != ss.size())
    throw std::invalid_argument("point/exponent length mismatch");
  int c = kernel.columns();
  for (size_t p = 0; p < ms.size(); ++p) {
    if (ms[p] < 1 || ms[p] > maxM || ns[p] < 1 || ns[p] > maxN)
      throw std::invalid_argument("observable point outside extent");
    if (ss[p] < 0 || ss[p] >= c)
      throw std::invalid_argument("layer selector outside kernel columns");
  }
  Scalar total;
  for (auto& [grid, w] : projectedGridLaw(kernel, maxM, maxN, aParams,
                                          bParams, cellCap)) {
    long long e = 0;
    for (size_t p = 0; p < ms.size(); ++p) {
      const DTuple& d = grid[(ms[p] - 1) * maxN + (ns[p] - 1)];
      long long h = 0;
      for (int k = 0; k <= ss[p]; ++k) h += d[k];
      e += ks[p] * h;
    }
    total += w * sT().pow(e);
  }
  return total;
}

std::vector<Scalar> rowUpdateFactors(const ProjectionKernel& kernel,
                                     const std::vector<DTuple>& pre,
                                     const std::vector<DTuple>& post) {
  if (pre.size() != post.size() || pre.size() < 2)
    throw std::invalid_argument("pre/post rows must have equal length >= 2");
  std::vector<Scalar> factors;
  for (size_t i = 1; i < pre.size(); ++i) {
    KernelKey key{post[i - 1], pre[i - 1], pre[i]};
    Scalar p;
    for (auto& [d, q] : kernel.row(key))
      if (d == post[i]) {
        p = q;
        break;
      }
    factors.push_back(p);
  }
  return factors;
}

Scalar rowUpdateProbability(const ProjectionKernel& kernel,
                            const std::vector<DTuple>& pre,
                            const std::vector<DTuple>& post) {
  Scalar p(1);
  for (auto& f : rowUpdateFactors(kernel, pre, post)) p *= f;
  return p;
}

std::vector<DTuple> frozenRowUpdate(const ProjectionKernel& kernel,
                                    const std::vector<DTuple>& pre,
                                    const DTuple& boundary) {
  std::vector<DTuple> post{boundary};
  for (size_t i = 1; i < pre.size(); ++i) {
    KernelKey key{post[i - 1], pre[i - 1], pre[i]};
    const DTuple* pick = nullptr;
    for (auto& [d, q] : kernel.row(key)) {
      Scalar v = q.substitute(VU, Scalar(1));
      if (v.isOne()) {
        if (pick) throw std::logic_error("frozen target not unique");
        pick = &d;
      } else if (!v.isZero()) {
        throw std::logic_error("entry does not freeze at u = 1");
      }
    }
    if (!pick) throw std::logic_error("no frozen target at u = 1");
    post.push_back(*pick);
  }
  return post;
}

std::pair<Scalar, Scalar> epsilonExpand(const Scalar& f) {
  Scalar sub = Scalar(1) - (Scalar(1) - sT()) * sEps();
  Scalar g = f.substitute(VU, sub);
  Scalar e0 = g.substitute(VEPS, Scalar(0));
  Scalar e1 = ((g - e0) / sEps()).substitute(VEPS, Scalar(0));
  return {e0, e1};
}

RateTable kernelEpsilonExpansion(const ProjectionKernel& kernel) {
  RateTable table;
  table.c = kernel.columns();
  for (auto& [key, row] : kernel.rows()) {
    RateRow out;
    bool haveFrozen = false;
    Scalar rateSum;
    for (auto& [d, p] : row) {
      auto [e0, e1] = epsilonExpand(p);
      rateSum += e1;
      if (e0.isOne()) {
        if (haveFrozen) throw std::logic_error("frozen target not unique");
        haveFrozen = true;
        out.frozen = d;
      } else if (e0.isZero()) {
        if (!e1.isZero()) out.rates.emplace_back(d, e1);
      } else {
        throw std::logic_error("entry does not freeze at eps = 0");
      }
    }
    if (!haveFrozen) throw std::logic_error("row has no frozen target");
    if (!rateSum.isZero())
      throw std::logic_error("rates do not balance the frozen decay");
    table.rows.emplace(key, std::move(out));
  }
  return table;
}

}  // namespace hlrsk
