#include "hlrsk/numseries.hpp"

#include <algorithm>
#include <stdexcept>

namespace hlrsk {

BigRat ratPow(const BigRat& base, long e) {
  if (e == 0) return BigRat(1);
  if (e < 0) {
    if (base == 0) throw std::domain_error("ratPow: zero base, negative power");
    return BigRat(1) / ratPow(base, -e);
  }
  BigRat acc(1), b = base;
  long n = e;
  while (n > 0) {
    if (n & 1) acc *= b;
    b *= b;
    n >>= 1;
  }
  return acc;
}

NumFactor numPolyFactor(std::map<ExpVec, BigRat> terms) {
  NumFactor f;
  f.poly = std::move(terms);
  return f;
}

NumFactor numGeomFactor(std::map<ExpVec, BigRat> numer, const BigRat& ratio,
                        ExpVec dir) {
  NumFactor f;
  f.poly = std::move(numer);
  f.ratio = ratio;
  f.dir = std::move(dir);
  return f;
}

ExpVec unitExp(int nvars, int var, int e) {
  ExpVec v(nvars, 0);
  v.at(var) = e;
  return v;
}

namespace {

BigRat ratAbs(const BigRat& x) { return x < 0 ? BigRat(-x) : x; }

BigRat torusWeight(const std::vector<BigRat>& radii, const ExpVec& e) {
  BigRat w(1);
  for (size_t v = 0; v < e.size(); ++v) w *= ratPow(radii[v], e[v]);
  return w;
}

struct FactorData {
  const NumFactor* f;
  BigRat polyMass;   // sum of |c| * rho^e over poly terms
  BigRat effRatio;   // |ratio| * rho^dir, 0 for polynomial factors
  bool geometric;
};

// truncated expansion of one factor to order T
std::map<ExpVec, BigRat> expandFactor(const NumFactor& f, long T) {
  if (f.ratio == 0) return f.poly;
  std::map<ExpVec, BigRat> out;
  BigRat rpow(1);
  ExpVec shift(f.dir.size(), 0);
  for (long n = 0; n <= T; ++n) {
    for (const auto& [e, c] : f.poly) {
      ExpVec key(e.size());
      for (size_t v = 0; v < e.size(); ++v) key[v] = e[v] + shift[v];
      BigRat& slot = out[key];
      slot += c * rpow;
      if (slot == 0) out.erase(key);
    }
    rpow *= f.ratio;
    for (size_t v = 0; v < shift.size(); ++v) shift[v] += f.dir[v];
  }
  return out;
}

void supportRange(const std::map<ExpVec, BigRat>& terms, int nvars,
                  std::vector<int>& lo, std::vector<int>& hi) {
  lo.assign(nvars, 0);
  hi.assign(nvars, 0);
  bool first = true;
  for (const auto& [e, c] : terms) {
    (void)c;
    for (int v = 0; v < nvars; ++v) {
      if (first || e[v] < lo[v]) lo[v] = e[v];
      if (first || e[v] > hi[v]) hi[v] = e[v];
    }
    first = false;
  }
}

}  // namespace

NumExtraction stabilizedCoefficient(const std::vector<NumFactor>& factors,
                                    int nvars,
                                    const std::vector<BigRat>& radii,
                                    const ExpVec& target, const BigRat& tol,
                                    long maxOrder) {
  if (static_cast<int>(radii.size()) != nvars ||
      static_cast<int>(target.size()) != nvars)
    throw std::domain_error("stabilizedCoefficient: size mismatch");
  for (const auto& r : radii)
    if (r <= 0) throw std::domain_error("stabilizedCoefficient: radius <= 0");
  if (tol <= 0) throw std::domain_error("stabilizedCoefficient: tol <= 0");

  std::vector<FactorData> data;
  data.reserve(factors.size());
  for (const auto& f : factors) {
    if (static_cast<int>(f.dir.size()) != nvars && f.ratio != 0)
      throw std::domain_error("stabilizedCoefficient: bad dir size");
    FactorData d;
    d.f = &f;
    d.geometric = (f.ratio != 0);
    d.polyMass = 0;
    for (const auto& [e, c] : f.poly) {
      if (static_cast<int>(e.size()) != nvars)
        throw std::domain_error("stabilizedCoefficient: bad exponent size");
      d.polyMass += ratAbs(c) * torusWeight(radii, e);
    }
    d.effRatio = 0;
    if (d.geometric) {
      d.effRatio = ratAbs(f.ratio) * torusWeight(radii, f.dir);
      if (d.effRatio >= 1)
        throw std::domain_error(
            "stabilizedCoefficient: divergent factor, effective ratio >= 1");
    }
    data.push_back(std::move(d));
  }

  BigRat targetWeight = torusWeight(radii, target);

  // sup bound of each full factor on the torus
  std::vector<BigRat> supBound;
  supBound.reserve(data.size());
  for (const auto& d : data) {
    BigRat s = d.polyMass;
    if (d.geometric) s /= (BigRat(1) - d.effRatio);
    supBound.push_back(s);
  }

  auto tailBoundAt = [&](long T) {
    BigRat total(0);
    for (size_t i = 0; i < data.size(); ++i) {
      if (!data[i].geometric) continue;
      BigRat tail = data[i].polyMass * ratPow(data[i].effRatio, T + 1) /
                    (BigRat(1) - data[i].effRatio);
      BigRat prod = tail;
      for (size_t j = 0; j < data.size(); ++j)
        if (j != i) prod *= supBound[j];
      total += prod;
    }
    return BigRat(total / targetWeight);
  };

  long T = 4;
  BigRat bound = tailBoundAt(T);
  while (bound > tol && T < maxOrder) {
    T = std::min(T * 2, maxOrder);
    bound = tailBoundAt(T);
  }

  // expand every factor to order T and multiply with window pruning
  std::vector<std::map<ExpVec, BigRat>> expanded;
  expanded.reserve(data.size());
  for (const auto& d : data) expanded.push_back(expandFactor(*d.f, T));

  std::vector<std::vector<int>> lo(expanded.size()), hi(expanded.size());
  for (size_t i = 0; i < expanded.size(); ++i) {
    if (expanded[i].empty()) return {BigRat(0), BigRat(0), T};
    supportRange(expanded[i], nvars, lo[i], hi[i]);
  }

  // remaining min/max exponent sums over factors i+1..end
  std::vector<std::vector<long>> remLo(expanded.size() + 1,
                                       std::vector<long>(nvars, 0));
  std::vector<std::vector<long>> remHi(expanded.size() + 1,
                                       std::vector<long>(nvars, 0));
  for (size_t i = expanded.size(); i-- > 0;) {
    for (int v = 0; v < nvars; ++v) {
      remLo[i][v] = remLo[i + 1][v] + lo[i][v];
      remHi[i][v] = remHi[i + 1][v] + hi[i][v];
    }
  }

  std::map<ExpVec, BigRat> running;
  running[ExpVec(nvars, 0)] = BigRat(1);
  for (size_t i = 0; i < expanded.size(); ++i) {
    std::map<ExpVec, BigRat> next;
    for (const auto& [ea, ca] : running) {
      for (const auto& [eb, cb] : expanded[i]) {
        ExpVec e(nvars);
        bool keep = true;
        for (int v = 0; v < nvars; ++v) {
          e[v] = ea[v] + eb[v];
          long lov = e[v] + remLo[i + 1][v];
          long hiv = e[v] + remHi[i + 1][v];
          if (target[v] < lov || target[v] > hiv) {
            keep = false;
            break;
          }
        }
        if (!keep) continue;
        BigRat& slot = next[e];
        slot += ca * cb;
        if (slot == 0) next.erase(e);
      }
    }
    running = std::move(next);
    if (running.empty()) return {BigRat(0), bound, T};
  }

  auto it = running.find(target);
  BigRat value = (it == running.end()) ? BigRat(0) : it->second;
  return {value, bound, T};
}

NumExtraction stabilizedCoefficient(const std::vector<NumFactor>& factors,
                                    int nvars, const ExpVec& target,
                                    const BigRat& tol, long maxOrder) {
  std::vector<BigRat> radii(nvars, BigRat(1));
  return stabilizedCoefficient(factors, nvars, radii, target, tol, maxOrder);
}

}  // namespace hlrsk
