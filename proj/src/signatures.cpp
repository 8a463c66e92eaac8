#include "hlrsk/signatures.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <sstream>

namespace hlrsk {

bool isSignature(const Sig& s) {
  for (size_t i = 1; i < s.size(); ++i)
    if (s[i - 1] < s[i]) return false;
  return true;
}

long long sigWeight(const Sig& s) {
  long long w = 0;
  for (long long p : s) w += p;
  return w;
}

long long sigPart(const Sig& s, size_t i) {
  if (i == 0) return SIG_PINF;
  if (i > s.size()) return SIG_NINF;
  return s[i - 1];
}

long long sigCountGE(const Sig& s, long long k) {
  long long c = 0;
  for (long long p : s)
    if (p >= k) ++c;
  return c;
}

std::vector<long long> colCounts(const Sig& s, int c) {
  std::vector<long long> out(c);
  for (int k = 1; k <= c; ++k) out[k - 1] = sigCountGE(s, k);
  return out;
}

long long sigCountEq(const Sig& s, long long v) {
  long long c = 0;
  for (long long p : s)
    if (p == v) ++c;
  return c;
}

Sig sigNegate(const Sig& s) {
  Sig r(s.rbegin(), s.rend());
  for (auto& p : r) p = -p;
  return r;
}

std::string sigToString(const Sig& s) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < s.size(); ++i) {
    if (i) os << ",";
    os << s[i];
  }
  os << ")";
  return os.str();
}

bool interlaces(const Sig& lower, const Sig& upper) {
  size_t n = upper.size();
  if (!(lower.size() == n || lower.size() + 1 == n)) return false;
  for (size_t i = 1; i <= lower.size(); ++i) {
    if (upper[i - 1] < lower[i - 1]) return false;
    if (i + 1 <= n && lower[i - 1] < upper[i]) return false;
  }
  return true;
}

std::vector<Sig> allSignatures(int length, long long minPart, long long maxPart) {
  std::vector<Sig> out;
  Sig cur;
  std::function<void(int, long long)> rec = [&](int left, long long hi) {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (long long p = hi; p >= minPart; --p) {
      cur.push_back(p);
      rec(left - 1, p);
      cur.pop_back();
    }
  };
  rec(length, maxPart);
  return out;
}

std::vector<Sig> interlacingAbove(const Sig& lower, bool grow, long long delta,
                                  long long maxPart) {
  std::vector<Sig> out;
  if (delta < 0) return out;
  size_t L = lower.size();
  size_t n = L + (grow ? 1 : 0);
  if (n == 0) {
    if (delta == 0) out.push_back(Sig{});
    return out;
  }
  Sig cur;
  std::function<void(size_t, long long)> rec = [&](size_t i, long long rem) {
    if (i > n) {
      if (rem == 0) out.push_back(cur);
      return;
    }
    if (i <= L) {
      long long lo = lower[i - 1];
      long long hi = (i == 1) ? maxPart : lower[i - 2];
      for (long long p = lo; p <= hi; ++p) {
        long long used = p - lo;
        if (used > rem) break;
        cur.push_back(p);
        rec(i + 1, rem - used);
        cur.pop_back();
      }
    } else {
      // the grown final part contributes its own value to the weight
      long long p = rem;
      long long hi = (L == 0) ? maxPart : lower[L - 1];
      if (p <= hi) {
        cur.push_back(p);
        rec(i + 1, 0);
        cur.pop_back();
      }
    }
  };
  rec(1, delta);
  return out;
}

std::vector<Sig> interlacingBelow(const Sig& upper, bool shrink, long long delta) {
  std::vector<Sig> out;
  size_t n = upper.size();
  size_t m = n - (shrink ? 1 : 0);
  long long rem0 = delta - (shrink && n > 0 ? upper[n - 1] : 0);
  if (shrink && n == 0) return out;
  if (m == 0) {
    if (rem0 == 0) out.push_back(Sig{});
    return out;
  }
  Sig cur;
  std::function<void(size_t, long long)> rec = [&](size_t i, long long rem) {
    if (i > m) {
      if (rem == 0) out.push_back(cur);
      return;
    }
    if (i < m) {
      long long lo = upper[i];  // upper_{i+1}
      long long hi = upper[i - 1];
      for (long long p = hi; p >= lo; --p) {
        long long used = upper[i - 1] - p;
        if (used > rem) break;
        cur.push_back(p);
        rec(i + 1, rem - used);
        cur.pop_back();
      }
    } else {
      // last part pinned by the remaining weight
      long long p = upper[i - 1] - rem;
      long long hi = upper[i - 1];
      long long lo = (i + 1 <= n) ? upper[i] : SIG_NINF;
      bool okLo = (lo == SIG_NINF) || p >= lo;
      if (p <= hi && okLo) {
        cur.push_back(p);
        rec(i + 1, 0);
        cur.pop_back();
      }
    }
  };
  rec(1, rem0);
  return out;
}

namespace {

Scalar branchProduct(const Sig& mu, const Sig& la, const Scalar& tparam,
                     bool isPsi) {
  if (!interlaces(la, mu)) return Scalar();
  size_t len = mu.size();
  Scalar total(1);
  for (size_t j = 1; j <= len; ++j) {
    for (size_t k = 1; k <= j; ++k) {
      bool match;
      if (isPsi) {
        long long laj = sigPart(la, j), lak = sigPart(la, k);
        long long muj1 = sigPart(mu, j + 1), muk = sigPart(mu, k);
        match = laj != SIG_NINF && laj == lak &&
                (muj1 == SIG_NINF || muj1 < laj) && laj < muk;
      } else {
        long long laj = sigPart(la, j), lakm = sigPart(la, k - 1);
        long long muj = mu[j - 1], muk = mu[k - 1];
        match = muj == muk && (laj == SIG_NINF || laj < muj) &&
                (lakm != SIG_NINF && (lakm == SIG_PINF || muk < lakm));
      }
      if (match) total = total * (Scalar(1) - tparam.pow(long(j - k + 1)));
    }
  }
  return total;
}

}  // namespace

Scalar psiCoeff(const Sig& upper, const Sig& lower, const Scalar& tparam) {
  return branchProduct(upper, lower, tparam, true);
}

Scalar phiCoeff(const Sig& upper, const Sig& lower, const Scalar& tparam) {
  return branchProduct(upper, lower, tparam, false);
}

Block skewDeformed(BranchKind kind, const Sig& upper, const Sig& lower,
                   const std::vector<int>& chainLengths,
                   const BlockVarsPtr& vars, const std::vector<int>& varSlots,
                   const Scalar& tparam) {
  size_t nv = varSlots.size();
  assert(chainLengths.size() == nv + 1);
  assert(int(lower.size()) == chainLengths[0]);
  assert(int(upper.size()) == chainLengths[nv]);
  Block result(vars);
  long long maxPart = upper.empty() ? 0 : upper[0];
  std::function<void(size_t, const Sig&, const Scalar&, ExpVec&)> rec =
      [&](size_t step, const Sig& cur, const Scalar& acc, ExpVec& exps) {
        if (acc.isZero()) return;
        if (step == nv) {
          if (cur == upper) result.add(exps, acc);
          return;
        }
        bool growStep = chainLengths[step + 1] == chainLengths[step] + 1;
        long long remaining = sigWeight(upper) - sigWeight(cur);
        for (long long d = 0; d <= remaining; ++d) {
          for (const Sig& nxt : interlacingAbove(cur, growStep, d, maxPart)) {
            Scalar w = kind == BranchKind::P ? psiCoeff(nxt, cur, tparam)
                                             : phiCoeff(nxt, cur, tparam);
            if (w.isZero()) continue;
            exps[varSlots[step]] += int(d);
            rec(step + 1, nxt, acc * w, exps);
            exps[varSlots[step]] -= int(d);
          }
        }
      };
  ExpVec exps(vars->size(), 0);
  rec(0, lower, Scalar(1), exps);
  return result;
}

Block deformedP(const Sig& lambda, int nvars, const BlockVarsPtr& vars,
                const std::vector<int>& varSlots, const Scalar& tparam) {
  assert(int(lambda.size()) <= nvars);
  Sig padded = lambda;
  while (int(padded.size()) < nvars) padded.push_back(0);
  std::vector<int> chain(nvars + 1);
  for (int i = 0; i <= nvars; ++i) chain[i] = i;
  return skewDeformed(BranchKind::P, padded, Sig{}, chain, vars, varSlots,
                      tparam);
}

Block deformedQ(const Sig& lambda, int nvars, const BlockVarsPtr& vars,
                const std::vector<int>& varSlots, const Scalar& tparam) {
  assert(int(lambda.size()) <= nvars);
  Sig padded = lambda;
  while (int(padded.size()) < nvars) padded.push_back(0);
  std::vector<int> chain(nvars + 1);
  for (int i = 0; i <= nvars; ++i) chain[i] = i;
  return skewDeformed(BranchKind::Q, padded, Sig{}, chain, vars, varSlots,
                      tparam);
}

std::vector<Sig> partitionsOf(int n) {
  std::vector<Sig> out;
  Sig cur;
  std::function<void(int, int)> rec = [&](int left, int maxp) {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (int p = std::min(left, maxp); p >= 1; --p) {
      cur.push_back(p);
      rec(left - p, p);
      cur.pop_back();
    }
  };
  rec(n, n);
  return out;
}

}  // namespace hlrsk
