#include "hlrsk/poly.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <stdexcept>

namespace hlrsk {

namespace {
const char* kVarNames[NVARS] = {"t",  "q",  "eps", "x",  "y",  "u",
                                "a1", "a2", "a3",  "b1", "b2", "b3"};
}

const char* varName(int v) {
  assert(v >= 0 && v < NVARS);
  return kVarNames[v];
}

std::optional<int> varIndex(const std::string& name) {
  for (int v = 0; v < NVARS; ++v)
    if (name == kVarNames[v]) return v;
  return std::nullopt;
}

Mono monoOne() {
  Mono m{};
  m.fill(0);
  return m;
}

Mono monoVar(int v, int e) {
  Mono m = monoOne();
  m[v] = static_cast<int16_t>(e);
  return m;
}

Mono monoMul(const Mono& a, const Mono& b) {
  Mono r;
  for (int i = 0; i < NVARS; ++i) {
    int s = int(a[i]) + int(b[i]);
    assert(s >= INT16_MIN && s <= INT16_MAX);
    r[i] = static_cast<int16_t>(s);
  }
  return r;
}

int monoDegree(const Mono& m) {
  int d = 0;
  for (int i = 0; i < NVARS; ++i) d += m[i];
  return d;
}

bool monoLess(const Mono& a, const Mono& b) {
  int da = monoDegree(a), db = monoDegree(b);
  if (da != db) return da < db;
  for (int i = 0; i < NVARS; ++i)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

BigInt intGcd(const BigInt& a, const BigInt& b) {
  BigInt x = a < 0 ? BigInt(-a) : a;
  BigInt y = b < 0 ? BigInt(-b) : b;
  while (y != 0) {
    BigInt r = x % y;
    x = y;
    y = r;
  }
  return x;
}

Poly Poly::zero() { return Poly(); }

Poly Poly::one() { return constant(1); }

Poly Poly::constant(const BigInt& c) {
  Poly p;
  if (c != 0) p.terms_.push_back({monoOne(), c});
  return p;
}

Poly Poly::variable(int v, int e) {
  if (e == 0) return one();
  Poly p;
  p.terms_.push_back({monoVar(v, e), BigInt(1)});
  return p;
}

Poly Poly::monomial(const Mono& m, const BigInt& c) {
  Poly p;
  if (c != 0) p.terms_.push_back({m, c});
  return p;
}

Poly Poly::fromTerms(std::vector<Term> terms) {
  Poly p;
  p.terms_ = std::move(terms);
  p.normalize();
  return p;
}

void Poly::normalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return monoLess(b.m, a.m); });
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& tm : terms_) {
    if (!out.empty() && out.back().m == tm.m) {
      out.back().c += tm.c;
      if (out.back().c == 0) out.pop_back();
    } else if (tm.c != 0) {
      out.push_back(std::move(tm));
    }
  }
  terms_ = std::move(out);
}

bool Poly::isConstant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].m == monoOne());
}

bool Poly::isOne() const {
  return terms_.size() == 1 && terms_[0].m == monoOne() && terms_[0].c == 1;
}

int Poly::totalDegree() const {
  if (terms_.empty()) return -1;
  return monoDegree(terms_.front().m);
}

int Poly::degreeIn(int v) const {
  if (terms_.empty()) return -1;
  int d = 0;
  for (const auto& tm : terms_) d = std::max(d, int(tm.m[v]));
  return d;
}

bool Poly::involves(int v) const {
  for (const auto& tm : terms_)
    if (tm.m[v] != 0) return true;
  return false;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& tm : r.terms_) tm.c = -tm.c;
  return r;
}

Poly Poly::operator+(const Poly& o) const {
  // merge of two sorted (descending) term lists
  Poly r;
  r.terms_.reserve(terms_.size() + o.terms_.size());
  size_t i = 0, j = 0;
  while (i < terms_.size() && j < o.terms_.size()) {
    if (terms_[i].m == o.terms_[j].m) {
      BigInt c = terms_[i].c + o.terms_[j].c;
      if (c != 0) r.terms_.push_back({terms_[i].m, std::move(c)});
      ++i, ++j;
    } else if (monoLess(o.terms_[j].m, terms_[i].m)) {
      r.terms_.push_back(terms_[i]);
      ++i;
    } else {
      r.terms_.push_back(o.terms_[j]);
      ++j;
    }
  }
  for (; i < terms_.size(); ++i) r.terms_.push_back(terms_[i]);
  for (; j < o.terms_.size(); ++j) r.terms_.push_back(o.terms_[j]);
  return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
  if (isZero() || o.isZero()) return Poly();
  std::map<Mono, BigInt, bool (*)(const Mono&, const Mono&)> acc(monoLess);
  for (const auto& ta : terms_)
    for (const auto& tb : o.terms_) {
      Mono m = monoMul(ta.m, tb.m);
      acc[m] += ta.c * tb.c;
    }
  Poly r;
  r.terms_.reserve(acc.size());
  for (auto it = acc.rbegin(); it != acc.rend(); ++it)
    if (it->second != 0) r.terms_.push_back({it->first, it->second});
  return r;
}

bool Poly::operator==(const Poly& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  for (size_t i = 0; i < terms_.size(); ++i)
    if (!(terms_[i].m == o.terms_[i].m) || terms_[i].c != o.terms_[i].c)
      return false;
  return true;
}

Poly Poly::mulMono(const Mono& m, const BigInt& c) const {
  if (c == 0) return Poly();
  Poly r;
  r.terms_.reserve(terms_.size());
  for (const auto& tm : terms_) r.terms_.push_back({monoMul(tm.m, m), tm.c * c});
  return r;
}

Poly Poly::pow(unsigned n) const {
  Poly r = one();
  Poly base = *this;
  while (n) {
    if (n & 1) r = r * base;
    base = (n >>= 1) ? base * base : base;
  }
  return r;
}

const BigInt& Poly::leadingCoeff() const {
  assert(!terms_.empty());
  return terms_.front().c;
}

BigInt Poly::content() const {
  BigInt g = 0;
  for (const auto& tm : terms_) {
    g = intGcd(g, tm.c);
    if (g == 1) break;
  }
  if (!terms_.empty() && terms_.front().c < 0) g = -g;
  return g;
}

Mono Poly::monomialContent() const {
  Mono m{};
  if (terms_.empty()) return monoOne();
  m = terms_.front().m;
  for (const auto& tm : terms_)
    for (int v = 0; v < NVARS; ++v) m[v] = std::min(m[v], tm.m[v]);
  return m;
}

Poly Poly::coeffOfVarPow(int v, int k) const {
  Poly r;
  for (const auto& tm : terms_)
    if (tm.m[v] == k) {
      Mono m = tm.m;
      m[v] = 0;
      r.terms_.push_back({m, tm.c});
    }
  return fromTerms(std::move(r.terms_));
}

Poly Poly::leadingCoeffIn(int v) const {
  return coeffOfVarPow(v, degreeIn(v));
}

Poly Poly::substitute(int v, const Poly& value) const {
  // group by v-exponent, evaluate by Horner over decreasing exponent
  int d = degreeIn(v);
  if (d <= 0 && !involves(v)) return *this;
  std::vector<Poly> byPow(d + 1);
  for (const auto& tm : terms_) {
    Mono m = tm.m;
    int e = m[v];
    m[v] = 0;
    byPow[e] = byPow[e] + monomial(m, tm.c);
  }
  Poly r = byPow[d];
  for (int e = d - 1; e >= 0; --e) r = r * value + byPow[e];
  return r;
}

BigRat Poly::evaluate(const std::array<BigRat, NVARS>& point) const {
  BigRat total = 0;
  for (const auto& tm : terms_) {
    BigRat v(tm.c);
    for (int i = 0; i < NVARS; ++i) {
      if (tm.m[i] == 0) continue;
      BigRat p = point[i];
      int e = tm.m[i];
      if (e < 0) {
        if (p == 0) throw std::domain_error("pole at evaluation point");
        p = 1 / p;
        e = -e;
      }
      BigRat acc = 1;
      while (e) {
        if (e & 1) acc *= p;
        p *= p;
        e >>= 1;
      }
      v *= acc;
    }
    total += v;
  }
  return total;
}

std::string Poly::toString() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& tm : terms_) {
    BigInt c = tm.c;
    if (first) {
      if (c < 0) {
        os << "-";
        c = -c;
      }
    } else {
      os << (c < 0 ? " - " : " + ");
      if (c < 0) c = -c;
    }
    first = false;
    std::string vars;
    for (int v = 0; v < NVARS; ++v) {
      if (tm.m[v] == 0) continue;
      if (!vars.empty()) vars += "*";
      vars += kVarNames[v];
      if (tm.m[v] != 1) vars += "^" + std::to_string(tm.m[v]);
    }
    if (vars.empty()) {
      os << c.str();
    } else {
      if (c != 1) os << c.str() << "*";
      os << vars;
    }
  }
  return os.str();
}

Poly Poly::divExact(const Poly& a, const Poly& b) {
  if (a.isZero()) return Poly();
  assert(!b.isZero());
  // long division under graded-lex; remainder must vanish
  Poly rem = a;
  std::vector<Term> qt;
  const Term& lb = b.terms_.front();
  while (!rem.isZero()) {
    Mono lead = rem.terms_.front().m;
    BigInt lc = rem.terms_.front().c;
    Mono m;
    for (int v = 0; v < NVARS; ++v) {
      int d = int(lead[v]) - int(lb.m[v]);
      m[v] = static_cast<int16_t>(d);
    }
    if (lc % lb.c != 0)
      throw std::logic_error("divExact: not divisible (coeff)");
    BigInt c = lc / lb.c;
    qt.push_back({m, c});
    rem = rem - b.mulMono(m, c);
    if (!rem.isZero() && monoLess(lead, rem.terms_.front().m))
      throw std::logic_error("divExact: not divisible (order)");
  }
  return fromTerms(std::move(qt));
}

void Poly::pseudoDivide(const Poly& a, const Poly& b, int v, Poly& q, Poly& r) {
  int db = b.degreeIn(v);
  assert(db >= 0);
  Poly lcb = b.leadingCoeffIn(v);
  q = Poly();
  r = a;
  int dr = r.degreeIn(v);
  while (!r.isZero() && dr >= db) {
    Poly lcr = r.leadingCoeffIn(v);
    Poly shift = Poly::variable(v, dr - db);
    // r <- lcb * r - lcr * shift * b ; q <- lcb * q + lcr * shift
    q = q * lcb + lcr * shift;
    r = r * lcb - lcr * shift * b;
    int nd = r.degreeIn(v);
    assert(r.isZero() || nd < dr);
    dr = nd;
  }
}

namespace {

Poly normalizeSign(const Poly& p) {
  if (!p.isZero() && p.leadingCoeff() < 0) return -p;
  return p;
}

// gcd of univariate-in-v coefficient list (recursive content)
Poly contentIn(const Poly& p, int v) {
  Poly g;
  int d = p.degreeIn(v);
  for (int k = 0; k <= d; ++k) {
    Poly ck = p.coeffOfVarPow(v, k);
    if (ck.isZero()) continue;
    g = g.isZero() ? ck : Poly::gcd(g, ck);
    if (g.isOne()) break;
  }
  return g;
}

}  // namespace

Poly Poly::gcd(const Poly& a, const Poly& b) {
  if (a.isZero()) return normalizeSign(b);
  if (b.isZero()) return normalizeSign(a);

  // split integer and monomial content
  BigInt ca = a.content(), cb = b.content();
  BigInt cg = intGcd(ca, cb);
  Mono ma = a.monomialContent(), mb = b.monomialContent();
  Mono mg;
  for (int v = 0; v < NVARS; ++v) mg[v] = std::min(ma[v], mb[v]);

  Poly A = divExact(a, monomial(ma, ca));
  Poly B = divExact(b, monomial(mb, cb));

  Poly core;
  if (A.isConstant() || B.isConstant()) {
    core = one();
  } else {
    // pick the live variable of smallest joint degree: shorter remainder
    // sequences and smaller coefficient swell
    int v = -1;
    long best = 0;
    for (int i = 0; i < NVARS; ++i) {
      bool inA = A.involves(i), inB = B.involves(i);
      if (!inA && !inB) continue;
      long da = inA ? A.degreeIn(i) : 0;
      long db = inB ? B.degreeIn(i) : 0;
      long score = (inA && inB) ? da + db : 1000 + da + db;
      if (v < 0 || score < best) {
        v = i;
        best = score;
      }
    }
    if (!A.involves(v) || !B.involves(v)) {
      // v absent from one side: gcd divides that side's v-free content chain
      if (A.involves(v)) core = gcd(contentIn(A, v), B);
      else if (B.involves(v)) core = gcd(A, contentIn(B, v));
      else core = gcd(A, B);  // unreachable: v chosen present in one
    } else {
      Poly contA = contentIn(A, v), contB = contentIn(B, v);
      Poly contG = gcd(contA, contB);
      Poly ppA = divExact(A, contA), ppB = divExact(B, contB);
      if (ppA.degreeIn(v) < ppB.degreeIn(v)) std::swap(ppA, ppB);
      // primitive polynomial remainder sequence
      while (true) {
        Poly q, r;
        pseudoDivide(ppA, ppB, v, q, r);
        if (r.isZero()) {
          core = contG * ppB;
          break;
        }
        if (r.degreeIn(v) == 0) {
          core = contG;
          break;
        }
        ppA = ppB;
        Poly rc = contentIn(r, v);
        ppB = divExact(r, rc);
      }
    }
  }
  Poly result = core.mulMono(mg, cg);
  return normalizeSign(result);
}

}  // namespace hlrsk
