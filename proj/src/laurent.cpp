#include "hlrsk/laurent.hpp"

#include <algorithm>
#include <cassert>
#include <climits>
#include <sstream>
#include <stdexcept>

namespace hlrsk {

int BlockVars::index(const std::string& name) const {
  for (size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return int(i);
  throw std::invalid_argument("unknown block variable " + name);
}

BlockVarsPtr makeBlockVars(std::vector<std::string> names, std::vector<int> lo,
                           std::vector<int> hi) {
  assert(names.size() == lo.size() && lo.size() == hi.size());
  auto bv = std::make_shared<BlockVars>();
  bv->names = std::move(names);
  bv->lo = std::move(lo);
  bv->hi = std::move(hi);
  return bv;
}

bool Block::inWindow(const ExpVec& e) const {
  for (size_t i = 0; i < e.size(); ++i)
    if (e[i] < vars_->lo[i] || e[i] > vars_->hi[i]) return false;
  return true;
}

Block Block::one(const BlockVarsPtr& vars) {
  Block b(vars);
  b.add(ExpVec(vars->size(), 0), Scalar(1));
  return b;
}

Block Block::monomial(const BlockVarsPtr& vars, const ExpVec& e,
                      const Scalar& c) {
  Block b(vars);
  b.add(e, c);
  return b;
}

Block Block::geometric(const BlockVarsPtr& vars, const Scalar& c,
                       const ExpVec& dir) {
  // max n with n*dir inside window
  long nmax = LONG_MAX;
  bool moves = false;
  for (size_t i = 0; i < dir.size(); ++i) {
    if (dir[i] > 0) {
      moves = true;
      nmax = std::min<long>(nmax, vars->hi[i] / dir[i]);
    } else if (dir[i] < 0) {
      moves = true;
      nmax = std::min<long>(nmax, vars->lo[i] / dir[i]);
    }
  }
  if (!moves) throw std::invalid_argument("geometric factor must move");
  Block b(vars);
  Scalar acc(1);
  ExpVec e(vars->size(), 0);
  for (long n = 0; n <= nmax; ++n) {
    b.add(e, acc);
    if (n < nmax) {
      acc = acc * c;
      for (size_t i = 0; i < e.size(); ++i) e[i] += dir[i];
    }
  }
  return b;
}

Block Block::pairGeometric(const BlockVarsPtr& vars, const Scalar& alpha,
                           const Scalar& beta, const ExpVec& dirUp) {
  long kpos = LONG_MAX, kneg = LONG_MAX;
  bool moves = false;
  for (size_t i = 0; i < dirUp.size(); ++i) {
    if (dirUp[i] > 0) {
      moves = true;
      kpos = std::min<long>(kpos, vars->hi[i] / dirUp[i]);
      kneg = std::min<long>(kneg, -(long)vars->lo[i] / dirUp[i]);
    } else if (dirUp[i] < 0) {
      moves = true;
      kpos = std::min<long>(kpos, vars->lo[i] / dirUp[i]);
      kneg = std::min<long>(kneg, -(long)vars->hi[i] / dirUp[i]);
    }
  }
  if (!moves) throw std::invalid_argument("pairGeometric factor must move");
  Scalar ab = alpha * beta;
  Scalar denom = Scalar(1) - ab;
  if (denom.isZero())
    throw std::domain_error("pairGeometric: alpha*beta = 1 has no expansion");
  Scalar base = denom.inverse();
  Block b(vars);
  Scalar acc = base;
  ExpVec e(vars->size(), 0);
  for (long k = 0; k <= kpos; ++k) {
    b.add(e, acc);
    acc = acc * alpha;
    for (size_t i = 0; i < e.size(); ++i) e[i] += dirUp[i];
  }
  acc = base * beta;
  std::fill(e.begin(), e.end(), 0);
  for (size_t i = 0; i < e.size(); ++i) e[i] -= dirUp[i];
  for (long k = 1; k <= kneg; ++k) {
    b.add(e, acc);
    acc = acc * beta;
    for (size_t i = 0; i < e.size(); ++i) e[i] -= dirUp[i];
  }
  return b;
}

void Block::add(const ExpVec& e, const Scalar& c) {
  assert(e.size() == vars_->size());
  if (c.isZero() || !inWindow(e)) return;
  auto it = coef_.find(e);
  if (it == coef_.end()) {
    coef_.emplace(e, c);
  } else {
    it->second += c;
    if (it->second.isZero()) coef_.erase(it);
  }
}

Scalar Block::coefficient(const ExpVec& e) const {
  auto it = coef_.find(e);
  return it == coef_.end() ? Scalar() : it->second;
}

Block Block::operator+(const Block& o) const {
  Block r = *this;
  for (const auto& [e, c] : o.coef_) r.add(e, c);
  return r;
}

Block Block::operator-(const Block& o) const {
  Block r = *this;
  for (const auto& [e, c] : o.coef_) r.add(e, -c);
  return r;
}

Block Block::operator*(const Block& o) const {
  Block r(vars_);
  ExpVec e(vars_->size());
  for (const auto& [ea, ca] : coef_)
    for (const auto& [eb, cb] : o.coef_) {
      bool ok = true;
      for (size_t i = 0; i < e.size(); ++i) {
        e[i] = ea[i] + eb[i];
        if (e[i] < vars_->lo[i] || e[i] > vars_->hi[i]) {
          ok = false;
          break;
        }
      }
      if (ok) r.add(e, ca * cb);
    }
  return r;
}

Block Block::scaled(const Scalar& c) const {
  Block r(vars_);
  if (c.isZero()) return r;
  for (const auto& [e, v] : coef_) r.coef_.emplace(e, v * c);
  return r;
}

bool Block::sameSeries(const Block& o) const {
  if (coef_.size() != o.coef_.size()) return false;
  for (const auto& [e, c] : coef_) {
    auto it = o.coef_.find(e);
    if (it == o.coef_.end() || !(it->second == c)) return false;
  }
  return true;
}

Block Block::extract(const std::vector<std::pair<int, int>>& fixed) const {
  std::vector<int> drop(vars_->size(), INT_MIN);
  for (auto& [v, k] : fixed) drop[v] = k;
  std::vector<std::string> names;
  std::vector<int> lo, hi, keep;
  for (size_t i = 0; i < vars_->size(); ++i)
    if (drop[i] == INT_MIN) {
      keep.push_back(int(i));
      names.push_back(vars_->names[i]);
      lo.push_back(vars_->lo[i]);
      hi.push_back(vars_->hi[i]);
    }
  Block r(makeBlockVars(names, lo, hi));
  for (const auto& [e, c] : coef_) {
    bool match = true;
    for (size_t i = 0; i < vars_->size(); ++i)
      if (drop[i] != INT_MIN && e[i] != drop[i]) {
        match = false;
        break;
      }
    if (!match) continue;
    ExpVec sub(keep.size());
    for (size_t j = 0; j < keep.size(); ++j) sub[j] = e[keep[j]];
    r.add(sub, c);
  }
  return r;
}

Block Block::divExactPoly(const Block& a, const Block& b) {
  if (b.coef_.empty()) throw std::domain_error("block division by zero");
  auto order = [](const ExpVec& x, const ExpVec& y) {
    long dx = 0, dy = 0;
    for (int v : x) dx += v;
    for (int v : y) dy += v;
    if (dx != dy) return dx < dy;
    return x < y;
  };
  // leading term of divisor
  auto lead = b.coef_.begin();
  for (auto it = b.coef_.begin(); it != b.coef_.end(); ++it)
    if (order(lead->first, it->first)) lead = it;
  const ExpVec& lbe = lead->first;
  const Scalar& lbc = lead->second;

  std::map<ExpVec, Scalar> rem = a.coef_;
  Block q(a.vars_);
  while (!rem.empty()) {
    auto lr = rem.begin();
    for (auto it = rem.begin(); it != rem.end(); ++it)
      if (order(lr->first, it->first)) lr = it;
    ExpVec qe(lbe.size());
    for (size_t i = 0; i < qe.size(); ++i) qe[i] = lr->first[i] - lbe[i];
    Scalar qc = lr->second / lbc;
    q.add(qe, qc);
    // rem -= qc * qe * b
    for (const auto& [e, c] : b.coef_) {
      ExpVec te(e.size());
      for (size_t i = 0; i < te.size(); ++i) te[i] = e[i] + qe[i];
      auto it = rem.find(te);
      Scalar nv = (it == rem.end() ? Scalar() : it->second) - qc * c;
      if (nv.isZero()) {
        if (it != rem.end()) rem.erase(it);
      } else {
        rem[te] = nv;
      }
    }
  }
  return q;
}

std::string Block::toString() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : coef_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.toString() << ")";
    for (size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) os << "*" << vars_->names[i] << "^" << e[i];
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace hlrsk
