#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "hlrsk/scalar.hpp"

namespace hlrsk {

// Shared window spec for a family of Laurent blocks: named series variables,
// each with an inclusive exponent window [lo, hi].
struct BlockVars {
  std::vector<std::string> names;
  std::vector<int> lo, hi;

  int index(const std::string& name) const;
  size_t size() const { return names.size(); }
};

using BlockVarsPtr = std::shared_ptr<const BlockVars>;
BlockVarsPtr makeBlockVars(std::vector<std::string> names, std::vector<int> lo,
                           std::vector<int> hi);

using ExpVec = std::vector<int>;

// Truncated multivariate Laurent series: exponent vector -> exact scalar,
// all exponents kept inside the window.  Multiplication clips to the window;
// callers are responsible for choosing windows wide enough that clipped
// terms cannot re-enter the extraction target (checked in tests by growing
// windows and comparing).
class Block {
 public:
  Block() = default;
  explicit Block(BlockVarsPtr vars) : vars_(std::move(vars)) {}

  static Block one(const BlockVarsPtr& vars);
  static Block monomial(const BlockVarsPtr& vars, const ExpVec& e,
                        const Scalar& c);

  // sum_{n >= 0} (c * m)^n clipped to the window; m must move at least one
  // variable so the clip terminates
  static Block geometric(const BlockVarsPtr& vars, const Scalar& c,
                         const ExpVec& dir);

  // expansion of 1/((1 - alpha m)(1 - beta m^{-1})) with the first factor
  // expanded in positive powers of m and the second in negative powers:
  // coefficient of m^k is alpha^k/(1-alpha*beta) for k >= 0 and
  // beta^{-k}/(1-alpha*beta) for k < 0
  static Block pairGeometric(const BlockVarsPtr& vars, const Scalar& alpha,
                             const Scalar& beta, const ExpVec& dirUp);

  const BlockVarsPtr& vars() const { return vars_; }
  const std::map<ExpVec, Scalar>& coeffs() const { return coef_; }
  bool isZero() const { return coef_.empty(); }
  size_t termCount() const { return coef_.size(); }

  void add(const ExpVec& e, const Scalar& c);   // clips, drops zeros
  Scalar coefficient(const ExpVec& e) const;

  Block operator+(const Block& o) const;
  Block operator-(const Block& o) const;
  Block operator*(const Block& o) const;
  Block scaled(const Scalar& c) const;
  bool sameSeries(const Block& o) const;  // coefficient-wise equality

  // fix the listed variables at given exponents; returns a block over the
  // remaining variables
  Block extract(const std::vector<std::pair<int, int>>& fixed) const;

  // exact polynomial division (no clipping; divisor and dividend should be
  // genuine Laurent polynomials); throws if not divisible
  static Block divExactPoly(const Block& a, const Block& b);

  std::string toString() const;

 private:
  bool inWindow(const ExpVec& e) const;
  BlockVarsPtr vars_;
  std::map<ExpVec, Scalar> coef_;
};

}  // namespace hlrsk
