// Interval translation mappings over exact rationals.
//
// An ITM is a piecewise translation of [0,1) whose branch images may overlap;
// the n-th attractor is T^n[0,1) and its stabilization classifies the map as
// finite type.  Every endpoint is an exact rational, so stabilization is a
// decidable equality test up to the chosen depth bound.

#pragma once

#include "itmlab/rational.hpp"
#include "itmlab/report.hpp"

#include <vector>

namespace itmlab {

struct BTParams {
  Rat alpha, beta;  // 1 >= alpha >= beta >= 0
  bool valid() const { return alpha <= 1 && beta <= alpha && beta >= 0; }
};

struct BruinParams {
  int d = 0;
  std::vector<Rat> lambda;  // nonnegative, sums to 1
  bool valid() const;
};

// Disjoint sorted half-open subintervals of [0,1), merged canonical form.
class IntervalSet {
 public:
  struct Interval {
    Rat left, right;
    bool operator==(const Interval& o) const { return left == o.left && right == o.right; }
  };

  IntervalSet() = default;
  explicit IntervalSet(std::vector<Interval> parts);
  static IntervalSet full();
  static IntervalSet empty() { return IntervalSet(); }

  const std::vector<Interval>& parts() const { return parts_; }
  bool is_empty() const { return parts_.empty(); }
  Rat total_length() const;
  bool contains(const Rat& x) const;
  IntervalSet intersect(const IntervalSet& o) const;
  bool operator==(const IntervalSet& o) const { return parts_ == o.parts_; }
  bool operator!=(const IntervalSet& o) const { return !(*this == o); }

  json to_json() const;

 private:
  std::vector<Interval> parts_;
};

class ITM {
 public:
  struct Branch {
    Rat left, right, translation;  // [left, right) -> [left+t, right+t)
  };

  explicit ITM(std::vector<Branch> branches, bool degenerate = false);

  const std::vector<Branch>& branches() const { return branches_; }
  bool degenerate() const { return degenerate_; }
  int branch_index(const Rat& x) const;   // branch containing x
  Rat evaluate(const Rat& x) const;       // x must lie in [0,1)
  IntervalSet image(const IntervalSet& s) const;

 private:
  std::vector<Branch> branches_;
  bool degenerate_ = false;
};

ITM from_bt(const BTParams& p);
ITM from_bruin(const BruinParams& p);

// Recover the Bruin length vector of an ITM built from valid parameters.
std::vector<Rat> bt_lambda(const BTParams& p);

IntervalSet attractor(const ITM& m, int n);

struct ClassifyResult {
  enum Kind { FiniteType, Unresolved } kind = Unresolved;
  int depth = 0;        // smallest N with Omega_N = Omega_{N+1}, or the bound
  IntervalSet omega;    // the last attractor computed
};

// Stabilization search up to max_depth; Unresolved is an honest outcome, the
// procedure cannot certify infinite type.
ClassifyResult classify(const ITM& m, int max_depth);

}  // namespace itmlab
