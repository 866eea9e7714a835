#pragma once

#include <vector>

#include "mal/dyadic_set.hpp"
#include "mal/scalars.hpp"

namespace mal {

// Half-open interval [lo, hi) with endpoints in Q(sqrt2), inside [0,1].
struct Interval {
  QuadScalar lo, hi;
};

// Finite union of half-open intervals, canonical: sorted, pairwise disjoint,
// non-adjacent (touching intervals are merged), all nonempty.
class IntervalSet {
 public:
  IntervalSet() = default;  // empty

  static IntervalSet empty() { return IntervalSet(); }
  static IntervalSet full();
  static IntervalSet of(const QuadScalar& lo, const QuadScalar& hi);
  static IntervalSet from_intervals(std::vector<Interval> ivs);
  static IntervalSet from_dyadic(const DyadicSet& d);

  const std::vector<Interval>& intervals() const { return ivs_; }
  bool is_empty() const { return ivs_.empty(); }
  QuadScalar lebesgue() const;
  bool contains_point(const QuadScalar& x) const;

  friend IntervalSet meet(const IntervalSet& x, const IntervalSet& y);
  friend IntervalSet join(const IntervalSet& x, const IntervalSet& y);
  friend IntervalSet diff(const IntervalSet& x, const IntervalSet& y);
  friend bool leq(const IntervalSet& x, const IntervalSet& y);
  friend bool operator==(const IntervalSet& x, const IntervalSet& y);

 private:
  std::vector<Interval> ivs_;
};

IntervalSet complement_full(const IntervalSet& x);  // [0,1) minus x

}  // namespace mal
