#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "mal/algebra.hpp"
#include "mal/family.hpp"
#include "mal/scalars.hpp"
#include "mal/step.hpp"

namespace mal {

// Exact integral together with a certified enclosure.  For finite inputs the
// enclosure is degenerate (lo = hi = value); for lazy inputs value is the
// probed partial sum and [lo, hi] brackets the limit.
struct IntegralValue {
  Rational value;
  Rational lo;
  Rational hi;
};

// An element given by a stream of terms rather than a finite list: term(m)
// yields the m-th coefficient/fragment pair (1-based), tail(m) is a declared
// bound on the absolute mass beyond index m.  Fragments must be pairwise
// disjoint (checked up to the probed index) and the tail bound nonincreasing.
struct LazySimple {
  std::function<StepTerm(std::uint64_t)> term;
  std::function<Rational(std::uint64_t)> tail;
};

// The dyadic measure attached to a family: a fragment measurable at depth d
// (every depth-d particle below it or disjoint from it) gets 2^-d per
// contained particle.  Probes the smallest adequate depth and caches particle
// lists per depth.
class MeasureContext {
 public:
  static constexpr std::uint32_t kMaxDepth = 20;

  explicit MeasureContext(Family fam);

  const Family& family() const { return fam_; }
  // Measure of a fragment of the family's unit; fails with not_in_algebra
  // when no probed depth decides every particle.
  Rational measure(const AlgebraElement& x);

 private:
  const std::vector<AlgebraElement>& particles_at(std::uint32_t depth);

  Family fam_;
  std::vector<std::vector<AlgebraElement>> cache_;  // nonzero particles by depth
};

// Sum of coeff * measure(fragment) over the terms of x.
IntegralValue integrate_simple(const StepElement& x, MeasureContext& ctx);
IntegralValue integrate_simple(const StepElement& x, const Family& fam);

// Lazy variant: partial sums until the declared tail is at most tolerance/2,
// returning that sum with the tail enclosure around it.
IntegralValue integrate_simple(const LazySimple& x, MeasureContext& ctx, const Rational& tolerance);
IntegralValue integrate_simple(const LazySimple& x, const Family& fam, const Rational& tolerance);

// Integral through the quantized-approximation limit: runs the doubling grids
// n = 1, 2, 4, ... on the positive and negative parts, verifying the a-priori
// estimate |integral(u_n) - integral(u_m)| <= 1/min(n, m) along the way,
// until 1/n <= tolerance; the returned value is the exact simple integral the
// limit lands on.
IntegralValue integrate_bounded(const StepElement& x, MeasureContext& ctx, const Rational& tolerance);
IntegralValue integrate_bounded(const StepElement& x, const Family& fam, const Rational& tolerance);

// integral of |x|.
IntegralValue l1_norm(const StepElement& x, MeasureContext& ctx);
IntegralValue l1_norm(const StepElement& x, const Family& fam);

}  // namespace mal
