#pragma once

#include <cstdint>
#include <vector>

#include "mal/family.hpp"
#include "mal/scalars.hpp"
#include "mal/step.hpp"

namespace mal {

// Index (n, k) of a Haar element past the two base indices: n >= 2 and
// k = 1..2^(n-1), sitting at linear position 2^(n-1) + k.  The sign sequence
// picks the depth-(n-1) particle carrying the element; digit j of k-1 is read
// most significant first, which is the order under which the usual family
// reproduces the classical Haar functions index by index.
struct HaarIndex {
  std::uint32_t n;
  std::uint64_t k;

  HaarIndex(std::uint32_t n, std::uint64_t k);

  static HaarIndex from_linear(std::uint64_t i);  // i >= 3
  std::uint64_t linear() const { return (std::uint64_t{1} << (n - 1)) + k; }
  // epsilon_j for j = 1..n-1; +1 selects the generator, -1 its complement.
  std::vector<int> signs() const;
};

// h_1 = e, h_2 = r_1, and h_(n,k) = r_n restricted to the particle selected
// by the sign sequence of (n, k), zero elsewhere.
StepElement haar_element(const AlgebraElement& e, const Family& fam, const HaarIndex& idx);
StepElement haar_element(const AlgebraElement& e, const Family& fam, std::uint64_t linear_index);

// integral of the pointwise product x*y against the family's dyadic measure.
Rational haar_inner(const StepElement& x, const StepElement& y, const Family& fam);

struct HaarExpansion {
  std::vector<Rational> coefficients;  // a_1 .. a_{2^depth}
  StepElement residual;                // x minus the synthesis; zero iff x lives at this depth
};

// a_i = inner(x, h_i) / inner(h_i, h_i).  Exact reconstruction whenever x is
// measurable with respect to the depth-n particles; otherwise the leftover is
// reported in the residual, never as an error.
HaarExpansion haar_expand(const StepElement& x, const Family& fam, std::uint32_t depth);

// sum of coeffs[i-1] * h_i.
StepElement haar_synthesize(const AlgebraElement& e, const Family& fam, const std::vector<Rational>& coeffs);

}  // namespace mal
