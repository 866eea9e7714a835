#pragma once

#include <cstdint>
#include <vector>

#include "mal/algebra.hpp"
#include "mal/family.hpp"
#include "mal/scalars.hpp"

namespace mal {

// One piece of a step element: the constant `coeff` taken on `fragment`.
struct StepTerm {
  Rational coeff;
  AlgebraElement fragment;
};

// A finitely-valued element over a unit e: a disjoint list of fragments of e,
// each carrying a rational coefficient.  Canonical form: coefficients are
// distinct and nonzero, fragments are maximal for their coefficient, and terms
// are sorted by coefficient.  Equality is structural.
class StepElement {
 public:
  explicit StepElement(AlgebraElement unit);
  StepElement(AlgebraElement unit, std::vector<StepTerm> terms);

  const AlgebraElement& unit() const { return unit_; }
  const std::vector<StepTerm>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  AlgebraElement support() const;
  // Largest and smallest coefficients; both 0 for the zero element.
  Rational max_coeff() const;
  Rational min_coeff() const;

  friend bool operator==(const StepElement& a, const StepElement& b);
  friend bool operator!=(const StepElement& a, const StepElement& b) { return !(a == b); }

 private:
  AlgebraElement unit_;
  std::vector<StepTerm> terms_;
};

enum class StepKind { add, scalar_mul, meet, join, abs };

// Lattice/linear operations computed on the common refinement of fragments.
// add/meet/join take two elements, scalar_mul takes an element and a scalar,
// abs is unary; a kind used with the wrong arity is rejected.
StepElement step_combine(StepKind kind, const StepElement& x, const StepElement& y);
StepElement step_combine(StepKind kind, const StepElement& x, const Rational& scalar);
StepElement step_combine(StepKind kind, const StepElement& x);

StepElement step_add(const StepElement& x, const StepElement& y);
StepElement step_sub(const StepElement& x, const StepElement& y);
StepElement step_scale(const Rational& scalar, const StepElement& x);
StepElement step_neg(const StepElement& x);
StepElement step_meet(const StepElement& x, const StepElement& y);
StepElement step_join(const StepElement& x, const StepElement& y);
StepElement step_abs(const StepElement& x);

// Pointwise product on the common refinement; the workhorse behind inner
// products.
StepElement step_mul(const StepElement& x, const StepElement& y);

// Pointwise order: x <= y everywhere on the unit.
bool step_leq(const StepElement& x, const StepElement& y);

// x restricted to a region of its unit (zero outside).
StepElement step_restrict(const StepElement& x, const AlgebraElement& region);

// value on all of e.
StepElement constant_step(const AlgebraElement& unit, const Rational& value);
// 0/1 element of a fragment of e.
StepElement indicator_step(const AlgebraElement& unit, const AlgebraElement& fragment);

// A step element whose coefficients all lie in {-1, +1}.
class SignedFragment {
 public:
  explicit SignedFragment(StepElement x);

  const StepElement& element() const { return elem_; }
  const AlgebraElement& unit() const { return elem_.unit(); }
  // Fragments where the value is +1 resp. -1.
  AlgebraElement plus_part() const;
  AlgebraElement minus_part() const;

 private:
  StepElement elem_;
};

bool is_signed_fragment(const StepElement& x);

// x*y = x+ ^ y+  +  x- ^ y-  -  x+ ^ y-  -  x- ^ y+ ; the Abelian group
// product on signed fragments (identity: the constant +1, every element its
// own inverse on its support).
SignedFragment fragment_product(const SignedFragment& x, const SignedFragment& y);

// r_i = +1 on the i-th generator, -1 on its complement in e, for every
// generator of the family.  Satisfies gen_i = (e + r_i)/2 and |r_i| = e.
std::vector<SignedFragment> rademacher_system(const AlgebraElement& e, const Family& fam);

// u_n = sum over m of (m/n) on the fragment where m/n <= x < (m+1)/n.
// Requires x >= 0; guarantees 0 <= x - u_n <= e/n, and u_n <= u_n' when n
// divides n'.
StepElement freudenthal_approx(const StepElement& x, std::uint64_t n);

// Slices of x >= 0 by integer bands: entry m-1 is the restriction of x to the
// fragment where m-1 < x <= m.  Disjoint, summing to x; empty list for x = 0.
std::vector<StepElement> band_slices(const StepElement& x);

}  // namespace mal
