#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "mal/dyadic_set.hpp"
#include "mal/interval_set.hpp"

namespace mal {

// Subset of a finite labeled universe {0, ..., universe-1}, universe <= 64.
struct FiniteSubset {
  std::uint32_t universe = 0;
  std::uint64_t bits = 0;

  static FiniteSubset empty(std::uint32_t universe);
  static FiniteSubset full(std::uint32_t universe);
  static FiniteSubset singleton(std::uint32_t universe, std::uint32_t point);
  bool test(std::uint32_t point) const { return (bits >> point) & 1; }
  std::uint32_t popcount() const;
};

struct PairElement;

// One element of a concrete carrier algebra. Operations require both
// operands to come from the same carrier (same alternative, same universe,
// component-wise for pairs) and raise Errc::incompatible_algebra otherwise.
using AlgebraElement = std::variant<DyadicSet, IntervalSet, FiniteSubset, PairElement>;

// Direct product of two carriers; components are immutable shared values.
struct PairElement {
  std::shared_ptr<const AlgebraElement> first, second;

  static PairElement of(AlgebraElement a, AlgebraElement b);
  const AlgebraElement& left() const { return *first; }
  const AlgebraElement& right() const { return *second; }
};

AlgebraElement meet(const AlgebraElement& x, const AlgebraElement& y);
AlgebraElement join(const AlgebraElement& x, const AlgebraElement& y);
AlgebraElement diff(const AlgebraElement& x, const AlgebraElement& y);
bool leq(const AlgebraElement& x, const AlgebraElement& y);
bool is_zero(const AlgebraElement& x);
bool equal(const AlgebraElement& x, const AlgebraElement& y);

// Name of the carrier kind: "dyadic", "interval", "finite", "pair".
std::string algebra_kind(const AlgebraElement& x);

// Normalized measure where the carrier has one (Lebesgue on [0,1) for
// dyadic/interval, counting/universe for finite). Pairs carry no canonical
// measure: Errc::no_measure.
QuadScalar lebesgue(const AlgebraElement& x);

// The all-zero element of x's carrier.
AlgebraElement zero_like(const AlgebraElement& x);

// The unit of x's carrier (full set, full universe, componentwise for pairs).
AlgebraElement full_like(const AlgebraElement& x);

// A finitely generated subalgebra, stored by its atoms.
struct FiniteAlgebra {
  AlgebraElement unit;
  std::vector<AlgebraElement> atoms;  // nonzero, pairwise disjoint, join = unit

  bool contains(const AlgebraElement& x) const;
  bool is_atom(const AlgebraElement& x) const;
  // Number of elements is 2^atoms.size(); returned exactly.
  BigInt size() const;
};

// Atoms of the subalgebra of `unit` generated by `gens` (all gens must lie
// below unit). Refuses when the atom count would exceed the enumeration
// budget.
FiniteAlgebra generate_subalgebra(const AlgebraElement& unit,
                                  const std::vector<AlgebraElement>& gens);

}  // namespace mal
