#include "mal/algebra.hpp"

#include <bit>

#include "mal/budget.hpp"
#include "mal/error.hpp"

namespace mal {

FiniteSubset FiniteSubset::empty(std::uint32_t universe) {
  if (universe == 0 || universe > 64) fail(Errc::bad_element, "finite universe must be 1..64");
  return {universe, 0};
}

FiniteSubset FiniteSubset::full(std::uint32_t universe) {
  FiniteSubset s = empty(universe);
  s.bits = universe == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << universe) - 1);
  return s;
}

FiniteSubset FiniteSubset::singleton(std::uint32_t universe, std::uint32_t point) {
  FiniteSubset s = empty(universe);
  if (point >= universe) fail(Errc::bad_element, "point outside the finite universe");
  s.bits = std::uint64_t{1} << point;
  return s;
}

std::uint32_t FiniteSubset::popcount() const {
  return static_cast<std::uint32_t>(std::popcount(bits));
}

PairElement PairElement::of(AlgebraElement a, AlgebraElement b) {
  return {std::make_shared<const AlgebraElement>(std::move(a)),
          std::make_shared<const AlgebraElement>(std::move(b))};
}

namespace {

[[noreturn]] void incompatible() {
  fail(Errc::incompatible_algebra, "operands come from different carrier algebras");
}

void require_same_universe(const FiniteSubset& a, const FiniteSubset& b) {
  if (a.universe != b.universe) incompatible();
}

}  // namespace

AlgebraElement meet(const AlgebraElement& x, const AlgebraElement& y) {
  if (x.index() != y.index()) incompatible();
  if (auto* a = std::get_if<DyadicSet>(&x)) return meet(*a, std::get<DyadicSet>(y));
  if (auto* a = std::get_if<IntervalSet>(&x)) return meet(*a, std::get<IntervalSet>(y));
  if (auto* a = std::get_if<FiniteSubset>(&x)) {
    const auto& b = std::get<FiniteSubset>(y);
    require_same_universe(*a, b);
    return FiniteSubset{a->universe, a->bits & b.bits};
  }
  const auto& a = std::get<PairElement>(x);
  const auto& b = std::get<PairElement>(y);
  return PairElement::of(meet(a.left(), b.left()), meet(a.right(), b.right()));
}

AlgebraElement join(const AlgebraElement& x, const AlgebraElement& y) {
  if (x.index() != y.index()) incompatible();
  if (auto* a = std::get_if<DyadicSet>(&x)) return join(*a, std::get<DyadicSet>(y));
  if (auto* a = std::get_if<IntervalSet>(&x)) return join(*a, std::get<IntervalSet>(y));
  if (auto* a = std::get_if<FiniteSubset>(&x)) {
    const auto& b = std::get<FiniteSubset>(y);
    require_same_universe(*a, b);
    return FiniteSubset{a->universe, a->bits | b.bits};
  }
  const auto& a = std::get<PairElement>(x);
  const auto& b = std::get<PairElement>(y);
  return PairElement::of(join(a.left(), b.left()), join(a.right(), b.right()));
}

AlgebraElement diff(const AlgebraElement& x, const AlgebraElement& y) {
  if (x.index() != y.index()) incompatible();
  if (auto* a = std::get_if<DyadicSet>(&x)) return diff(*a, std::get<DyadicSet>(y));
  if (auto* a = std::get_if<IntervalSet>(&x)) return diff(*a, std::get<IntervalSet>(y));
  if (auto* a = std::get_if<FiniteSubset>(&x)) {
    const auto& b = std::get<FiniteSubset>(y);
    require_same_universe(*a, b);
    return FiniteSubset{a->universe, a->bits & ~b.bits};
  }
  const auto& a = std::get<PairElement>(x);
  const auto& b = std::get<PairElement>(y);
  return PairElement::of(diff(a.left(), b.left()), diff(a.right(), b.right()));
}

bool leq(const AlgebraElement& x, const AlgebraElement& y) {
  return is_zero(diff(x, y));
}

bool is_zero(const AlgebraElement& x) {
  if (auto* a = std::get_if<DyadicSet>(&x)) return a->is_empty();
  if (auto* a = std::get_if<IntervalSet>(&x)) return a->is_empty();
  if (auto* a = std::get_if<FiniteSubset>(&x)) return a->bits == 0;
  const auto& p = std::get<PairElement>(x);
  return is_zero(p.left()) && is_zero(p.right());
}

bool equal(const AlgebraElement& x, const AlgebraElement& y) {
  if (x.index() != y.index()) incompatible();
  if (auto* a = std::get_if<DyadicSet>(&x)) return *a == std::get<DyadicSet>(y);
  if (auto* a = std::get_if<IntervalSet>(&x)) return *a == std::get<IntervalSet>(y);
  if (auto* a = std::get_if<FiniteSubset>(&x)) {
    const auto& b = std::get<FiniteSubset>(y);
    require_same_universe(*a, b);
    return a->bits == b.bits;
  }
  const auto& a = std::get<PairElement>(x);
  const auto& b = std::get<PairElement>(y);
  return equal(a.left(), b.left()) && equal(a.right(), b.right());
}

std::string algebra_kind(const AlgebraElement& x) {
  switch (x.index()) {
    case 0: return "dyadic";
    case 1: return "interval";
    case 2: return "finite";
    default: return "pair";
  }
}

QuadScalar lebesgue(const AlgebraElement& x) {
  if (auto* a = std::get_if<DyadicSet>(&x)) return QuadScalar(a->lebesgue().to_rational());
  if (auto* a = std::get_if<IntervalSet>(&x)) return a->lebesgue();
  if (auto* a = std::get_if<FiniteSubset>(&x))
    return QuadScalar(Rational(a->popcount(), a->universe));
  fail(Errc::no_measure, "pair elements carry no canonical measure");
}

AlgebraElement zero_like(const AlgebraElement& x) {
  if (std::get_if<DyadicSet>(&x)) return DyadicSet::empty();
  if (std::get_if<IntervalSet>(&x)) return IntervalSet::empty();
  if (auto* a = std::get_if<FiniteSubset>(&x)) return FiniteSubset::empty(a->universe);
  const auto& p = std::get<PairElement>(x);
  return PairElement::of(zero_like(p.left()), zero_like(p.right()));
}

AlgebraElement full_like(const AlgebraElement& x) {
  if (std::get_if<DyadicSet>(&x)) return DyadicSet::full();
  if (std::get_if<IntervalSet>(&x)) return IntervalSet::full();
  if (auto* a = std::get_if<FiniteSubset>(&x)) return FiniteSubset::full(a->universe);
  const auto& p = std::get<PairElement>(x);
  return PairElement::of(full_like(p.left()), full_like(p.right()));
}

bool FiniteAlgebra::contains(const AlgebraElement& x) const {
  AlgebraElement acc = zero_like(unit);
  for (const auto& a : atoms) {
    AlgebraElement m = meet(a, x);
    if (is_zero(m)) continue;
    if (!equal(m, a)) return false;  // x cuts an atom
    acc = join(acc, a);
  }
  return equal(acc, x);
}

bool FiniteAlgebra::is_atom(const AlgebraElement& x) const {
  if (is_zero(x)) return false;
  for (const auto& a : atoms)
    if (equal(a, x)) return true;
  return false;
}

BigInt FiniteAlgebra::size() const { return pow2(static_cast<std::uint32_t>(atoms.size())); }

FiniteAlgebra generate_subalgebra(const AlgebraElement& unit,
                                  const std::vector<AlgebraElement>& gens) {
  FiniteAlgebra alg{unit, {unit}};
  if (is_zero(unit)) fail(Errc::bad_element, "unit of a subalgebra must be nonzero");
  for (const auto& g : gens) {
    if (!leq(g, unit)) fail(Errc::bad_element, "generator not below the unit");
    std::vector<AlgebraElement> refined;
    refined.reserve(alg.atoms.size() * 2);
    for (const auto& a : alg.atoms) {
      AlgebraElement in = meet(a, g);
      AlgebraElement out = diff(a, g);
      if (!is_zero(in)) refined.push_back(std::move(in));
      if (!is_zero(out)) refined.push_back(std::move(out));
    }
    check_budget(refined.size(), "generate_subalgebra");
    alg.atoms = std::move(refined);
  }
  return alg;
}

}  // namespace mal
