#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mal/algebra.hpp"
#include "mal/free_element.hpp"

namespace mal {

// An indexed list of generators r_1..r_N in one carrier algebra, together
// with the relative unit e they all lie below. Complements inside particles
// are taken relative to e.
struct Family {
  AlgebraElement unit;
  std::vector<AlgebraElement> generators;

  // Validates that all generators share the unit's carrier and lie below it.
  static Family on(AlgebraElement unit, std::vector<AlgebraElement> generators);
  // Unit defaults to the full element of the generators' carrier.
  static Family of(std::vector<AlgebraElement> generators);

  std::uint32_t size() const { return static_cast<std::uint32_t>(generators.size()); }
  const AlgebraElement& generator(std::uint32_t index) const;  // 1-based
};

// The meet over sv of the selected generators and relative complements;
// the empty sign vector yields the unit.
AlgebraElement particle(const Family& fam, const SignVector& sv);

// All-particles-nonzero check over indices 1..depth (2^depth cases).
struct R1Result {
  bool pass = false;
  std::optional<SignVector> witness;  // a zero particle, when pass is false
  std::uint64_t checked = 0;
};
R1Result check_pre_rademacher(const Family& fam, std::uint32_t depth);

// The nonincreasing measure trace of the running meets along one sign path,
// in increasing index order. When the observed decrements keep halving
// (d_{i+1} <= d_i / 2 throughout), the geometric tail they dominate yields
// the exact lower bound last - d_last on every deeper meet along the
// pattern; a strictly positive bound is recorded as positive_floor. This is
// a finite-depth certificate against vanishing at infinity, not a proof.
struct VanishingTrace {
  SignVector path;
  std::vector<QuadScalar> measures;
  std::optional<QuadScalar> positive_floor;
};
VanishingTrace vanishing_witness(const Family& fam, const SignVector& path);

// Atoms of the subalgebra generated below the unit by r_1..r_depth.
FiniteAlgebra atoms_at_depth(const Family& fam, std::uint32_t depth);

// Whether target is a union of depth-n particles.
bool generated_membership(const Family& fam, std::uint32_t depth, const AlgebraElement& target);

// Whether r_index stays outside the subalgebra generated by the first
// `depth` other generators (the finite minimality certificate).
bool generator_independent(const Family& fam, std::uint32_t index, std::uint32_t depth);

// Combine two families with disjoint units and equal index sets into one
// family on the joined unit: r_i = r'_i | r''_i, plus the extra generator
// r_{N+1} = a.unit.
Family glue(const Family& a, const Family& b);

// Interpret an abstract free element as the union of the corresponding
// particles of the family.
AlgebraElement realize(const Family& fam, const FreeElement& x);

// The inverse direction: the free element over 1..depth whose particles
// cover x. Errc::not_in_algebra when x is not a union of depth-n particles.
FreeElement abstract_element(const Family& fam, const AlgebraElement& x, std::uint32_t depth);

// Reinterpretation of x over another family with the same index count; the
// rows are unchanged, their realization changes. This is the finite-stage
// isomorphism between the two generated subalgebras.
FreeElement transport(const Family& from, const Family& to, const FreeElement& x);

// Certificate bundle for one family at one depth. r2 paths are probes, not
// proofs; r4 reports coverage of a deterministic-plus-seeded target set.
struct PropertyReport {
  std::uint32_t depth = 0;
  bool r1_pass = false;
  std::optional<SignVector> r1_witness;
  std::vector<VanishingTrace> r2_paths;
  std::vector<std::pair<std::uint32_t, bool>> r3;  // generator index -> independent
  std::uint64_t r4_probed = 0;
  std::uint64_t r4_covered = 0;
  std::vector<std::string> notes;

  bool r2_flagged() const;
  bool r3_pass() const;
  Rational r4_coverage() const;  // 1 when nothing was probed
  bool all_pass() const;
};
PropertyReport check_family(const Family& fam, std::uint32_t depth, std::uint64_t seed);

}  // namespace mal
