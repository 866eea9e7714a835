#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mal/algebra.hpp"
#include "mal/family.hpp"
#include "mal/scalars.hpp"
#include "mal/step.hpp"

namespace mal {

// Verdicts for the four representability conditions on a system of signed
// fragments, certified at a finite depth (probed, never proved):
//   (a) |r_i| equals the unit for every member;
//   (b) every depth-n sign meet is nonzero;
//   (c) no probed measure trace is certified stuck above a positive floor;
//   (d) each derived generator is independent of the others at depth n.
struct ConditionReport {
  std::uint32_t depth = 0;
  bool abs_is_unit = false;
  R1Result meets_nonzero;
  std::vector<VanishingTrace> traces;
  std::vector<std::pair<std::uint32_t, bool>> minimality;
  std::vector<std::string> notes;

  bool traces_pass() const;
  bool minimality_pass() const;
  bool all_pass() const;
};

ConditionReport verify_representation_conditions(const std::vector<SignedFragment>& system,
                                                 std::uint32_t depth);

// The finite probability space carried by the depth-n sign meets: outcomes
// are sign strings over the first n members, each of probability 2^-n, and
// every member becomes a +-1-valued variable read off outcome by outcome.
struct FiniteProbSpace {
  std::uint32_t depth = 0;
  std::vector<std::string> outcomes;        // sorted '+'/'-' strings of length depth
  std::vector<Dyadic> probabilities;        // aligned with outcomes
  std::vector<std::vector<int>> variables;  // [i-1][outcome] = value of the i-th variable
};

struct Representation {
  FiniteProbSpace space;
  AlgebraElement unit;
  std::vector<AlgebraElement> particles;  // aligned with space.outcomes
};

// Requires conditions (a) and (b) to hold at the given depth.
Representation build_representation(const std::vector<SignedFragment>& system, std::uint32_t depth);

// The outcome-value table of x: an injective lattice homomorphism on step
// elements living on the depth-n particle algebra.
std::vector<Rational> representation_transport(const Representation& rep, const StepElement& x);

struct IndependenceCertificate {
  std::uint64_t cylinders_checked = 0;
  bool pass = false;
};

// Checks that the probability of every cylinder over an index set J with
// |J| <= max_order (the empty cylinder included) factorizes as 2^-|J|.
IndependenceCertificate independence_certificate(const FiniteProbSpace& space, std::uint32_t max_order);

}  // namespace mal
