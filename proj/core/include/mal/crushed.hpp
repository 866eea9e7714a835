#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mal/examples.hpp"

namespace mal {

// Finite stage of the crushed-set construction: inside each of the first k
// enumerated dyadic cells, a pair of disjoint Cantor-stage sets is placed (an
// A side counted toward r0 and a B side counted toward the complement), and
// the A side is then topped up so that r0 meets every level-k cell while its
// complement still does, with measure within 2^{-k} of the target gamma.
struct CrushedStage {
  std::uint32_t stage = 0;
  Rational gamma;
  std::vector<DyadicSet> a_sets;   // n-th entry lies inside the n-th enumerated cell
  std::vector<DyadicSet> b_sets;
  std::vector<DyadicSet> fillers;  // coverage and measure top-up pieces, A side
  DyadicSet r0;                    // join of a_sets and fillers
};

// Verified invariants of one stage. Every check is exact.
struct CrushedReport {
  bool sets_disjoint = false;    // measures of the pieces add up to the union's
  bool ledger_bounds = false;    // 0 < mu(A_n) <= 2^{-n} g, 0 < mu(B_n) <= 2^{-n}(1-g)
  bool stage_cantor = false;     // no piece contains a cell coarser than its own level
  bool avoids_interval = false;  // I_j \ A_m and I_j \ B_m are nonzero for j <= m
  bool two_sided = false;        // every level-k cell meets r0 and its complement
  Rational r0_measure;
  Rational gamma_gap;            // |mu(r0) - gamma|
  bool measure_close = false;    // gamma_gap <= 2^{-k}

  bool all_pass() const {
    return sets_disjoint && ledger_bounds && stage_cantor && avoids_interval &&
           two_sided && measure_close;
  }
};

// Build the stage-k sets for a target measure 0 < gamma < 1, k <= 12.
CrushedStage crushed_extension_stage(const Rational& gamma, std::uint32_t stage);

// The extended family: r0 first, then the binary-digit generators r_1..r_k.
Family crushed_extended_family(const CrushedStage& st);

CrushedReport verify_crushed_stage(const CrushedStage& st);

// One Cantor-stage pattern: `rounds` times, refine every cell two levels and
// keep its first and third quarters. Each round halves the measure; the
// result never contains a cell coarser than its own level.
DyadicSet quarter_stage(const DyadicSet& start, std::uint32_t rounds);

// The coarsest dyadic cell wholly contained in s (leftmost among ties);
// nullopt when s is empty.
std::optional<DyadicCell> coarsest_contained_cell(const DyadicSet& s);

}  // namespace mal
