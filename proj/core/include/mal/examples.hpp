#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mal/family.hpp"
#include "mal/interval_set.hpp"

namespace mal {

// --- Dyadic building blocks --------------------------------------------------

// The n-th binary-digit set: the union of the even-indexed cells at level n
// ([0,1/2) at n = 1, [0,1/4) | [1/2,3/4) at n = 2, ...).
DyadicSet usual_generator(std::uint32_t n);

// The k-th binary-digit set of the copy of [0,1) scaled into one host cell.
DyadicSet usual_on(std::uint32_t host_level, std::uint64_t host_cell, std::uint32_t k);

// Breadth-first enumeration of the dyadic cells: position 1 is [0,1), then
// the two halves left to right, then the four quarters, and so on.
struct DyadicCell {
  std::uint32_t level;
  std::uint64_t index;
};
DyadicCell enumerated_cell(std::uint64_t position);  // position >= 1
std::uint64_t cell_position(std::uint32_t level, std::uint64_t index);

// The coarsest dyadic rational strictly inside the open interval (lo, hi).
Dyadic coarsest_dyadic_between(const QuadScalar& lo, const QuadScalar& hi);

// --- The family gallery ------------------------------------------------------

// Binary-digit generators r_1..r_n on [0,1): every depth-n particle is one
// cell at level n, of measure exactly 2^{-n}.
Family usual_family(std::uint32_t n);

// Two half-interval families interleaved index-wise; the (+,+) particle at
// depth 2 is already zero, so no particle check can pass.
Family interleaved_family(std::uint32_t n);

// Every odd-indexed generator contains [0,1/2) outright, so meets along the
// odd indices never drop below measure 1/2: the vanishing certificate fails
// with an exact positive floor.
Family nonvanishing_family(std::uint32_t n);

// The binary-digit family with its first generator removed: [0,1/2) is not a
// union of particles at any depth, so the family generates a strictly
// smaller algebra.
Family incomplete_family(std::uint32_t n);

// Power set of 2^bits labeled points; r_n holds the points whose n-th label
// bit (most significant first) is 1. The depth-`bits` particles are exactly
// the singletons.
Family digit_family(std::uint32_t bits);

// Direct-sum host: each generator pairs a binary-digit set with a single
// point of an n-point universe, reused cyclically. Particles stay nonzero
// because the first coordinate never vanishes.
Family mixed_family(std::uint32_t n, std::uint32_t points);

// Interval-host family split at the fixed irrational cut: s_n is [0,alpha)
// together with the even-offset generation-n pieces of [alpha,1). The
// dyadic-union lower bounds of {s_1..s_N} have no greatest element; see
// cut_lower_bound_refuter.
Family cut_family(std::uint32_t n);
IntervalSet cut_generator(std::uint32_t n);
// The generation-n subdivision of [alpha,1), splitting every piece at its
// coarsest interior dyadic point.
std::vector<Interval> cut_generation(std::uint32_t n);

// Given a dyadic-union lower bound z of {s_1..s_stage}, produce a strictly
// larger dyadic-union lower bound by extending with [0,q) for a coarsest
// dyadic q between sup(z meet [0,alpha)) and alpha. A candidate that covers
// a right neighborhood of alpha is rejected with the stage that defeats it.
DyadicSet cut_lower_bound_refuter(std::uint32_t stage, const DyadicSet& z);

// --- A decreasing chain defeating countable additivity ----------------------

// x_t removes, from [0,1), the leftmost level-(n+1) subcell of the n-th
// enumerated dyadic cell for every n <= t. Each removal costs at most
// 2^{-n-1}, so mu(x_t) >= 1 - sum 2^{-n-1} > 1/2, yet no nonzero element
// fits below the whole chain.
std::vector<DyadicSet> non_sigma_chain(std::uint32_t m);  // m <= 20
Rational non_sigma_ledger_bound(std::uint32_t m);         // 1 - sum_{n<=m} 2^{-n-1}

// For nonzero z, the chain index t whose removed piece lies inside z. The
// piece is reported by cell coordinates (its level may be far beyond any
// representable mask); it sits inside z and outside x_t by construction.
struct ChainRefutation {
  std::uint64_t t;
  std::uint32_t witness_level;  // t + 1
  BigInt witness_cell;          // cell index at witness_level
};
ChainRefutation non_sigma_refuter(const DyadicSet& z);

// --- Name-based construction for the CLI -------------------------------------

struct ExampleParams {
  std::uint32_t n = 8;       // generator count (bits for "digit")
  std::uint32_t points = 4;  // atomic-universe size for "mixed"
};

// Names: usual, interleaved, nonvanishing, incomplete, digit, mixed, cut,
// glued. ("crushed" and "nonsigma" are driven by their own entry points.)
Family example_family(const std::string& name, const ExampleParams& params);
std::vector<std::string> example_names();

}  // namespace mal
