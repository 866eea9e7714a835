#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mal/scalars.hpp"

namespace mal {

// A choice of sign for each index in a finite sorted index set. Indices are
// 1-based generator indices; sign +1 selects the generator, -1 selects its
// complement relative to the unit.
struct SignVector {
  std::vector<std::uint32_t> indices;  // sorted, distinct
  std::uint64_t plus_mask = 0;         // bit p set <=> sign +1 at indices[p]

  static SignVector over(std::vector<std::uint32_t> indices, std::uint64_t plus_mask);
  // Signs over indices 1..signs.size() from a string of '+'/'-' characters.
  static SignVector from_string(const std::string& signs);
  static SignVector all_plus(std::uint32_t n);   // indices 1..n
  static SignVector all_minus(std::uint32_t n);  // indices 1..n

  std::size_t size() const { return indices.size(); }
  int sign_at(std::uint32_t index) const;  // +1 / -1; Errc::unknown_index if absent
  // Compact rendering "+1 -3 +4"; empty vector renders as "()".
  std::string text() const;
};

bool operator==(const SignVector& a, const SignVector& b);

// An element of the free Boolean algebra on countably many generators,
// presented over a finite index set J as the set of sign rows it contains:
// each row is one particle /\_j theta_j r_j, encoded as a bitmask over J
// (bit p set <=> sign +1 at indices[p]). Canonical for fixed J: rows sorted
// and distinct. Elements over different index sets compare after refining
// both to the union index set.
class FreeElement {
 public:
  FreeElement() = default;  // empty element over the empty index set

  static FreeElement empty(std::vector<std::uint32_t> indices);
  static FreeElement full(std::vector<std::uint32_t> indices);
  static FreeElement of_rows(std::vector<std::uint32_t> indices, std::vector<std::uint64_t> rows);
  static FreeElement particle(const SignVector& sv);  // single row over sv.indices

  const std::vector<std::uint32_t>& indices() const { return indices_; }
  const std::vector<std::uint64_t>& rows() const { return rows_; }
  bool is_empty() const { return rows_.empty(); }
  bool is_full() const { return rows_.size() == (std::uint64_t{1} << indices_.size()); }
  SignVector row_signs(std::uint64_t row) const;

  // The same element presented over a superset of the index set; each row
  // expands into 2^{|superset minus J|} rows. Subject to the enumeration
  // budget.
  FreeElement refined(const std::vector<std::uint32_t>& superset) const;

 private:
  std::vector<std::uint32_t> indices_;
  std::vector<std::uint64_t> rows_;  // sorted, distinct
};

FreeElement free_meet(const FreeElement& x, const FreeElement& y);
FreeElement free_join(const FreeElement& x, const FreeElement& y);
FreeElement free_diff(const FreeElement& x, const FreeElement& y);
FreeElement free_complement(const FreeElement& x);  // relative to the full element over J
bool free_leq(const FreeElement& x, const FreeElement& y);
bool free_equal(const FreeElement& x, const FreeElement& y);

// (number of rows) / 2^{|J|}; invariant under refinement of J.
Dyadic dyadic_measure(const FreeElement& x);

// The union of the given particles as one element over the union of their
// index sets (the common-refinement disjoint expansion).
FreeElement canonical_expand(const std::vector<SignVector>& parts);

// For particles a <= b (i.e. b's signs are a subset of a's), a list of
// pairwise disjoint particles whose union is b, with a itself the first
// entry: the chain completion witnessing the semialgebra property.
// Errc::bad_element if a is not a subparticle of b.
std::vector<SignVector> semialgebra_decompose(const SignVector& a, const SignVector& b);

}  // namespace mal
