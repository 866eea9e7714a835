#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mal/scalars.hpp"

namespace mal {

// Finite union of half-open dyadic cells [j/2^n, (j+1)/2^n) inside [0,1),
// stored as a bit vector over the 2^n cells of one level. Bit j corresponds
// to the j-th cell from the left. The level is kept minimal: no coarser
// level represents the same set.
class DyadicSet {
 public:
  static constexpr std::uint32_t kMaxLevel = 26;

  DyadicSet() : level_(0), words_(1, 0) {}  // empty set

  static DyadicSet empty() { return DyadicSet(); }
  static DyadicSet full();
  static DyadicSet cell(std::uint32_t level, std::uint64_t index);
  static DyadicSet from_cells(std::uint32_t level, const std::vector<std::uint64_t>& cells);
  // [lo, hi) with endpoints lo = lo_num/2^level, hi = hi_num/2^level.
  static DyadicSet interval(std::uint32_t level, std::uint64_t lo_num, std::uint64_t hi_num);
  static DyadicSet from_words(std::uint32_t level, std::vector<std::uint64_t> words);

  std::uint32_t level() const { return level_; }
  std::uint64_t cell_count() const { return std::uint64_t{1} << level_; }
  bool test(std::uint64_t cell_index) const;
  bool is_empty() const;
  bool is_full() const;
  std::uint64_t popcount() const;

  // Maximal runs of consecutive cells as [lo, hi) cell index pairs.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> runs() const;

  Dyadic lebesgue() const;

  friend DyadicSet meet(const DyadicSet& x, const DyadicSet& y);
  friend DyadicSet join(const DyadicSet& x, const DyadicSet& y);
  friend DyadicSet diff(const DyadicSet& x, const DyadicSet& y);
  friend bool leq(const DyadicSet& x, const DyadicSet& y);
  friend bool operator==(const DyadicSet& x, const DyadicSet& y);

  // Mask as lowercase hex, fixed width for the level, bit 0 = leftmost cell.
  std::string mask_hex() const;
  static DyadicSet from_mask_hex(std::uint32_t level, const std::string& hex);

 private:
  DyadicSet(std::uint32_t level, std::vector<std::uint64_t> words)
      : level_(level), words_(std::move(words)) {
    canonicalize();
  }
  void canonicalize();
  // Word vector of this set refined to a finer (or equal) level.
  std::vector<std::uint64_t> words_at(std::uint32_t level) const;

  std::uint32_t level_;
  std::vector<std::uint64_t> words_;  // ceil(2^level / 64) words, LSB-first
};

DyadicSet complement_full(const DyadicSet& x);  // [0,1) minus x

}  // namespace mal
