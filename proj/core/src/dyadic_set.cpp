#include "mal/dyadic_set.hpp"

#include <algorithm>
#include <bit>

#include "mal/error.hpp"

namespace mal {

namespace {

std::uint64_t words_for_level(std::uint32_t level) {
  std::uint64_t cells = std::uint64_t{1} << level;
  return (cells + 63) / 64;
}

void check_level(std::uint32_t level) {
  if (level > DyadicSet::kMaxLevel)
    fail(Errc::budget_exceeded,
         "dyadic set level " + std::to_string(level) + " exceeds the cap of " +
             std::to_string(DyadicSet::kMaxLevel));
}

// Mask of valid bits in the last word.
std::uint64_t tail_mask(std::uint32_t level) {
  std::uint64_t cells = std::uint64_t{1} << level;
  unsigned rem = cells % 64;
  return rem == 0 ? ~std::uint64_t{0} : ((std::uint64_t{1} << rem) - 1);
}

constexpr std::uint64_t kEven = 0x5555555555555555ull;  // bits at even positions

}  // namespace

DyadicSet DyadicSet::full() {
  return DyadicSet(0, std::vector<std::uint64_t>{1});
}

DyadicSet DyadicSet::cell(std::uint32_t level, std::uint64_t index) {
  return from_cells(level, {index});
}

DyadicSet DyadicSet::from_cells(std::uint32_t level, const std::vector<std::uint64_t>& cells) {
  check_level(level);
  std::vector<std::uint64_t> w(words_for_level(level), 0);
  std::uint64_t n = std::uint64_t{1} << level;
  for (std::uint64_t c : cells) {
    if (c >= n) fail(Errc::bad_element, "cell index out of range for level");
    w[c / 64] |= std::uint64_t{1} << (c % 64);
  }
  return DyadicSet(level, std::move(w));
}

DyadicSet DyadicSet::interval(std::uint32_t level, std::uint64_t lo, std::uint64_t hi) {
  check_level(level);
  std::uint64_t n = std::uint64_t{1} << level;
  if (lo > hi || hi > n) fail(Errc::bad_element, "bad dyadic interval bounds");
  std::vector<std::uint64_t> w(words_for_level(level), 0);
  for (std::uint64_t c = lo; c < hi; ++c) w[c / 64] |= std::uint64_t{1} << (c % 64);
  return DyadicSet(level, std::move(w));
}

DyadicSet DyadicSet::from_words(std::uint32_t level, std::vector<std::uint64_t> words) {
  check_level(level);
  if (words.size() != words_for_level(level))
    fail(Errc::bad_element, "word count does not match level");
  words.back() &= tail_mask(level);
  return DyadicSet(level, std::move(words));
}

bool DyadicSet::test(std::uint64_t cell_index) const {
  return (words_[cell_index / 64] >> (cell_index % 64)) & 1;
}

bool DyadicSet::is_empty() const {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

bool DyadicSet::is_full() const { return level_ == 0 && (words_[0] & 1); }

std::uint64_t DyadicSet::popcount() const {
  std::uint64_t n = 0;
  for (std::uint64_t w : words_) n += static_cast<std::uint64_t>(std::popcount(w));
  return n;
}

void DyadicSet::canonicalize() {
  while (level_ > 0) {
    // The level can drop iff every sibling pair agrees.
    bool halvable = true;
    if (level_ >= 6) {
      for (std::uint64_t w : words_) {
        if (((w ^ (w >> 1)) & kEven) != 0) {
          halvable = false;
          break;
        }
      }
    } else {
      std::uint64_t w = words_[0];
      std::uint64_t cells = std::uint64_t{1} << level_;
      for (std::uint64_t c = 0; c + 1 < cells && halvable; c += 2)
        if (((w >> c) & 1) != ((w >> (c + 1)) & 1)) halvable = false;
    }
    if (!halvable) break;
    --level_;
    std::vector<std::uint64_t> nw(words_for_level(level_), 0);
    std::uint64_t cells = std::uint64_t{1} << level_;
    for (std::uint64_t c = 0; c < cells; ++c)
      if ((words_[(2 * c) / 64] >> ((2 * c) % 64)) & 1) nw[c / 64] |= std::uint64_t{1} << (c % 64);
    words_ = std::move(nw);
  }
}

std::vector<std::uint64_t> DyadicSet::words_at(std::uint32_t level) const {
  check_level(level);
  if (level < level_) fail(Errc::bad_element, "cannot coarsen below the canonical level");
  if (level == level_) return words_;
  std::vector<std::uint64_t> w(words_for_level(level), 0);
  std::uint32_t shift = level - level_;
  std::uint64_t coarse_cells = std::uint64_t{1} << level_;
  for (std::uint64_t c = 0; c < coarse_cells; ++c) {
    if (!test(c)) continue;
    // shift >= 6 expands every coarse cell into whole 64-bit words
    std::uint64_t lo = c << shift, hi = (c + 1) << shift;
    if (shift >= 6) {
      std::fill(w.begin() + lo / 64, w.begin() + hi / 64, ~std::uint64_t{0});
    } else {
      for (std::uint64_t f = lo; f < hi; ++f) w[f / 64] |= std::uint64_t{1} << (f % 64);
    }
  }
  return w;
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> DyadicSet::runs() const {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  std::uint64_t n = cell_count();
  std::uint64_t c = 0;
  while (c < n) {
    if (!test(c)) {
      ++c;
      continue;
    }
    std::uint64_t start = c;
    while (c < n && test(c)) ++c;
    out.emplace_back(start, c);
  }
  return out;
}

Dyadic DyadicSet::lebesgue() const { return Dyadic(BigInt(popcount()), level_); }

DyadicSet meet(const DyadicSet& x, const DyadicSet& y) {
  std::uint32_t lv = std::max(x.level_, y.level_);
  std::vector<std::uint64_t> a = x.words_at(lv), b = y.words_at(lv);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] &= b[i];
  return DyadicSet(lv, std::move(a));
}

DyadicSet join(const DyadicSet& x, const DyadicSet& y) {
  std::uint32_t lv = std::max(x.level_, y.level_);
  std::vector<std::uint64_t> a = x.words_at(lv), b = y.words_at(lv);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] |= b[i];
  return DyadicSet(lv, std::move(a));
}

DyadicSet diff(const DyadicSet& x, const DyadicSet& y) {
  std::uint32_t lv = std::max(x.level_, y.level_);
  std::vector<std::uint64_t> a = x.words_at(lv), b = y.words_at(lv);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] &= ~b[i];
  return DyadicSet(lv, std::move(a));
}

bool leq(const DyadicSet& x, const DyadicSet& y) {
  std::uint32_t lv = std::max(x.level_, y.level_);
  std::vector<std::uint64_t> a = x.words_at(lv), b = y.words_at(lv);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] & ~b[i]) return false;
  return true;
}

bool operator==(const DyadicSet& x, const DyadicSet& y) {
  return x.level_ == y.level_ && x.words_ == y.words_;
}

DyadicSet complement_full(const DyadicSet& x) { return diff(DyadicSet::full(), x); }

std::string DyadicSet::mask_hex() const {
  // Fixed width: one hex digit per four cells (minimum one digit).
  std::uint64_t cells = cell_count();
  std::uint64_t digits = std::max<std::uint64_t>(1, (cells + 3) / 4);
  std::string out(digits, '0');
  static const char* kHex = "0123456789abcdef";
  for (std::uint64_t d = 0; d < digits; ++d) {
    unsigned nibble = 0;
    for (unsigned b = 0; b < 4; ++b) {
      std::uint64_t c = d * 4 + b;
      if (c < cells && test(c)) nibble |= 1u << b;
    }
    // Most significant digit first, digit 0 covers the leftmost cells.
    out[digits - 1 - d] = kHex[nibble];
  }
  return out;
}

DyadicSet DyadicSet::from_mask_hex(std::uint32_t level, const std::string& hex) {
  check_level(level);
  std::uint64_t cells = std::uint64_t{1} << level;
  std::uint64_t digits = std::max<std::uint64_t>(1, (cells + 3) / 4);
  if (hex.size() != digits)
    fail(Errc::parse_error, "mask width does not match level " + std::to_string(level));
  std::vector<std::uint64_t> w(words_for_level(level), 0);
  for (std::uint64_t d = 0; d < digits; ++d) {
    char ch = hex[digits - 1 - d];
    unsigned nibble;
    if (ch >= '0' && ch <= '9')
      nibble = ch - '0';
    else if (ch >= 'a' && ch <= 'f')
      nibble = 10 + (ch - 'a');
    else if (ch >= 'A' && ch <= 'F')
      nibble = 10 + (ch - 'A');
    else
      fail(Errc::parse_error, "bad hex digit in mask");
    for (unsigned b = 0; b < 4; ++b) {
      std::uint64_t c = d * 4 + b;
      if (nibble & (1u << b)) {
        if (c >= cells) fail(Errc::parse_error, "mask bit beyond cell count");
        w[c / 64] |= std::uint64_t{1} << (c % 64);
      }
    }
  }
  return DyadicSet(level, std::move(w));
}

}  // namespace mal
