#include "mal/free_element.hpp"

#include <algorithm>
#include <set>

#include "mal/budget.hpp"
#include "mal/error.hpp"

namespace mal {

namespace {

void validate_indices(const std::vector<std::uint32_t>& idx) {
  if (idx.size() > 63) fail(Errc::budget_exceeded, "index set too large for row encoding");
  for (std::size_t p = 0; p < idx.size(); ++p) {
    if (idx[p] == 0) fail(Errc::bad_element, "generator indices are 1-based");
    if (p > 0 && idx[p] <= idx[p - 1]) fail(Errc::bad_element, "index set must be sorted and distinct");
  }
}

std::vector<std::uint32_t> merge_indices(const std::vector<std::uint32_t>& a,
                                         const std::vector<std::uint32_t>& b) {
  std::vector<std::uint32_t> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

SignVector SignVector::over(std::vector<std::uint32_t> indices, std::uint64_t plus_mask) {
  validate_indices(indices);
  if (indices.size() < 64) plus_mask &= (std::uint64_t{1} << indices.size()) - 1;
  return {std::move(indices), plus_mask};
}

SignVector SignVector::from_string(const std::string& signs) {
  SignVector sv;
  for (std::size_t p = 0; p < signs.size(); ++p) {
    if (signs[p] != '+' && signs[p] != '-') fail(Errc::parse_error, "sign string admits only + and -");
    sv.indices.push_back(static_cast<std::uint32_t>(p + 1));
    if (signs[p] == '+') sv.plus_mask |= std::uint64_t{1} << p;
  }
  validate_indices(sv.indices);
  return sv;
}

SignVector SignVector::all_plus(std::uint32_t n) {
  SignVector sv;
  for (std::uint32_t i = 1; i <= n; ++i) sv.indices.push_back(i);
  validate_indices(sv.indices);
  sv.plus_mask = n == 0 ? 0 : (n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  return sv;
}

SignVector SignVector::all_minus(std::uint32_t n) {
  SignVector sv = all_plus(n);
  sv.plus_mask = 0;
  return sv;
}

int SignVector::sign_at(std::uint32_t index) const {
  auto it = std::lower_bound(indices.begin(), indices.end(), index);
  if (it == indices.end() || *it != index) fail(Errc::unknown_index, "index absent from sign vector");
  return (plus_mask >> (it - indices.begin())) & 1 ? +1 : -1;
}

std::string SignVector::text() const {
  if (indices.empty()) return "()";
  std::string out;
  for (std::size_t p = 0; p < indices.size(); ++p) {
    if (p) out += ' ';
    out += ((plus_mask >> p) & 1) ? '+' : '-';
    out += std::to_string(indices[p]);
  }
  return out;
}

bool operator==(const SignVector& a, const SignVector& b) {
  return a.indices == b.indices && a.plus_mask == b.plus_mask;
}

FreeElement FreeElement::empty(std::vector<std::uint32_t> indices) {
  return of_rows(std::move(indices), {});
}

FreeElement FreeElement::full(std::vector<std::uint32_t> indices) {
  validate_indices(indices);
  check_budget(std::uint64_t{1} << indices.size(), "free full element");
  std::vector<std::uint64_t> rows(std::uint64_t{1} << indices.size());
  for (std::uint64_t r = 0; r < rows.size(); ++r) rows[r] = r;
  return of_rows(std::move(indices), std::move(rows));
}

FreeElement FreeElement::of_rows(std::vector<std::uint32_t> indices,
                                 std::vector<std::uint64_t> rows) {
  validate_indices(indices);
  const std::uint64_t limit = std::uint64_t{1} << indices.size();
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  if (!rows.empty() && rows.back() >= limit) fail(Errc::bad_element, "row exceeds the index set width");
  FreeElement x;
  x.indices_ = std::move(indices);
  x.rows_ = std::move(rows);
  return x;
}

FreeElement FreeElement::particle(const SignVector& sv) {
  return of_rows(sv.indices, {sv.plus_mask});
}

SignVector FreeElement::row_signs(std::uint64_t row) const {
  return SignVector::over(indices_, row);
}

FreeElement FreeElement::refined(const std::vector<std::uint32_t>& superset) const {
  validate_indices(superset);
  if (indices_ == superset) return *this;
  // Positions of the old indices inside the superset.
  std::vector<std::uint32_t> pos(indices_.size());
  std::vector<bool> fixed(superset.size(), false);
  for (std::size_t p = 0; p < indices_.size(); ++p) {
    auto it = std::lower_bound(superset.begin(), superset.end(), indices_[p]);
    if (it == superset.end() || *it != indices_[p])
      fail(Errc::bad_element, "refinement target must contain the index set");
    pos[p] = static_cast<std::uint32_t>(it - superset.begin());
    fixed[pos[p]] = true;
  }
  std::vector<std::uint32_t> free_pos;
  for (std::uint32_t q = 0; q < superset.size(); ++q)
    if (!fixed[q]) free_pos.push_back(q);
  check_budget(rows_.size() << free_pos.size(), "free element refinement");

  std::vector<std::uint64_t> out;
  out.reserve(rows_.size() << free_pos.size());
  for (std::uint64_t row : rows_) {
    std::uint64_t base = 0;
    for (std::size_t p = 0; p < pos.size(); ++p)
      if ((row >> p) & 1) base |= std::uint64_t{1} << pos[p];
    for (std::uint64_t fill = 0; fill < (std::uint64_t{1} << free_pos.size()); ++fill) {
      std::uint64_t r = base;
      for (std::size_t q = 0; q < free_pos.size(); ++q)
        if ((fill >> q) & 1) r |= std::uint64_t{1} << free_pos[q];
      out.push_back(r);
    }
  }
  return of_rows(superset, std::move(out));
}

namespace {

// Refine both operands to the union index set, then apply a sorted-set op.
template <typename Op>
FreeElement row_setop(const FreeElement& x, const FreeElement& y, Op op) {
  std::vector<std::uint32_t> j = merge_indices(x.indices(), y.indices());
  FreeElement a = x.refined(j);
  FreeElement b = y.refined(j);
  std::vector<std::uint64_t> rows;
  op(a.rows(), b.rows(), rows);
  return FreeElement::of_rows(std::move(j), std::move(rows));
}

}  // namespace

FreeElement free_meet(const FreeElement& x, const FreeElement& y) {
  return row_setop(x, y, [](const auto& a, const auto& b, auto& out) {
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  });
}

FreeElement free_join(const FreeElement& x, const FreeElement& y) {
  return row_setop(x, y, [](const auto& a, const auto& b, auto& out) {
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  });
}

FreeElement free_diff(const FreeElement& x, const FreeElement& y) {
  return row_setop(x, y, [](const auto& a, const auto& b, auto& out) {
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  });
}

FreeElement free_complement(const FreeElement& x) {
  check_budget(std::uint64_t{1} << x.indices().size(), "free complement");
  std::vector<std::uint64_t> rows;
  const std::uint64_t limit = std::uint64_t{1} << x.indices().size();
  auto it = x.rows().begin();
  for (std::uint64_t r = 0; r < limit; ++r) {
    if (it != x.rows().end() && *it == r) {
      ++it;
      continue;
    }
    rows.push_back(r);
  }
  return FreeElement::of_rows(x.indices(), std::move(rows));
}

bool free_leq(const FreeElement& x, const FreeElement& y) {
  return free_diff(x, y).is_empty();
}

bool free_equal(const FreeElement& x, const FreeElement& y) {
  std::vector<std::uint32_t> j = merge_indices(x.indices(), y.indices());
  return x.refined(j).rows() == y.refined(j).rows();
}

Dyadic dyadic_measure(const FreeElement& x) {
  return Dyadic(BigInt(x.rows().size()), static_cast<std::uint32_t>(x.indices().size()));
}

FreeElement canonical_expand(const std::vector<SignVector>& parts) {
  std::vector<std::uint32_t> j;
  for (const auto& sv : parts) j = merge_indices(j, sv.indices);
  FreeElement acc = FreeElement::empty(j);
  for (const auto& sv : parts) acc = free_join(acc, FreeElement::particle(sv).refined(j));
  return acc;
}

std::vector<SignVector> semialgebra_decompose(const SignVector& a, const SignVector& b) {
  // b's constraints must be a subset of a's, with matching signs.
  for (std::size_t p = 0; p < b.indices.size(); ++p) {
    std::uint32_t idx = b.indices[p];
    auto it = std::lower_bound(a.indices.begin(), a.indices.end(), idx);
    if (it == a.indices.end() || *it != idx)
      fail(Errc::bad_element, "decomposition base is not a subparticle of the target");
    int sa = (a.plus_mask >> (it - a.indices.begin())) & 1 ? +1 : -1;
    int sb = (b.plus_mask >> p) & 1 ? +1 : -1;
    if (sa != sb) fail(Errc::bad_element, "decomposition base disagrees with the target's signs");
  }
  // Extra indices of a, in increasing order; flipping the t-th extra sign
  // while keeping the earlier ones produces the complementary chain pieces.
  std::vector<SignVector> out{a};
  std::vector<std::uint32_t> chain_idx = b.indices;
  std::uint64_t chain_mask = b.plus_mask;
  auto sign_in_a = [&a](std::uint32_t idx) {
    auto it = std::lower_bound(a.indices.begin(), a.indices.end(), idx);
    return (a.plus_mask >> (it - a.indices.begin())) & 1;
  };
  for (std::uint32_t idx : a.indices) {
    if (std::binary_search(b.indices.begin(), b.indices.end(), idx)) continue;
    auto at = std::lower_bound(chain_idx.begin(), chain_idx.end(), idx);
    std::size_t p = static_cast<std::size_t>(at - chain_idx.begin());
    // Insert idx with the flipped sign: one disjoint piece of the chain.
    std::uint64_t low = chain_mask & ((std::uint64_t{1} << p) - 1);
    std::uint64_t high = (chain_mask >> p) << (p + 1);
    std::uint64_t flipped = low | high | (sign_in_a(idx) ? 0 : (std::uint64_t{1} << p));
    std::vector<std::uint32_t> piece_idx = chain_idx;
    piece_idx.insert(piece_idx.begin() + p, idx);
    out.push_back(SignVector::over(piece_idx, flipped));
    // Extend the chain with a's sign and continue.
    chain_idx = std::move(piece_idx);
    chain_mask = low | high | (sign_in_a(idx) ? (std::uint64_t{1} << p) : 0);
  }
  return out;
}

}  // namespace mal
