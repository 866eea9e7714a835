#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "doctest.h"
#include "mal/error.hpp"
#include "mal/free_element.hpp"
#include "oracle.hpp"

using namespace mal;

namespace {

// Reference model: an element over sorted index set J is the set of rows it
// contains. Refinement duplicates every row across the new positions.
using Rows = std::set<std::uint64_t>;

Rows refine_rows(const std::vector<std::uint32_t>& from, const Rows& rows,
                 const std::vector<std::uint32_t>& to) {
  Rows out;
  for (std::uint64_t full = 0; full < (std::uint64_t{1} << to.size()); ++full) {
    std::uint64_t proj = 0;
    for (std::size_t p = 0; p < from.size(); ++p) {
      std::size_t q = std::find(to.begin(), to.end(), from[p]) - to.begin();
      if ((full >> q) & 1) proj |= std::uint64_t{1} << p;
    }
    if (rows.count(proj)) out.insert(full);
  }
  return out;
}

FreeElement random_element(std::mt19937_64& rng, const std::vector<std::uint32_t>& idx) {
  std::bernoulli_distribution bit(0.5);
  std::vector<std::uint64_t> rows;
  for (std::uint64_t r = 0; r < (std::uint64_t{1} << idx.size()); ++r)
    if (bit(rng)) rows.push_back(r);
  return FreeElement::of_rows(idx, rows);
}

Rows rows_of(const FreeElement& x) { return Rows(x.rows().begin(), x.rows().end()); }

}  // namespace

TEST_SUITE("free") {

TEST_CASE("sign vectors") {
  SignVector sv = SignVector::over({1, 3, 4}, 0b101);
  CHECK(sv.size() == 3);
  CHECK(sv.sign_at(1) == 1);
  CHECK(sv.sign_at(3) == -1);
  CHECK(sv.sign_at(4) == 1);
  CHECK(sv.text() == "+1 -3 +4");
  CHECK_ERRC(sv.sign_at(2), Errc::unknown_index);

  CHECK(SignVector::from_string("+-+") == SignVector::over({1, 2, 3}, 0b101));
  CHECK(SignVector::all_plus(3) == SignVector::over({1, 2, 3}, 0b111));
  CHECK(SignVector::all_minus(2) == SignVector::over({1, 2}, 0));
  CHECK(SignVector::over({}, 0).text() == "()");
  CHECK_ERRC(SignVector::from_string("+x"), Errc::parse_error);
  CHECK_ERRC(SignVector::over({3, 1}, 0), Errc::bad_element);   // unsorted
  CHECK_ERRC(SignVector::over({1, 1}, 0), Errc::bad_element);   // duplicate
  CHECK_ERRC(SignVector::over({0, 1}, 0), Errc::bad_element);   // indices are 1-based
  CHECK(SignVector::over({1}, 0b10) == SignVector::over({1}, 0));  // stray bits are masked
}

TEST_CASE("particles and row signs") {
  SignVector sv = SignVector::from_string("-+");
  FreeElement p = FreeElement::particle(sv);
  REQUIRE(p.rows().size() == 1);
  CHECK(p.rows()[0] == 0b10);
  CHECK(p.row_signs(0b10) == sv);
  CHECK(dyadic_measure(p) == Dyadic(BigInt(1), 2));
  CHECK(FreeElement::full({1, 2}).is_full());
  CHECK(FreeElement::empty({1, 2}).is_empty());
  CHECK(dyadic_measure(FreeElement::full({1, 2})) == Dyadic(1));
  CHECK(dyadic_measure(FreeElement()) == Dyadic(0));
}

TEST_CASE("operations agree with the row-set model") {
  std::mt19937_64 rng(31);
  const std::vector<std::vector<std::uint32_t>> idx_pool{
      {1, 2}, {2, 3}, {1, 2, 3}, {1, 4}, {2, 3, 5}};
  std::uniform_int_distribution<std::size_t> pick(0, idx_pool.size() - 1);
  for (int i = 0; i < 200; ++i) {
    const auto& ia = idx_pool[pick(rng)];
    const auto& ib = idx_pool[pick(rng)];
    FreeElement a = random_element(rng, ia), b = random_element(rng, ib);

    std::vector<std::uint32_t> u;
    std::set_union(ia.begin(), ia.end(), ib.begin(), ib.end(), std::back_inserter(u));
    Rows ra = refine_rows(ia, rows_of(a), u), rb = refine_rows(ib, rows_of(b), u);

    Rows m, j, d;
    std::set_intersection(ra.begin(), ra.end(), rb.begin(), rb.end(),
                          std::inserter(m, m.end()));
    std::set_union(ra.begin(), ra.end(), rb.begin(), rb.end(), std::inserter(j, j.end()));
    std::set_difference(ra.begin(), ra.end(), rb.begin(), rb.end(), std::inserter(d, d.end()));

    CHECK(rows_of(free_meet(a, b).refined(u)) == m);
    CHECK(rows_of(free_join(a, b).refined(u)) == j);
    CHECK(rows_of(free_diff(a, b).refined(u)) == d);
    CHECK(free_leq(a, b) == std::includes(rb.begin(), rb.end(), ra.begin(), ra.end()));
    CHECK(free_equal(a, b) == (ra == rb));
    CHECK(free_equal(free_complement(free_complement(a)), a));
    CHECK(free_meet(a, free_complement(a)).is_empty());
    CHECK(free_join(a, free_complement(a)).is_full());
  }
}

TEST_CASE("measure is invariant under refinement") {
  std::mt19937_64 rng(32);
  for (int i = 0; i < 100; ++i) {
    FreeElement a = random_element(rng, {1, 3});
    FreeElement r = a.refined({1, 2, 3, 5, 8});
    CHECK(dyadic_measure(r) == dyadic_measure(a));
    CHECK(free_equal(r, a));
    CHECK(r.rows().size() == a.rows().size() * 8);
  }
  CHECK_ERRC(FreeElement::full({1, 2}).refined({1, 3}), Errc::bad_element);
}

TEST_CASE("canonical expansion of overlapping particles") {
  // r1 union (not r1 and r2) over {1,2}: three rows
  FreeElement u = canonical_expand(
      {SignVector::over({1}, 1), SignVector::from_string("-+")});
  CHECK(u.indices() == std::vector<std::uint32_t>{1, 2});
  CHECK(u.rows().size() == 3);
  CHECK(dyadic_measure(u) == Dyadic(BigInt(3), 2));

  // overlapping particles double-count nothing
  FreeElement v = canonical_expand({SignVector::over({1}, 1), SignVector::over({2}, 1)});
  CHECK(dyadic_measure(v) == Dyadic(BigInt(3), 2));
  CHECK(canonical_expand({}).is_empty());
}

TEST_CASE("subparticle decomposition is a disjoint chain") {
  SignVector a = SignVector::over({1, 2, 3, 5}, 0b1011);  // +1 +2 -3 +5
  SignVector b = SignVector::over({2, 5}, 0b11);           // +2 +5
  auto parts = semialgebra_decompose(a, b);
  REQUIRE(!parts.empty());
  CHECK(parts[0] == a);
  // pieces are pairwise disjoint and union to b
  FreeElement acc = FreeElement::empty(a.indices);
  Dyadic total(0);
  for (const auto& p : parts) {
    FreeElement fp = FreeElement::particle(p);
    CHECK(free_meet(acc, fp).is_empty());
    acc = free_join(acc, fp);
    total = dyadic_add(total, dyadic_measure(fp));
  }
  CHECK(free_equal(acc, FreeElement::particle(b)));
  CHECK(total == dyadic_measure(FreeElement::particle(b)));

  // a == b gives the one-element chain
  auto same = semialgebra_decompose(b, b);
  CHECK(same.size() == 1);
  CHECK(same[0] == b);

  // not a subparticle: sign clash and missing index
  CHECK_ERRC(semialgebra_decompose(SignVector::over({2, 5}, 0b01), b), Errc::bad_element);
  CHECK_ERRC(semialgebra_decompose(SignVector::over({1, 2}, 0b10), b), Errc::bad_element);
}

TEST_CASE("refinement respects the enumeration budget") {
  std::vector<std::uint32_t> wide(25);
  for (std::uint32_t i = 0; i < 25; ++i) wide[i] = i + 1;
  CHECK_ERRC(FreeElement::full({1}).refined(wide), Errc::budget_exceeded);
}

}  // TEST_SUITE
