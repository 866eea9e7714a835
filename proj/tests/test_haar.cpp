#include <bit>
#include <random>
#include <vector>

#include "doctest.h"
#include "mal/error.hpp"
#include "mal/examples.hpp"
#include "mal/haar.hpp"
#include "mal/step.hpp"
#include "oracle.hpp"

using namespace mal;

namespace {

// classical Haar step values (+1 left half, -1 right half of one dyadic
// block) on the 2^level grid
std::vector<Rational> classical_values(std::uint64_t i, std::uint32_t level) {
  std::vector<Rational> v(std::size_t{1} << level, Rational(0));
  if (i == 1) {
    for (auto& x : v) x = Rational(1);
    return v;
  }
  std::uint32_t n = i == 2 ? 1 : static_cast<std::uint32_t>(std::bit_width(i - 1));
  std::uint64_t k = i == 2 ? 1 : i - (std::uint64_t{1} << (n - 1));
  std::uint64_t width = std::uint64_t{1} << (level - (n - 1));
  std::uint64_t start = (k - 1) * width;
  for (std::uint64_t c = start; c < start + width / 2; ++c) v[c] = Rational(1);
  for (std::uint64_t c = start + width / 2; c < start + width; ++c) v[c] = Rational(-1);
  return v;
}

}  // namespace

TEST_SUITE("haar") {

TEST_CASE("index arithmetic") {
  CHECK(HaarIndex::from_linear(3).n == 2);
  CHECK(HaarIndex::from_linear(3).k == 1);
  CHECK(HaarIndex::from_linear(4).k == 2);
  CHECK(HaarIndex::from_linear(5).n == 3);
  CHECK(HaarIndex::from_linear(5).k == 1);
  CHECK(HaarIndex::from_linear(8).k == 4);
  CHECK(HaarIndex::from_linear(9).n == 4);
  for (std::uint64_t i = 3; i <= 200; ++i) CHECK(HaarIndex::from_linear(i).linear() == i);

  CHECK(HaarIndex(3, 1).signs() == std::vector<int>{1, 1});
  CHECK(HaarIndex(3, 2).signs() == std::vector<int>{1, -1});
  CHECK(HaarIndex(3, 3).signs() == std::vector<int>{-1, 1});
  CHECK(HaarIndex(3, 4).signs() == std::vector<int>{-1, -1});

  CHECK_ERRC(HaarIndex(1, 1), Errc::unknown_index);
  CHECK_ERRC(HaarIndex(2, 0), Errc::unknown_index);
  CHECK_ERRC(HaarIndex(2, 3), Errc::unknown_index);
  CHECK_ERRC(HaarIndex::from_linear(2), Errc::unknown_index);
  CHECK_ERRC(HaarIndex::from_linear(0), Errc::unknown_index);
}

TEST_CASE("the usual family reproduces the classical elements") {
  Family fam = usual_family(4);
  AlgebraElement e = DyadicSet::full();
  for (std::uint64_t i = 1; i <= 16; ++i)
    CHECK(oracle::values_of_step(haar_element(e, fam, i), 4) == classical_values(i, 4));

  // the first nontrivial element, spelled out
  StepElement h3 = haar_element(e, fam, HaarIndex(2, 1));
  REQUIRE(h3.terms().size() == 2);
  CHECK(h3.terms()[0].coeff == Rational(-1));
  CHECK(equal(h3.terms()[0].fragment, AlgebraElement(DyadicSet::cell(2, 1))));
  CHECK(equal(h3.terms()[1].fragment, AlgebraElement(DyadicSet::cell(2, 0))));

  CHECK_ERRC(haar_element(e, fam, 0), Errc::unknown_index);
  CHECK_ERRC(haar_element(e, fam, HaarIndex(5, 1)), Errc::unknown_index);
}

TEST_CASE("inner products: norms and orthogonality") {
  Family fam = usual_family(3);
  AlgebraElement e = DyadicSet::full();
  std::vector<StepElement> h;
  for (std::uint64_t i = 1; i <= 8; ++i) h.push_back(haar_element(e, fam, i));

  CHECK(haar_inner(h[0], h[0], fam) == Rational(1));
  CHECK(haar_inner(h[1], h[1], fam) == Rational(1));
  for (std::uint64_t i = 3; i <= 8; ++i) {
    std::uint32_t n = HaarIndex::from_linear(i).n;
    CHECK(haar_inner(h[i - 1], h[i - 1], fam) == make_rational(1, pow2(n - 1)));
  }
  for (std::uint64_t i = 1; i <= 8; ++i)
    for (std::uint64_t j = 1; j <= 8; ++j)
      if (i != j) CHECK(haar_inner(h[i - 1], h[j - 1], fam) == Rational(0));
}

TEST_CASE("expansion of the base elements") {
  Family fam = usual_family(3);
  AlgebraElement e = DyadicSet::full();

  HaarExpansion unit = haar_expand(constant_step(e, Rational(1)), fam, 3);
  REQUIRE(unit.coefficients.size() == 8);
  CHECK(unit.coefficients[0] == Rational(1));
  for (std::size_t i = 1; i < 8; ++i) CHECK(unit.coefficients[i] == Rational(0));
  CHECK(unit.residual.is_zero());

  HaarExpansion ind = haar_expand(indicator_step(e, usual_generator(1)), fam, 3);
  CHECK(ind.coefficients[0] == Rational(1, 2));
  CHECK(ind.coefficients[1] == Rational(1, 2));
  for (std::size_t i = 2; i < 8; ++i) CHECK(ind.coefficients[i] == Rational(0));
  CHECK(ind.residual.is_zero());
}

TEST_CASE("exact reconstruction at the right depth") {
  std::mt19937_64 rng(71);
  Family fam = usual_family(5);
  AlgebraElement e = DyadicSet::full();
  for (int i = 0; i < 20; ++i) {
    StepElement x = oracle::step_of_values(5, oracle::random_step_values(rng, 5));
    HaarExpansion ex = haar_expand(x, fam, 5);
    REQUIRE(ex.coefficients.size() == 32);
    CHECK(ex.residual.is_zero());
    CHECK(haar_synthesize(e, fam, ex.coefficients) == x);
  }
}

TEST_CASE("too-fine inputs leave a residual, never an error") {
  Family fam = usual_family(4);
  AlgebraElement e = DyadicSet::full();
  StepElement fine = indicator_step(e, DyadicSet::cell(4, 0));
  HaarExpansion ex = haar_expand(fine, fam, 3);
  CHECK(!ex.residual.is_zero());
  // the synthesis is still the depth-3 part: expanding it again is stable
  StepElement synth = haar_synthesize(e, fam, ex.coefficients);
  HaarExpansion again = haar_expand(synth, fam, 3);
  CHECK(again.residual.is_zero());
  CHECK(again.coefficients == ex.coefficients);
}

TEST_CASE("synthesis separates coefficient vectors") {
  std::mt19937_64 rng(72);
  Family fam = usual_family(4);
  AlgebraElement e = DyadicSet::full();
  for (int i = 0; i < 20; ++i) {
    std::vector<Rational> a(16), b(16);
    for (auto& c : a) c = oracle::random_rational(rng, 4);
    for (auto& c : b) c = oracle::random_rational(rng, 4);
    if (a == b) continue;
    CHECK(haar_synthesize(e, fam, a) != haar_synthesize(e, fam, b));
    HaarExpansion ex = haar_expand(haar_synthesize(e, fam, a), fam, 4);
    CHECK(ex.coefficients == a);
    CHECK(ex.residual.is_zero());
  }
}

TEST_CASE("expansion depth is capped by the generator count") {
  Family fam = usual_family(3);
  StepElement x = constant_step(AlgebraElement(DyadicSet::full()), Rational(1));
  CHECK_ERRC(haar_expand(x, fam, 4), Errc::unknown_index);
}

TEST_CASE("a zero particle surfaces as a family defect") {
  // the (+,+) particle of the interleaved family is empty, so the element
  // at (3,1) is the zero step and its normalizing inner product vanishes
  Family fam = interleaved_family(3);
  StepElement x = constant_step(AlgebraElement(DyadicSet::full()), Rational(1));
  CHECK_ERRC(haar_expand(x, fam, 3), Errc::bad_element);
}

}  // TEST_SUITE
