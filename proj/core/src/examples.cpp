#include "mal/examples.hpp"

#include <bit>

#include "mal/budget.hpp"
#include "mal/error.hpp"

namespace mal {

namespace {

constexpr std::uint64_t kEvenCells = 0x5555555555555555ULL;

QuadScalar alpha() { return irrational_cut_point(); }

}  // namespace

DyadicSet usual_generator(std::uint32_t n) {
  if (n == 0 || n > DyadicSet::kMaxLevel)
    fail(Errc::bad_element, "digit index outside the representable levels");
  std::size_t words = ((std::size_t{1} << n) + 63) / 64;
  return DyadicSet::from_words(n, std::vector<std::uint64_t>(words, kEvenCells));
}

DyadicSet usual_on(std::uint32_t host_level, std::uint64_t host_cell, std::uint32_t k) {
  return meet(usual_generator(host_level + k), DyadicSet::cell(host_level, host_cell));
}

DyadicCell enumerated_cell(std::uint64_t position) {
  if (position == 0) fail(Errc::bad_element, "cell positions start at 1");
  std::uint32_t level = static_cast<std::uint32_t>(std::bit_width(position) - 1);
  return {level, position - (std::uint64_t{1} << level)};
}

std::uint64_t cell_position(std::uint32_t level, std::uint64_t index) {
  return (std::uint64_t{1} << level) + index;
}

Dyadic coarsest_dyadic_between(const QuadScalar& lo, const QuadScalar& hi) {
  if (quad_cmp(lo, hi) >= 0) fail(Errc::bad_element, "empty interval has no interior point");
  QuadScalar two(Rational(2));
  QuadScalar lo_scaled = lo;
  QuadScalar hi_scaled = hi;
  for (std::uint32_t m = 0; m <= 64; ++m) {
    BigInt k = quad_floor(lo_scaled) + 1;
    QuadScalar q{Rational(k)};
    if (quad_lt(lo_scaled, q) && quad_lt(q, hi_scaled)) return Dyadic(k, m);
    lo_scaled = quad_mul(lo_scaled, two);
    hi_scaled = quad_mul(hi_scaled, two);
  }
  fail(Errc::infeasible, "no dyadic point of denominator up to 2^64 separates the endpoints");
}

Family usual_family(std::uint32_t n) {
  std::vector<AlgebraElement> gens;
  gens.reserve(n);
  for (std::uint32_t i = 1; i <= n; ++i) gens.push_back(usual_generator(i));
  return Family::on(DyadicSet::full(), std::move(gens));
}

Family interleaved_family(std::uint32_t n) {
  std::vector<AlgebraElement> gens;
  gens.reserve(n);
  for (std::uint32_t i = 1; i <= n; ++i) {
    std::uint32_t k = (i + 1) / 2;
    gens.push_back(usual_on(1, (i + 1) % 2, k));
  }
  return Family::on(DyadicSet::full(), std::move(gens));
}

Family nonvanishing_family(std::uint32_t n) {
  std::vector<AlgebraElement> gens;
  gens.reserve(n);
  DyadicSet left = DyadicSet::cell(1, 0);
  for (std::uint32_t i = 1; i <= n; ++i) {
    DyadicSet right_part = usual_on(1, 1, i);
    if (i % 2 == 1) {
      gens.push_back(join(left, right_part));
    } else {
      gens.push_back(join(usual_on(1, 0, i / 2), right_part));
    }
  }
  return Family::on(DyadicSet::full(), std::move(gens));
}

Family incomplete_family(std::uint32_t n) {
  std::vector<AlgebraElement> gens;
  gens.reserve(n);
  for (std::uint32_t i = 1; i <= n; ++i) gens.push_back(usual_generator(i + 1));
  return Family::on(DyadicSet::full(), std::move(gens));
}

Family digit_family(std::uint32_t bits) {
  if (bits == 0 || bits > 6) fail(Errc::bad_element, "digit family supports 1..6 label bits");
  std::uint32_t universe = std::uint32_t{1} << bits;
  std::vector<AlgebraElement> gens;
  gens.reserve(bits);
  for (std::uint32_t n = 1; n <= bits; ++n) {
    FiniteSubset r = FiniteSubset::empty(universe);
    for (std::uint32_t p = 0; p < universe; ++p)
      if ((p >> (bits - n)) & 1) r.bits |= std::uint64_t{1} << p;
    gens.push_back(r);
  }
  return Family::on(FiniteSubset::full(universe), std::move(gens));
}

Family mixed_family(std::uint32_t n, std::uint32_t points) {
  if (points == 0 || points > 64) fail(Errc::bad_element, "point universe must be 1..64");
  std::vector<AlgebraElement> gens;
  gens.reserve(n);
  for (std::uint32_t i = 1; i <= n; ++i)
    gens.push_back(PairElement::of(usual_generator(i),
                                   FiniteSubset::singleton(points, (i - 1) % points)));
  AlgebraElement unit = PairElement::of(DyadicSet::full(), FiniteSubset::full(points));
  return Family::on(std::move(unit), std::move(gens));
}

std::vector<Interval> cut_generation(std::uint32_t n) {
  check_budget(std::uint64_t{1} << n, "cut generation subdivision");
  std::vector<Interval> gen{{alpha(), QuadScalar(Rational(1))}};
  for (std::uint32_t g = 0; g < n; ++g) {
    std::vector<Interval> next;
    next.reserve(gen.size() * 2);
    for (const auto& iv : gen) {
      QuadScalar q(coarsest_dyadic_between(iv.lo, iv.hi).to_rational());
      next.push_back({iv.lo, q});
      next.push_back({q, iv.hi});
    }
    gen = std::move(next);
  }
  return gen;
}

IntervalSet cut_generator(std::uint32_t n) {
  std::vector<Interval> gen = cut_generation(n);
  std::vector<Interval> ivs{{QuadScalar(Rational(0)), alpha()}};
  for (std::size_t j = 0; j < gen.size(); j += 2) ivs.push_back(gen[j]);
  return IntervalSet::from_intervals(std::move(ivs));
}

Family cut_family(std::uint32_t n) {
  std::vector<AlgebraElement> gens;
  gens.reserve(n);
  for (std::uint32_t i = 1; i <= n; ++i) gens.push_back(cut_generator(i));
  return Family::on(IntervalSet::full(), std::move(gens));
}

DyadicSet cut_lower_bound_refuter(std::uint32_t stage, const DyadicSet& z) {
  IntervalSet zi = IntervalSet::from_dyadic(z);
  for (std::uint32_t n = 1; n <= stage; ++n)
    if (!leq(zi, cut_generator(n)))
      fail(Errc::bad_element, "candidate is not a lower bound at stage " + std::to_string(n));
  IntervalSet below = meet(zi, IntervalSet::of(QuadScalar(Rational(0)), alpha()));
  QuadScalar sup = below.is_empty() ? QuadScalar(Rational(0)) : below.intervals().back().hi;
  if (quad_cmp(sup, alpha()) >= 0) {
    // z covers a right neighborhood of the cut, so a deep enough generation
    // defeats it: report that stage instead of pretending z survives. Only the
    // first interval of each generation matters here, so track its right
    // endpoint directly instead of materializing whole generations.
    QuadScalar d;
    for (const auto& iv : zi.intervals())
      if (quad_lt(iv.lo, alpha()) && quad_lt(alpha(), iv.hi)) {
        d = iv.hi;
        break;
      }
    QuadScalar e(Rational(1));
    for (std::uint32_t m = 1; m <= stage + 192; ++m) {
      e = QuadScalar(coarsest_dyadic_between(alpha(), e).to_rational());
      if (quad_lt(e, d))
        fail(Errc::bad_element,
             "candidate exceeds the cut and is defeated at stage " + std::to_string(m));
    }
    fail(Errc::infeasible, "defeating stage not found within the search horizon");
  }
  Dyadic q = coarsest_dyadic_between(sup, alpha());
  // q = num / 2^exp, so [0, q) spans num cells at level exp.
  return join(z, DyadicSet::interval(q.exp, 0, q.num.convert_to<std::uint64_t>()));
}

std::vector<DyadicSet> non_sigma_chain(std::uint32_t m) {
  if (m == 0 || m > 20) fail(Errc::bad_element, "chain length must be 1..20");
  std::vector<DyadicSet> chain;
  chain.reserve(m);
  DyadicSet acc = DyadicSet::full();
  for (std::uint64_t n = 1; n <= m; ++n) {
    DyadicCell host = enumerated_cell(n);
    std::uint64_t first_sub = host.index << (n + 1 - host.level);
    acc = diff(acc, DyadicSet::cell(static_cast<std::uint32_t>(n + 1), first_sub));
    chain.push_back(acc);
  }
  return chain;
}

Rational non_sigma_ledger_bound(std::uint32_t m) {
  Rational total(0);
  for (std::uint32_t n = 1; n <= m; ++n)
    total += Rational(BigInt(1), pow2(n + 1));
  return Rational(1) - total;
}

ChainRefutation non_sigma_refuter(const DyadicSet& z) {
  if (z.is_empty()) fail(Errc::bad_element, "only a nonzero candidate can bound the chain");
  std::uint64_t cell = z.runs().front().first;
  std::uint64_t t = cell_position(z.level(), cell);
  ChainRefutation out;
  out.t = t;
  out.witness_level = static_cast<std::uint32_t>(t + 1);
  out.witness_cell = BigInt(cell) << static_cast<unsigned>(t + 1 - z.level());
  return out;
}

Family example_family(const std::string& name, const ExampleParams& params) {
  if (name == "usual") return usual_family(params.n);
  if (name == "interleaved") return interleaved_family(params.n);
  if (name == "nonvanishing") return nonvanishing_family(params.n);
  if (name == "incomplete") return incomplete_family(params.n);
  if (name == "digit") return digit_family(params.n);
  if (name == "mixed") return mixed_family(params.n, params.points);
  if (name == "cut") return cut_family(params.n);
  if (name == "glued") {
    std::vector<AlgebraElement> left, right;
    for (std::uint32_t k = 1; k <= params.n; ++k) {
      left.push_back(usual_on(1, 0, k));
      right.push_back(usual_on(1, 1, k));
    }
    Family a = Family::on(DyadicSet::cell(1, 0), std::move(left));
    Family b = Family::on(DyadicSet::cell(1, 1), std::move(right));
    return glue(a, b);
  }
  fail(Errc::parse_error, "unknown example family: " + name);
}

std::vector<std::string> example_names() {
  return {"usual", "interleaved", "nonvanishing", "incomplete",
          "digit", "mixed",       "cut",          "glued"};
}

}  // namespace mal
