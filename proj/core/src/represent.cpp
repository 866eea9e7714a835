#include "mal/represent.hpp"

#include <algorithm>
#include <bit>

#include "mal/budget.hpp"
#include "mal/error.hpp"
#include "mal/free_element.hpp"

namespace mal {

namespace {

Family derived_family(const std::vector<SignedFragment>& system) {
  if (system.empty()) fail(Errc::bad_element, "empty system");
  const AlgebraElement& e = system.front().unit();
  std::vector<AlgebraElement> gens;
  gens.reserve(system.size());
  for (const auto& r : system) {
    if (!equal(r.unit(), e)) fail(Errc::incompatible_algebra, "system members carry different units");
    gens.push_back(r.plus_part());
  }
  return Family::on(e, std::move(gens));
}

}  // namespace

bool ConditionReport::traces_pass() const {
  return std::none_of(traces.begin(), traces.end(),
                      [](const VanishingTrace& t) { return t.positive_floor.has_value(); });
}

bool ConditionReport::minimality_pass() const {
  return std::all_of(minimality.begin(), minimality.end(), [](const auto& e) { return e.second; });
}

bool ConditionReport::all_pass() const {
  return abs_is_unit && meets_nonzero.pass && traces_pass() && minimality_pass();
}

ConditionReport verify_representation_conditions(const std::vector<SignedFragment>& system,
                                                 std::uint32_t depth) {
  if (depth == 0 || depth > system.size())
    fail(Errc::bad_element, "depth must be within 1..system size");
  Family fam = derived_family(system);
  const AlgebraElement& e = fam.unit;

  ConditionReport rep;
  rep.depth = depth;

  rep.abs_is_unit = true;
  const StepElement one = constant_step(e, Rational(1));
  for (const auto& r : system)
    if (step_abs(r.element()) != one) {
      rep.abs_is_unit = false;
      break;
    }

  rep.meets_nonzero = check_pre_rademacher(fam, depth);

  if (algebra_kind(e) == "pair") {
    rep.notes.push_back("measure traces skipped: pair carrier has no scalar measure");
  } else {
    std::vector<SignVector> paths;
    paths.push_back(SignVector::all_plus(depth));
    paths.push_back(SignVector::all_minus(depth));
    std::vector<std::uint32_t> odd, even;
    for (std::uint32_t i = 1; i <= fam.size() && odd.size() < depth; i += 2) odd.push_back(i);
    for (std::uint32_t i = 2; i <= fam.size() && even.size() < depth; i += 2) even.push_back(i);
    if (odd.size() >= 2)
      paths.push_back(SignVector::over(odd, ~std::uint64_t{0} >> (64 - odd.size())));
    if (even.size() >= 2)
      paths.push_back(SignVector::over(even, ~std::uint64_t{0} >> (64 - even.size())));
    for (const auto& p : paths) rep.traces.push_back(vanishing_witness(fam, p));
  }

  for (std::uint32_t i = 1; i <= std::min(fam.size(), depth); ++i)
    rep.minimality.push_back({i, generator_independent(fam, i, depth)});

  rep.notes.push_back("certified to depth " + std::to_string(depth) +
                      "; the infinite-depth conditions are probed, not proved");
  return rep;
}

Representation build_representation(const std::vector<SignedFragment>& system, std::uint32_t depth) {
  ConditionReport conditions = verify_representation_conditions(system, depth);
  if (!conditions.abs_is_unit)
    fail(Errc::bad_element, "a system member does not have the unit as its absolute value");
  if (!conditions.meets_nonzero.pass)
    fail(Errc::bad_element, "a depth sign meet vanishes: no uniform outcome space");

  Family fam = derived_family(system);
  const std::uint64_t count = std::uint64_t{1} << depth;
  check_budget(count, "representation outcomes");

  Representation rep;
  rep.unit = fam.unit;
  rep.space.depth = depth;
  rep.space.outcomes.reserve(count);
  rep.space.probabilities.reserve(count);
  rep.particles.reserve(count);
  for (std::uint64_t s = 0; s < count; ++s) {
    std::string name(depth, '+');
    AlgebraElement p = fam.unit;
    for (std::uint32_t j = 0; j < depth; ++j) {
      bool minus = (s >> (depth - 1 - j)) & 1;
      if (minus) name[j] = '-';
      const AlgebraElement& g = fam.generator(j + 1);
      p = meet(p, minus ? diff(fam.unit, g) : g);
    }
    rep.space.outcomes.push_back(std::move(name));
    rep.space.probabilities.push_back(Dyadic(BigInt(1), depth));
    rep.particles.push_back(std::move(p));
  }
  rep.space.variables.assign(depth, std::vector<int>(count, 1));
  for (std::uint32_t i = 0; i < depth; ++i)
    for (std::uint64_t s = 0; s < count; ++s)
      rep.space.variables[i][s] = rep.space.outcomes[s][i] == '+' ? 1 : -1;
  return rep;
}

std::vector<Rational> representation_transport(const Representation& rep, const StepElement& x) {
  if (!equal(x.unit(), rep.unit)) fail(Errc::incompatible_algebra, "element unit differs from the representation unit");
  std::vector<Rational> values;
  values.reserve(rep.particles.size());
  for (const AlgebraElement& p : rep.particles) {
    Rational v(0);
    for (const auto& t : x.terms()) {
      if (leq(p, t.fragment)) {
        v = t.coeff;
        break;
      }
      if (!is_zero(meet(p, t.fragment)))
        fail(Errc::not_in_algebra, "element does not live on the outcome particles");
    }
    values.push_back(std::move(v));
  }
  return values;
}

IndependenceCertificate independence_certificate(const FiniteProbSpace& space, std::uint32_t max_order) {
  const std::uint32_t n = space.depth;
  if (n == 0 || n > 63) fail(Errc::bad_element, "space depth out of range");
  if (space.outcomes.size() != space.probabilities.size())
    fail(Errc::bad_element, "outcome and probability tables disagree");

  BigInt planned(0);
  for (std::uint32_t s = 0; s <= std::min(max_order, n); ++s) {
    // C(n, s) * 2^s sign cylinders over the s-subsets
    BigInt binom(1);
    for (std::uint32_t t = 0; t < s; ++t) binom = binom * (n - t) / (t + 1);
    planned += binom * pow2(s);
  }
  if (planned > BigInt(enumeration_budget()))
    fail(Errc::budget_exceeded, "cylinder sweep would exceed the enumeration budget");
  check_budget(planned.convert_to<std::uint64_t>(), "independence cylinders");

  IndependenceCertificate cert;
  cert.pass = true;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::uint32_t order = static_cast<std::uint32_t>(std::popcount(mask));
    if (order > max_order) continue;
    std::vector<std::uint32_t> positions;
    for (std::uint32_t j = 0; j < n; ++j)
      if ((mask >> j) & 1) positions.push_back(j);
    const Rational target = make_rational(BigInt(1), pow2(order));
    for (std::uint64_t theta = 0; theta < (std::uint64_t{1} << order); ++theta) {
      Rational prob(0);
      for (std::size_t o = 0; o < space.outcomes.size(); ++o) {
        bool match = true;
        for (std::uint32_t p = 0; p < order && match; ++p) {
          char want = (theta >> p) & 1 ? '-' : '+';
          match = space.outcomes[o][positions[p]] == want;
        }
        if (match) prob += space.probabilities[o].to_rational();
      }
      ++cert.cylinders_checked;
      if (prob != target) cert.pass = false;
    }
  }
  return cert;
}

}  // namespace mal
