#include "mal/family.hpp"

#include <algorithm>
#include <random>

#include "mal/budget.hpp"
#include "mal/error.hpp"

namespace mal {

Family Family::on(AlgebraElement unit, std::vector<AlgebraElement> generators) {
  if (is_zero(unit)) fail(Errc::bad_element, "family unit must be nonzero");
  for (const auto& g : generators)
    if (!leq(g, unit)) fail(Errc::bad_element, "generator does not lie below the family unit");
  return Family{std::move(unit), std::move(generators)};
}

Family Family::of(std::vector<AlgebraElement> generators) {
  if (generators.empty())
    fail(Errc::bad_element, "cannot infer a carrier from an empty generator list");
  AlgebraElement unit = full_like(generators.front());
  return on(std::move(unit), std::move(generators));
}

const AlgebraElement& Family::generator(std::uint32_t index) const {
  if (index == 0 || index > generators.size())
    fail(Errc::unknown_index, "generator index " + std::to_string(index) + " outside 1.." +
                                  std::to_string(generators.size()));
  return generators[index - 1];
}

AlgebraElement particle(const Family& fam, const SignVector& sv) {
  AlgebraElement acc = fam.unit;
  for (std::size_t p = 0; p < sv.indices.size(); ++p) {
    const AlgebraElement& g = fam.generator(sv.indices[p]);
    acc = (sv.plus_mask >> p) & 1 ? meet(acc, g) : meet(acc, diff(fam.unit, g));
    if (is_zero(acc)) break;
  }
  return acc;
}

namespace {

// Depth-first sweep over sign prefixes; a zero prefix kills all its
// extensions, so it is reported directly as the witness.
bool sweep_particles(const Family& fam, std::uint32_t depth, std::uint32_t next,
                     const AlgebraElement& acc, std::uint64_t signs, R1Result& out) {
  if (next > depth) {
    ++out.checked;
    return true;
  }
  for (int s = 1; s >= 0; --s) {
    const AlgebraElement& g = fam.generator(next);
    AlgebraElement m = s ? meet(acc, g) : meet(acc, diff(fam.unit, g));
    std::uint64_t prefix = signs | (static_cast<std::uint64_t>(s) << (next - 1));
    if (is_zero(m)) {
      out.witness = SignVector::over(SignVector::all_plus(next).indices, prefix);
      return false;
    }
    if (!sweep_particles(fam, depth, next + 1, m, prefix, out)) return false;
  }
  return true;
}

}  // namespace

R1Result check_pre_rademacher(const Family& fam, std::uint32_t depth) {
  if (depth > fam.size())
    fail(Errc::unknown_index, "depth exceeds the number of generators");
  check_budget(std::uint64_t{1} << depth, "pre-Rademacher particle sweep");
  R1Result out;
  out.pass = sweep_particles(fam, depth, 1, fam.unit, 0, out);
  return out;
}

VanishingTrace vanishing_witness(const Family& fam, const SignVector& path) {
  VanishingTrace tr;
  tr.path = path;
  AlgebraElement acc = fam.unit;
  for (std::size_t p = 0; p < path.indices.size(); ++p) {
    const AlgebraElement& g = fam.generator(path.indices[p]);
    acc = (path.plus_mask >> p) & 1 ? meet(acc, g) : meet(acc, diff(fam.unit, g));
    tr.measures.push_back(lebesgue(acc));
  }
  // Decrement-halving certificate: when every decrement is at most half the
  // previous one, the remaining tail is dominated by the last decrement.
  const auto& m = tr.measures;
  if (m.size() >= 3) {
    bool halving = true;
    for (std::size_t i = 2; i < m.size() && halving; ++i) {
      QuadScalar prev = quad_sub(m[i - 2], m[i - 1]);
      QuadScalar cur = quad_sub(m[i - 1], m[i]);
      if (quad_cmp(quad_add(cur, cur), prev) > 0) halving = false;
    }
    if (halving) {
      QuadScalar last_dec = quad_sub(m[m.size() - 2], m.back());
      QuadScalar floor = quad_sub(m.back(), last_dec);
      if (quad_sign(floor) > 0) tr.positive_floor = floor;
    }
  }
  return tr;
}

FiniteAlgebra atoms_at_depth(const Family& fam, std::uint32_t depth) {
  if (depth > fam.size())
    fail(Errc::unknown_index, "depth exceeds the number of generators");
  std::vector<AlgebraElement> gens(fam.generators.begin(), fam.generators.begin() + depth);
  return generate_subalgebra(fam.unit, gens);
}

bool generated_membership(const Family& fam, std::uint32_t depth, const AlgebraElement& target) {
  return atoms_at_depth(fam, depth).contains(target);
}

bool generator_independent(const Family& fam, std::uint32_t index, std::uint32_t depth) {
  const AlgebraElement& r = fam.generator(index);
  std::vector<AlgebraElement> others;
  for (std::uint32_t i = 1; i <= fam.size() && others.size() < depth; ++i)
    if (i != index) others.push_back(fam.generator(i));
  FiniteAlgebra alg = generate_subalgebra(fam.unit, others);
  return !alg.contains(r);
}

Family glue(const Family& a, const Family& b) {
  if (a.size() != b.size())
    fail(Errc::bad_element, "glued families must share one index set");
  if (!is_zero(meet(a.unit, b.unit))) fail(Errc::bad_element, "glued units must be disjoint");
  std::vector<AlgebraElement> gens;
  gens.reserve(a.size() + 1);
  for (std::uint32_t i = 1; i <= a.size(); ++i)
    gens.push_back(join(a.generator(i), b.generator(i)));
  gens.push_back(a.unit);
  return Family::on(join(a.unit, b.unit), std::move(gens));
}

AlgebraElement realize(const Family& fam, const FreeElement& x) {
  AlgebraElement acc = zero_like(fam.unit);
  for (std::uint64_t row : x.rows()) acc = join(acc, particle(fam, x.row_signs(row)));
  return acc;
}

FreeElement abstract_element(const Family& fam, const AlgebraElement& x, std::uint32_t depth) {
  check_budget(std::uint64_t{1} << depth, "particle cover scan");
  std::vector<std::uint64_t> rows;
  SignVector sv = SignVector::all_plus(depth);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << depth); ++mask) {
    sv.plus_mask = mask;
    AlgebraElement p = particle(fam, sv);
    if (!is_zero(p) && leq(p, x)) rows.push_back(mask);
  }
  FreeElement out = FreeElement::of_rows(sv.indices, std::move(rows));
  if (!equal(realize(fam, out), x))
    fail(Errc::not_in_algebra, "element is not a union of particles at this depth");
  return out;
}

FreeElement transport(const Family& from, const Family& to, const FreeElement& x) {
  if (from.size() != to.size())
    fail(Errc::bad_element, "transport requires families over one index set");
  if (!x.indices().empty() && x.indices().back() > to.size())
    fail(Errc::unknown_index, "element mentions an index outside the family");
  return x;
}

bool PropertyReport::r2_flagged() const {
  return std::any_of(r2_paths.begin(), r2_paths.end(),
                     [](const VanishingTrace& t) { return t.positive_floor.has_value(); });
}

bool PropertyReport::r3_pass() const {
  return std::all_of(r3.begin(), r3.end(), [](const auto& e) { return e.second; });
}

Rational PropertyReport::r4_coverage() const {
  if (r4_probed == 0) return Rational(1);
  return Rational(r4_covered, r4_probed);
}

bool PropertyReport::all_pass() const {
  return r1_pass && !r2_flagged() && r3_pass() && r4_coverage() == 1;
}

namespace {

void probe_r4(const Family& fam, std::uint32_t depth, std::mt19937_64& rng,
              PropertyReport& rep) {
  std::vector<AlgebraElement> targets;
  for (const auto& g : fam.generators) targets.push_back(g);
  if (const auto* unit = std::get_if<DyadicSet>(&fam.unit)) {
    std::uint32_t lc = std::min<std::uint32_t>(depth, 6);
    for (std::uint64_t c = 0; c < (std::uint64_t{1} << lc); ++c) {
      DyadicSet t = meet(DyadicSet::cell(lc, c), *unit);
      if (!t.is_empty()) targets.push_back(t);
    }
    for (int i = 0; i < 16; ++i) {
      std::vector<std::uint64_t> words(((std::size_t{1} << lc) + 63) / 64);
      for (auto& w : words) w = rng();
      DyadicSet t = meet(DyadicSet::from_words(lc, std::move(words)), *unit);
      if (!t.is_empty()) targets.push_back(t);
    }
  } else if (const auto* unit = std::get_if<FiniteSubset>(&fam.unit)) {
    for (std::uint32_t p = 0; p < unit->universe; ++p)
      if (unit->test(p)) targets.push_back(FiniteSubset::singleton(unit->universe, p));
  }
  FiniteAlgebra alg = atoms_at_depth(fam, depth);
  rep.r4_probed = targets.size();
  for (const auto& t : targets)
    if (alg.contains(t)) ++rep.r4_covered;
}

}  // namespace

PropertyReport check_family(const Family& fam, std::uint32_t depth, std::uint64_t seed) {
  if (depth == 0 || depth > fam.size())
    fail(Errc::bad_element, "depth must be within 1..generator count");
  PropertyReport rep;
  rep.depth = depth;

  R1Result r1 = check_pre_rademacher(fam, depth);
  rep.r1_pass = r1.pass;
  rep.r1_witness = r1.witness;

  std::mt19937_64 rng(seed);
  if (algebra_kind(fam.unit) == "pair") {
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
    for (int i = 0; i < 4; ++i) {
      SignVector sv = SignVector::all_plus(depth);
      sv.plus_mask = rng() & ((std::uint64_t{1} << depth) - 1);
      paths.push_back(sv);
    }
    for (const auto& p : paths) rep.r2_paths.push_back(vanishing_witness(fam, p));
  }

  for (std::uint32_t i = 1; i <= std::min(fam.size(), depth); ++i)
    rep.r3.push_back({i, generator_independent(fam, i, depth)});

  probe_r4(fam, depth, rng, rep);
  rep.notes.push_back("certified to depth " + std::to_string(depth) +
                      "; infinite-family properties are probed, not proved");
  return rep;
}

}  // namespace mal
