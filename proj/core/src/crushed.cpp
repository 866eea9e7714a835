#include "mal/crushed.hpp"

#include <bit>

#include "mal/budget.hpp"
#include "mal/error.hpp"

namespace mal {

namespace {

Rational measure_of(const DyadicSet& s) { return s.lebesgue().to_rational(); }

Rational half_pow(std::uint32_t e) { return Rational(BigInt(1), pow2(e)); }

// Quarter rounds applied at explicit levels base+2, base+4, ...: needed when
// the start set's canonical level is coarser than the level its cells were
// picked at.
DyadicSet quarter_rounds(const DyadicSet& start, std::uint32_t base, std::uint32_t rounds) {
  if (rounds == 0) fail(Errc::bad_element, "a Cantor stage needs at least one round");
  if (base + 2 * rounds > DyadicSet::kMaxLevel)
    fail(Errc::infeasible, "Cantor stage would exceed the representable levels");
  DyadicSet s = start;
  for (std::uint32_t r = 1; r <= rounds; ++r)
    s = meet(s, usual_generator(base + 2 * r));
  return s;
}

// Smallest round count t >= min_rounds with mu(start cell)/2^t <= bound and
// the kept level within range.
std::uint32_t rounds_for(std::uint32_t base, std::uint32_t min_rounds, const Rational& start_measure,
                         const Rational& bound) {
  std::uint32_t t = min_rounds < 1 ? 1 : min_rounds;
  while (start_measure > bound * Rational(pow2(t))) {
    ++t;
    if (base + 2 * t > DyadicSet::kMaxLevel)
      fail(Errc::infeasible, "measure bound unreachable within the representable levels");
  }
  if (base + 2 * t > DyadicSet::kMaxLevel)
    fail(Errc::infeasible, "measure bound unreachable within the representable levels");
  return t;
}

// All aligned full cells of `s` at exactly the given level, left to right.
std::vector<std::uint64_t> full_cells_at(const DyadicSet& s, std::uint32_t level) {
  std::vector<std::uint64_t> out;
  std::uint32_t drop = s.level() - level;  // s.level() >= level required
  for (const auto& [lo, hi] : s.runs()) {
    std::uint64_t first = (lo + (std::uint64_t{1} << drop) - 1) >> drop;
    std::uint64_t last = hi >> drop;
    for (std::uint64_t c = first; c < last; ++c) out.push_back(c);
  }
  return out;
}

}  // namespace

DyadicSet quarter_stage(const DyadicSet& start, std::uint32_t rounds) {
  return quarter_rounds(start, start.level(), rounds);
}

std::optional<DyadicCell> coarsest_contained_cell(const DyadicSet& s) {
  if (s.is_empty()) return std::nullopt;
  std::optional<DyadicCell> best;
  for (const auto& [lo, hi] : s.runs()) {
    // Largest aligned power-of-two block inside [lo, hi): try the biggest
    // size fitting the run; if alignment rules it out, half of it always fits.
    std::uint64_t len = hi - lo;
    for (std::uint64_t b = std::uint64_t{1} << (std::bit_width(len) - 1); b >= 1; b >>= 1) {
      std::uint64_t start_cell = (lo + b - 1) & ~(b - 1);
      if (start_cell + b <= hi) {
        std::uint32_t shift = static_cast<std::uint32_t>(std::bit_width(b) - 1);
        std::uint32_t lev = s.level() - shift;
        std::uint64_t idx = start_cell >> shift;
        if (!best || lev < best->level || (lev == best->level && idx < best->index))
          best = DyadicCell{lev, idx};
        break;
      }
    }
  }
  return best;
}

CrushedStage crushed_extension_stage(const Rational& gamma, std::uint32_t stage) {
  if (gamma <= 0 || gamma >= 1) fail(Errc::bad_element, "target measure must lie in (0,1)");
  if (stage == 0 || stage > 12) fail(Errc::bad_element, "stage must be 1..12");

  CrushedStage st;
  st.stage = stage;
  st.gamma = gamma;

  std::uint32_t host_level_max = enumerated_cell(stage).level;
  DyadicSet used;  // every placed piece, both sides

  for (std::uint32_t n = 1; n <= stage; ++n) {
    DyadicCell host = enumerated_cell(n);
    // Enclosure: the cell of length 2^{-(host_level_max + n + 2)} hugging the
    // host's midpoint from the right. Distinct hosts have distinct midpoints
    // spaced at least 2^{-(host_level_max+1)} apart, so these never collide.
    std::uint32_t enc_level = host_level_max + n + 2;
    std::uint64_t enc_index = (2 * host.index + 1) << (enc_level - host.level - 1);
    DyadicSet enclosure = DyadicSet::cell(enc_level, enc_index);
    if (!leq(enclosure, DyadicSet::cell(host.level, host.index)) ||
        !meet(enclosure, used).is_empty())
      fail(Errc::infeasible, "enclosure collision in the crushed construction");

    std::uint32_t child_level = enc_level + 1;
    Rational child_measure = half_pow(child_level);
    std::uint32_t depth_rounds =
        child_level >= stage + 1 ? 1 : (stage + 1 - child_level + 1) / 2;

    std::uint32_t ta = rounds_for(child_level, depth_rounds, child_measure,
                                  gamma * half_pow(n + 1));
    DyadicSet a = quarter_rounds(DyadicSet::cell(child_level, 2 * enc_index), child_level, ta);
    std::uint32_t tb = rounds_for(child_level, depth_rounds, child_measure,
                                  (Rational(1) - gamma) * half_pow(n + 1));
    DyadicSet b =
        quarter_rounds(DyadicSet::cell(child_level, 2 * enc_index + 1), child_level, tb);

    st.a_sets.push_back(a);
    st.b_sets.push_back(b);
    used = join(used, join(a, b));
  }

  DyadicSet r0;
  for (const auto& a : st.a_sets) r0 = join(r0, a);

  // Coverage: give every level-k cell a piece of the A side. Each filler sits
  // inside its own cell and keeps at least half of its start cell free, so the
  // complement side keeps meeting every cell too.
  check_budget(std::uint64_t{1} << stage, "crushed coverage sweep");
  Rational filler_cap = gamma * half_pow(stage + 2);
  for (std::uint64_t c = 0; c < (std::uint64_t{1} << stage); ++c) {
    DyadicSet cell = DyadicSet::cell(stage, c);
    if (!meet(r0, cell).is_empty()) continue;
    auto spot = coarsest_contained_cell(diff(cell, used));
    if (!spot) fail(Errc::infeasible, "no room left for a coverage piece");
    std::uint32_t t = rounds_for(spot->level, 1, half_pow(spot->level), filler_cap);
    DyadicSet piece =
        quarter_rounds(DyadicSet::cell(spot->level, spot->index), spot->level, t);
    st.fillers.push_back(piece);
    r0 = join(r0, piece);
    used = join(used, piece);
  }

  // Top-up: batches of Cantor-stage pieces over the coarsest free cells until
  // the measure is within 2^{-k} of gamma, never overshooting.
  Rational tolerance = half_pow(stage);
  Rational remaining = gamma - measure_of(r0);
  std::uint32_t guard = 0;
  while (remaining >= tolerance) {
    if (++guard > 1000) fail(Errc::infeasible, "measure top-up failed to converge");
    DyadicSet free = complement_full(used);
    auto coarse = coarsest_contained_cell(free);
    if (!coarse) fail(Errc::infeasible, "no free space left for the measure top-up");
    std::uint32_t s = coarse->level;
    std::uint32_t t = rounds_for(s, 1, half_pow(s), remaining);
    Rational piece_measure = half_pow(s + t);
    std::vector<std::uint64_t> cells = full_cells_at(free, s);
    BigInt want = rational_floor(remaining / piece_measure);
    std::uint64_t count = want > BigInt(cells.size())
                              ? static_cast<std::uint64_t>(cells.size())
                              : want.convert_to<std::uint64_t>();
    if (count == 0) fail(Errc::infeasible, "no admissible top-up piece");
    cells.resize(count);
    DyadicSet start = DyadicSet::from_cells(s, cells);
    DyadicSet piece = quarter_rounds(start, s, t);
    st.fillers.push_back(piece);
    r0 = join(r0, piece);
    used = join(used, piece);
    remaining = gamma - measure_of(r0);
  }

  st.r0 = r0;
  return st;
}

Family crushed_extended_family(const CrushedStage& st) {
  std::vector<AlgebraElement> gens;
  gens.reserve(st.stage + 1);
  gens.push_back(st.r0);
  for (std::uint32_t i = 1; i <= st.stage; ++i) gens.push_back(usual_generator(i));
  return Family::on(DyadicSet::full(), std::move(gens));
}

CrushedReport verify_crushed_stage(const CrushedStage& st) {
  CrushedReport rep;
  rep.gamma_gap = Rational(0);

  // Disjointness: exact additivity of the measures over the union.
  Rational sum(0);
  DyadicSet all;
  auto absorb = [&](const DyadicSet& s) {
    sum += measure_of(s);
    all = join(all, s);
  };
  for (const auto& a : st.a_sets) absorb(a);
  for (const auto& b : st.b_sets) absorb(b);
  for (const auto& f : st.fillers) absorb(f);
  rep.sets_disjoint = sum == measure_of(all);

  rep.ledger_bounds = st.a_sets.size() == st.stage && st.b_sets.size() == st.stage;
  for (std::uint32_t n = 1; n <= st.stage && rep.ledger_bounds; ++n) {
    Rational ma = measure_of(st.a_sets[n - 1]);
    Rational mb = measure_of(st.b_sets[n - 1]);
    if (!(ma > 0 && ma <= st.gamma * half_pow(n))) rep.ledger_bounds = false;
    if (!(mb > 0 && mb <= (Rational(1) - st.gamma) * half_pow(n))) rep.ledger_bounds = false;
  }

  rep.stage_cantor = true;
  auto cantor_ok = [&](const DyadicSet& s) {
    auto c = coarsest_contained_cell(s);
    return c && c->level == s.level();
  };
  for (const auto& a : st.a_sets) rep.stage_cantor = rep.stage_cantor && cantor_ok(a);
  for (const auto& b : st.b_sets) rep.stage_cantor = rep.stage_cantor && cantor_ok(b);
  for (const auto& f : st.fillers) rep.stage_cantor = rep.stage_cantor && cantor_ok(f);

  rep.avoids_interval = true;
  for (std::uint32_t m = 1; m <= st.stage; ++m) {
    for (std::uint32_t j = 1; j <= m; ++j) {
      DyadicCell host = enumerated_cell(j);
      DyadicSet cell = DyadicSet::cell(host.level, host.index);
      if (diff(cell, st.a_sets[m - 1]).is_empty() || diff(cell, st.b_sets[m - 1]).is_empty())
        rep.avoids_interval = false;
    }
  }

  rep.two_sided = true;
  for (std::uint64_t c = 0; c < (std::uint64_t{1} << st.stage); ++c) {
    DyadicSet cell = DyadicSet::cell(st.stage, c);
    if (meet(st.r0, cell).is_empty() || diff(cell, st.r0).is_empty()) rep.two_sided = false;
  }

  rep.r0_measure = measure_of(st.r0);
  rep.gamma_gap = rep.r0_measure >= st.gamma ? rep.r0_measure - st.gamma
                                             : st.gamma - rep.r0_measure;
  rep.measure_close = rep.gamma_gap <= half_pow(st.stage);
  return rep;
}

}  // namespace mal
