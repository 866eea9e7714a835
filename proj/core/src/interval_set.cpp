#include "mal/interval_set.hpp"

#include <algorithm>

#include "mal/error.hpp"

namespace mal {

namespace {
const QuadScalar kZero{Rational(0), Rational(0)};
const QuadScalar kOne{Rational(1), Rational(0)};
}  // namespace

IntervalSet IntervalSet::full() { return of(kZero, kOne); }

IntervalSet IntervalSet::of(const QuadScalar& lo, const QuadScalar& hi) {
  if (quad_cmp(lo, hi) >= 0) return empty();  // degenerate or reversed
  return from_intervals({Interval{lo, hi}});
}

IntervalSet IntervalSet::from_intervals(std::vector<Interval> ivs) {
  std::vector<Interval> kept;
  for (auto& iv : ivs) {
    int c = quad_cmp(iv.lo, iv.hi);
    if (c > 0) fail(Errc::bad_element, "interval with lo > hi");
    if (c == 0) continue;  // empty
    if (quad_sign(iv.lo) < 0 || quad_cmp(iv.hi, kOne) > 0)
      fail(Errc::bad_element, "interval outside [0,1]");
    kept.push_back(std::move(iv));
  }
  std::sort(kept.begin(), kept.end(),
            [](const Interval& a, const Interval& b) { return quad_lt(a.lo, b.lo); });
  IntervalSet out;
  for (auto& iv : kept) {
    if (!out.ivs_.empty() && quad_le(iv.lo, out.ivs_.back().hi)) {
      // overlapping or adjacent: extend
      if (quad_lt(out.ivs_.back().hi, iv.hi)) out.ivs_.back().hi = iv.hi;
    } else {
      out.ivs_.push_back(iv);
    }
  }
  return out;
}

IntervalSet IntervalSet::from_dyadic(const DyadicSet& d) {
  std::vector<Interval> ivs;
  BigInt den = pow2(d.level());
  for (auto [lo, hi] : d.runs()) {
    ivs.push_back(Interval{QuadScalar(Rational(BigInt(lo), den)),
                           QuadScalar(Rational(BigInt(hi), den))});
  }
  return from_intervals(std::move(ivs));
}

QuadScalar IntervalSet::lebesgue() const {
  QuadScalar total = kZero;
  for (const auto& iv : ivs_) total = quad_add(total, quad_sub(iv.hi, iv.lo));
  return total;
}

bool IntervalSet::contains_point(const QuadScalar& x) const {
  for (const auto& iv : ivs_)
    if (quad_le(iv.lo, x) && quad_lt(x, iv.hi)) return true;
  return false;
}

IntervalSet meet(const IntervalSet& x, const IntervalSet& y) {
  std::vector<Interval> out;
  auto i = x.ivs_.begin();
  auto j = y.ivs_.begin();
  while (i != x.ivs_.end() && j != y.ivs_.end()) {
    QuadScalar lo = quad_lt(i->lo, j->lo) ? j->lo : i->lo;
    QuadScalar hi = quad_lt(i->hi, j->hi) ? i->hi : j->hi;
    if (quad_lt(lo, hi)) out.push_back(Interval{lo, hi});
    if (quad_lt(i->hi, j->hi))
      ++i;
    else
      ++j;
  }
  return IntervalSet::from_intervals(std::move(out));
}

IntervalSet join(const IntervalSet& x, const IntervalSet& y) {
  std::vector<Interval> all(x.ivs_);
  all.insert(all.end(), y.ivs_.begin(), y.ivs_.end());
  return IntervalSet::from_intervals(std::move(all));
}

IntervalSet complement_full(const IntervalSet& x) {
  std::vector<Interval> out;
  QuadScalar cursor = kZero;
  for (const auto& iv : x.intervals()) {
    if (quad_lt(cursor, iv.lo)) out.push_back(Interval{cursor, iv.lo});
    cursor = iv.hi;
  }
  if (quad_lt(cursor, kOne)) out.push_back(Interval{cursor, kOne});
  return IntervalSet::from_intervals(std::move(out));
}

IntervalSet diff(const IntervalSet& x, const IntervalSet& y) {
  return meet(x, complement_full(y));
}

bool leq(const IntervalSet& x, const IntervalSet& y) { return meet(x, y) == x; }

bool operator==(const IntervalSet& x, const IntervalSet& y) {
  if (x.ivs_.size() != y.ivs_.size()) return false;
  for (std::size_t i = 0; i < x.ivs_.size(); ++i)
    if (!(x.ivs_[i].lo == y.ivs_[i].lo && x.ivs_[i].hi == y.ivs_[i].hi)) return false;
  return true;
}

}  // namespace mal
