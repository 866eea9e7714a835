#include "mal/integrate.hpp"

#include <utility>

#include "mal/budget.hpp"
#include "mal/error.hpp"

namespace mal {

namespace {

IntegralValue exact(Rational v) { return {v, v, v}; }

Rational half_pow(std::uint32_t e) { return Rational(1, pow2(e)); }

}  // namespace

MeasureContext::MeasureContext(Family fam) : fam_(std::move(fam)) {}

const std::vector<AlgebraElement>& MeasureContext::particles_at(std::uint32_t depth) {
  while (cache_.size() <= depth) {
    std::uint32_t d = static_cast<std::uint32_t>(cache_.size());
    check_budget(std::uint64_t{1} << d, "measure refinement");
    std::vector<AlgebraElement> parts;
    if (d == 0) {
      parts.push_back(fam_.unit);
    } else {
      // split every depth-(d-1) particle by the d-th generator
      const AlgebraElement& g = fam_.generator(d);
      const AlgebraElement co_g = diff(fam_.unit, g);
      for (const AlgebraElement& p : cache_[d - 1]) {
        AlgebraElement inside = meet(p, g);
        if (!is_zero(inside)) parts.push_back(std::move(inside));
        AlgebraElement outside = meet(p, co_g);
        if (!is_zero(outside)) parts.push_back(std::move(outside));
      }
    }
    cache_.push_back(std::move(parts));
  }
  return cache_[depth];
}

Rational MeasureContext::measure(const AlgebraElement& x) {
  if (is_zero(x)) return Rational(0);
  if (!leq(x, fam_.unit)) fail(Errc::bad_element, "measured fragment is not below the unit");
  std::uint32_t limit = fam_.size() < kMaxDepth ? fam_.size() : kMaxDepth;
  for (std::uint32_t d = 0; d <= limit; ++d) {
    bool decided = true;
    std::uint64_t contained = 0;
    for (const AlgebraElement& p : particles_at(d)) {
      if (leq(p, x)) {
        ++contained;
      } else if (!is_zero(meet(p, x))) {
        decided = false;
        break;
      }
    }
    if (decided) return Rational(contained) * half_pow(d);
  }
  fail(Errc::not_in_algebra, "fragment is not measurable at any probed depth");
}

IntegralValue integrate_simple(const StepElement& x, MeasureContext& ctx) {
  Rational sum(0);
  for (const auto& t : x.terms()) sum += t.coeff * ctx.measure(t.fragment);
  return exact(sum);
}

IntegralValue integrate_simple(const StepElement& x, const Family& fam) {
  MeasureContext ctx(fam);
  return integrate_simple(x, ctx);
}

IntegralValue integrate_simple(const LazySimple& x, MeasureContext& ctx, const Rational& tolerance) {
  if (!(tolerance > 0)) fail(Errc::bad_element, "tolerance must be positive");
  if (!x.term || !x.tail) fail(Errc::bad_element, "lazy element is missing its generators");
  Rational sum(0);
  Rational prev_tail;
  std::vector<AlgebraElement> seen;
  const Rational stop = tolerance / 2;
  for (std::uint64_t m = 1;; ++m) {
    check_budget(m, "lazy integration probe");
    StepTerm t = x.term(m);
    for (const AlgebraElement& f : seen)
      if (!is_zero(meet(f, t.fragment))) fail(Errc::bad_element, "lazy fragments are not pairwise disjoint");
    sum += t.coeff * ctx.measure(t.fragment);
    seen.push_back(std::move(t.fragment));
    Rational tail = x.tail(m);
    if (tail < 0) fail(Errc::bad_element, "tail bound is negative");
    if (m > 1 && tail > prev_tail) fail(Errc::bad_element, "tail bound is not nonincreasing");
    prev_tail = tail;
    if (tail <= stop) return {sum, sum - tail, sum + tail};
  }
}

IntegralValue integrate_simple(const LazySimple& x, const Family& fam, const Rational& tolerance) {
  MeasureContext ctx(fam);
  return integrate_simple(x, ctx, tolerance);
}

IntegralValue integrate_bounded(const StepElement& x, MeasureContext& ctx, const Rational& tolerance) {
  if (!(tolerance > 0)) fail(Errc::bad_element, "tolerance must be positive");
  const StepElement zero(x.unit());
  const StepElement pos = step_join(x, zero);
  const StepElement neg = step_join(step_neg(x), zero);
  const Rational target = integrate_simple(x, ctx).value;
  Rational prev;
  bool have_prev = false;
  std::uint64_t prev_n = 0;
  for (std::uint64_t n = 1;; n *= 2) {
    StepElement u = step_sub(freudenthal_approx(pos, n), freudenthal_approx(neg, n));
    Rational in = integrate_simple(u, ctx).value;
    Rational bound = make_rational(BigInt(1), BigInt(n));
    Rational gap = target - in;
    if (gap < 0) gap = -gap;
    if (gap > bound) fail(Errc::infeasible, "approximation drifted outside the a-priori bound");
    if (have_prev) {
      Rational step_gap = in - prev;
      if (step_gap < 0) step_gap = -step_gap;
      if (step_gap > make_rational(BigInt(1), BigInt(prev_n)))
        fail(Errc::infeasible, "grid estimates are not Cauchy at the declared rate");
    }
    if (bound <= tolerance) return exact(target);
    prev = in;
    prev_n = n;
    have_prev = true;
    check_budget(n, "bounded integration grid");
  }
}

IntegralValue integrate_bounded(const StepElement& x, const Family& fam, const Rational& tolerance) {
  MeasureContext ctx(fam);
  return integrate_bounded(x, ctx, tolerance);
}

IntegralValue l1_norm(const StepElement& x, MeasureContext& ctx) { return integrate_simple(step_abs(x), ctx); }

IntegralValue l1_norm(const StepElement& x, const Family& fam) {
  MeasureContext ctx(fam);
  return l1_norm(x, ctx);
}

}  // namespace mal
