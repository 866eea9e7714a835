#include "mal/step.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "mal/budget.hpp"
#include "mal/error.hpp"

namespace mal {

namespace {

void require_same_unit(const StepElement& x, const StepElement& y) {
  if (!equal(x.unit(), y.unit())) fail(Errc::incompatible_algebra, "step elements carry different units");
}

// f(a, b) pointwise on the common refinement of fragments.  The region
// outside both supports keeps the value f(0, 0), which must be zero for
// every kind routed through here.
template <typename F>
StepElement pointwise(const StepElement& x, const StepElement& y, F f) {
  require_same_unit(x, y);
  std::vector<StepTerm> out;
  const AlgebraElement sx = x.support();
  const AlgebraElement sy = y.support();
  for (const auto& tx : x.terms()) {
    for (const auto& ty : y.terms()) {
      AlgebraElement both = meet(tx.fragment, ty.fragment);
      if (!is_zero(both)) out.push_back({f(tx.coeff, ty.coeff), std::move(both)});
    }
    AlgebraElement only_x = diff(tx.fragment, sy);
    if (!is_zero(only_x)) out.push_back({f(tx.coeff, Rational(0)), std::move(only_x)});
  }
  for (const auto& ty : y.terms()) {
    AlgebraElement only_y = diff(ty.fragment, sx);
    if (!is_zero(only_y)) out.push_back({f(Rational(0), ty.coeff), std::move(only_y)});
  }
  return StepElement(x.unit(), std::move(out));
}

template <typename F>
StepElement remap(const StepElement& x, F f) {
  std::vector<StepTerm> out;
  out.reserve(x.terms().size());
  for (const auto& t : x.terms()) out.push_back({f(t.coeff), t.fragment});
  return StepElement(x.unit(), std::move(out));
}

}  // namespace

StepElement::StepElement(AlgebraElement unit) : unit_(std::move(unit)) {}

StepElement::StepElement(AlgebraElement unit, std::vector<StepTerm> terms) : unit_(std::move(unit)) {
  std::map<Rational, AlgebraElement> merged;
  for (auto& t : terms) {
    if (t.coeff == 0 || mal::is_zero(t.fragment)) continue;
    if (!leq(t.fragment, unit_)) fail(Errc::bad_element, "step fragment is not below the unit");
    auto it = merged.find(t.coeff);
    if (it == merged.end())
      merged.emplace(t.coeff, std::move(t.fragment));
    else
      it->second = join(it->second, t.fragment);
  }
  terms_.reserve(merged.size());
  for (auto& [coeff, fragment] : merged) terms_.push_back({coeff, std::move(fragment)});
  for (std::size_t i = 0; i < terms_.size(); ++i)
    for (std::size_t j = i + 1; j < terms_.size(); ++j)
      if (!mal::is_zero(meet(terms_[i].fragment, terms_[j].fragment)))
        fail(Errc::bad_element, "step fragments with distinct values overlap");
}

AlgebraElement StepElement::support() const {
  AlgebraElement s = zero_like(unit_);
  for (const auto& t : terms_) s = join(s, t.fragment);
  return s;
}

Rational StepElement::max_coeff() const { return terms_.empty() ? Rational(0) : terms_.back().coeff; }

Rational StepElement::min_coeff() const { return terms_.empty() ? Rational(0) : terms_.front().coeff; }

bool operator==(const StepElement& a, const StepElement& b) {
  if (!equal(a.unit_, b.unit_)) return false;
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (a.terms_[i].coeff != b.terms_[i].coeff) return false;
    if (!equal(a.terms_[i].fragment, b.terms_[i].fragment)) return false;
  }
  return true;
}

StepElement step_combine(StepKind kind, const StepElement& x, const StepElement& y) {
  switch (kind) {
    case StepKind::add:
      return pointwise(x, y, [](const Rational& a, const Rational& b) { return a + b; });
    case StepKind::meet:
      return pointwise(x, y, [](const Rational& a, const Rational& b) { return a < b ? a : b; });
    case StepKind::join:
      return pointwise(x, y, [](const Rational& a, const Rational& b) { return a < b ? b : a; });
    default:
      fail(Errc::bad_element, "this combine kind does not take two step elements");
  }
}

StepElement step_combine(StepKind kind, const StepElement& x, const Rational& scalar) {
  if (kind != StepKind::scalar_mul) fail(Errc::bad_element, "only scalar_mul takes a scalar operand");
  return remap(x, [&](const Rational& a) { return a * scalar; });
}

StepElement step_combine(StepKind kind, const StepElement& x) {
  if (kind != StepKind::abs) fail(Errc::bad_element, "only abs is unary");
  return remap(x, [](const Rational& a) { return a < 0 ? Rational(-a) : a; });
}

StepElement step_add(const StepElement& x, const StepElement& y) { return step_combine(StepKind::add, x, y); }

StepElement step_sub(const StepElement& x, const StepElement& y) { return step_add(x, step_neg(y)); }

StepElement step_scale(const Rational& scalar, const StepElement& x) {
  return step_combine(StepKind::scalar_mul, x, scalar);
}

StepElement step_neg(const StepElement& x) { return step_scale(Rational(-1), x); }

StepElement step_meet(const StepElement& x, const StepElement& y) { return step_combine(StepKind::meet, x, y); }

StepElement step_join(const StepElement& x, const StepElement& y) { return step_combine(StepKind::join, x, y); }

StepElement step_abs(const StepElement& x) { return step_combine(StepKind::abs, x); }

StepElement step_mul(const StepElement& x, const StepElement& y) {
  return pointwise(x, y, [](const Rational& a, const Rational& b) { return a * b; });
}

bool step_leq(const StepElement& x, const StepElement& y) { return step_sub(y, x).min_coeff() >= 0; }

StepElement step_restrict(const StepElement& x, const AlgebraElement& region) {
  std::vector<StepTerm> out;
  for (const auto& t : x.terms()) {
    AlgebraElement cut = meet(t.fragment, region);
    if (!is_zero(cut)) out.push_back({t.coeff, std::move(cut)});
  }
  return StepElement(x.unit(), std::move(out));
}

StepElement constant_step(const AlgebraElement& unit, const Rational& value) {
  std::vector<StepTerm> terms;
  terms.push_back({value, unit});
  return StepElement(unit, std::move(terms));
}

StepElement indicator_step(const AlgebraElement& unit, const AlgebraElement& fragment) {
  std::vector<StepTerm> terms;
  terms.push_back({Rational(1), fragment});
  return StepElement(unit, std::move(terms));
}

SignedFragment::SignedFragment(StepElement x) : elem_(std::move(x)) {
  if (!is_signed_fragment(elem_)) fail(Errc::bad_element, "coefficients of a signed fragment must be -1 or +1");
}

AlgebraElement SignedFragment::plus_part() const {
  for (const auto& t : elem_.terms())
    if (t.coeff == 1) return t.fragment;
  return zero_like(elem_.unit());
}

AlgebraElement SignedFragment::minus_part() const {
  for (const auto& t : elem_.terms())
    if (t.coeff == -1) return t.fragment;
  return zero_like(elem_.unit());
}

bool is_signed_fragment(const StepElement& x) {
  for (const auto& t : x.terms())
    if (t.coeff != 1 && t.coeff != -1) return false;
  return true;
}

SignedFragment fragment_product(const SignedFragment& x, const SignedFragment& y) {
  require_same_unit(x.element(), y.element());
  const AlgebraElement px = x.plus_part();
  const AlgebraElement nx = x.minus_part();
  const AlgebraElement py = y.plus_part();
  const AlgebraElement ny = y.minus_part();
  std::vector<StepTerm> terms;
  terms.push_back({Rational(1), join(meet(px, py), meet(nx, ny))});
  terms.push_back({Rational(-1), join(meet(px, ny), meet(nx, py))});
  return SignedFragment(StepElement(x.unit(), std::move(terms)));
}

std::vector<SignedFragment> rademacher_system(const AlgebraElement& e, const Family& fam) {
  std::vector<SignedFragment> out;
  out.reserve(fam.size());
  for (std::uint32_t i = 1; i <= fam.size(); ++i) {
    const AlgebraElement& g = fam.generator(i);
    if (!leq(g, e)) fail(Errc::bad_element, "family generator is not below the unit");
    std::vector<StepTerm> terms;
    terms.push_back({Rational(1), g});
    terms.push_back({Rational(-1), diff(e, g)});
    out.emplace_back(StepElement(e, std::move(terms)));
  }
  return out;
}

StepElement freudenthal_approx(const StepElement& x, std::uint64_t n) {
  if (n == 0) fail(Errc::bad_element, "approximation index must be positive");
  if (x.min_coeff() < 0) fail(Errc::bad_element, "approximation input must be nonnegative");
  std::vector<StepTerm> terms;
  terms.reserve(x.terms().size());
  for (const auto& t : x.terms())
    terms.push_back({make_rational(rational_floor(t.coeff * n), BigInt(n)), t.fragment});
  return StepElement(x.unit(), std::move(terms));
}

std::vector<StepElement> band_slices(const StepElement& x) {
  if (x.min_coeff() < 0) fail(Errc::bad_element, "band slicing needs a nonnegative input");
  if (x.is_zero()) return {};
  BigInt bands = rational_floor(x.max_coeff());
  if (Rational(bands) < x.max_coeff()) bands += 1;
  if (bands > BigInt(enumeration_budget())) fail(Errc::budget_exceeded, "band slicing would exceed the enumeration budget");
  check_budget(bands.convert_to<std::uint64_t>(), "band slicing");
  std::vector<std::vector<StepTerm>> grouped(bands.convert_to<std::size_t>());
  for (const auto& t : x.terms()) {
    BigInt m = rational_floor(t.coeff);
    if (Rational(m) < t.coeff) m += 1;  // band index: m-1 < value <= m
    grouped[m.convert_to<std::size_t>() - 1].push_back(t);
  }
  std::vector<StepElement> out;
  out.reserve(grouped.size());
  for (auto& g : grouped) out.emplace_back(x.unit(), std::move(g));
  return out;
}

}  // namespace mal
