#include "mal/haar.hpp"

#include <bit>

#include "mal/budget.hpp"
#include "mal/error.hpp"
#include "mal/integrate.hpp"

namespace mal {

HaarIndex::HaarIndex(std::uint32_t n_, std::uint64_t k_) : n(n_), k(k_) {
  if (n < 2 || n > 63) fail(Errc::unknown_index, "haar level must lie in 2..63");
  if (k < 1 || k > (std::uint64_t{1} << (n - 1))) fail(Errc::unknown_index, "haar offset out of range for its level");
}

HaarIndex HaarIndex::from_linear(std::uint64_t i) {
  if (i < 3) fail(Errc::unknown_index, "base indices 1 and 2 are not of the form (n, k)");
  std::uint32_t n = static_cast<std::uint32_t>(std::bit_width(i - 1));
  return HaarIndex(n, i - (std::uint64_t{1} << (n - 1)));
}

std::vector<int> HaarIndex::signs() const {
  std::vector<int> out;
  out.reserve(n - 1);
  for (std::uint32_t j = 1; j <= n - 1; ++j) {
    std::uint64_t digit = (k - 1) >> (n - 1 - j) & 1;  // most significant first
    out.push_back(digit == 0 ? 1 : -1);
  }
  return out;
}

StepElement haar_element(const AlgebraElement& e, const Family& fam, const HaarIndex& idx) {
  if (idx.n > fam.size()) fail(Errc::unknown_index, "family has too few generators for this haar index");
  AlgebraElement particle = e;
  const std::vector<int> eps = idx.signs();
  for (std::uint32_t j = 1; j <= idx.n - 1; ++j) {
    const AlgebraElement& g = fam.generator(j);
    particle = meet(particle, eps[j - 1] > 0 ? g : diff(e, g));
  }
  const AlgebraElement& top = fam.generator(idx.n);
  std::vector<StepTerm> terms;
  terms.push_back({Rational(1), meet(particle, top)});
  terms.push_back({Rational(-1), meet(particle, diff(e, top))});
  return StepElement(e, std::move(terms));
}

StepElement haar_element(const AlgebraElement& e, const Family& fam, std::uint64_t linear_index) {
  if (linear_index == 0) fail(Errc::unknown_index, "haar indices start at 1");
  if (linear_index == 1) return constant_step(e, Rational(1));
  if (linear_index == 2) {
    if (fam.size() < 1) fail(Errc::unknown_index, "family has too few generators for this haar index");
    const AlgebraElement& g = fam.generator(1);
    std::vector<StepTerm> terms;
    terms.push_back({Rational(1), g});
    terms.push_back({Rational(-1), diff(e, g)});
    return StepElement(e, std::move(terms));
  }
  return haar_element(e, fam, HaarIndex::from_linear(linear_index));
}

Rational haar_inner(const StepElement& x, const StepElement& y, const Family& fam) {
  MeasureContext ctx(fam);
  return integrate_simple(step_mul(x, y), ctx).value;
}

HaarExpansion haar_expand(const StepElement& x, const Family& fam, std::uint32_t depth) {
  if (depth > fam.size()) fail(Errc::unknown_index, "expansion depth exceeds the generator count");
  const std::uint64_t count = std::uint64_t{1} << depth;
  check_budget(count, "order expansion");
  MeasureContext ctx(fam);
  std::vector<Rational> coeffs;
  coeffs.reserve(count);
  StepElement synthesis(x.unit());
  for (std::uint64_t i = 1; i <= count; ++i) {
    StepElement h = haar_element(x.unit(), fam, i);
    Rational denom = integrate_simple(step_mul(h, h), ctx).value;
    if (denom == 0) fail(Errc::bad_element, "supporting particle has measure zero: family defect");
    Rational a = integrate_simple(step_mul(x, h), ctx).value / denom;
    if (a != 0) synthesis = step_add(synthesis, step_scale(a, h));
    coeffs.push_back(std::move(a));
  }
  return {std::move(coeffs), step_sub(x, synthesis)};
}

StepElement haar_synthesize(const AlgebraElement& e, const Family& fam, const std::vector<Rational>& coeffs) {
  StepElement sum(e);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] == 0) continue;
    StepElement h = haar_element(e, fam, static_cast<std::uint64_t>(i) + 1);
    sum = step_add(sum, step_scale(coeffs[i], h));
  }
  return sum;
}

}  // namespace mal
