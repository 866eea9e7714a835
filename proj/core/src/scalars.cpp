#include "mal/scalars.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "mal/error.hpp"

namespace mal {

BigInt pow2(std::uint32_t e) {
  BigInt r = 1;
  r <<= e;
  return r;
}

// --- Dyadic ------------------------------------------------------------------

Dyadic::Dyadic(BigInt n, std::uint32_t e) : num(std::move(n)), exp(e) {
  while (exp > 0 && num != 0 && (num & 1) == 0) {
    num >>= 1;
    --exp;
  }
  if (num == 0) exp = 0;
}

Rational Dyadic::to_rational() const { return Rational(num, pow2(exp)); }

Dyadic dyadic_add(const Dyadic& a, const Dyadic& b) {
  std::uint32_t e = std::max(a.exp, b.exp);
  return Dyadic((a.num << (e - a.exp)) + (b.num << (e - b.exp)), e);
}

Dyadic dyadic_sub(const Dyadic& a, const Dyadic& b) {
  std::uint32_t e = std::max(a.exp, b.exp);
  return Dyadic((a.num << (e - a.exp)) - (b.num << (e - b.exp)), e);
}

Dyadic dyadic_mul(const Dyadic& a, const Dyadic& b) {
  return Dyadic(a.num * b.num, a.exp + b.exp);
}

int dyadic_cmp(const Dyadic& a, const Dyadic& b) {
  std::uint32_t e = std::max(a.exp, b.exp);
  BigInt l = a.num << (e - a.exp);
  BigInt r = b.num << (e - b.exp);
  if (l < r) return -1;
  if (l > r) return 1;
  return 0;
}

std::string dyadic_text(const Dyadic& d) {
  std::ostringstream os;
  os << d.num << "/2^" << d.exp;
  return os.str();
}

Dyadic parse_dyadic(const std::string& text) {
  auto slash = text.find("/2^");
  if (slash == std::string::npos) fail(Errc::parse_error, "dyadic: expected num/2^exp: " + text);
  try {
    BigInt num(text.substr(0, slash));
    unsigned long exp = std::stoul(text.substr(slash + 3));
    if (exp > 1u << 24) fail(Errc::parse_error, "dyadic: exponent out of range");
    return Dyadic(num, static_cast<std::uint32_t>(exp));
  } catch (const Error&) {
    throw;
  } catch (...) {
    fail(Errc::parse_error, "dyadic: malformed value: " + text);
  }
}

// --- Rational ----------------------------------------------------------------

Rational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) fail(Errc::bad_element, "rational: zero denominator");
  if (den < 0) return Rational(-num, -den);
  return Rational(num, den);
}

BigInt rational_floor(const Rational& q) {
  BigInt n = numerator(q), d = denominator(q);
  BigInt t = n / d;
  if (n % d != 0 && n < 0) --t;
  return t;
}

std::string rational_text(const Rational& q) {
  std::ostringstream os;
  os << numerator(q);
  if (denominator(q) != 1) os << "/" << denominator(q);
  return os.str();
}

Rational parse_rational(const std::string& text) {
  if (text.empty()) fail(Errc::parse_error, "rational: empty value");
  try {
    auto slash = text.find('/');
    if (slash == std::string::npos) return Rational(BigInt(text));
    BigInt num(text.substr(0, slash));
    BigInt den(text.substr(slash + 1));
    return make_rational(num, den);
  } catch (const Error&) {
    throw;
  } catch (...) {
    fail(Errc::parse_error, "rational: malformed value: " + text);
  }
}

bool is_dyadic(const Rational& q) {
  BigInt d = denominator(q);
  while ((d & 1) == 0) d >>= 1;
  return d == 1;
}

Dyadic to_dyadic(const Rational& q) {
  BigInt d = denominator(q);
  std::uint32_t e = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++e;
  }
  if (d != 1) fail(Errc::bad_element, "not a dyadic rational: " + rational_text(q));
  return Dyadic(numerator(q), e);
}

std::string decimal_text(const Rational& q, unsigned digits) {
  BigInt n = numerator(q), d = denominator(q);
  bool neg = n < 0;
  if (neg) n = -n;
  BigInt scale = 1;
  for (unsigned i = 0; i < digits; ++i) scale *= 10;
  BigInt whole = n / d;
  BigInt frac = ((n % d) * scale) / d;
  std::ostringstream os;
  if (neg && (whole != 0 || frac != 0)) os << '-';
  os << whole;
  if (digits > 0) {
    std::string f = frac.str();
    os << '.' << std::string(digits - f.size(), '0') << f;
  }
  return os.str();
}

// --- QuadScalar ----------------------------------------------------------------

QuadScalar quad_add(const QuadScalar& x, const QuadScalar& y) { return {x.a + y.a, x.b + y.b}; }
QuadScalar quad_sub(const QuadScalar& x, const QuadScalar& y) { return {x.a - y.a, x.b - y.b}; }
QuadScalar quad_neg(const QuadScalar& x) { return {-x.a, -x.b}; }

QuadScalar quad_mul(const QuadScalar& x, const QuadScalar& y) {
  // (a + b s)(c + d s) = ac + 2bd + (ad + bc) s,  s = sqrt2
  return {x.a * y.a + 2 * x.b * y.b, x.a * y.b + x.b * y.a};
}

namespace {
int rational_sign(const Rational& q) {
  if (q > 0) return 1;
  if (q < 0) return -1;
  return 0;
}
}  // namespace

int quad_sign(const QuadScalar& x) {
  int sa = rational_sign(x.a), sb = rational_sign(x.b);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // Opposite signs: |a| vs |b| sqrt2 decided by a^2 vs 2 b^2. sqrt2 is
  // irrational, so equality of the squares cannot occur with b != 0 unless
  // a = b = 0, but keep the exact tie handling anyway.
  Rational a2 = x.a * x.a, b22 = 2 * x.b * x.b;
  if (a2 == b22) return 0;
  return (a2 > b22) ? sa : sb;
}

int quad_cmp(const QuadScalar& x, const QuadScalar& y) { return quad_sign(quad_sub(x, y)); }

BigInt quad_floor(const QuadScalar& x) {
  if (x.is_rational()) return rational_floor(x.a);
  // |x| <= |a| + 2|b| gives integer brackets; bisect with exact comparisons.
  BigInt lo = rational_floor(x.a) + 2 * rational_floor(x.b) - 4;
  BigInt hi = rational_floor(x.a) + 2 * rational_floor(x.b) + 6;
  while (quad_cmp(QuadScalar(Rational(lo)), x) > 0) lo -= 8;
  while (quad_cmp(QuadScalar(Rational(hi)), x) <= 0) hi += 8;
  // invariant: lo <= x < hi
  while (hi - lo > 1) {
    BigInt mid = (lo + hi) / 2;
    if (quad_cmp(QuadScalar(Rational(mid)), x) <= 0)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

std::string quad_text(const QuadScalar& x) {
  return rational_text(x.a) + " + " + rational_text(x.b) + "*sqrt2";
}

QuadScalar parse_quad(const std::string& text) {
  auto star = text.find("*sqrt2");
  if (star == std::string::npos) return QuadScalar(parse_rational(text));
  auto plus = text.rfind(" + ", star);
  if (plus == std::string::npos)
    fail(Errc::parse_error, "quad: expected \"a + b*sqrt2\": " + text);
  Rational a = parse_rational(text.substr(0, plus));
  Rational b = parse_rational(text.substr(plus + 3, star - plus - 3));
  return {a, b};
}

QuadScalar irrational_cut_point() { return {Rational(0), Rational(1, 2)}; }

}  // namespace mal
