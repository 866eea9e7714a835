#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace mal {

// All scalar arithmetic in the library is exact. Integers and rationals are
// arbitrary precision (measure denominators at depth 20 already exceed any
// fixed-width type), dyadic rationals keep an explicit power-of-two
// denominator, and quadratic scalars a + b*sqrt2 compare exactly by squaring.
// No floating point is used anywhere in the library proper.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

BigInt pow2(std::uint32_t e);

// --- Dyadic rationals -------------------------------------------------------
//
// Value num / 2^exp, canonical: exp == 0 or num odd.

struct Dyadic {
  BigInt num;
  std::uint32_t exp = 0;

  Dyadic() = default;
  Dyadic(BigInt n, std::uint32_t e);  // normalizes
  explicit Dyadic(long n) : num(n), exp(0) {}

  Rational to_rational() const;
  bool is_zero() const { return num == 0; }
};

Dyadic dyadic_add(const Dyadic& a, const Dyadic& b);
Dyadic dyadic_sub(const Dyadic& a, const Dyadic& b);
Dyadic dyadic_mul(const Dyadic& a, const Dyadic& b);
int dyadic_cmp(const Dyadic& a, const Dyadic& b);  // -1, 0, +1

inline bool operator==(const Dyadic& a, const Dyadic& b) {
  return a.exp == b.exp && a.num == b.num;
}

// Canonical text form "num/2^exp", e.g. "3/2^5", "-1/2^0".
std::string dyadic_text(const Dyadic& d);
Dyadic parse_dyadic(const std::string& text);

// --- Rationals --------------------------------------------------------------

Rational make_rational(const BigInt& num, const BigInt& den);  // den != 0
BigInt rational_floor(const Rational& q);

// Canonical text form "p/q" with q > 0 in lowest terms; "p" alone means p/1.
std::string rational_text(const Rational& q);
Rational parse_rational(const std::string& text);

// Whether q equals num/2^exp for some exponent; used when a dyadic value is
// required structurally.
bool is_dyadic(const Rational& q);
Dyadic to_dyadic(const Rational& q);  // Errc::bad_element if not dyadic

// Truncating decimal rendering with `digits` places after the point,
// e.g. decimal_text(1/3, 6) == "0.333333". Exact, round-toward-zero.
std::string decimal_text(const Rational& q, unsigned digits);

// --- Quadratic scalars a + b*sqrt2 ------------------------------------------
//
// The field Q(sqrt2) suffices for every irrational endpoint the library
// constructs. Sign evaluation is exact: compare a^2 against 2 b^2 and
// reconcile the signs of a and b.

struct QuadScalar {
  Rational a;  // rational part
  Rational b;  // coefficient of sqrt2

  QuadScalar() = default;
  QuadScalar(Rational ra, Rational rb) : a(std::move(ra)), b(std::move(rb)) {}
  explicit QuadScalar(const Rational& ra) : a(ra), b(0) {}
  explicit QuadScalar(const Dyadic& d) : a(d.to_rational()), b(0) {}

  bool is_rational() const { return b == 0; }
};

QuadScalar quad_add(const QuadScalar& x, const QuadScalar& y);
QuadScalar quad_sub(const QuadScalar& x, const QuadScalar& y);
QuadScalar quad_mul(const QuadScalar& x, const QuadScalar& y);
QuadScalar quad_neg(const QuadScalar& x);

int quad_sign(const QuadScalar& x);  // -1, 0, +1, exact
int quad_cmp(const QuadScalar& x, const QuadScalar& y);
inline bool operator==(const QuadScalar& x, const QuadScalar& y) {
  return x.a == y.a && x.b == y.b;
}
inline bool quad_lt(const QuadScalar& x, const QuadScalar& y) { return quad_cmp(x, y) < 0; }
inline bool quad_le(const QuadScalar& x, const QuadScalar& y) { return quad_cmp(x, y) <= 0; }

BigInt quad_floor(const QuadScalar& x);

// Canonical text form "a + b*sqrt2" with both parts in rational text form,
// e.g. "0 + 1/2*sqrt2"; plain rational text is accepted on input.
std::string quad_text(const QuadScalar& x);
QuadScalar parse_quad(const std::string& text);

// sqrt(2)/2, the irrational cut point used by the interval constructions.
QuadScalar irrational_cut_point();

}  // namespace mal
