#pragma once

// Exact arithmetic: arbitrary-precision integers and rationals (GMP), real
// quadratic surds (a + b*sqrt(d))/c, rational enclosures and bisection on
// integer polynomials.

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "blspec/errors.hpp"

namespace blspec {

using BigInt = mpz_class;
using BigRational = mpq_class;  // always canonical: gcd 1, positive denominator

// Closed interval [lo, hi] with exact rational endpoints.
struct Enclosure {
  BigRational lo;
  BigRational hi;

  static Enclosure point(const BigRational& x) { return {x, x}; }

  BigRational width() const { return hi - lo; }
  BigRational mid() const { return (lo + hi) / 2; }
  bool contains(const BigRational& x) const { return lo <= x && x <= hi; }
  bool operator==(const Enclosure&) const = default;
};

enum class Rounding { down, up, nearest };

// Fixed-point decimal rendering with `frac_digits` digits after the point.
std::string to_decimal(const BigRational& x, int frac_digits,
                       Rounding mode = Rounding::nearest);

// Fixed-point decimal rendering keeping `sig_digits` significant digits.
// Rounding::down / up give directed (outward-safe) renderings.
std::string to_decimal_sig(const BigRational& x, int sig_digits,
                           Rounding mode = Rounding::nearest);

// Parses "[-]ddd[.ddd][e[+-]ddd]" exactly.
BigRational parse_decimal(std::string_view text);

// Parses a rational decimal or "p/q"; accepts anything parse_decimal does.
BigRational parse_rational(std::string_view text);

// Floor of the real square root of a non-negative integer.
BigInt isqrt(const BigInt& n);

// The value (a + b*sqrt(d))/c.
//
// Canonical form: c > 0, d square-free, gcd(a, b, c) = 1, and rationals are
// stored with b = 0, d = 0. Equal values therefore have equal fields.
class QuadraticSurd {
 public:
  QuadraticSurd() = default;
  QuadraticSurd(long value) : a_(value) {}  // NOLINT(google-explicit-constructor)
  QuadraticSurd(const BigInt& value) : a_(value) {}  // NOLINT
  explicit QuadraticSurd(const BigRational& value);
  // Throws DivisionByZero for c == 0 and Error for d < 0.
  QuadraticSurd(BigInt a, BigInt b, BigInt c, BigInt d);

  static QuadraticSurd sqrt_of(const BigInt& d);

  const BigInt& a() const { return a_; }
  const BigInt& b() const { return b_; }
  const BigInt& c() const { return c_; }
  const BigInt& d() const { return d_; }

  bool is_rational() const { return b_ == 0; }
  bool is_zero() const { return a_ == 0 && b_ == 0; }
  int sign() const;
  // Value as a rational; throws Error when irrational.
  BigRational rational() const;

  QuadraticSurd operator-() const;
  QuadraticSurd inverse() const;

  friend QuadraticSurd operator+(const QuadraticSurd& x, const QuadraticSurd& y);
  friend QuadraticSurd operator-(const QuadraticSurd& x, const QuadraticSurd& y);
  friend QuadraticSurd operator*(const QuadraticSurd& x, const QuadraticSurd& y);
  friend QuadraticSurd operator/(const QuadraticSurd& x, const QuadraticSurd& y);
  QuadraticSurd& operator+=(const QuadraticSurd& y) { return *this = *this + y; }
  QuadraticSurd& operator-=(const QuadraticSurd& y) { return *this = *this - y; }
  QuadraticSurd& operator*=(const QuadraticSurd& y) { return *this = *this * y; }
  QuadraticSurd& operator/=(const QuadraticSurd& y) { return *this = *this / y; }

  // Exact total order, also across distinct quadratic fields.
  friend std::strong_ordering operator<=>(const QuadraticSurd& x,
                                          const QuadraticSurd& y);
  friend bool operator==(const QuadraticSurd& x, const QuadraticSurd& y);

  // Rational enclosure of width about |b|/c * 2^-bits.
  Enclosure enclose(unsigned bits = 128) const;
  double to_double() const;

  // Literal "(a+b*sqrt(d))/c" with redundant parts omitted, e.g. "sqrt(5)",
  // "2*sqrt(2)", "(5-sqrt(5))/2", "3/7".
  std::string to_string() const;

 private:
  struct Canonical {};
  QuadraticSurd(BigInt a, BigInt b, BigInt c, BigInt d, Canonical);
  void normalize();

  BigInt a_{0};
  BigInt b_{0};
  BigInt c_{1};
  BigInt d_{0};
};

enum class SurdOp { add, sub, mul, div };

QuadraticSurd surd_arith(const QuadraticSurd& x, const QuadraticSurd& y, SurdOp op);
std::strong_ordering surd_cmp(const QuadraticSurd& x, const QuadraticSurd& y);
BigInt surd_floor(const QuadraticSurd& x);

// Parses the textual literal format; see QuadraticSurd::to_string. Accepts
// sums, products and quotients of integers and sqrt(n) terms as long as the
// result stays in one quadratic field. Throws ParseError.
QuadraticSurd parse_surd(std::string_view text);

// An integer polynomial (coefficients by ascending power, degree <= 4) with a
// bracket [low, high] on which it changes sign.
struct RootEnclosure {
  std::vector<BigInt> polynomial;
  BigRational low;
  BigRational high;

  BigRational evaluate(const BigRational& x) const;
  BigRational width() const { return high - low; }
};

// Bisects until high - low <= eps. Throws InvalidEnclosure if the input does
// not bracket a sign change.
RootEnclosure refine_root(const RootEnclosure& root, const BigRational& eps);

}  // namespace blspec
