#include "blspec/exactnum.hpp"

#include <cctype>
#include <utility>

namespace blspec {
namespace {

int sgn(const BigInt& x) { return mpz_sgn(x.get_mpz_t()); }
int sgn(const BigRational& x) { return mpq_sgn(x.get_mpq_t()); }

// d = root^2 * squarefree.
std::pair<BigInt, BigInt> split_square(BigInt d) {
  BigInt root = 1;
  BigInt squarefree = 1;
  if (d <= 1) return {root, d};
  for (BigInt p = 2; p * p * p <= d; p += (p == 2 ? 1 : 2)) {
    bool odd = false;
    while (mpz_divisible_p(d.get_mpz_t(), p.get_mpz_t())) {
      mpz_divexact(d.get_mpz_t(), d.get_mpz_t(), p.get_mpz_t());
      if (odd) root *= p;
      odd = !odd;
    }
    if (odd) squarefree *= p;
  }
  // What is left has at most two prime factors, all above the trial bound.
  if (d > 1 && mpz_perfect_square_p(d.get_mpz_t())) {
    root *= isqrt(d);
  } else {
    squarefree *= d;
  }
  return {root, squarefree};
}

// Sign of x + y*sqrt(d), d >= 0.
int sign2(const BigInt& x, const BigInt& y, const BigInt& d) {
  const int sx = sgn(x);
  const int sy = (d == 0) ? 0 : sgn(y);
  if (sy == 0) return sx;
  if (sx == 0 || sx == sy) return sy;
  const BigInt lhs = x * x;
  const BigInt rhs = y * y * d;
  if (lhs > rhs) return sx;
  if (lhs < rhs) return sy;
  return 0;
}

// Sign of x + y*sqrt(d1) + z*sqrt(d2).
int sign3(const BigInt& x, const BigInt& y, const BigInt& d1, const BigInt& z,
          const BigInt& d2) {
  const int su = sign2(x, y, d1);
  const int sw = (d2 == 0) ? 0 : sgn(z);
  if (sw == 0) return su;
  if (su == 0 || su == sw) return sw;
  // |u| versus |w| where u = x + y*sqrt(d1), w = z*sqrt(d2):
  // u^2 - w^2 = (x^2 + y^2 d1 - z^2 d2) + 2xy*sqrt(d1).
  const int s = sign2(x * x + y * y * d1 - z * z * d2, 2 * x * y, d1);
  if (s > 0) return su;
  if (s < 0) return sw;
  return 0;
}

const BigInt& common_field(const QuadraticSurd& x, const QuadraticSurd& y) {
  if (x.is_rational()) return y.d();
  if (y.is_rational() || x.d() == y.d()) return x.d();
  throw MixedFieldError("operands lie in Q(sqrt(" + x.d().get_str() + ")) and Q(sqrt(" +
                        y.d().get_str() + "))");
}

BigInt pow10(int k) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, static_cast<unsigned long>(k));
  return r;
}

BigInt round_rational(const BigRational& v, Rounding mode) {
  BigInt q;
  switch (mode) {
    case Rounding::down:
      mpz_fdiv_q(q.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
      break;
    case Rounding::up:
      mpz_cdiv_q(q.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
      break;
    case Rounding::nearest: {
      const BigRational shifted = v + BigRational(1, 2);
      mpz_fdiv_q(q.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
      break;
    }
  }
  return q;
}

}  // namespace

BigInt isqrt(const BigInt& n) {
  if (n < 0) throw Error("isqrt of a negative number");
  BigInt r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

std::string to_decimal(const BigRational& x, int frac_digits, Rounding mode) {
  if (frac_digits < 0) frac_digits = 0;
  const BigInt scaled = round_rational(x * BigRational(pow10(frac_digits)), mode);
  const bool negative = scaled < 0;
  std::string digits = BigInt(abs(scaled)).get_str();
  if (frac_digits > 0) {
    if (digits.size() <= static_cast<std::size_t>(frac_digits)) {
      digits.insert(0, static_cast<std::size_t>(frac_digits) + 1 - digits.size(), '0');
    }
    digits.insert(digits.size() - static_cast<std::size_t>(frac_digits), ".");
  }
  return negative ? "-" + digits : digits;
}

std::string to_decimal_sig(const BigRational& x, int sig_digits, Rounding mode) {
  if (x == 0) return "0";
  if (sig_digits < 1) sig_digits = 1;
  const BigRational mag = abs(x);
  auto power = [](long e) {
    return e >= 0 ? BigRational(pow10(static_cast<int>(e)))
                  : BigRational(BigInt(1), pow10(static_cast<int>(-e)));
  };
  // exponent = floor(log10(mag)), starting from a digit-count estimate
  long exponent = static_cast<long>(BigInt(mag.get_num()).get_str().size()) -
                  static_cast<long>(BigInt(mag.get_den()).get_str().size());
  while (mag >= power(exponent + 1)) ++exponent;
  while (mag < power(exponent)) --exponent;
  const long frac = sig_digits - 1 - exponent;
  return to_decimal(x, static_cast<int>(frac > 0 ? frac : 0), mode);
}

BigRational parse_decimal(std::string_view text) {
  std::size_t i = 0;
  auto fail = [&](const char* what) -> BigRational { throw ParseError(what, i); };
  bool negative = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) negative = text[i++] == '-';
  std::string digits;
  int frac = 0;
  bool seen_digit = false;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
    digits += text[i++];
    seen_digit = true;
  }
  if (i < text.size() && text[i] == '.') {
    ++i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      digits += text[i++];
      ++frac;
      seen_digit = true;
    }
  }
  if (!seen_digit) return fail("expected a decimal number");
  long exponent = 0;
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    bool eneg = false;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) eneg = text[i++] == '-';
    if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i]))) {
      return fail("expected an exponent");
    }
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      exponent = exponent * 10 + (text[i++] - '0');
      if (exponent > 100000) return fail("exponent out of range");
    }
    if (eneg) exponent = -exponent;
  }
  if (i != text.size()) return fail("trailing characters in decimal number");
  BigRational value{BigInt(digits, 10)};
  const long shift = exponent - frac;
  if (shift >= 0) {
    value *= BigRational(pow10(static_cast<int>(shift)));
  } else {
    value /= BigRational(pow10(static_cast<int>(-shift)));
  }
  value.canonicalize();
  return negative ? BigRational(-value) : value;
}

BigRational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse_decimal(text);
  const BigRational num = parse_decimal(text.substr(0, slash));
  BigRational den;
  try {
    den = parse_decimal(text.substr(slash + 1));
  } catch (const ParseError& e) {
    throw ParseError("malformed denominator", slash + 1 + e.position());
  }
  if (den == 0) throw ParseError("zero denominator", slash + 1);
  return num / den;
}

// ---------------------------------------------------------------------------

QuadraticSurd::QuadraticSurd(const BigRational& value)
    : a_(value.get_num()), c_(value.get_den()) {
  if (c_ == 0) throw DivisionByZero("rational with zero denominator");
  normalize();
}

QuadraticSurd::QuadraticSurd(BigInt a, BigInt b, BigInt c, BigInt d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
  if (c_ == 0) throw DivisionByZero("surd with zero denominator");
  if (d_ < 0) throw Error("negative radicand " + d_.get_str());
  auto [root, squarefree] = split_square(d_);
  b_ *= root;
  d_ = squarefree;
  normalize();
}

QuadraticSurd::QuadraticSurd(BigInt a, BigInt b, BigInt c, BigInt d, Canonical)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
  normalize();
}

QuadraticSurd QuadraticSurd::sqrt_of(const BigInt& d) { return {0, 1, 1, d}; }

void QuadraticSurd::normalize() {
  if (c_ < 0) {
    a_ = -a_;
    b_ = -b_;
    c_ = -c_;
  }
  if (d_ == 1) a_ += b_;
  if (d_ <= 1) b_ = 0;
  if (b_ == 0) d_ = 0;
  BigInt g;
  mpz_gcd(g.get_mpz_t(), a_.get_mpz_t(), b_.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c_.get_mpz_t());
  if (g > 1) {
    mpz_divexact(a_.get_mpz_t(), a_.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(b_.get_mpz_t(), b_.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(c_.get_mpz_t(), c_.get_mpz_t(), g.get_mpz_t());
  }
}

int QuadraticSurd::sign() const { return sign2(a_, b_, d_); }

BigRational QuadraticSurd::rational() const {
  if (!is_rational()) throw Error("value " + to_string() + " is irrational");
  BigRational r(a_, c_);
  r.canonicalize();
  return r;
}

QuadraticSurd QuadraticSurd::operator-() const { return {-a_, -b_, c_, d_, Canonical{}}; }

QuadraticSurd QuadraticSurd::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero");
  return {c_ * a_, -(c_ * b_), a_ * a_ - b_ * b_ * d_, d_, Canonical{}};
}

QuadraticSurd operator+(const QuadraticSurd& x, const QuadraticSurd& y) {
  const BigInt& d = common_field(x, y);
  return {x.a_ * y.c_ + y.a_ * x.c_, x.b_ * y.c_ + y.b_ * x.c_, x.c_ * y.c_, d,
          QuadraticSurd::Canonical{}};
}

QuadraticSurd operator-(const QuadraticSurd& x, const QuadraticSurd& y) { return x + (-y); }

QuadraticSurd operator*(const QuadraticSurd& x, const QuadraticSurd& y) {
  const BigInt& d = common_field(x, y);
  return {x.a_ * y.a_ + x.b_ * y.b_ * d, x.a_ * y.b_ + x.b_ * y.a_, x.c_ * y.c_, d,
          QuadraticSurd::Canonical{}};
}

QuadraticSurd operator/(const QuadraticSurd& x, const QuadraticSurd& y) {
  if (y.is_zero()) throw DivisionByZero("division by zero");
  common_field(x, y);
  return x * y.inverse();
}

std::strong_ordering operator<=>(const QuadraticSurd& x, const QuadraticSurd& y) {
  const BigInt rational_part = x.a_ * y.c_ - y.a_ * x.c_;
  int s;
  if (x.is_rational() || y.is_rational() || x.d_ == y.d_) {
    const BigInt& d = x.is_rational() ? y.d_ : x.d_;
    s = sign2(rational_part, x.b_ * y.c_ - y.b_ * x.c_, d);
  } else {
    s = sign3(rational_part, x.b_ * y.c_, x.d_, -(y.b_ * x.c_), y.d_);
  }
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

bool operator==(const QuadraticSurd& x, const QuadraticSurd& y) {
  return x.a_ == y.a_ && x.b_ == y.b_ && x.c_ == y.c_ && x.d_ == y.d_;
}

Enclosure QuadraticSurd::enclose(unsigned bits) const {
  if (is_rational()) return Enclosure::point(rational());
  BigInt scaled = d_;
  scaled <<= 2 * bits;
  const BigInt s = isqrt(scaled);
  BigInt unit = 1;
  unit <<= bits;
  const BigRational root_lo(s, unit);
  const BigRational root_hi(s * s == scaled ? s : BigInt(s + 1), unit);
  const BigRational a(a_), b(b_), c(c_);
  BigRational lo = (a + b * root_lo) / c;
  BigRational hi = (a + b * root_hi) / c;
  if (lo > hi) std::swap(lo, hi);
  lo.canonicalize();
  hi.canonicalize();
  return {lo, hi};
}

double QuadraticSurd::to_double() const { return enclose(80).mid().get_d(); }

std::string QuadraticSurd::to_string() const {
  std::string num;
  int terms = 0;
  if (a_ != 0 || b_ == 0) {
    num = a_.get_str();
    ++terms;
  }
  if (b_ != 0) {
    const BigInt mag = abs(b_);
    std::string term = (mag == 1) ? "" : mag.get_str() + "*";
    term += "sqrt(" + d_.get_str() + ")";
    if (b_ < 0) {
      num += "-" + term;
    } else {
      num += (terms ? "+" : "") + term;
    }
    ++terms;
  }
  if (c_ == 1) return num;
  if (terms > 1) return "(" + num + ")/" + c_.get_str();
  return num + "/" + c_.get_str();
}

QuadraticSurd surd_arith(const QuadraticSurd& x, const QuadraticSurd& y, SurdOp op) {
  switch (op) {
    case SurdOp::add:
      return x + y;
    case SurdOp::sub:
      return x - y;
    case SurdOp::mul:
      return x * y;
    case SurdOp::div:
      return x / y;
  }
  throw Error("unknown surd operation");
}

std::strong_ordering surd_cmp(const QuadraticSurd& x, const QuadraticSurd& y) { return x <=> y; }

BigInt surd_floor(const QuadraticSurd& x) {
  BigInt t;
  if (!x.is_rational()) {
    const BigInt sq = x.b() * x.b() * x.d();
    const BigInt r = isqrt(sq);
    if (x.b() > 0) {
      t = r;
    } else {
      t = (r * r == sq) ? BigInt(-r) : BigInt(-r - 1);
    }
  }
  BigInt num = x.a() + t;
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), x.c().get_mpz_t());
  return q;
}

// ---------------------------------------------------------------------------

BigRational RootEnclosure::evaluate(const BigRational& x) const {
  BigRational acc = 0;
  for (auto it = polynomial.rbegin(); it != polynomial.rend(); ++it) {
    acc = acc * x + BigRational(*it);
  }
  return acc;
}

RootEnclosure refine_root(const RootEnclosure& root, const BigRational& eps) {
  if (root.polynomial.empty() || root.polynomial.size() > 5) {
    throw InvalidEnclosure("polynomial degree must be between 0 and 4");
  }
  if (eps <= 0) throw InvalidEnclosure("eps must be positive");
  if (root.low > root.high) throw InvalidEnclosure("low > high");
  RootEnclosure r = root;
  const int s_low = sgn(r.evaluate(r.low));
  const int s_high = sgn(r.evaluate(r.high));
  if (s_low == s_high) throw InvalidEnclosure("polynomial has the same sign at both ends");
  if (s_low == 0) {
    r.high = r.low;
    return r;
  }
  if (s_high == 0) {
    r.low = r.high;
    return r;
  }
  while (r.high - r.low > eps) {
    const BigRational mid = (r.low + r.high) / 2;
    const int s_mid = sgn(r.evaluate(mid));
    if (s_mid == 0) {
      r.low = r.high = mid;
      break;
    }
    (s_mid == s_low ? r.low : r.high) = mid;
  }
  return r;
}

}  // namespace blspec
