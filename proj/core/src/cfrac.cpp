#include "blspec/cfrac.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <map>

namespace blspec {
namespace {

void check_quotients(std::span<const Quotient> qs) {
  for (Quotient b : qs) {
    if (b < 1) throw Error("partial quotients must be >= 1, got " + std::to_string(b));
  }
}

std::vector<Quotient> primitive_root(std::vector<Quotient> period) {
  const std::size_t r = period.size();
  for (std::size_t len = 1; len < r; ++len) {
    if (r % len != 0) continue;
    bool repeats = true;
    for (std::size_t i = len; i < r && repeats; ++i) repeats = period[i] == period[i - len];
    if (repeats) {
      period.resize(len);
      break;
    }
  }
  return period;
}

// (h_m, h_{m-1}, k_m, k_{m-1}) for the finite expansion [a_1; a_2, ..., a_m],
// so that [a_1; ..., a_m, z] = (h_m z + h_{m-1}) / (k_m z + k_{m-1}).
struct Mobius {
  BigInt h = 1, h_prev = 0, k = 0, k_prev = 1;
};

Mobius mobius_of(std::span<const Quotient> qs) {
  Mobius m;
  for (Quotient b : qs) {
    BigInt h = b * m.h + m.h_prev;
    BigInt k = b * m.k + m.k_prev;
    m.h_prev = std::move(m.h);
    m.k_prev = std::move(m.k);
    m.h = std::move(h);
    m.k = std::move(k);
  }
  return m;
}

Quotient to_quotient(const BigInt& b) {
  if (!b.fits_slong_p()) throw Error("partial quotient " + b.get_str() + " exceeds 64 bits");
  return b.get_si();
}

}  // namespace

ContinuedFraction ContinuedFraction::periodic(std::vector<Quotient> preperiod,
                                              std::vector<Quotient> period, BigInt integer_part) {
  if (period.empty()) throw Error("periodic expansion needs a non-empty period");
  check_quotients(preperiod);
  check_quotients(period);
  ContinuedFraction cf;
  cf.integer_part_ = std::move(integer_part);
  cf.period_ = primitive_root(std::move(period));
  while (!preperiod.empty() && preperiod.back() == cf.period_.back()) {
    preperiod.pop_back();
    std::rotate(cf.period_.rbegin(), cf.period_.rbegin() + 1, cf.period_.rend());
  }
  cf.preperiod_ = std::move(preperiod);
  return cf;
}

ContinuedFraction ContinuedFraction::truncated(std::vector<Quotient> prefix, BigInt integer_part) {
  check_quotients(prefix);
  ContinuedFraction cf;
  cf.integer_part_ = std::move(integer_part);
  cf.preperiod_ = std::move(prefix);
  return cf;
}

std::size_t ContinuedFraction::available() const {
  return is_periodic() ? std::numeric_limits<std::size_t>::max() : preperiod_.size();
}

Quotient ContinuedFraction::quotient(std::size_t k) const {
  if (k == 0) throw Error("partial quotients are indexed from 1");
  if (k <= preperiod_.size()) return preperiod_[k - 1];
  if (period_.empty()) {
    throw InsufficientQuotients("b_" + std::to_string(k) + " requested but only " +
                                std::to_string(preperiod_.size()) + " quotients are known");
  }
  return period_[(k - 1 - preperiod_.size()) % period_.size()];
}

std::vector<Quotient> ContinuedFraction::prefix(std::size_t count) const {
  std::vector<Quotient> out;
  out.reserve(count);
  for (std::size_t k = 1; k <= count; ++k) out.push_back(quotient(k));
  return out;
}

std::string ContinuedFraction::to_string() const {
  auto join = [](const std::vector<Quotient>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(v[i]);
    }
    return s;
  };
  std::string s = "[" + integer_part_.get_str() + ";" + join(preperiod_);
  if (is_periodic()) s += "|" + join(period_);
  return s + "]";
}

ContinuedFraction parse_cf(std::string_view text) {
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto fail = [&](const std::string& what) -> ContinuedFraction { throw ParseError(what, pos); };
  auto read_int = [&](bool allow_sign) -> BigInt {
    skip();
    const std::size_t start = pos;
    if (allow_sign && pos < text.size() && text[pos] == '-') ++pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start || (pos == start + 1 && text[start] == '-')) {
      pos = start;
      throw ParseError("expected an integer", pos);
    }
    return BigInt(std::string(text.substr(start, pos - start)), 10);
  };
  auto read_list = [&](std::vector<Quotient>& out) {
    skip();
    if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos]))) return;
    for (;;) {
      const std::size_t at = pos;
      const BigInt b = read_int(false);
      if (b < 1 || !b.fits_slong_p()) throw ParseError("partial quotient out of range", at);
      out.push_back(b.get_si());
      skip();
      if (pos < text.size() && text[pos] == ',') {
        ++pos;
        continue;
      }
      return;
    }
  };

  skip();
  if (pos >= text.size() || text[pos] != '[') return fail("expected '['");
  ++pos;
  const BigInt integer_part = read_int(true);
  skip();
  if (pos >= text.size() || text[pos] != ';') return fail("expected ';'");
  ++pos;
  std::vector<Quotient> pre;
  std::vector<Quotient> per;
  read_list(pre);
  skip();
  bool has_bar = false;
  if (pos < text.size() && text[pos] == '|') {
    has_bar = true;
    ++pos;
    read_list(per);
    if (per.empty()) return fail("empty period after '|'");
  }
  skip();
  if (pos >= text.size() || text[pos] != ']') return fail("expected ']'");
  ++pos;
  skip();
  if (pos != text.size()) return fail("trailing characters after ']'");
  return has_bar ? ContinuedFraction::periodic(std::move(pre), std::move(per), integer_part)
                 : ContinuedFraction::truncated(std::move(pre), integer_part);
}

ContinuedFraction cf_expand(const QuadraticSurd& x) {
  if (x.is_rational()) throw RationalInput("cf_expand needs an irrational number, got " + x.to_string());
  if (x.sign() <= 0 || x >= QuadraticSurd(1)) {
    throw Error("cf_expand needs 0 < x < 1, got " + x.to_string());
  }
  // States are the tails t_k; the first repeated state closes the period.
  std::map<QuadraticSurd, std::size_t> seen;
  std::vector<Quotient> quotients;
  QuadraticSurd state = x;
  constexpr std::size_t kMaxSteps = 1'000'000;
  while (true) {
    auto [it, inserted] = seen.emplace(state, quotients.size());
    if (!inserted) {
      const std::size_t start = it->second;
      std::vector<Quotient> pre(quotients.begin(), quotients.begin() + static_cast<long>(start));
      std::vector<Quotient> per(quotients.begin() + static_cast<long>(start), quotients.end());
      return ContinuedFraction::periodic(std::move(pre), std::move(per));
    }
    if (quotients.size() >= kMaxSteps) throw Error("cf_expand: period not found");
    const QuadraticSurd y = state.inverse();
    const BigInt b = surd_floor(y);
    quotients.push_back(to_quotient(b));
    state = y - QuadraticSurd(b);
  }
}

QuadraticSurd cf_eval_periodic(std::span<const Quotient> period, std::span<const Quotient> preperiod) {
  if (period.empty()) throw Error("cf_eval_periodic needs a non-empty period");
  check_quotients(period);
  check_quotients(preperiod);
  // y = [p1; p2, ..., pr, y] > 1 solves k y^2 + (k' - h) y - h' = 0.
  const Mobius m = mobius_of(period);
  // Dividing out the content first keeps the radicand small enough to
  // factor: it is then the discriminant of the minimal polynomial.
  BigInt k = m.k, lin = m.h - m.k_prev, h = m.h_prev, g;
  mpz_gcd(g.get_mpz_t(), k.get_mpz_t(), lin.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), h.get_mpz_t());
  k /= g;
  lin /= g;
  h /= g;
  const QuadraticSurd y(lin, 1, 2 * k, lin * lin + 4 * k * h);
  // [0; a1, ..., am, y] = 1 / [a1; ..., am, y]
  const Mobius pre = mobius_of(preperiod);
  const QuadraticSurd num = QuadraticSurd(pre.h) * y + QuadraticSurd(pre.h_prev);
  const QuadraticSurd den = QuadraticSurd(pre.k) * y + QuadraticSurd(pre.k_prev);
  return den / num;
}

QuadraticSurd cf_value(const ContinuedFraction& cf) {
  if (!cf.is_periodic()) throw InsufficientQuotients("truncated expansion has no exact value");
  return QuadraticSurd(cf.integer_part()) + cf_eval_periodic(cf.period(), cf.preperiod());
}

BigRational cf_eval_finite(std::span<const Quotient> quotients) {
  BigRational value = 0;
  for (auto it = quotients.rbegin(); it != quotients.rend(); ++it) {
    value = 1 / (BigRational(*it) + value);
  }
  return value;
}

ConvergentTable convergents(const ContinuedFraction& cf, std::size_t count) {
  if (count < 1) throw Error("convergents: count must be >= 1");
  if (count > cf.available()) {
    throw InsufficientQuotients("convergents: " + std::to_string(count) + " requested but only " +
                                std::to_string(cf.available()) + " quotients are known");
  }
  ConvergentTable rows;
  rows.reserve(count);
  BigInt p_prev = 1, q_prev = 0;
  BigInt p = cf.integer_part(), q = 1;
  for (std::size_t k = 1; k <= count; ++k) {
    const Quotient b = cf.quotient(k);
    BigInt p_next = b * p + p_prev;
    BigInt q_next = b * q + q_prev;
    BigRational v(q, q_next);
    v.canonicalize();
    p_prev = std::move(p);
    q_prev = std::move(q);
    p = std::move(p_next);
    q = std::move(q_next);
    rows.push_back({k, b, p, q, std::move(v)});
  }
  return rows;
}

Tail tail(const ContinuedFraction& cf, std::size_t k) {
  if (cf.is_periodic()) {
    const std::size_t pre = cf.preperiod().size();
    std::vector<Quotient> preperiod;
    std::vector<Quotient> period = cf.period();
    if (k < pre) {
      preperiod.assign(cf.preperiod().begin() + static_cast<long>(k), cf.preperiod().end());
    } else {
      const std::size_t shift = (k - pre) % period.size();
      std::rotate(period.begin(), period.begin() + static_cast<long>(shift), period.end());
    }
    QuadraticSurd t = cf_eval_periodic(period, preperiod);
    Enclosure bounds = t.enclose();
    return {std::move(t), std::move(bounds)};
  }
  const auto& known = cf.preperiod();
  if (k > known.size()) {
    throw InsufficientQuotients("tail t_" + std::to_string(k) + " needs b_" + std::to_string(k + 1) +
                                " but only " + std::to_string(known.size()) + " quotients are known");
  }
  if (k == known.size()) return {std::nullopt, {0, 1}};
  std::vector<Quotient> rest(known.begin() + static_cast<long>(k), known.end());
  BigRational far = cf_eval_finite(rest);  // next complete quotient -> infinity
  rest.back() += 1;
  BigRational near = cf_eval_finite(rest);  // next complete quotient = 1
  if (far > near) std::swap(far, near);
  return {std::nullopt, {far, near}};
}

Enclosure cf_angle_range(const ContinuedFraction& cf) {
  if (cf.is_periodic()) return cf_value(cf).enclose();
  std::vector<Quotient> qs = cf.preperiod();
  const BigRational base(cf.integer_part());
  if (qs.empty()) return {base, base + 1};
  BigRational lo = base + cf_eval_finite(qs);
  qs.back() += 1;
  BigRational hi = base + cf_eval_finite(qs);
  if (lo > hi) std::swap(lo, hi);
  return {lo, hi};
}

}  // namespace blspec
