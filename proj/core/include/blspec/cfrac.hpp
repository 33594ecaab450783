#pragma once

// Regular continued fractions [a0; b1, b2, ...] of quadratic irrationals and
// of truncated (finite-prefix) expansions, with convergents, reversed-word
// values v_k = [0; b_k, ..., b_1] = q_{k-1}/q_k and tails
// t_k = [0; b_{k+1}, b_{k+2}, ...].

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "blspec/exactnum.hpp"

namespace blspec {

using Quotient = std::int64_t;

class ContinuedFraction {
 public:
  ContinuedFraction() = default;

  // Eventually periodic expansion; the period is reduced to its primitive
  // root and the preperiod to its shortest form.
  static ContinuedFraction periodic(std::vector<Quotient> preperiod,
                                    std::vector<Quotient> period, BigInt integer_part = 0);
  // Finite prefix of an unknown expansion.
  static ContinuedFraction truncated(std::vector<Quotient> prefix, BigInt integer_part = 0);

  const BigInt& integer_part() const { return integer_part_; }
  const std::vector<Quotient>& preperiod() const { return preperiod_; }
  const std::vector<Quotient>& period() const { return period_; }
  bool is_truncated() const { return period_.empty(); }
  bool is_periodic() const { return !period_.empty(); }

  // Number of known partial quotients; SIZE_MAX for periodic expansions.
  std::size_t available() const;
  // b_k for k >= 1. Throws InsufficientQuotients past the truncation point.
  Quotient quotient(std::size_t k) const;
  // b_1 .. b_count
  std::vector<Quotient> prefix(std::size_t count) const;

  // "[0; a1,a2 | p1,p2]" or "[0; a1,a2]" for truncated expansions.
  std::string to_string() const;

  bool operator==(const ContinuedFraction&) const = default;

 private:
  BigInt integer_part_{0};
  std::vector<Quotient> preperiod_;
  std::vector<Quotient> period_;
};

// Parses "[a0; a1,...,am | p1,...,pr]"; without the bar the expansion is a
// truncated prefix. Throws ParseError.
ContinuedFraction parse_cf(std::string_view text);

// Gauss-map expansion of an irrational 0 < x < 1. Throws RationalInput.
ContinuedFraction cf_expand(const QuadraticSurd& x);

// Value of [0; preperiod..., period, period, ...].
QuadraticSurd cf_eval_periodic(std::span<const Quotient> period,
                               std::span<const Quotient> preperiod = {});

// Value of a periodic expansion, including its integer part.
QuadraticSurd cf_value(const ContinuedFraction& cf);

// Value of the finite expansion [0; quotients...]; 0 for an empty list.
BigRational cf_eval_finite(std::span<const Quotient> quotients);

struct ConvergentRow {
  std::size_t k;
  Quotient b;
  BigInt p;
  BigInt q;
  BigRational v;  // q_{k-1} / q_k
};

using ConvergentTable = std::vector<ConvergentRow>;

// Rows k = 1..count of p_k/q_k, seeded with p_0/q_0 = a0/1 and
// p_{-1}/q_{-1} = 1/0.
ConvergentTable convergents(const ContinuedFraction& cf, std::size_t count);

struct Tail {
  std::optional<QuadraticSurd> exact;  // set for periodic expansions
  Enclosure bounds;
};

// t_k = [0; b_{k+1}, b_{k+2}, ...] for k >= 0. Truncated expansions give the
// closed range of all continuations (next complete quotient in [1, inf)).
Tail tail(const ContinuedFraction& cf, std::size_t k);

// Closed interval holding every angle compatible with a truncated expansion:
// the endpoints [a0; b1..bK] and [a0; b1..bK + 1] are Farey neighbours.
Enclosure cf_angle_range(const ContinuedFraction& cf);

}  // namespace blspec
