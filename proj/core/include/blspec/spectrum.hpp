#pragma once

// Upper and lower invariants B = limsup 1/(n e_n), B' = liminf 1/(n e_n):
// closed forms for periodic rotation angles, windowed estimates from e_n
// sequences, scans over periodic angles and the convergent-based oracle.

#include <optional>
#include <utility>
#include <vector>

#include "blspec/cfrac.hpp"
#include "blspec/cylinders.hpp"
#include "blspec/exactnum.hpp"

namespace blspec {

// A quadratic surd or +infinity.
struct ExtendedSurd {
  std::optional<QuadraticSurd> value;  // empty means +infinity

  static ExtendedSurd infinity() { return {}; }
  bool is_infinite() const { return !value.has_value(); }
  std::string to_string() const { return value ? value->to_string() : "inf"; }
  bool operator==(const ExtendedSurd&) const = default;
};

struct BLExact {
  ExtendedSurd B;
  QuadraticSurd Bprime;
};

// Exact (B, B') for an eventually periodic angle from the limits of v_k and
// t_k along each position of the period. Throws InsufficientQuotients for
// truncated expansions.
BLExact bl_exact_rotation(const ContinuedFraction& cf);

struct LagrangeTrace {
  // terms[k - 1] = 1 / (q_k |q_k alpha - p_k|), k = 1..K
  std::vector<std::optional<QuadraticSurd>> exact_terms;
  std::vector<Enclosure> terms;
  Enclosure running_max;
  std::optional<QuadraticSurd> exact_running_max;
  // max over k in (K/2, K]
  Enclosure tail_max;
  std::optional<QuadraticSurd> exact_tail_max;
};

// Terms 1/(q_k |q_k alpha - p_k|) for k <= K, exact for periodic angles and
// enclosed over all continuations for truncated ones (needs K < available).
LagrangeTrace lagrange_via_convergents(const ContinuedFraction& cf, std::size_t K);

struct WindowStat {
  std::size_t lo = 0;
  std::size_t hi = 0;
  Enclosure sup;
  Enclosure inf;
  std::optional<QuadraticSurd> exact_sup;
  std::optional<QuadraticSurd> exact_inf;
};

struct SpectrumEstimate {
  SystemSpec system;
  std::pair<std::size_t, std::size_t> n_range;
  std::vector<WindowStat> windows;  // increasing n; the last one ends at n_max
  Enclosure B_est;
  Enclosure Bprime_est;
  std::optional<QuadraticSurd> B_est_exact;
  std::optional<QuadraticSurd> Bprime_est_exact;
  std::optional<BLExact> exact;
  std::optional<BigRational> complexity_floor;
};

// Extrema of 1/(n e_n) over the dyadic windows [ceil(n_max/2^(i+1)), floor(n_max/2^i)].
// B_est and Bprime_est come from the last window.
SpectrumEstimate bl_estimate(const EnSequence& seq);

// Distinct exact values over all primitive periods of length <= max_period
// with digits in [1, max_digit], sorted ascending.
std::vector<QuadraticSurd> scan_rotation_upper(std::size_t max_period, Quotient max_digit, unsigned threads = 1);
std::vector<QuadraticSurd> scan_rotation_lower(std::size_t max_period, Quotient max_digit, unsigned threads = 1);

// Lyndon words of length <= max_length over 1..max_digit.
std::vector<std::vector<Quotient>> primitive_periods(std::size_t max_length, Quotient max_digit);

// Enclosure of width <= eps of 2y^2 + 4y/(y^2+1), y the real root of X^3-X^2-X-1.
Enclosure tribonacci_B_reference(const BigRational& eps);

// Secant-slope bounds on the complexity growth rate over the last dyadic
// window of the profile: (upper, lower). Affine profiles p(n) = cn + d give c.
std::pair<BigRational, BigRational> complexity_lower_bounds(
    const std::vector<std::pair<std::size_t, std::size_t>>& profile);

}  // namespace blspec
