#pragma once

// The three system families: rotations coded as two-interval exchanges,
// three-interval exchanges, and Arnoux-Rauzy word systems.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "blspec/cfrac.hpp"
#include "blspec/exactnum.hpp"

namespace blspec {

// A word over the letters '1', '2', '3'.
using Word = std::string;

// Rotation x -> x + alpha on [0,1), coded by [0, 1-alpha) -> '1' and
// [1-alpha, 1) -> '2'. The angle is either an exact quadratic irrational or
// a truncated continued fraction.
class RotationParams {
 public:
  static RotationParams from_surd(const QuadraticSurd& alpha);
  static RotationParams from_cf(const ContinuedFraction& cf);

  bool is_exact() const { return alpha_.has_value(); }
  // Throws Error for truncated angles.
  const QuadraticSurd& alpha() const;
  const ContinuedFraction& cf() const { return cf_; }
  // True when built from a continued fraction; the textual form echoes it.
  bool given_as_cf() const { return given_as_cf_; }

 private:
  std::optional<QuadraticSurd> alpha_;
  ContinuedFraction cf_;
  bool given_as_cf_ = false;
};

// Three-interval exchange with interval lengths alpha, beta, 1 - alpha - beta
// in the order 1, 2, 3, reversed by the map. alpha and beta must share one
// quadratic field (or be rational).
struct IET3Params {
  QuadraticSurd alpha;
  QuadraticSurd beta;

  static IET3Params make(const QuadraticSurd& alpha, const QuadraticSurd& beta);

  // 0 < alpha < 1/2 and 2 alpha + beta > 1. Advisory only.
  bool strict_region() const;
  QuadraticSurd map(const QuadraticSurd& x) const;
  QuadraticSurd preimage(const QuadraticSurd& x) const;
  char letter(const QuadraticSurd& x) const;
};

// An integer sequence s_1, s_2, ...: a finite prefix followed by an optional
// repeating block.
struct Schedule {
  std::vector<std::int64_t> prefix;
  std::vector<std::int64_t> period;

  // Throws InsufficientQuotients when a finite schedule runs out.
  std::int64_t at(std::size_t n) const;
  std::string to_string() const;
  bool operator==(const Schedule&) const = default;
};

// Strictly increasing indices n_1 < n_2 < ...: either the arithmetic
// progression first, first + step, ... or an explicit finite list.
struct IndexSet {
  std::optional<std::pair<std::int64_t, std::int64_t>> arithmetic;  // (first, step)
  std::vector<std::int64_t> explicit_indices;

  static IndexSet arith(std::int64_t first, std::int64_t step);
  static IndexSet list(std::vector<std::int64_t> indices);

  bool contains(std::int64_t n) const;
  std::string to_string() const;
  bool operator==(const IndexSet&) const = default;
};

struct ARParams {
  Schedule k;
  IndexSet ni;
  std::size_t depth = 64;

  static ARParams tribonacci();
  std::int64_t k_at(std::size_t n) const { return k.at(n); }
};

struct ARWords {
  std::size_t level = 0;
  Word H = "1";
  Word G = "2";
  Word J = "3";
};

struct ARLengths {
  std::uint64_t H = 1, G = 1, J = 1;
};

using SystemSpec = std::variant<RotationParams, IET3Params, ARParams>;

// "rot:cf=[0;|1]", "rot:alpha=(-1+sqrt(5))/2", "iet3:alpha=...;beta=...",
// "ar:k=1(periodic);ni=arith(1,1)". Throws ParseError.
SystemSpec parse_system_spec(std::string_view text);
std::string to_string(const SystemSpec& system);
std::string family_name(const SystemSpec& system);

inline constexpr std::uint64_t kDefaultWordBudget = 1'000'000'000;

// Endpoints {-j alpha mod 1 : 0 <= j <= n}, sorted. Needs an exact angle.
// Throws DegenerateInput on coincident points.
std::vector<QuadraticSurd> rotation_breakpoints(const RotationParams& p, std::size_t n);

// {0} together with T^-j {alpha, alpha + beta} for 0 <= j < n, sorted.
// Throws DegenerateInput when fewer than 2n + 1 distinct points arise.
std::vector<QuadraticSurd> iet3_breakpoints(const IET3Params& p, std::size_t n);

enum class IdocForm { p_minus_q, p_minus_q_plus_1, p_minus_q_minus_1 };

struct IdocWitness {
  std::int64_t p;
  std::int64_t q;
  IdocForm form;
};

struct IdocResult {
  bool pass = true;
  std::optional<IdocWitness> witness;
};

// Exhaustive exact search for p alpha + q beta in {p-q, p-q+1, p-q-1} with
// |p|, |q| <= bound, (p, q) != (0, 0). A pass is a screening result only.
// The reported witness minimises max(|p|, |q|).
IdocResult idoc_screen(const IET3Params& p, std::int64_t bound);

ARLengths ar_lengths(const ARParams& p, std::size_t level);

// Builds H_N, G_N, J_N. Throws BudgetExceeded when the total word length
// would exceed `budget` symbols, and Error when level > p.depth.
ARWords ar_build(const ARParams& p, std::size_t level,
                 std::uint64_t budget = kDefaultWordBudget);

// Natural coding of the orbit of x0 for rotations and three-interval
// exchanges. Throws Error for Arnoux-Rauzy systems and truncated angles.
Word trajectory(const SystemSpec& system, const QuadraticSurd& x0, std::size_t length);

}  // namespace blspec
