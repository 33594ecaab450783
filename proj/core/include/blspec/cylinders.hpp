#pragma once

// Smallest cylinder measures e_n: exact interval gaps for rotations and
// three-interval exchanges, occurrence counting for Arnoux-Rauzy words.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "blspec/dynsys.hpp"
#include "blspec/exactnum.hpp"

namespace blspec {

struct EnRecord {
  std::size_t n = 0;
  std::optional<QuadraticSurd> e_exact;
  Enclosure e;
  std::optional<QuadraticSurd> inv_exact;  // 1 / (n e_n)
  Enclosure inv;
  std::size_t cylinder_count = 0;
};

enum class EnMethod { exact_gaps, counted };

struct EnSequence {
  SystemSpec system;
  EnMethod method = EnMethod::exact_gaps;
  std::vector<EnRecord> records;  // records[i].n == i + 1
  // Counted sequences: the two construction levels compared and |H| at each.
  std::optional<std::pair<std::size_t, std::size_t>> levels;
  std::optional<std::pair<std::uint64_t, std::uint64_t>> word_lengths;
};

struct ExactOptions {
  unsigned threads = 1;
  unsigned enclosure_bits = 128;
  std::size_t max_n = 10'000;
};

// e_n for n = 1..n_max from the gaps of the length-n cylinder partition.
// Truncated rotation angles yield enclosures valid for every continuation
// and need n_max < q_K. Throws DegenerateInput.
EnSequence en_exact(const SystemSpec& system, std::size_t n_max, const ExactOptions& options = {});

struct CountOptions {
  std::uint64_t min_symbols = 0;  // 0: 2000 * n_max
  std::uint64_t max_symbols = 100'000'000;
  unsigned threads = 1;
};

// e_n for n = 1..n_max by counting factor occurrences in H_N and H_{N+1},
// raising N until every length-n factor frequency agrees within rel_tol.
// rel_tol must lie in (0, 1/2]. Throws ComplexityMismatch or NoConvergence.
EnSequence en_counted(const ARParams& p, std::size_t n_max, const BigRational& rel_tol,
                      const CountOptions& options = {});

// Factor frequencies of one word, counted over a window of fixed width
// |word| - n_max + 1 so that every length <= n_max is treated alike.
struct FactorCountTrace {
  std::uint64_t window = 0;
  // counts[n - 1][i]: occurrences of factor i of length n. Factor indices are
  // stable: factor i of length n + 1 extends factor i of length n to the
  // left, new factors are appended.
  std::vector<std::vector<std::uint64_t>> counts;
  std::vector<std::vector<std::uint64_t>> hashes;
};

// Full trace of factor counts for n = 1..n_max; memory is O(n_max^2), meant
// for tests and small n_max. Throws ComplexityMismatch.
FactorCountTrace count_factors(const Word& word, std::size_t n_max);

// (n, p(n)) for n = 1..n_max: gap counts for rotations and three-interval
// exchanges, distinct factors of a construction word for Arnoux-Rauzy.
std::vector<std::pair<std::size_t, std::size_t>> complexity_profile(const SystemSpec& system,
                                                                    std::size_t n_max);

// CSV with columns n,e_n_exact,e_n_lo,e_n_hi,inv_nen_lo,inv_nen_hi,cylinder_count.
std::string en_to_csv(const EnSequence& seq, unsigned threads = 1);

}  // namespace blspec
