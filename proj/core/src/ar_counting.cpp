#include <algorithm>
#include <array>
#include <limits>
#include <string_view>

#include "blspec/cylinders.hpp"

namespace blspec {
namespace {

__extension__ using u128 = unsigned __int128;

constexpr std::uint64_t kMod = (std::uint64_t{1} << 61) - 1;
constexpr std::uint64_t kBase = 1'000'003;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
  const u128 p = static_cast<u128>(a) * b;
  std::uint64_t r = static_cast<std::uint64_t>(p & kMod) + static_cast<std::uint64_t>(p >> 61);
  if (r >= kMod) r -= kMod;
  return r;
}

std::uint64_t addmod(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = a + b;
  if (r >= kMod) r -= kMod;
  return r;
}

int letter_index(char c) {
  if (c < '1' || c > '3') throw ComplexityMismatch(std::string("unexpected letter '") + c + "'");
  return c - '1';
}

// Occurrence counts of all length-n factors of one word, for n = 1, 2, ...
// Occurrences are counted at start positions [n_max - n, |word| - n], a
// window of the same width for every n. Going from n to n + 1 a factor w
// with a single left extension x keeps its count as xw; only the left
// special factor splits, and its occurrences are tracked explicitly.
class FactorCounter {
 public:
  struct Factor {
    std::uint64_t count;
    std::uint64_t hash;
    std::uint32_t rep;  // start of some occurrence of the factor
  };

  FactorCounter(std::string_view word, std::size_t n_max) : word_(word), n_max_(n_max) {
    if (n_max < 1) throw Error("n_max must be >= 1");
    if (word.size() < n_max + 2) {
      throw ComplexityMismatch("word of length " + std::to_string(word.size()) + " is too short for n_max = " +
                               std::to_string(n_max));
    }
    if (word.size() >= std::numeric_limits<std::uint32_t>::max()) throw BudgetExceeded("word too long to index");
    window_ = word.size() - n_max + 1;

    std::array<std::uint64_t, 3> counts{};
    std::array<std::uint32_t, 3> reps{};
    std::array<std::array<bool, 3>, 3> left{};  // left[letter][predecessor]
    for (std::size_t s = 0; s < word.size(); ++s) {
      const int c = letter_index(word[s]);
      if (s >= n_max - 1) ++counts[c];
      if (s >= 1) {
        reps[c] = static_cast<std::uint32_t>(s);
        left[c][letter_index(word[s - 1])] = true;
      }
    }
    int special = -1;
    for (int c = 0; c < 3; ++c) {
      if (counts[c] == 0) throw ComplexityMismatch("letter " + std::to_string(c + 1) + " missing from the window");
      factors_.push_back({counts[c], static_cast<std::uint64_t>(c + 1), reps[c]});
      if (left[c][0] && left[c][1] && left[c][2]) {
        if (special >= 0) throw ComplexityMismatch("two left special letters");
        special = c;
      }
    }
    if (special < 0) throw ComplexityMismatch("no left special letter");
    special_ = static_cast<std::size_t>(special);
    for (std::size_t s = 1; s < word.size(); ++s) {
      if (letter_index(word[s]) == special) positions_.push_back(static_cast<std::uint32_t>(s));
    }
    power_ = kBase;
  }

  std::size_t length() const { return n_; }
  std::uint64_t window() const { return window_; }
  const std::vector<Factor>& factors() const { return factors_; }

  void advance() {
    if (n_ >= n_max_) throw Error("FactorCounter advanced past n_max");
    const std::size_t lo = n_max_ - n_;  // window of start positions for length n
    const std::size_t hi = word_.size() - n_;

    // split the left special factor by its left letter
    const Factor special = factors_[special_];
    std::array<std::uint64_t, 3> split{};
    std::array<std::uint32_t, 3> reps{};
    std::array<bool, 3> seen{};
    for (std::uint32_t s : positions_) {
      const int x = letter_index(word_[s - 1]);
      if (s >= lo && s <= hi) ++split[x];
      if (s >= 2) {
        reps[x] = s - 1;
        seen[x] = true;
      }
    }
    if (split[0] + split[1] + split[2] != special.count) throw Error("internal: split counts do not add up");
    for (int x = 0; x < 3; ++x) {
      if (split[x] == 0 || !seen[x]) {
        throw ComplexityMismatch("left extension " + std::to_string(x + 1) + " of the special factor of length " +
                                 std::to_string(n_) + " not seen in the window; use a longer word");
      }
    }

    for (std::size_t i = 0; i < factors_.size(); ++i) {
      if (i == special_) continue;
      Factor& f = factors_[i];
      if (f.rep == 0) throw ComplexityMismatch("factor occurs only as a prefix; use a longer word");
      const auto x = static_cast<std::uint64_t>(letter_index(word_[f.rep - 1]) + 1);
      f.hash = addmod(mulmod(x, power_), f.hash);
      --f.rep;
    }
    for (int x = 0; x < 3; ++x) {
      const Factor f{split[x], addmod(mulmod(static_cast<std::uint64_t>(x + 1), power_), special.hash), reps[x]};
      if (x == 0) {
        factors_[special_] = f;
      } else {
        factors_.push_back(f);
      }
    }

    // the next left special factor extends the current one to the right
    std::array<std::array<bool, 3>, 3> left{};  // left[y][x]
    for (std::uint32_t s : positions_) {
      if (s + n_ >= word_.size()) continue;
      left[letter_index(word_[s + n_])][letter_index(word_[s - 1])] = true;
    }
    int next = -1;
    for (int y = 0; y < 3; ++y) {
      if (left[y][0] && left[y][1] && left[y][2]) {
        if (next >= 0) throw ComplexityMismatch("two left special factors of length " + std::to_string(n_ + 1));
        next = y;
      }
    }
    if (next < 0) throw ComplexityMismatch("no left special factor of length " + std::to_string(n_ + 1));
    std::erase_if(positions_, [&](std::uint32_t s) {
      return s + n_ >= word_.size() || letter_index(word_[s + n_]) != next;
    });
    const std::uint64_t target = addmod(mulmod(special.hash, kBase), static_cast<std::uint64_t>(next + 1));
    // the new special factor is a right extension, so search for its hash
    std::size_t found = factors_.size();
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      if (factors_[i].hash != target) continue;
      if (found != factors_.size()) throw ComplexityMismatch("factor hash collision");
      found = i;
    }
    if (found == factors_.size()) throw ComplexityMismatch("left special factor not among counted factors");
    special_ = found;
    power_ = mulmod(power_, kBase);
    ++n_;
    if (factors_.size() != 2 * n_ + 1) throw ComplexityMismatch("factor count differs from 2n+1");
  }

 private:
  std::string_view word_;
  std::size_t n_max_;
  std::size_t n_ = 1;
  std::uint64_t window_ = 0;
  std::vector<Factor> factors_;
  std::size_t special_ = 0;
  std::vector<std::uint32_t> positions_;  // occurrences s >= 1 of the left special factor
  std::uint64_t power_ = 1;               // kBase^n
};

// c1 / w1 vs c2 / w2
int compare_freq(std::uint64_t c1, std::uint64_t w1, std::uint64_t c2, std::uint64_t w2) {
  const u128 l = static_cast<u128>(c1) * w2;
  const u128 r = static_cast<u128>(c2) * w1;
  return l < r ? -1 : (l > r ? 1 : 0);
}

struct Frac {
  std::uint64_t num, den;
};

// |c1/w1 - c2/w2| <= tol * min(c1/w1, c2/w2)
bool agrees(std::uint64_t c1, std::uint64_t w1, std::uint64_t c2, std::uint64_t w2, const Frac& tol) {
  using U = u128;
  const U x = static_cast<U>(c1) * w2;
  const U y = static_cast<U>(c2) * w1;
  const U diff = x > y ? x - y : y - x;
  const U low = std::min(x, y);
  // diff * tol.den <= tol.num * low, both sides < 2^128 for counts below 2^32
  return diff * tol.den <= low * tol.num;
}

}  // namespace

FactorCountTrace count_factors(const Word& word, std::size_t n_max) {
  FactorCounter counter(word, n_max);
  FactorCountTrace trace;
  trace.window = counter.window();
  for (std::size_t n = 1;; ++n) {
    auto& counts = trace.counts.emplace_back();
    auto& hashes = trace.hashes.emplace_back();
    for (const auto& f : counter.factors()) {
      counts.push_back(f.count);
      hashes.push_back(f.hash);
    }
    if (n == n_max) break;
    counter.advance();
  }
  return trace;
}

EnSequence en_counted(const ARParams& p, std::size_t n_max, const BigRational& rel_tol, const CountOptions& options) {
  if (n_max < 1) throw Error("n_max must be >= 1");
  if (rel_tol <= 0 || rel_tol > BigRational(1, 2)) throw Error("rel_tol must lie in (0, 1/2]");
  if (!rel_tol.get_num().fits_ulong_p() || !rel_tol.get_den().fits_ulong_p() || rel_tol.get_den() > (1UL << 32)) {
    throw Error("rel_tol denominator too large");
  }
  const Frac tol{rel_tol.get_num().get_ui(), rel_tol.get_den().get_ui()};
  const std::uint64_t min_symbols =
      options.min_symbols > 0 ? options.min_symbols : 2000 * static_cast<std::uint64_t>(n_max);

  std::size_t level = 0;
  while (ar_lengths(p, level).H < min_symbols) {
    if (level >= p.depth) throw NoConvergence("depth limit reached before " + std::to_string(min_symbols) + " symbols");
    ++level;
  }

  std::string last_failure;
  for (;; ++level) {
    const ARLengths next_len = ar_lengths(p, level + 1);
    if (level + 1 > p.depth || next_len.H > options.max_symbols) {
      throw NoConvergence("frequencies did not stabilise within " + std::to_string(options.max_symbols) +
                          " symbols" + (last_failure.empty() ? "" : ": " + last_failure));
    }
    const ARWords words = ar_build(p, level + 1, 3 * options.max_symbols + 3);
    // H_{N+1} = G_N H_N^k ends with H_N
    const std::string_view lower = std::string_view(words.H).substr(words.H.size() - ar_lengths(p, level).H);
    FactorCounter a(lower, n_max);
    FactorCounter b(words.H, n_max);
    const std::uint64_t wa = a.window();
    const std::uint64_t wb = b.window();

    EnSequence seq{p, EnMethod::counted, {}, std::pair{level, level + 1},
                   std::pair{static_cast<std::uint64_t>(lower.size()), static_cast<std::uint64_t>(words.H.size())}};
    seq.records.reserve(n_max);
    bool stable = true;
    for (std::size_t n = 1; n <= n_max; ++n) {
      if (n > 1) {
        a.advance();
        b.advance();
      }
      const auto& fa = a.factors();
      const auto& fb = b.factors();
      if (fa.size() != fb.size()) throw ComplexityMismatch("factor sets differ between levels");
      std::size_t min_lo = 0;  // index attaining min over both levels
      bool min_lo_in_a = true;
      std::uint64_t hi_c = 0, hi_w = 0;
      for (std::size_t i = 0; i < fa.size(); ++i) {
        if (fa[i].hash != fb[i].hash) throw ComplexityMismatch("factor order differs between levels");
        if (!agrees(fa[i].count, wa, fb[i].count, wb, tol)) {
          last_failure = "length " + std::to_string(n) + " at levels " + std::to_string(level) + "/" +
                         std::to_string(level + 1);
          stable = false;
          break;
        }
        const auto& cur = min_lo_in_a ? fa[min_lo] : fb[min_lo];
        const std::uint64_t cur_w = min_lo_in_a ? wa : wb;
        if (compare_freq(fa[i].count, wa, cur.count, cur_w) < 0) {
          min_lo = i;
          min_lo_in_a = true;
        }
        const auto& cur2 = min_lo_in_a ? fa[min_lo] : fb[min_lo];
        if (compare_freq(fb[i].count, wb, cur2.count, min_lo_in_a ? wa : wb) < 0) {
          min_lo = i;
          min_lo_in_a = false;
        }
        // larger of the two levels for this factor
        std::uint64_t c = fa[i].count, w = wa;
        if (compare_freq(fb[i].count, wb, c, w) > 0) {
          c = fb[i].count;
          w = wb;
        }
        if (hi_w == 0 || compare_freq(c, w, hi_c, hi_w) < 0) {
          hi_c = c;
          hi_w = w;
        }
      }
      if (!stable) break;
      const auto& lo_f = min_lo_in_a ? fa[min_lo] : fb[min_lo];
      const BigRational slack = rel_tol / 4;
      EnRecord r;
      r.n = n;
      r.e.lo = BigRational(BigInt(std::to_string(lo_f.count)), BigInt(std::to_string(min_lo_in_a ? wa : wb))) *
               (1 - slack);
      r.e.hi = BigRational(BigInt(std::to_string(hi_c)), BigInt(std::to_string(hi_w))) * (1 + slack);
      r.e.lo.canonicalize();
      r.e.hi.canonicalize();
      const BigRational nn(static_cast<long>(n));
      r.inv = {1 / (nn * r.e.hi), 1 / (nn * r.e.lo)};
      r.cylinder_count = fa.size();
      seq.records.push_back(std::move(r));
    }
    if (stable) return seq;
  }
}

}  // namespace blspec
