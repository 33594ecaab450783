#include "blspec/cylinders.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string_view>
#include <unordered_set>

#include "blspec/parallel.hpp"

namespace blspec {
namespace {

// Sign of A - B * alpha for integers A, B. Exact angles are compared
// exactly; truncated angles through a rational inside the range of all
// continuations, where the order of the first n points cannot change.
class AngleOracle {
 public:
  explicit AngleOracle(const RotationParams& p) {
    if (p.is_exact()) {
      const QuadraticSurd& a = p.alpha();
      a_ = a.a();
      b_ = a.b();
      c_ = a.c();
      d_ = a.d();
    } else {
      // mediant of the two Farey neighbours bounding every continuation
      const Enclosure range = cf_angle_range(p.cf());
      a_ = range.lo.get_num() + range.hi.get_num();
      c_ = range.lo.get_den() + range.hi.get_den();
      b_ = 0;
      d_ = 0;
    }
  }

  int sign_lin(std::int64_t A, std::int64_t B) const {
    // (A c - B a - B b sqrt(d)) / c
    tmp_x_ = c_;
    tmp_x_ *= A;
    tmp_y_ = a_;
    tmp_y_ *= B;
    tmp_x_ -= tmp_y_;
    const int sx = mpz_sgn(tmp_x_.get_mpz_t());
    if (b_ == 0 || B == 0) return sx;
    tmp_y_ = b_;
    tmp_y_ *= -B;
    const int sy = mpz_sgn(tmp_y_.get_mpz_t());
    if (sx == 0 || sx == sy) return sy;
    tmp_x_ *= tmp_x_;
    tmp_y_ *= tmp_y_;
    tmp_y_ *= d_;
    const int cmp = mpz_cmp(tmp_x_.get_mpz_t(), tmp_y_.get_mpz_t());
    return cmp > 0 ? sx : (cmp < 0 ? sy : 0);
  }

  // floor(j * alpha)
  std::int64_t floor_multiple(std::int64_t j) const {
    const QuadraticSurd value(BigInt(a_ * j), BigInt(b_ * j), c_, d_);
    return surd_floor(value).get_si();
  }

 private:
  BigInt a_, b_, c_, d_;
  mutable BigInt tmp_x_, tmp_y_;
};

// value m - j alpha
struct LinearPoint {
  std::int64_t m;
  std::int64_t j;
};

struct RotationStep {
  std::vector<LinearPoint> gap_types;  // distinct gap values, smallest first
  std::size_t cylinders;
};

// Inserts -j alpha mod 1 for j = 1..n_max one at a time and reports the
// distinct gap values after each insertion.
void scan_rotation(const RotationParams& p, std::size_t n_max,
                   const std::function<void(std::size_t, const RotationStep&)>& visit) {
  if (!p.is_exact()) {
    const auto rows = convergents(p.cf(), p.cf().preperiod().size());
    const BigInt& q_last = rows.back().q;
    if (BigInt(static_cast<long>(n_max)) >= q_last) {
      throw InsufficientQuotients("truncated angle " + p.cf().to_string() + " resolves lengths n < " +
                                  q_last.get_str() + " only; n_max = " + std::to_string(n_max));
    }
  }
  const AngleOracle oracle(p);
  auto less = [&](const LinearPoint& x, const LinearPoint& y) {
    return oracle.sign_lin(x.m - y.m, x.j - y.j) < 0;
  };
  std::set<LinearPoint, decltype(less)> points(less);
  std::map<LinearPoint, std::size_t, decltype(less)> gaps(less);
  points.insert({0, 0});
  points.insert({1, 0});  // sentinel for the right end of [0, 1)
  gaps[{1, 0}] = 1;

  for (std::size_t n = 1; n <= n_max; ++n) {
    const auto j = static_cast<std::int64_t>(n);
    const LinearPoint pt{oracle.floor_multiple(j) + 1, j};
    auto [it, inserted] = points.insert(pt);
    if (!inserted) throw DegenerateInput("coincident rotation breakpoints at n = " + std::to_string(n));
    const LinearPoint lo = *std::prev(it);
    const LinearPoint hi = *std::next(it);
    const LinearPoint old_gap{hi.m - lo.m, hi.j - lo.j};
    auto g = gaps.find(old_gap);
    if (g == gaps.end()) throw Error("internal: gap bookkeeping out of sync");
    if (--g->second == 0) gaps.erase(g);
    ++gaps[{pt.m - lo.m, pt.j - lo.j}];
    ++gaps[{hi.m - pt.m, hi.j - pt.j}];

    RotationStep step;
    step.cylinders = points.size() - 1;
    for (const auto& [gap, count] : gaps) step.gap_types.push_back(gap);
    visit(n, step);
  }
}

// Inserts T^-j {alpha, alpha + beta} for j = 0..n_max-1 and reports the
// smallest gap after each length.
void scan_iet3(const IET3Params& p, std::size_t n_max,
               const std::function<void(std::size_t, const QuadraticSurd&, std::size_t)>& visit) {
  std::set<QuadraticSurd> points{QuadraticSurd(0), QuadraticSurd(1)};
  std::map<QuadraticSurd, std::size_t> gaps{{QuadraticSurd(1), 1}};
  auto insert = [&](const QuadraticSurd& x, std::size_t n) {
    auto [it, inserted] = points.insert(x);
    if (!inserted) {
      throw DegenerateInput("discontinuity orbits meet at n = " + std::to_string(n) +
                            " (point " + x.to_string() + ")");
    }
    const QuadraticSurd& lo = *std::prev(it);
    const QuadraticSurd& hi = *std::next(it);
    auto g = gaps.find(hi - lo);
    if (g == gaps.end()) throw Error("internal: gap bookkeeping out of sync");
    if (--g->second == 0) gaps.erase(g);
    ++gaps[x - lo];
    ++gaps[hi - x];
  };
  QuadraticSurd first = p.alpha;
  QuadraticSurd second = p.alpha + p.beta;
  for (std::size_t n = 1; n <= n_max; ++n) {
    if (n > 1) {
      first = p.preimage(first);
      second = p.preimage(second);
    }
    insert(first, n);
    insert(second, n);
    visit(n, gaps.begin()->first, points.size() - 1);
  }
}

EnRecord exact_record(std::size_t n, const QuadraticSurd& e, std::size_t cylinders, unsigned bits) {
  EnRecord r;
  r.n = n;
  r.e_exact = e;
  r.e = e.enclose(bits);
  r.inv_exact = (QuadraticSurd(static_cast<long>(n)) * e).inverse();
  r.inv = r.inv_exact->enclose(bits);
  r.cylinder_count = cylinders;
  return r;
}

Enclosure invert(const Enclosure& e, std::size_t n) {
  const BigRational nn(static_cast<long>(n));
  return {1 / (nn * e.hi), 1 / (nn * e.lo)};
}

}  // namespace

EnSequence en_exact(const SystemSpec& system, std::size_t n_max, const ExactOptions& options) {
  if (n_max < 1) throw Error("n_max must be >= 1");
  if (n_max > options.max_n) {
    throw BudgetExceeded("n_max = " + std::to_string(n_max) + " exceeds the exact-gap budget " +
                         std::to_string(options.max_n));
  }
  EnSequence seq{system, EnMethod::exact_gaps, {}, std::nullopt, std::nullopt};
  seq.records.resize(n_max);

  if (const auto* rot = std::get_if<RotationParams>(&system)) {
    std::vector<RotationStep> steps(n_max);
    scan_rotation(*rot, n_max, [&](std::size_t n, const RotationStep& s) { steps[n - 1] = s; });
    if (rot->is_exact()) {
      const QuadraticSurd& alpha = rot->alpha();
      parallel_for(n_max, options.threads, [&](std::size_t i) {
        const LinearPoint g = steps[i].gap_types.front();
        const QuadraticSurd e = QuadraticSurd(static_cast<long>(g.m)) - QuadraticSurd(static_cast<long>(g.j)) * alpha;
        seq.records[i] = exact_record(i + 1, e, steps[i].cylinders, options.enclosure_bits);
      });
    } else {
      const Enclosure range = cf_angle_range(rot->cf());
      parallel_for(n_max, options.threads, [&](std::size_t i) {
        // each gap m - j alpha is linear in alpha: bound it at both ends
        std::optional<BigRational> lo, hi;
        for (const LinearPoint& g : steps[i].gap_types) {
          BigRational at_lo = BigRational(g.m) - BigRational(g.j) * range.lo;
          BigRational at_hi = BigRational(g.m) - BigRational(g.j) * range.hi;
          if (at_lo > at_hi) std::swap(at_lo, at_hi);
          if (!lo || at_lo < *lo) lo = at_lo;
          if (!hi || at_hi < *hi) hi = at_hi;
        }
        EnRecord r;
        r.n = i + 1;
        r.e = {*lo, *hi};
        r.inv = invert(r.e, r.n);
        r.cylinder_count = steps[i].cylinders;
        seq.records[i] = std::move(r);
      });
    }
    return seq;
  }

  if (const auto* iet = std::get_if<IET3Params>(&system)) {
    const IdocResult screen = idoc_screen(*iet, 1000);
    if (!screen.pass) {
      const auto& w = *screen.witness;
      throw DegenerateInput("alpha, beta fail the i.d.o.c. screening: relation with p = " +
                            std::to_string(w.p) + ", q = " + std::to_string(w.q));
    }
    std::vector<std::optional<QuadraticSurd>> smallest(n_max);
    std::vector<std::size_t> counts(n_max);
    scan_iet3(*iet, n_max, [&](std::size_t n, const QuadraticSurd& e, std::size_t c) {
      smallest[n - 1] = e;
      counts[n - 1] = c;
    });
    parallel_for(n_max, options.threads, [&](std::size_t i) {
      seq.records[i] = exact_record(i + 1, *smallest[i], counts[i], options.enclosure_bits);
    });
    return seq;
  }
  throw Error("en_exact handles rotations and three-interval exchanges; use en_counted for Arnoux-Rauzy");
}

std::vector<std::pair<std::size_t, std::size_t>> complexity_profile(const SystemSpec& system,
                                                                    std::size_t n_max) {
  if (n_max < 1) throw Error("n_max must be >= 1");
  std::vector<std::pair<std::size_t, std::size_t>> profile;
  profile.reserve(n_max);
  if (const auto* rot = std::get_if<RotationParams>(&system)) {
    scan_rotation(*rot, n_max, [&](std::size_t n, const RotationStep& s) { profile.emplace_back(n, s.cylinders); });
    return profile;
  }
  if (const auto* iet = std::get_if<IET3Params>(&system)) {
    scan_iet3(*iet, n_max, [&](std::size_t n, const QuadraticSurd&, std::size_t c) { profile.emplace_back(n, c); });
    return profile;
  }
  const auto& ar = std::get<ARParams>(system);
  const std::uint64_t wanted = std::max<std::uint64_t>(10'000, 1000 * static_cast<std::uint64_t>(n_max));
  std::size_t level = 0;
  while (ar_lengths(ar, level).H < wanted) {
    if (level >= ar.depth) break;
    ++level;
  }
  const Word h = ar_build(ar, level, 10 * wanted + 1000).H;
  const std::string_view view(h);
  for (std::size_t n = 1; n <= n_max; ++n) {
    std::unordered_set<std::string_view> factors;
    for (std::size_t s = 0; s + n <= view.size(); ++s) factors.insert(view.substr(s, n));
    profile.emplace_back(n, factors.size());
  }
  return profile;
}

std::string en_to_csv(const EnSequence& seq, unsigned threads) {
  constexpr int kDigits = 20;
  std::vector<std::string> rows(seq.records.size());
  parallel_for(seq.records.size(), threads, [&](std::size_t i) {
    const EnRecord& r = seq.records[i];
    std::string row = std::to_string(r.n) + ",";
    if (r.e_exact) row += r.e_exact->to_string();
    row += "," + to_decimal_sig(r.e.lo, kDigits, Rounding::down);
    row += "," + to_decimal_sig(r.e.hi, kDigits, Rounding::up);
    row += "," + to_decimal_sig(r.inv.lo, kDigits, Rounding::down);
    row += "," + to_decimal_sig(r.inv.hi, kDigits, Rounding::up);
    row += "," + std::to_string(r.cylinder_count) + "\n";
    rows[i] = std::move(row);
  });
  std::string out = "n,e_n_exact,e_n_lo,e_n_hi,inv_nen_lo,inv_nen_hi,cylinder_count\n";
  for (const auto& row : rows) out += row;
  return out;
}

}  // namespace blspec
