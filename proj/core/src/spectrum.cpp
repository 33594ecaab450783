#include "blspec/spectrum.hpp"

#include <algorithm>

#include "blspec/parallel.hpp"

namespace blspec {
namespace {

QuadraticSurd abs_surd(const QuadraticSurd& x) { return x.sign() < 0 ? -x : x; }

// [0; seq, seq, ...] with seq starting at position `start` and read forwards
// or backwards through the period.
QuadraticSurd periodic_from(const std::vector<Quotient>& period, std::size_t start, bool backwards) {
  const std::size_t r = period.size();
  std::vector<Quotient> seq(r);
  for (std::size_t i = 0; i < r; ++i) {
    seq[i] = backwards ? period[(start + r - i) % r] : period[(start + i) % r];
  }
  return cf_eval_periodic(seq);
}

}  // namespace

BLExact bl_exact_rotation(const ContinuedFraction& cf) {
  if (!cf.is_periodic()) {
    throw InsufficientQuotients("exact invariants need an eventually periodic expansion, got " + cf.to_string());
  }
  const auto& period = cf.period();
  const std::size_t r = period.size();
  std::optional<QuadraticSurd> upper, lower;
  for (std::size_t i = 0; i < r; ++i) {
    // limits of t_k = [0; b_{k+1}, ...] and v_k = [0; b_k, b_{k-1}, ...] for b_k = period[i]
    const QuadraticSurd t = periodic_from(period, i + 1, false);
    const QuadraticSurd v = periodic_from(period, i, true);
    const QuadraticSurd up = v.inverse() + t;
    const QuadraticSurd low = QuadraticSurd(1) + t * v;
    if (!upper || up > *upper) upper = up;
    if (!lower || low < *lower) lower = low;
  }
  return {ExtendedSurd{upper}, *lower};
}

LagrangeTrace lagrange_via_convergents(const ContinuedFraction& cf, std::size_t K) {
  if (K < 3) throw Error("lagrange_via_convergents needs K >= 3");
  if (cf.is_truncated() && K >= cf.available()) {
    throw InsufficientQuotients("K = " + std::to_string(K) + " needs more than the " +
                                std::to_string(cf.available()) + " known quotients");
  }
  const ConvergentTable rows = convergents(cf, K);
  LagrangeTrace trace;
  std::optional<QuadraticSurd> alpha;
  Enclosure range;
  if (cf.is_periodic()) {
    alpha = cf_value(cf);
  } else {
    range = cf_angle_range(cf);
  }
  for (const auto& row : rows) {
    if (alpha) {
      const QuadraticSurd dist = abs_surd(QuadraticSurd(row.q) * *alpha - QuadraticSurd(row.p));
      const QuadraticSurd term = (QuadraticSurd(row.q) * dist).inverse();
      trace.terms.push_back(term.enclose());
      trace.exact_terms.push_back(term);
    } else {
      // q alpha - p keeps its sign over the range, so |.| is extreme at the ends
      BigRational a = abs(BigRational(row.q) * range.lo - BigRational(row.p));
      BigRational b = abs(BigRational(row.q) * range.hi - BigRational(row.p));
      if (a > b) std::swap(a, b);
      const BigRational q(row.q);
      trace.terms.push_back({1 / (q * b), 1 / (q * a)});
      trace.exact_terms.emplace_back();
    }
  }
  auto fold = [&](std::size_t from, Enclosure& out, std::optional<QuadraticSurd>& exact) {
    out = trace.terms[from];
    exact = trace.exact_terms[from];
    for (std::size_t i = from + 1; i < trace.terms.size(); ++i) {
      out.lo = std::max(out.lo, trace.terms[i].lo);
      out.hi = std::max(out.hi, trace.terms[i].hi);
      if (exact && *trace.exact_terms[i] > *exact) exact = trace.exact_terms[i];
    }
  };
  fold(0, trace.running_max, trace.exact_running_max);
  fold(K / 2, trace.tail_max, trace.exact_tail_max);
  return trace;
}

SpectrumEstimate bl_estimate(const EnSequence& seq) {
  if (seq.records.empty()) throw Error("bl_estimate needs a non-empty sequence");
  const std::size_t n_max = seq.records.size();
  SpectrumEstimate est{seq.system, {1, n_max}, {}, {}, {}, std::nullopt, std::nullopt, std::nullopt, std::nullopt};
  for (std::size_t i = 0; (n_max >> i) >= 1; ++i) {
    const std::size_t hi = n_max >> i;
    const std::size_t lo = std::max<std::size_t>(1, (n_max + (std::size_t{1} << (i + 1)) - 1) >> (i + 1));
    WindowStat w;
    w.lo = lo;
    w.hi = hi;
    bool exact = true;
    for (std::size_t n = lo; n <= hi; ++n) {
      const EnRecord& r = seq.records[n - 1];
      if (r.n != n) throw Error("e_n records out of order");
      if (n == lo) {
        w.sup = r.inv;
        w.inf = r.inv;
      } else {
        w.sup.lo = std::max(w.sup.lo, r.inv.lo);
        w.sup.hi = std::max(w.sup.hi, r.inv.hi);
        w.inf.lo = std::min(w.inf.lo, r.inv.lo);
        w.inf.hi = std::min(w.inf.hi, r.inv.hi);
      }
      exact = exact && r.inv_exact.has_value();
      if (!exact) continue;
      if (!w.exact_sup || *r.inv_exact > *w.exact_sup) w.exact_sup = r.inv_exact;
      if (!w.exact_inf || *r.inv_exact < *w.exact_inf) w.exact_inf = r.inv_exact;
    }
    if (!exact) {
      w.exact_sup.reset();
      w.exact_inf.reset();
    }
    est.windows.push_back(std::move(w));
    if (lo == 1) break;
  }
  std::reverse(est.windows.begin(), est.windows.end());
  const WindowStat& last = est.windows.back();
  est.B_est = last.sup;
  est.Bprime_est = last.inf;
  est.B_est_exact = last.exact_sup;
  est.Bprime_est_exact = last.exact_inf;
  if (const auto* rot = std::get_if<RotationParams>(&seq.system); rot && rot->cf().is_periodic()) {
    est.exact = bl_exact_rotation(rot->cf());
  }
  return est;
}

std::vector<std::vector<Quotient>> primitive_periods(std::size_t max_length, Quotient max_digit) {
  if (max_length < 1) throw Error("max_period must be >= 1");
  if (max_digit < 1) throw Error("max_digit must be >= 1");
  std::vector<std::vector<Quotient>> out;
  std::vector<Quotient> w{1};
  while (!w.empty()) {
    out.push_back(w);
    const std::size_t m = w.size();
    while (w.size() < max_length) w.push_back(w[w.size() - m]);
    while (!w.empty() && w.back() == max_digit) w.pop_back();
    if (!w.empty()) ++w.back();
  }
  return out;
}

namespace {

std::vector<QuadraticSurd> scan(std::size_t max_period, Quotient max_digit, unsigned threads, bool upper) {
  const auto periods = primitive_periods(max_period, max_digit);
  std::vector<std::optional<QuadraticSurd>> values(periods.size());
  parallel_for(periods.size(), threads, [&](std::size_t i) {
    const BLExact bl = bl_exact_rotation(ContinuedFraction::periodic({}, periods[i]));
    values[i] = upper ? bl.B.value : std::optional<QuadraticSurd>(bl.Bprime);
  });
  std::vector<QuadraticSurd> out;
  for (auto& v : values) {
    if (v) out.push_back(std::move(*v));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

std::vector<QuadraticSurd> scan_rotation_upper(std::size_t max_period, Quotient max_digit, unsigned threads) {
  return scan(max_period, max_digit, threads, true);
}

std::vector<QuadraticSurd> scan_rotation_lower(std::size_t max_period, Quotient max_digit, unsigned threads) {
  return scan(max_period, max_digit, threads, false);
}

Enclosure tribonacci_B_reference(const BigRational& eps) {
  if (eps <= 0) throw Error("eps must be positive");
  const RootEnclosure bracket{{BigInt(-1), BigInt(-1), BigInt(-1), BigInt(1)}, BigRational(1), BigRational(2)};
  // increasing on [1, 2]
  auto f = [](const BigRational& y) {
    const BigRational y2 = y * y;
    return BigRational(2 * y2 + 4 * y / (y2 + 1));
  };
  BigRational step = eps / 16;
  for (;;) {
    const RootEnclosure root = refine_root(bracket, step);
    Enclosure out{f(root.low), f(root.high)};
    if (out.width() <= eps) return out;
    step /= 2;
  }
}

std::pair<BigRational, BigRational> complexity_lower_bounds(
    const std::vector<std::pair<std::size_t, std::size_t>>& profile) {
  if (profile.empty()) throw Error("empty complexity profile");
  const std::size_t n_max = profile.back().first;
  const std::size_t start = (n_max + 1) / 2;
  std::vector<std::pair<std::size_t, std::size_t>> window;
  for (const auto& pt : profile) {
    if (pt.first >= start) window.push_back(pt);
  }
  if (window.size() < 2) {
    // p(0) = 1 counts the empty word
    BigRational slope(BigInt(static_cast<long>(profile.back().second) - 1), BigInt(static_cast<long>(n_max)));
    slope.canonicalize();
    return {slope, slope};
  }
  const auto [m, pm] = window.front();
  std::optional<BigRational> hi, lo;
  for (std::size_t i = 1; i < window.size(); ++i) {
    BigRational slope(BigInt(static_cast<long>(window[i].second) - static_cast<long>(pm)),
                      BigInt(static_cast<long>(window[i].first - m)));
    slope.canonicalize();
    if (!hi || slope > *hi) hi = slope;
    if (!lo || slope < *lo) lo = slope;
  }
  return {*hi, *lo};
}

}  // namespace blspec
