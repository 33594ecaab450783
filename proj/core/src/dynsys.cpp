#include "blspec/dynsys.hpp"

#include <algorithm>
#include <limits>
#include <tuple>

namespace blspec {

RotationParams RotationParams::from_surd(const QuadraticSurd& alpha) {
  if (alpha.is_rational()) throw RationalInput("rotation angle " + alpha.to_string() + " is rational");
  if (alpha.sign() <= 0 || alpha >= QuadraticSurd(1)) {
    throw Error("rotation angle must lie in (0, 1), got " + alpha.to_string());
  }
  RotationParams p;
  p.alpha_ = alpha;
  p.cf_ = cf_expand(alpha);
  return p;
}

RotationParams RotationParams::from_cf(const ContinuedFraction& cf) {
  if (cf.integer_part() != 0) throw Error("rotation angle must lie in (0, 1): integer part must be 0");
  if (cf.is_truncated() && cf.preperiod().empty()) {
    throw InsufficientQuotients("truncated rotation angle needs at least one partial quotient");
  }
  RotationParams p;
  p.cf_ = cf;
  p.given_as_cf_ = true;
  if (cf.is_periodic()) p.alpha_ = cf_value(cf);
  return p;
}

const QuadraticSurd& RotationParams::alpha() const {
  if (!alpha_) throw Error("rotation angle " + cf_.to_string() + " is only known as a truncated expansion");
  return *alpha_;
}

// ---------------------------------------------------------------------------

IET3Params IET3Params::make(const QuadraticSurd& alpha, const QuadraticSurd& beta) {
  if (alpha.sign() <= 0 || beta.sign() <= 0) throw Error("three-interval exchange needs alpha, beta > 0");
  if (alpha + beta >= QuadraticSurd(1)) throw Error("three-interval exchange needs alpha + beta < 1");
  return {alpha, beta};
}

bool IET3Params::strict_region() const {
  return alpha < QuadraticSurd(BigRational(1, 2)) && alpha + alpha + beta > QuadraticSurd(1);
}

char IET3Params::letter(const QuadraticSurd& x) const {
  if (x < alpha) return '1';
  if (x < alpha + beta) return '2';
  return '3';
}

QuadraticSurd IET3Params::map(const QuadraticSurd& x) const {
  switch (letter(x)) {
    case '1':
      return x + QuadraticSurd(1) - alpha;
    case '2':
      return x + QuadraticSurd(1) - alpha - alpha - beta;
    default:
      return x - alpha - beta;
  }
}

QuadraticSurd IET3Params::preimage(const QuadraticSurd& y) const {
  const QuadraticSurd one(1);
  if (y < one - alpha - beta) return y + alpha + beta;
  if (y < one - alpha) return y - one + alpha + alpha + beta;
  return y - one + alpha;
}

// ---------------------------------------------------------------------------

std::int64_t Schedule::at(std::size_t n) const {
  if (n == 0) throw Error("schedules are indexed from 1");
  if (n <= prefix.size()) return prefix[n - 1];
  if (period.empty()) {
    throw InsufficientQuotients("schedule has only " + std::to_string(prefix.size()) +
                                " entries, entry " + std::to_string(n) + " requested");
  }
  return period[(n - 1 - prefix.size()) % period.size()];
}

std::string Schedule::to_string() const {
  auto join = [](const std::vector<std::int64_t>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
  };
  if (period.empty()) return join(prefix);
  if (prefix.empty()) return join(period) + "(periodic)";
  return join(prefix) + "|" + join(period);
}

IndexSet IndexSet::arith(std::int64_t first, std::int64_t step) {
  if (first < 1 || step < 1) throw Error("arith(first, step) needs first >= 1 and step >= 1");
  IndexSet s;
  s.arithmetic = {first, step};
  return s;
}

IndexSet IndexSet::list(std::vector<std::int64_t> indices) {
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] < 1 || (i > 0 && indices[i] <= indices[i - 1])) {
      throw Error("n_i must be positive and strictly increasing");
    }
  }
  IndexSet s;
  s.explicit_indices = std::move(indices);
  return s;
}

bool IndexSet::contains(std::int64_t n) const {
  if (arithmetic) {
    const auto [first, step] = *arithmetic;
    return n >= first && (n - first) % step == 0;
  }
  return std::binary_search(explicit_indices.begin(), explicit_indices.end(), n);
}

std::string IndexSet::to_string() const {
  if (arithmetic) {
    return "arith(" + std::to_string(arithmetic->first) + "," + std::to_string(arithmetic->second) + ")";
  }
  std::string s;
  for (std::size_t i = 0; i < explicit_indices.size(); ++i) {
    s += (i ? "," : "") + std::to_string(explicit_indices[i]);
  }
  return s;
}

ARParams ARParams::tribonacci() {
  ARParams p;
  p.k.period = {1};
  p.ni = IndexSet::arith(1, 1);
  return p;
}

// ---------------------------------------------------------------------------

std::vector<QuadraticSurd> rotation_breakpoints(const RotationParams& p, std::size_t n) {
  if (n < 1) throw Error("rotation_breakpoints needs n >= 1");
  const QuadraticSurd& alpha = p.alpha();
  std::vector<QuadraticSurd> points;
  points.reserve(n + 1);
  points.emplace_back(0);
  for (std::size_t j = 1; j <= n; ++j) {
    // -j alpha mod 1 = ceil(j alpha) - j alpha
    const QuadraticSurd ja = QuadraticSurd(static_cast<long>(j)) * alpha;
    points.push_back(QuadraticSurd(BigInt(surd_floor(ja) + 1)) - ja);
  }
  std::sort(points.begin(), points.end());
  if (std::adjacent_find(points.begin(), points.end()) != points.end()) {
    throw DegenerateInput("coincident rotation breakpoints: the angle behaves like a rational");
  }
  return points;
}

std::vector<QuadraticSurd> iet3_breakpoints(const IET3Params& p, std::size_t n) {
  if (n < 1) throw Error("iet3_breakpoints needs n >= 1");
  std::vector<QuadraticSurd> points;
  points.reserve(2 * n + 1);
  points.emplace_back(0);
  QuadraticSurd first = p.alpha;
  QuadraticSurd second = p.alpha + p.beta;
  for (std::size_t j = 0; j < n; ++j) {
    if (j > 0) {
      first = p.preimage(first);
      second = p.preimage(second);
    }
    points.push_back(first);
    points.push_back(second);
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  if (points.size() != 2 * n + 1) {
    throw DegenerateInput("only " + std::to_string(points.size()) + " distinct breakpoints for n = " +
                          std::to_string(n) + " (expected " + std::to_string(2 * n + 1) +
                          "): the discontinuity orbits meet");
  }
  return points;
}

namespace {

struct Split {
  BigRational rational;
  BigRational irrational;  // coefficient of sqrt(d)
};

Split split(const QuadraticSurd& x) {
  BigRational r(x.a(), x.c());
  BigRational i(x.b(), x.c());
  r.canonicalize();
  i.canonicalize();
  return {r, i};
}

}  // namespace

IdocResult idoc_screen(const IET3Params& p, std::int64_t bound) {
  if (bound < 1) throw Error("idoc_screen needs bound >= 1");
  // p alpha + q beta = p - q + e  <=>  p (alpha - 1) + q (beta + 1) = e
  const Split u = split(p.alpha - QuadraticSurd(1));
  const Split w = split(p.beta + QuadraticSurd(1));
  if (!p.alpha.is_rational() && !p.beta.is_rational() && p.alpha.d() != p.beta.d()) {
    throw MixedFieldError("alpha and beta must share a quadratic field");
  }
  constexpr std::pair<int, IdocForm> kForms[] = {
      {0, IdocForm::p_minus_q}, {1, IdocForm::p_minus_q_plus_1}, {-1, IdocForm::p_minus_q_minus_1}};

  std::optional<IdocWitness> best;
  auto offer = [&](std::int64_t a, std::int64_t b, IdocForm form) {
    if ((a == 0 && b == 0) || std::llabs(a) > bound || std::llabs(b) > bound) return;
    const IdocWitness cand{a, b, form};
    auto key = [](const IdocWitness& x) {
      return std::make_tuple(std::max(std::llabs(x.p), std::llabs(x.q)), static_cast<int>(x.form), x.p, x.q);
    };
    if (!best || key(cand) < key(*best)) best = cand;
  };

  if (u.irrational == 0 && w.irrational == 0) {
    for (const auto& [e, form] : kForms) {
      for (std::int64_t a = -bound; a <= bound; ++a) {
        BigRational q = (BigRational(e) - BigRational(a) * u.rational) / w.rational;
        q.canonicalize();
        if (q.get_den() != 1 || !q.get_num().fits_slong_p()) continue;
        offer(a, q.get_num().get_si(), form);
      }
    }
  } else {
    // Irrational parts must cancel: (p, q) = t (p0, q0) for the primitive pair.
    BigInt p0, q0;
    if (u.irrational == 0) {
      p0 = 1;
      q0 = 0;
    } else if (w.irrational == 0) {
      p0 = 0;
      q0 = 1;
    } else {
      BigRational ratio = -u.irrational / w.irrational;  // q / p
      ratio.canonicalize();
      p0 = ratio.get_den();
      q0 = ratio.get_num();
    }
    const BigRational s = BigRational(p0) * u.rational + BigRational(q0) * w.rational;
    if (p0.fits_slong_p() && q0.fits_slong_p()) {
      const std::int64_t pp = p0.get_si(), qq = q0.get_si();
      for (const auto& [e, form] : kForms) {
        if (s == 0) {
          if (e == 0) offer(pp, qq, form);
          continue;
        }
        if (e == 0) continue;
        BigRational t = BigRational(e) / s;
        t.canonicalize();
        if (t.get_den() != 1 || !t.get_num().fits_slong_p()) continue;
        const std::int64_t tt = t.get_num().get_si();
        if (tt == 0 || std::llabs(tt) > bound) continue;
        offer(tt * pp, tt * qq, form);
      }
    }
  }
  IdocResult result;
  result.pass = !best.has_value();
  result.witness = best;
  return result;
}

// ---------------------------------------------------------------------------

namespace {

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  return (a > std::numeric_limits<std::uint64_t>::max() - b) ? std::numeric_limits<std::uint64_t>::max() : a + b;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

void check_level(const ARParams& p, std::size_t level) {
  if (level > p.depth) {
    throw Error("level " + std::to_string(level) + " exceeds the configured depth " + std::to_string(p.depth));
  }
}

std::int64_t checked_k(const ARParams& p, std::size_t n) {
  const std::int64_t k = p.k_at(n);
  if (k < 1) throw Error("k_" + std::to_string(n) + " must be >= 1");
  return k;
}

Word repeat(const Word& w, std::int64_t times) {
  Word out;
  out.reserve(w.size() * static_cast<std::size_t>(times));
  for (std::int64_t i = 0; i < times; ++i) out += w;
  return out;
}

}  // namespace

ARLengths ar_lengths(const ARParams& p, std::size_t level) {
  check_level(p, level);
  ARLengths len;
  for (std::size_t n = 0; n < level; ++n) {
    const auto k = static_cast<std::uint64_t>(checked_k(p, n + 1));
    const std::uint64_t hk = sat_mul(len.H, k);
    ARLengths next;
    next.H = sat_add(len.G, hk);
    if (p.ni.contains(static_cast<std::int64_t>(n + 1))) {
      next.G = sat_add(len.J, hk);
      next.J = len.H;
    } else {
      next.G = len.H;
      next.J = sat_add(len.J, hk);
    }
    len = next;
  }
  return len;
}

ARWords ar_build(const ARParams& p, std::size_t level, std::uint64_t budget) {
  const ARLengths len = ar_lengths(p, level);
  const std::uint64_t total = sat_add(sat_add(len.H, len.G), len.J);
  if (total > budget) {
    throw BudgetExceeded("level " + std::to_string(level) + " needs " + std::to_string(total) +
                         " symbols, budget is " + std::to_string(budget));
  }
  ARWords w;
  for (std::size_t n = 0; n < level; ++n) {
    const Word hk = repeat(w.H, checked_k(p, n + 1));
    Word h = w.G + hk;
    if (p.ni.contains(static_cast<std::int64_t>(n + 1))) {
      w.G = w.J + hk;
      w.J = std::move(w.H);
    } else {
      w.G = std::move(w.H);
      w.J += hk;
    }
    w.H = std::move(h);
  }
  w.level = level;
  return w;
}

// ---------------------------------------------------------------------------

Word trajectory(const SystemSpec& system, const QuadraticSurd& x0, std::size_t length) {
  if (x0.sign() < 0 || x0 >= QuadraticSurd(1)) throw Error("trajectory start must lie in [0, 1)");
  Word out;
  out.reserve(length);
  if (const auto* rot = std::get_if<RotationParams>(&system)) {
    const QuadraticSurd& alpha = rot->alpha();
    const QuadraticSurd cut = QuadraticSurd(1) - alpha;
    QuadraticSurd x = x0;
    for (std::size_t i = 0; i < length; ++i) {
      if (x < cut) {
        out += '1';
        x += alpha;
      } else {
        out += '2';
        x -= cut;
      }
    }
    return out;
  }
  if (const auto* iet = std::get_if<IET3Params>(&system)) {
    QuadraticSurd x = x0;
    for (std::size_t i = 0; i < length; ++i) {
      out += iet->letter(x);
      x = iet->map(x);
    }
    return out;
  }
  throw Error("trajectory is defined for rotations and three-interval exchanges only");
}

}  // namespace blspec
