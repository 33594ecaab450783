#include <random>

#include <gmpxx.h>
#include <gtest/gtest.h>

#include "blspec/spectrum.hpp"
#include "support/oracles.hpp"

namespace blspec {
namespace {

QuadraticSurd S(std::string_view text) { return parse_surd(text); }
using Q = std::vector<Quotient>;

constexpr mp_bitcnt_t kBits = 256;

mpf_class approx(const QuadraticSurd& x) {
  mpf_class r(mpf_class(x.d(), kBits));
  r = sqrt(r);
  mpf_class out(mpf_class(x.a(), kBits) + mpf_class(x.b(), kBits) * r, kBits);
  out /= mpf_class(x.c(), kBits);
  return out;
}

// limsup of 1/v_k + t_k and liminf of 1 + t_k v_k by floating evaluation deep
// inside the expansion: v_k from the recursion, t_k from a long tail.
std::pair<mpf_class, mpf_class> float_bl(const Q& period) {
  const std::size_t L = period.size();
  const std::size_t depth = 200 * L;
  auto digit = [&](std::size_t k) { return period[(k - 1) % L]; };  // b_k, k >= 1
  std::vector<mpf_class> v(depth + 1, mpf_class(0, kBits));
  mpf_class q_prev(1, kBits), q(digit(1), kBits);
  v[1] = q_prev / q;
  for (std::size_t k = 2; k <= depth; ++k) {
    const mpf_class next = mpf_class(digit(k), kBits) * q + q_prev;
    q_prev = q;
    q = next;
    v[k] = q_prev / q;
  }
  mpf_class best_up(0, kBits), best_low(1e9, kBits);
  for (std::size_t k = depth - 2 * L; k < depth - L; ++k) {
    mpf_class t(0, kBits);
    for (std::size_t j = k + 400; j > k; --j) t = 1 / (mpf_class(digit(j), kBits) + t);
    const mpf_class up = 1 / v[k] + t;
    const mpf_class low = 1 + t * v[k];
    if (up > best_up) best_up = up;
    if (low < best_low) best_low = low;
  }
  return {best_up, best_low};
}

TEST(BlExactRotation, Examples) {
  const BLExact golden = bl_exact_rotation(parse_cf("[0;|1]"));
  EXPECT_EQ(*golden.B.value, S("sqrt(5)"));
  EXPECT_EQ(golden.Bprime, S("(5-sqrt(5))/2"));
  const BLExact silver = bl_exact_rotation(parse_cf("[0;|2]"));
  EXPECT_EQ(*silver.B.value, S("2*sqrt(2)"));
  EXPECT_EQ(silver.Bprime, S("4-2*sqrt(2)"));
  const BLExact three = bl_exact_rotation(parse_cf("[0;|1,2]"));
  EXPECT_EQ(*three.B.value, S("2*sqrt(3)"));
  EXPECT_EQ(three.Bprime, S("3-sqrt(3)"));
}

TEST(BlExactRotation, PreperiodIsIgnored) {
  EXPECT_EQ(bl_exact_rotation(parse_cf("[0;7,3|1]")).Bprime, S("(5-sqrt(5))/2"));
  EXPECT_THROW(bl_exact_rotation(parse_cf("[0;1,1,1]")), InsufficientQuotients);
}

TEST(BlExactRotation, MatchesFloatingOracle) {
  std::mt19937_64 rng(5);
  const mpf_class tol("1e-40", kBits);
  for (int trial = 0; trial < 20; ++trial) {
    const Q period = testing::random_period(rng, 4, 6);
    const BLExact exact = bl_exact_rotation(ContinuedFraction::periodic({}, period));
    const auto [up, low] = float_bl(period);
    EXPECT_LT(abs(approx(*exact.B.value) - up), tol) << trial;
    EXPECT_LT(abs(approx(exact.Bprime) - low), tol) << trial;
    EXPECT_LE(exact.Bprime, *exact.B.value);
    EXPECT_GE(exact.Bprime, 1);
  }
}

TEST(LagrangeViaConvergents, GoldenTermsAlternateAroundLimit) {
  const LagrangeTrace trace = lagrange_via_convergents(parse_cf("[0;|1]"), 20);
  ASSERT_EQ(trace.exact_terms.size(), 20u);
  const QuadraticSurd root5 = S("sqrt(5)");
  EXPECT_LT(abs(approx(*trace.exact_terms.back()) - approx(root5)), 1e-6);
  // 1/(q_k |q_k alpha - p_k|) = 1 + alpha + q_{k-1}/q_k for the golden angle
  for (std::size_t k = 2; k <= 20; ++k) {
    const bool above = *trace.exact_terms[k - 1] > root5;
    EXPECT_NE(above, *trace.exact_terms[k - 2] > root5) << k;
  }
  EXPECT_EQ(*trace.exact_running_max, *trace.exact_terms[0]);
}

TEST(LagrangeViaConvergents, TermsFromDefinition) {
  const auto cf = parse_cf("[0;|1,2]");
  const QuadraticSurd alpha = cf_value(cf);
  const LagrangeTrace trace = lagrange_via_convergents(cf, 30);
  const auto rows = convergents(cf, 30);
  for (std::size_t k = 1; k <= 30; ++k) {
    QuadraticSurd err = QuadraticSurd(rows[k - 1].q) * alpha - QuadraticSurd(rows[k - 1].p);
    if (err < 0) err = -err;
    EXPECT_EQ(*trace.exact_terms[k - 1], (QuadraticSurd(rows[k - 1].q) * err).inverse());
    EXPECT_TRUE(trace.terms[k - 1].contains(trace.exact_terms[k - 1]->enclose().mid()));
  }
  EXPECT_LT(abs(approx(*trace.exact_tail_max) - approx(S("2*sqrt(3)"))), 1e-9);
}

TEST(LagrangeViaConvergents, TailMaxTracksExactValue) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const auto cf = ContinuedFraction::periodic({}, testing::random_period(rng, 4, 4));
    const LagrangeTrace trace = lagrange_via_convergents(cf, 60);
    const QuadraticSurd B = *bl_exact_rotation(cf).B.value;
    EXPECT_LT(abs(approx(*trace.exact_tail_max) - approx(B)), 1e-9);
    EXPECT_GE(*trace.exact_running_max, *trace.exact_tail_max);
  }
}

TEST(LagrangeViaConvergents, TruncatedEnclosures) {
  const auto truncated = parse_cf("[0;1,2,1,2,1,2,1,2,1,2,1,2,1,2,1,2]");
  const LagrangeTrace trace = lagrange_via_convergents(truncated, 10);
  const LagrangeTrace exact = lagrange_via_convergents(parse_cf("[0;|1,2]"), 10);
  for (std::size_t k = 0; k < 10; ++k) {
    EXPECT_FALSE(trace.exact_terms[k]);
    EXPECT_TRUE(trace.terms[k].contains(exact.exact_terms[k]->enclose().mid())) << k;
  }
  EXPECT_THROW(lagrange_via_convergents(truncated, 16), InsufficientQuotients);
  EXPECT_THROW(lagrange_via_convergents(parse_cf("[0;|1]"), 2), Error);
}

EnSequence synthetic(std::size_t n_max, const std::function<long(std::size_t)>& c) {
  EnSequence seq{RotationParams::from_surd(S("(-1+sqrt(5))/2")), EnMethod::exact_gaps, {}, {}, {}};
  for (std::size_t n = 1; n <= n_max; ++n) {
    EnRecord r;
    r.n = n;
    const QuadraticSurd inv(c(n));
    r.e_exact = (QuadraticSurd(static_cast<long>(n)) * inv).inverse();
    r.e = Enclosure::point(r.e_exact->rational());
    r.inv_exact = inv;
    r.inv = Enclosure::point(inv.rational());
    seq.records.push_back(r);
  }
  return seq;
}

TEST(BlEstimate, ConstantSequence) {
  const SpectrumEstimate est = bl_estimate(synthetic(100, [](std::size_t) { return 2L; }));
  EXPECT_EQ(*est.B_est_exact, 2);
  EXPECT_EQ(*est.Bprime_est_exact, 2);
  EXPECT_EQ(est.B_est.lo, 2);
  EXPECT_EQ(est.Bprime_est.hi, 2);
}

TEST(BlEstimate, PiecewiseSequenceAndWindows) {
  const SpectrumEstimate est = bl_estimate(synthetic(1000, [](std::size_t n) { return n % 3 == 0 ? 5L : 3L; }));
  EXPECT_EQ(*est.B_est_exact, 5);
  EXPECT_EQ(*est.Bprime_est_exact, 3);
  ASSERT_FALSE(est.windows.empty());
  EXPECT_EQ(est.windows.back().lo, 500u);
  EXPECT_EQ(est.windows.back().hi, 1000u);
  EXPECT_EQ(est.windows.front().lo, 1u);
  for (std::size_t i = 1; i < est.windows.size(); ++i) EXPECT_LT(est.windows[i - 1].hi, est.windows[i].hi);
  EXPECT_EQ(est.n_range, (std::pair<std::size_t, std::size_t>{1, 1000}));
  EXPECT_TRUE(est.exact);  // the system is a periodic rotation
}

TEST(BlEstimate, GoldenRotationBruteForce) {
  const auto seq = en_exact(RotationParams::from_cf(parse_cf("[0;|1]")), 10'000);
  const SpectrumEstimate est = bl_estimate(seq);
  const double root5 = std::sqrt(5.0), low = (5 - root5) / 2;
  EXPECT_LT(std::abs(est.B_est.mid().get_d() - root5), 0.03);
  // the last window reaches the Fibonacci n where 1/(n e_n) = 1 + alpha + F_{k-1}/F_k
  EXPECT_LT(est.B_est.hi.get_d() - root5, 1e-7);
  EXPECT_LT(std::abs(est.Bprime_est.mid().get_d() - low) / low, 0.01);
  EXPECT_GE(est.B_est.hi, est.Bprime_est.lo);
}

TEST(BlEstimate, IetLowerFloor) {
  const auto seq = en_exact(IET3Params::make(S("sqrt(2)-1"), S("(2-sqrt(2))/2")), 2000);
  const SpectrumEstimate est = bl_estimate(seq);
  EXPECT_GE(est.Bprime_est.hi.get_d(), 1.95);
  EXPECT_FALSE(est.exact);
}

TEST(PrimitivePeriods, LyndonCounts) {
  // Lyndon words over 3 letters: 3, 3, 8, 18 of lengths 1..4
  EXPECT_EQ(primitive_periods(4, 3).size(), 32u);
  EXPECT_EQ(primitive_periods(1, 5).size(), 5u);
  for (const auto& w : primitive_periods(6, 2)) {
    for (std::size_t r = 1; r < w.size(); ++r) {
      Q rotated(w.begin() + static_cast<long>(r), w.end());
      rotated.insert(rotated.end(), w.begin(), w.begin() + static_cast<long>(r));
      EXPECT_LT(w, rotated);
    }
  }
}

TEST(ScanRotationUpper, Examples) {
  const auto one = scan_rotation_upper(1, 1);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0], S("sqrt(5)"));
  const auto two = scan_rotation_upper(2, 2);
  ASSERT_GE(two.size(), 2u);
  EXPECT_EQ(two[0], S("sqrt(5)"));
  EXPECT_EQ(two[1], S("2*sqrt(2)"));
  for (const auto& x : scan_rotation_upper(3, 3)) {
    EXPECT_FALSE(x > S("sqrt(5)") && x < S("2*sqrt(2)")) << x.to_string();
  }
}

TEST(ScanRotationUpper, AgreesWithAllPeriods) {
  std::set<std::string> expect;
  std::vector<QuadraticSurd> values;
  for (Quotient a = 1; a <= 3; ++a) {
    for (Quotient b = 1; b <= 3; ++b) {
      values.push_back(*bl_exact_rotation(ContinuedFraction::periodic({}, {a, b})).B.value);
    }
  }
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  EXPECT_EQ(scan_rotation_upper(2, 3), values);
}

TEST(ScanRotationLower, Examples) {
  const auto two = scan_rotation_lower(2, 2);
  ASSERT_GE(two.size(), 2u);
  EXPECT_EQ(two.back(), S("(5-sqrt(5))/2"));
  EXPECT_EQ(two[two.size() - 2], S("3-sqrt(3)"));
  for (const auto& x : two) {
    EXPECT_FALSE(x > QuadraticSurd(BigRational(5, 4)) && x < S("3-sqrt(3)")) << x.to_string();
  }
  const auto four = scan_rotation_lower(4, 4);
  EXPECT_TRUE(std::binary_search(four.begin(), four.end(), S("(16-4*sqrt(6))/5")));
  const auto wide = scan_rotation_lower(1, 20);
  EXPECT_LT(wide.front(), QuadraticSurd(BigRational(101, 100)));
  EXPECT_GE(wide.front(), 1);
}

TEST(Scans, ThreadCountDoesNotMatter) {
  EXPECT_EQ(scan_rotation_lower(4, 3, 1), scan_rotation_lower(4, 3, 6));
  EXPECT_EQ(scan_rotation_upper(3, 4, 1), scan_rotation_upper(3, 4, 3));
  EXPECT_THROW(scan_rotation_upper(0, 2), Error);
}

TEST(TribonacciReference, Examples) {
  const Enclosure fine = tribonacci_B_reference(BigRational(1, 10000));
  EXPECT_LE(fine.width(), BigRational(1, 10000));
  EXPECT_LT(std::abs(fine.mid().get_d() - 8.4445), 1e-4);
  const Enclosure coarse = tribonacci_B_reference(BigRational(1));
  EXPECT_TRUE(coarse.contains(BigRational(84445, 10000)));
  const double y = 1.8392868;
  EXPECT_LT(std::abs(fine.mid().get_d() - (2 * y * y + 4 * y / (y * y + 1))), 1e-3);
  EXPECT_TRUE(coarse.contains(fine.lo) && coarse.contains(fine.hi));
}

TEST(ComplexityLowerBounds, Examples) {
  using Profile = std::vector<std::pair<std::size_t, std::size_t>>;
  Profile rot, iet;
  for (std::size_t n = 1; n <= 100; ++n) {
    rot.emplace_back(n, n + 1);
    iet.emplace_back(n, 2 * n + 1);
  }
  EXPECT_EQ(complexity_lower_bounds(rot), (std::pair<BigRational, BigRational>{1, 1}));
  EXPECT_EQ(complexity_lower_bounds(iet), (std::pair<BigRational, BigRational>{2, 2}));
  EXPECT_EQ(complexity_lower_bounds(Profile{{1, 3}}).first, 2);
  EXPECT_EQ(complexity_lower_bounds(complexity_profile(ARParams::tribonacci(), 40)).second, 2);
}

}  // namespace
}  // namespace blspec
