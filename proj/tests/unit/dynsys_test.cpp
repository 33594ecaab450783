#include <random>
#include <set>

#include <gtest/gtest.h>

#include "blspec/dynsys.hpp"
#include "support/oracles.hpp"

namespace blspec {
namespace {

QuadraticSurd S(std::string_view text) { return parse_surd(text); }

std::vector<QuadraticSurd> gaps_of(const std::vector<QuadraticSurd>& points) {
  std::vector<QuadraticSurd> g;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const QuadraticSurd next = i + 1 < points.size() ? points[i + 1] : QuadraticSurd(1);
    g.push_back(next - points[i]);
  }
  return g;
}

RotationParams rot(std::string_view alpha) { return RotationParams::from_surd(S(alpha)); }

TEST(RotationBreakpoints, GoldenOne) {
  const auto pts = rotation_breakpoints(rot("(-1+sqrt(5))/2"), 1);
  ASSERT_EQ(pts.size(), 2u);
  EXPECT_EQ(pts[0], QuadraticSurd(0));
  EXPECT_EQ(pts[1], S("(3-sqrt(5))/2"));
  const auto g = gaps_of(pts);
  EXPECT_EQ(g[0], S("(3-sqrt(5))/2"));
  EXPECT_EQ(g[1], S("(-1+sqrt(5))/2"));
}

TEST(RotationBreakpoints, GoldenTwo) {
  auto g = gaps_of(rotation_breakpoints(rot("(-1+sqrt(5))/2"), 2));
  std::sort(g.begin(), g.end());
  ASSERT_EQ(g.size(), 3u);
  EXPECT_EQ(g[0], S("sqrt(5)-2"));
  EXPECT_EQ(g[1], S("(3-sqrt(5))/2"));
  EXPECT_EQ(g[2], S("(3-sqrt(5))/2"));
}

TEST(RotationBreakpoints, SilverOne) {
  auto g = gaps_of(rotation_breakpoints(rot("sqrt(2)-1"), 1));
  std::sort(g.begin(), g.end());
  EXPECT_EQ(g[0], S("sqrt(2)-1"));
  EXPECT_EQ(g[1], S("2-sqrt(2)"));
}

TEST(RotationParamsType, Validation) {
  EXPECT_THROW(RotationParams::from_surd(S("1/3")), RationalInput);
  EXPECT_THROW(RotationParams::from_surd(S("sqrt(2)")), Error);
  EXPECT_THROW(RotationParams::from_cf(parse_cf("[0;]")), Error);
  const auto truncated = RotationParams::from_cf(parse_cf("[0;1,1,1,1]"));
  EXPECT_FALSE(truncated.is_exact());
  EXPECT_THROW(truncated.alpha(), Error);
  EXPECT_EQ(RotationParams::from_cf(parse_cf("[0;|1]")).alpha(), S("(-1+sqrt(5))/2"));
}

const IET3Params kIet = IET3Params::make(S("sqrt(2)-1"), S("(2-sqrt(2))/2"));

TEST(Iet3Breakpoints, BasePartition) {
  const auto pts = iet3_breakpoints(kIet, 1);
  ASSERT_EQ(pts.size(), 3u);
  EXPECT_EQ(pts[0], QuadraticSurd(0));
  EXPECT_EQ(pts[1], S("sqrt(2)-1"));
  EXPECT_EQ(pts[2], S("sqrt(2)/2"));
  const auto g = gaps_of(pts);
  EXPECT_EQ(g[0] + g[1] + g[2], QuadraticSurd(1));
  EXPECT_EQ(g[0], kIet.alpha);
  EXPECT_EQ(g[1], kIet.beta);
}

TEST(Iet3Breakpoints, RationalInputDegenerates) {
  const auto p = IET3Params::make(S("2/7"), S("3/7"));
  EXPECT_THROW(
      {
        for (std::size_t n = 1; n <= 10; ++n) iet3_breakpoints(p, n);
      },
      DegenerateInput);
}

TEST(Iet3Params, MapAndPreimageInvert) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    const QuadraticSurd x = QuadraticSurd(BigRational(static_cast<long>(rng() % 997), 997));
    EXPECT_EQ(kIet.preimage(kIet.map(x)), x);
    EXPECT_EQ(kIet.map(kIet.preimage(x)), x);
  }
  EXPECT_TRUE(kIet.strict_region());
  EXPECT_FALSE(IET3Params::make(S("sqrt(2)/4"), S("1/10")).strict_region());
  EXPECT_THROW(IET3Params::make(S("1/2"), S("1/2")), Error);
}

TEST(IdocScreen, Examples) {
  EXPECT_TRUE(idoc_screen(kIet, 50).pass);
  const IdocResult r = idoc_screen(IET3Params::make(S("1/3"), S("1/3")), 5);
  ASSERT_FALSE(r.pass);
  ASSERT_TRUE(r.witness);
  const auto& w = *r.witness;
  EXPECT_LE(std::max(std::abs(w.p), std::abs(w.q)), 5);
  // check the witness relation directly
  const long rhs = w.p - w.q + (w.form == IdocForm::p_minus_q_plus_1 ? 1 : w.form == IdocForm::p_minus_q_minus_1 ? -1 : 0);
  EXPECT_EQ(S("1/3") * w.p + S("1/3") * w.q, QuadraticSurd(rhs));
  EXPECT_THROW(idoc_screen(kIet, 0), Error);
}

TEST(IdocScreen, MatchesExhaustiveSearch) {
  // the screen exploits structure; compare with a plain double loop
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const long a = 1 + static_cast<long>(rng() % 12), b = 1 + static_cast<long>(rng() % 12), c = 13 + static_cast<long>(rng() % 20);
    if (a + b >= c) continue;
    const auto p = IET3Params::make(S(std::to_string(a) + "/" + std::to_string(c)),
                                    S(std::to_string(b) + "/" + std::to_string(c)));
    const std::int64_t bound = 6;
    std::optional<long> best;
    for (long P = -bound; P <= bound; ++P) {
      for (long Qv = -bound; Qv <= bound; ++Qv) {
        if (P == 0 && Qv == 0) continue;
        for (long e : {0L, 1L, -1L}) {
          if (P * a + Qv * b == (P - Qv + e) * c) {
            const long m = std::max(std::abs(P), std::abs(Qv));
            if (!best || m < *best) best = m;
          }
        }
      }
    }
    const IdocResult r = idoc_screen(p, bound);
    EXPECT_EQ(r.pass, !best.has_value());
    if (best) EXPECT_EQ(std::max(std::abs(r.witness->p), std::abs(r.witness->q)), *best);
  }
}

TEST(ArBuild, Tribonacci) {
  const ARParams t = ARParams::tribonacci();
  const ARWords one = ar_build(t, 1);
  EXPECT_EQ(one.H, "21");
  EXPECT_EQ(one.G, "31");
  EXPECT_EQ(one.J, "1");
  const ARWords two = ar_build(t, 2);
  EXPECT_EQ(two.H, "3121");
  EXPECT_EQ(two.G, "121");
  EXPECT_EQ(two.J, "21");
}

TEST(ArBuild, OtherwiseBranch) {
  ARParams p;
  p.k = Schedule{{2}, {1}};
  p.ni = IndexSet::list({2, 3});
  const ARWords w = ar_build(p, 1);
  EXPECT_EQ(w.H, "211");
  EXPECT_EQ(w.G, "1");
  EXPECT_EQ(w.J, "311");
}

TEST(ArBuild, Budget) {
  EXPECT_THROW(ar_build(ARParams::tribonacci(), 40, 1'000'000), BudgetExceeded);
  ARParams shallow = ARParams::tribonacci();
  shallow.depth = 3;
  EXPECT_THROW(ar_build(shallow, 4), Error);
}

TEST(ArBuild, LengthRecurrences) {
  const ARParams t = ARParams::tribonacci();
  std::vector<std::uint64_t> h;
  for (std::size_t n = 0; n <= 30; ++n) h.push_back(ar_lengths(t, n).H);
  for (std::size_t n = 3; n <= 30; ++n) EXPECT_EQ(h[n], h[n - 1] + h[n - 2] + h[n - 3]) << n;
  for (std::size_t n = 0; n <= 12; ++n) EXPECT_EQ(ar_build(t, n).H.size(), h[n]);

  ARParams p;
  p.k = Schedule{{}, {2, 1, 3}};
  p.ni = IndexSet::arith(1, 2);
  for (std::size_t n = 0; n < 8; ++n) {
    const ARWords w = ar_build(p, n);
    const ARWords next = ar_build(p, n + 1);
    const auto k = static_cast<std::uint64_t>(p.k_at(n + 1));
    EXPECT_EQ(next.H.size(), w.G.size() + k * w.H.size());
    if (p.ni.contains(static_cast<std::int64_t>(n + 1))) {
      EXPECT_EQ(next.G.size(), w.J.size() + k * w.H.size());
      EXPECT_EQ(next.J, w.H);
    } else {
      EXPECT_EQ(next.G, w.H);
      EXPECT_EQ(next.J.size(), w.J.size() + k * w.H.size());
    }
  }
}

TEST(Schedule, Lookup) {
  const Schedule s{{5, 6}, {1, 2}};
  EXPECT_EQ(s.at(1), 5);
  EXPECT_EQ(s.at(3), 1);
  EXPECT_EQ(s.at(6), 2);
  EXPECT_THROW((Schedule{{1}, {}}.at(2)), InsufficientQuotients);
}

TEST(SystemSpecText, ParseAndPrint) {
  const SystemSpec r = parse_system_spec("rot:cf=[0;|1]");
  EXPECT_EQ(to_string(r), "rot:cf=[0;|1]");
  EXPECT_EQ(to_string(parse_system_spec("rot:alpha=(-1+1*sqrt(5))/2")), "rot:alpha=(-1+sqrt(5))/2");
  EXPECT_EQ(to_string(parse_system_spec("rot:cf=[0;1,2,3]")), "rot:cf=[0;1,2,3]");
  const SystemSpec a = parse_system_spec("ar:k=1,1,1,...(periodic);ni=arith(1,1)");
  EXPECT_EQ(std::get<ARParams>(a).k_at(100), 1);
  EXPECT_TRUE(std::get<ARParams>(a).ni.contains(7));
  EXPECT_EQ(family_name(parse_system_spec("iet3:alpha=sqrt(2)-1;beta=(2-sqrt(2))/2")), "iet3");
}

TEST(SystemSpecText, Errors) {
  EXPECT_THROW(parse_system_spec("rot:alpha=1/3"), ParseError);
  EXPECT_THROW(parse_system_spec("torus:alpha=1"), ParseError);
  EXPECT_THROW(parse_system_spec("iet3:alpha=sqrt(2)-1"), ParseError);
  try {
    parse_system_spec("rot:alpha=(1+sqrt(5)/2");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_GE(e.position(), 10u);
  }
}

TEST(Trajectory, GoldenPrefix) {
  const SystemSpec g = rot("(-1+sqrt(5))/2");
  const Word w = trajectory(g, QuadraticSurd(0), 5);
  const testing::SmallSurd alpha{-1, 1, 2, 5};
  EXPECT_EQ(w, testing::beatty_word(alpha, 5));
  EXPECT_EQ(w, "12122");
  EXPECT_EQ(trajectory(g, QuadraticSurd(0), 0), "");
}

TEST(Trajectory, IetLetters) {
  const Word w = trajectory(kIet, QuadraticSurd(0), 3);
  QuadraticSurd x(0);
  for (char c : w) {
    const char expect = x < kIet.alpha ? '1' : (x < kIet.alpha + kIet.beta ? '2' : '3');
    EXPECT_EQ(c, expect);
    x = kIet.map(x);
  }
  EXPECT_THROW(trajectory(ARParams::tribonacci(), QuadraticSurd(0), 3), Error);
}

class DynsysProperty : public ::testing::Test {
 protected:
  std::mt19937_64 rng{5};
  RotationParams random_rotation() {
    return RotationParams::from_cf(ContinuedFraction::periodic(testing::random_period(rng, 2, 4),
                                                               testing::random_period(rng, 4, 4)));
  }
};

TEST_F(DynsysProperty, ThreeDistance) {
  for (int trial = 0; trial < 50; ++trial) {
    const RotationParams p = random_rotation();
    for (std::size_t n : {1, 2, 3, 5, 8, 13, 40, 77, 150, 311, 500}) {
      const auto g = gaps_of(rotation_breakpoints(p, n));
      ASSERT_EQ(g.size(), n + 1);
      QuadraticSurd total(0);
      std::set<QuadraticSurd> distinct;
      for (const auto& x : g) {
        total += x;
        distinct.insert(x);
      }
      EXPECT_EQ(total, QuadraticSurd(1));
      EXPECT_LE(distinct.size(), 3u);
    }
  }
}

TEST_F(DynsysProperty, FactorCountsMatchGapCounts) {
  for (int trial = 0; trial < 3; ++trial) {
    const RotationParams p = random_rotation();
    const Word w = testing::beatty_word(testing::SmallSurd::from(p.alpha()), 40'000);
    for (std::size_t n = 1; n <= 100; n += 9) EXPECT_EQ(testing::distinct_factors(w, n), n + 1);
  }
  const Word w = trajectory(kIet, QuadraticSurd(0), 20'000);
  for (std::size_t n = 1; n <= 100; n += 9) EXPECT_EQ(testing::distinct_factors(w, n), 2 * n + 1);
}

TEST_F(DynsysProperty, GapLabelsAreTrajectoryFactors) {
  for (int trial = 0; trial < 5; ++trial) {
    const RotationParams p = random_rotation();
    for (std::size_t n : {3, 10, 25}) {
      const auto pts = rotation_breakpoints(p, n);
      std::set<Word> labels;
      for (std::size_t i = 0; i < pts.size(); ++i) {
        const QuadraticSurd next = i + 1 < pts.size() ? pts[i + 1] : QuadraticSurd(1);
        const QuadraticSurd mid = (pts[i] + next) / 2;
        labels.insert(trajectory(p, mid, n));
      }
      const Word w = trajectory(p, QuadraticSurd(0), 60 * n);
      std::set<Word> factors;
      for (std::size_t s = 0; s + n <= w.size(); ++s) factors.insert(w.substr(s, n));
      EXPECT_EQ(labels, factors);
    }
  }
}

}  // namespace
}  // namespace blspec
