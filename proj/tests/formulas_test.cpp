#include <gtest/gtest.h>

#include <thread>

#include "bridge_census/enumerate.hpp"
#include "bridge_census/formulas.hpp"

namespace bridge_census {
namespace {

// Weighted mean and variance of a {b: count} distribution.
std::pair<ExactRatio, ExactRatio> moments_of(const std::map<std::int64_t, long>& dist) {
  ExactRatio n = 0, s1 = 0, s2 = 0;
  for (auto [b, k] : dist) {
    n += k;
    s1 += ExactRatio(b * k);
    s2 += ExactRatio(b * b * k);
  }
  const ExactRatio mean = s1 / n;
  return {mean, s2 / n - mean * mean};
}

TEST(ECounts, SpotValues) {
  EXPECT_EQ(e_closed(9, 5), 32);
  EXPECT_EQ(e_closed(12, 7), 32);
  for (std::int64_t c = 3; c <= 30; ++c) EXPECT_EQ(e_closed(c, 1), 0);
  EXPECT_EQ(e_total(11), 342);
  EXPECT_EQ(e_total(3), 2);
  EXPECT_EQ(e_total(18), 43690);
  EXPECT_EQ(e_total(18), (2 * (pow2(16) - 1)) / 3);
}

TEST(EpCounts, SpotValues) {
  EXPECT_EQ(ep_closed(11, 6), 8);
  EXPECT_EQ(ep_closed(10, 4), 0);
  EXPECT_EQ(ep_closed(7, 4), 4);
  EXPECT_EQ(ep_total(11), 22);
  EXPECT_EQ(ep_total(4), 2);
  EXPECT_EQ(ep_total(12), 22);
}

TEST(KCounts, SpotValues) {
  EXPECT_EQ(k_closed(20, 11), 136);
  EXPECT_EQ(k_closed(9, 4), 12);
  EXPECT_EQ(k_closed(7, 2), 1);
  EXPECT_EQ(k_closed(8, 2), 0);
  EXPECT_EQ(k_closed(8, 6), 0);
}

TEST(Moments, SpotValues) {
  EXPECT_EQ(tbi_closed(5), 16);
  EXPECT_EQ(tbi_p_closed(5), 4);
  EXPECT_EQ(tbi_closed(3), 4);
  EXPECT_EQ(tbi2_closed(5), 44);
  EXPECT_EQ(tbi_p2_closed(4), 18);
  EXPECT_EQ(tbi2_closed(3), 8);
}

TEST(Recursions, MatchClosedFormsThrough400) {
  for (std::int64_t c = 3; c <= 400; ++c) {
    for (std::int64_t b = 1; b <= max_braid(c) + 2; ++b) {
      ASSERT_EQ(e_recursive(c, b), e_closed(c, b)) << "e c=" << c << " b=" << b;
      ASSERT_EQ(ep_recursive(c, b), ep_closed(c, b)) << "ep c=" << c << " b=" << b;
    }
    ASSERT_EQ(e_total_recursive(c), e_total(c)) << c;
    ASSERT_EQ(ep_total_recursive(c), ep_total(c)) << c;
    ASSERT_EQ(tbi_recursive(c), tbi_closed(c)) << c;
    ASSERT_EQ(tbi_p_recursive(c), tbi_p_closed(c)) << c;
    ASSERT_EQ(tbi2_recursive(c), tbi2_closed(c)) << c;
    ASSERT_EQ(tbi_p2_recursive(c), tbi_p2_closed(c)) << c;
  }
}

TEST(Recursions, ShortTbi2FormAgrees) {
  for (std::int64_t c = 6; c <= 300; ++c)
    ASSERT_EQ(tbi2_closed(c), 3 * tbi2_closed(c - 2) + 2 * tbi2_closed(c - 3) + tbi2_forcing_term(c)) << c;
}

TEST(Recursions, MemoIsSafeUnderConcurrency) {
  std::vector<BigCount> got(4);
  {
    std::vector<std::jthread> pool;
    for (int w = 0; w < 4; ++w) pool.emplace_back([&, w] { got[w] = e_recursive(450 + w, 150); });
  }
  for (int w = 0; w < 4; ++w) EXPECT_EQ(got[w], e_closed(450 + w, 150));
}

TEST(Rows, SumsAndAgreement) {
  for (std::int64_t c = 3; c <= 300; ++c) {
    const auto e = e_row(c), ep = ep_row(c), k = k_row(c);
    BigCount se = 0, sp = 0, sk = 0;
    for (std::int64_t b = 2; b <= max_braid(c); ++b) {
      const auto i = static_cast<std::size_t>(b - 2);
      ASSERT_EQ(e[i], e_closed(c, b)) << c << "," << b;
      ASSERT_EQ(ep[i], ep_closed(c, b)) << c << "," << b;
      ASSERT_EQ(k[i], k_closed(c, b)) << c << "," << b;
      ASSERT_TRUE(mpz_divisible_ui_p(BigCount(e[i] + ep[i]).get_mpz_t(), 4));
      se += e[i];
      sp += ep[i];
      sk += k[i];
    }
    EXPECT_EQ(se, e_total(c));
    EXPECT_EQ(sp, ep_total(c));
    EXPECT_EQ(4 * sk, e_total(c) + ep_total(c));
  }
}

TEST(Rows, LogConcave) {
  for (std::int64_t c = 7; c <= 400; ++c) {
    const auto e = e_row(c);
    for (std::size_t i = 1; i + 1 < e.size(); ++i) ASSERT_GE(e[i] * e[i], e[i - 1] * e[i + 1]) << c;
  }
}

TEST(Rows, RiseAndFallAroundMode) {
  for (std::int64_t c = 8; c <= 400; ++c) {
    const std::int64_t m = ceil_div(c, 3);
    EXPECT_EQ(mode_rise_closed(c), ExactRatio(e_closed(c, m + 1) - e_closed(c, m))) << c;
    EXPECT_EQ(mode_fall_closed(c), ExactRatio(e_closed(c, m + 1) - e_closed(c, m + 2))) << c;
  }
  EXPECT_THROW(mode_rise_closed(7), DomainError);
}

TEST(Mean, ExactSmallValues) {
  EXPECT_EQ(mean_braid(3), 2);
  EXPECT_EQ(mean_braid(4), 3);
  // Oracle: weighted mean over the knot counts at c = 12.
  const auto [mean12, var12] = moments_of({{3, 5}, {4, 28}, {5, 73}, {6, 60}, {7, 10}});
  EXPECT_EQ(mean_braid(12), mean12);
  EXPECT_EQ(mean12, ExactRatio(461, 88));
  EXPECT_EQ(variance_braid(12), var12);
}

TEST(Mean, MatchesEnumeration) {
  for (std::int64_t c = 3; c <= 16; ++c) {
    const auto cc = census(c);
    std::map<std::int64_t, long> dist;
    for (const auto& [b, v] : cc.per_braid) dist[b] = v.k_cb.get_si();
    const auto [mean, var] = moments_of(dist);
    EXPECT_EQ(mean_braid(c), mean) << c;
    EXPECT_EQ(variance_braid(c), var) << c;
  }
}

TEST(Mean, AsymptoticGap) {
  const ExactRatio gap = mean_braid(200) - ExactRatio(200, 3) - ExactRatio(11, 9);
  EXPECT_LT(std::abs(gap.get_d()), 1e-6);
  EXPECT_NE(gap, 0);
}

TEST(Variance, ExactSmallValues) {
  EXPECT_EQ(variance_braid(3), 0);
  EXPECT_EQ(variance_braid(4), 0);
  const auto [mean8, var8] = moments_of({{3, 3}, {4, 6}, {5, 3}});
  EXPECT_EQ(mean_braid(8), mean8);
  EXPECT_EQ(mean8, 4);
  EXPECT_EQ(variance_braid(8), var8);
  EXPECT_EQ(var8, ExactRatio(1, 2));
}

TEST(Variance, AsymptoticGap) {
  const ExactRatio gap = variance_braid(200) - ExactRatio(400, 27) + ExactRatio(10, 81);
  EXPECT_LT(std::abs(gap.get_d()), 1e-4);
}

TEST(Mode, UniqueArgmax) {
  EXPECT_EQ(mode_braid(10, true), 5);
  EXPECT_EQ(mode_braid(20, true), 8);
  EXPECT_EQ(mode_braid(3, true), 2);
  for (std::int64_t c = 3; c <= 200; ++c) {
    if (c == kBimodalCrossing) continue;
    EXPECT_EQ(argmax_braid(c), std::vector<std::int64_t>{ceil_div(c, 3) + 1}) << c;
  }
}

TEST(Mode, TieAtFiveIncludesTheMode) {
  EXPECT_EQ(argmax_braid(5), (std::vector<std::int64_t>{2, 3}));
  EXPECT_EQ(mode_braid(5, true), 3);
  EXPECT_TRUE(mode_holds(5, {2, 3}));
  EXPECT_FALSE(mode_holds(6, {2, 3}));
  EXPECT_FALSE(mode_holds(7, {2}));
}

TEST(Median, SpotValues) {
  EXPECT_EQ(median_braid(9), 4);
  EXPECT_EQ(median_braid(3), 2);
  EXPECT_EQ(median_braid(12), 5);
  EXPECT_EQ(median_braid(8), 4);
}

TEST(Median, DefinitionOnSequences) {
  const std::vector<BigCount> row9{1, 3, 12, 8};
  const auto r = median_of(row9, 2);
  EXPECT_EQ(r.median, 4);
  EXPECT_EQ(r.qualifying, std::vector<std::int64_t>{4});

  // An exact half split: both neighbours qualify, the upper one is taken.
  const std::vector<BigCount> tie{1, 1};
  const auto t = median_of(tie, 2);
  EXPECT_EQ(t.qualifying, (std::vector<std::int64_t>{2, 3}));
  EXPECT_EQ(t.median, 3);
  EXPECT_EQ(median_detail(5).qualifying, (std::vector<std::int64_t>{2, 3}));

  // Zero in the middle of an exact split: the gap index also qualifies.
  const std::vector<BigCount> gap{2, 0, 2};
  EXPECT_EQ(median_of(gap, 0).qualifying, (std::vector<std::int64_t>{0, 1, 2}));
}

TEST(Summary, CrossingEightAndFourteen) {
  const auto s8 = summary(8);
  EXPECT_EQ(s8.counts, (std::map<std::int64_t, BigCount>{{3, 3}, {4, 6}, {5, 3}}));
  EXPECT_EQ(s8.mode, 4);
  EXPECT_EQ(s8.mean, 4);
  EXPECT_EQ(s8.median, 4);

  const auto s3 = summary(3);
  EXPECT_EQ(s3.counts, (std::map<std::int64_t, BigCount>{{2, 1}}));
  EXPECT_EQ(s3.mean, 2);
  EXPECT_EQ(s3.variance, 0);

  const auto s14 = summary(14);
  EXPECT_EQ(s14.counts,
            (std::map<std::int64_t, BigCount>{{3, 6}, {4, 45}, {5, 172}, {6, 280}, {7, 174}, {8, 16}}));
}

TEST(Domain, RejectsSmallCrossing) {
  EXPECT_THROW(e_total(2), DomainError);
  EXPECT_THROW(mean_braid(2), DomainError);
  EXPECT_THROW(variance_braid(1), DomainError);
  EXPECT_THROW(median_braid(2), DomainError);
  EXPECT_THROW(summary(0), DomainError);
  EXPECT_THROW(tbi_recursive(2), DomainError);
}

}  // namespace
}  // namespace bridge_census
