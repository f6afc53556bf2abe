#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <set>

#include "bridge_census/enumerate.hpp"
#include "bridge_census/formulas.hpp"

namespace bridge_census {
namespace {

std::vector<EvenCF> collect(EnumFilter f) {
  std::vector<EvenCF> out;
  for (const auto& cf : enumerate_tuples(std::move(f))) out.push_back(cf);
  return out;
}

EnumFilter at(std::int64_t c) {
  EnumFilter f;
  f.crossing = c;
  return f;
}

// Naive oracle: every even-length tuple with half-sum S <= c - 1, filtered on c.
std::set<EvenCF> brute_force(std::int64_t c) {
  std::set<EvenCF> out;
  std::vector<std::int64_t> cur;
  auto rec = [&](auto&& self, std::int64_t half_left) -> void {
    if (!cur.empty() && cur.size() % 2 == 0) {
      const EvenCF cf(cur);
      if (invariants(cf).crossing_number == c) out.insert(cf);
    }
    for (std::int64_t a = 1; a <= half_left; ++a)
      for (int s : {1, -1}) {
        cur.push_back(2 * a * s);
        self(self, half_left - a);
        cur.pop_back();
      }
  };
  rec(rec, c - 1);  // l <= S - 1 gives S <= c - 1
  return out;
}

TEST(Enumerate, CrossingThree) {
  EXPECT_EQ(collect(at(3)), (std::vector<EvenCF>{EvenCF{-2, 2}, EvenCF{2, -2}}));
}

TEST(Enumerate, CrossingSixBraidFour) {
  EnumFilter f = at(6);
  f.braid = 4;
  const auto got = collect(f);
  const std::set<EvenCF> s(got.begin(), got.end());
  EXPECT_EQ(s, (std::set<EvenCF>{EvenCF{2, 4}, EvenCF{4, 2}, EvenCF{-2, -4}, EvenCF{-4, -2}}));
  EXPECT_EQ(got.size(), 4u);
}

TEST(Enumerate, CrossingFive) {
  const auto got = collect(at(5));
  std::set<EvenCF> b2, b3;
  for (const auto& cf : got) (invariants(cf).braid_index == 2 ? b2 : b3).insert(cf);
  EXPECT_EQ(b2, (std::set<EvenCF>{EvenCF{2, -2, 2, -2}, EvenCF{-2, 2, -2, 2}}));
  EXPECT_EQ(b3, (std::set<EvenCF>{EvenCF{2, -4}, EvenCF{4, -2}, EvenCF{-2, 4}, EvenCF{-4, 2}}));
}

TEST(Enumerate, CrossingSevenHas22) { EXPECT_EQ(collect(at(7)).size(), 22u); }

TEST(Enumerate, MatchesBruteForce) {
  for (std::int64_t c = 3; c <= 10; ++c) {
    const auto got = collect(at(c));
    EXPECT_EQ(std::set<EvenCF>(got.begin(), got.end()), brute_force(c)) << "c=" << c;
    EXPECT_EQ(std::set<EvenCF>(got.begin(), got.end()).size(), got.size()) << "duplicates at c=" << c;
  }
}

TEST(Enumerate, OrderIsLengthThenLexicographic) {
  for (std::int64_t c = 3; c <= 13; ++c) {
    const auto got = collect(at(c));
    for (std::size_t i = 1; i < got.size(); ++i) {
      const auto& a = got[i - 1];
      const auto& b = got[i];
      const bool ordered = a.size() < b.size() || (a.size() == b.size() && std::ranges::lexicographical_compare(a.entries(), b.entries()));
      EXPECT_TRUE(ordered) << a << " before " << b;
    }
  }
}

TEST(Enumerate, LengthBound) {
  for (std::int64_t c = 3; c <= 14; ++c)
    for (const auto& cf : collect(at(c))) {
      EXPECT_LE(static_cast<std::int64_t>(cf.size()), c - 1);
      EXPECT_EQ(invariants(cf).crossing_number, c);
    }
}

TEST(Enumerate, Deterministic) { EXPECT_EQ(collect(at(12)), collect(at(12))); }

TEST(Enumerate, FiltersAgreeWithPostFiltering) {
  for (std::int64_t c = 3; c <= 13; ++c) {
    const auto all = collect(at(c));
    EnumFilter pal = at(c);
    pal.palindromic_only = true;
    std::vector<EvenCF> expected_pal;
    std::copy_if(all.begin(), all.end(), std::back_inserter(expected_pal),
                 [](const EvenCF& cf) { return cf.is_palindrome() || cf.is_anti_palindrome(); });
    EXPECT_EQ(collect(pal), expected_pal);

    EnumFilter dd = at(c);
    dd.dedupe = true;
    std::vector<EvenCF> expected_dd;
    std::copy_if(all.begin(), all.end(), std::back_inserter(expected_dd),
                 [](const EvenCF& cf) { return cf == canonical_form(cf); });
    EXPECT_EQ(collect(dd), expected_dd);
  }
}

TEST(Enumerate, DedupeCountsKnots) {
  for (std::int64_t c = 3; c <= 18; ++c) {
    EnumFilter dd = at(c);
    dd.dedupe = true;
    std::uint64_t n = 0;
    for ([[maybe_unused]] const auto& cf : enumerate_tuples(dd)) ++n;
    EXPECT_EQ(BigCount(static_cast<unsigned long>(n)), (e_total(c) + ep_total(c)) / 4) << "c=" << c;
  }
}

TEST(Enumerate, TupleCapRaises) {
  EnumFilter f = at(7);
  f.max_tuples = 21;
  EXPECT_THROW(collect(f), LimitExceeded);
  f.max_tuples = 22;
  EXPECT_EQ(collect(f).size(), 22u);
}

TEST(Enumerate, RejectsBadFilters) {
  EXPECT_THROW(collect(at(2)), DomainError);
  EnumFilter f = at(5);
  f.braid = 1;
  EXPECT_THROW(collect(f), DomainError);
}

TEST(Census, CrossingSeven) {
  const auto c7 = census(7);
  EXPECT_EQ(c7.e, 22);
  EXPECT_EQ(c7.e_p, 6);
  EXPECT_EQ(c7.k, 7);
  EXPECT_EQ(c7.per_braid.at(2).k_cb, 1);
  EXPECT_EQ(c7.per_braid.at(3).k_cb, 2);
  EXPECT_EQ(c7.per_braid.at(4).k_cb, 4);
  EXPECT_TRUE(c7.consistent());
}

TEST(Census, CrossingThreeAndTwelve) {
  const auto c3 = census(3);
  EXPECT_EQ(c3.e, 2);
  EXPECT_EQ(c3.e_p, 2);
  ASSERT_EQ(c3.per_braid.size(), 1u);
  EXPECT_EQ(c3.per_braid.at(2).k_cb, 1);

  const auto c12 = census(12);
  EXPECT_EQ(c12.e, 682);
  EXPECT_EQ(c12.e_p, 22);
  EXPECT_EQ(c12.k, 176);
}

TEST(Census, ThreadedMatchesSingle) {
  const auto one = census(15, 1);
  const auto many = census(15, 4);
  EXPECT_EQ(one.e, many.e);
  EXPECT_EQ(one.tbi2, many.tbi2);
  EXPECT_EQ(one.per_braid, many.per_braid);
}

// Small-c values used as recursion seeds, recovered from enumeration.
TEST(Census, RecursionSeeds) {
  EXPECT_EQ(census(3).per_braid.at(2).e_cb, 2);
  EXPECT_EQ(census(4).per_braid.at(3).e_cb, 2);
  EXPECT_EQ(census(5).per_braid.at(2).e_cb, 2);
  EXPECT_EQ(census(5).per_braid.at(3).e_cb, 4);
  EXPECT_EQ(census(6).per_braid.at(3).ep_cb, 2);
  EXPECT_EQ(census(3).tbi, 4);
  EXPECT_EQ(census(4).tbi, 6);
  EXPECT_EQ(census(5).tbi, 16);
  EXPECT_EQ(census(5).tbi_p, 4);
  EXPECT_EQ(census(6).tbi_p, 6);
  EXPECT_EQ(census(5).tbi2, 44);
  EXPECT_EQ(census(4).tbi_p2, 18);
  EXPECT_EQ(census(6).tbi_p2, 18);
}

TEST(Census, CapIsEnforced) {
  EXPECT_THROW(census(kDefaultEnumCap + 1), LimitExceeded);
  ::setenv("BRIDGE_CENSUS_ENUM_CAP", "5", 1);
  EXPECT_EQ(enum_crossing_cap(), 5);
  EXPECT_THROW(census(6), LimitExceeded);
  EXPECT_NO_THROW(census(5));
  ::setenv("BRIDGE_CENSUS_ENUM_CAP", "junk", 1);
  EXPECT_EQ(enum_crossing_cap(), kDefaultEnumCap);
  ::unsetenv("BRIDGE_CENSUS_ENUM_CAP");
}

}  // namespace
}  // namespace bridge_census
