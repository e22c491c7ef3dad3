#include <gtest/gtest.h>

#include <random>

#include "rankmine/hdr.hpp"
#include "test_util.hpp"

using namespace rankmine;

namespace {

RankDistribution dist_from_counts(std::vector<long long> counts) {
  RankDistribution d;
  d.treatment = 0;
  d.k_total = 0;
  for (long long c : counts) d.k_total += c;
  d.counts = std::move(counts);
  return d;
}

}  // namespace

TEST(HdrSet, UnimodalNineRankFixture) {
  // Probabilities .001 .001 .005 .15 .4 .3 .14 .002 .001 at K = 1000.
  auto d = dist_from_counts({1, 1, 5, 150, 400, 300, 140, 2, 1});
  HdrSet h = hdr_set(d, 0.95);
  EXPECT_EQ(h.ranks, (std::vector<int>{4, 5, 6, 7}));
  EXPECT_EQ(h.count, 990);
}

TEST(HdrSet, MultimodalFixtureKeepsBothModes) {
  // Probabilities .55 .03 .01 .41 at K = 100.
  auto d = dist_from_counts({55, 3, 1, 41});
  HdrSet h = hdr_set(d, 0.95);
  EXPECT_EQ(h.ranks, (std::vector<int>{1, 4}));
  EXPECT_EQ(h.count, 96);
}

TEST(HdrSet, SingleDominantRankStandsAlone) {
  auto d = dist_from_counts({96, 2, 1, 1});
  HdrSet h = hdr_set(d, 0.95);
  EXPECT_EQ(h.ranks, (std::vector<int>{1}));
}

TEST(HdrSet, TieBreakRemovesHigherRankFirst) {
  auto d = dist_from_counts({30, 30, 20, 20});
  HdrSet h = hdr_set(d, 0.5);
  EXPECT_EQ(h.ranks, (std::vector<int>{1, 2}));
}

TEST(HdrSet, FullSetWhenNothingRemovable) {
  auto d = dist_from_counts({34, 33, 33});
  HdrSet h = hdr_set(d, 0.95);
  EXPECT_EQ(h.ranks, (std::vector<int>{1, 2, 3}));
  EXPECT_EQ(h.count, 100);
}

TEST(HdrSet, MonotoneInTau) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<long long> counts(6);
    for (auto& c : counts) c = static_cast<long long>(rng() % 100);
    counts[0] += 1;  // nonzero total
    auto d = dist_from_counts(counts);
    HdrSet prev;
    bool first = true;
    for (double tau : {0.3, 0.5, 0.7, 0.9, 0.99}) {
      HdrSet h = hdr_set(d, tau);
      if (!first)
        EXPECT_TRUE(std::includes(h.ranks.begin(), h.ranks.end(), prev.ranks.begin(),
                                  prev.ranks.end()));
      prev = h;
      first = false;
    }
  }
}

TEST(HdrSet, MinimalityAndDensityOrderingAgainstExhaustiveSearch) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 5);
    std::vector<long long> counts(static_cast<std::size_t>(n));
    for (auto& c : counts) c = static_cast<long long>(rng() % 50);
    counts[static_cast<std::size_t>(rng() % n)] += 1;
    auto d = dist_from_counts(counts);
    double tau = 0.5 + 0.4 * static_cast<double>(rng() % 100) / 100.0;
    HdrSet h = hdr_set(d, tau);

    EXPECT_TRUE(meets_threshold(h.count, d.k_total, tau));
    // Minimality: no smaller subset reaches tau.
    long long best_smaller = 0;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
      if (__builtin_popcount(mask) != static_cast<int>(h.ranks.size()) - 1) continue;
      long long mass = 0;
      for (int r = 0; r < n; ++r)
        if (mask & (1u << r)) mass += counts[static_cast<std::size_t>(r)];
      best_smaller = std::max(best_smaller, mass);
    }
    if (h.ranks.size() > 1)
      EXPECT_FALSE(meets_threshold(best_smaller, d.k_total, tau));
    // Density ordering: min inside >= max outside.
    long long min_in = d.k_total, max_out = 0;
    for (int r = 1; r <= n; ++r) {
      bool inside = std::binary_search(h.ranks.begin(), h.ranks.end(), r);
      long long c = counts[static_cast<std::size_t>(r - 1)];
      if (inside)
        min_in = std::min(min_in, c);
      else
        max_out = std::max(max_out, c);
    }
    EXPECT_GE(min_in, max_out);
  }
}

TEST(RankDistributions, CountsSumToK) {
  auto data = testutil::random_dataset(5, 137, 3);
  auto dists = rank_distributions(data.ranks);
  ASSERT_EQ(dists.size(), 5u);
  for (const auto& d : dists) {
    long long sum = 0;
    for (long long c : d.counts) sum += c;
    EXPECT_EQ(sum, 137);
  }
}

TEST(RankDistributions, SingleSampleIsOneHot) {
  auto data = testutil::dataset_from_rank_rows({"A", "B", "C"}, {{"B", "C", "A"}});
  auto dists = rank_distributions(data.ranks);
  EXPECT_EQ(dists[0].counts, (std::vector<long long>{0, 0, 1}));  // A worst
  EXPECT_EQ(dists[1].counts, (std::vector<long long>{1, 0, 0}));  // B best
  for (const auto& d : dists) {
    HdrSet h = hdr_set(d, 0.9);
    EXPECT_EQ(h.ranks.size(), 1u);
    EXPECT_EQ(h.count, 1);
  }
}
