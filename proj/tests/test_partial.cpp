#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>

#include "rankmine/partial.hpp"
#include "test_util.hpp"

using namespace rankmine;

namespace {

// The demonstration instance's credible size-2 structure at tau = 0.80:
// A>B, A>C, A>D, A>E, B>C, B>D, B>E, C>E, D>E (indices A=0..E=4).
std::vector<std::vector<int>> toy_credible2() {
  return {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}, {2, 4}, {3, 4}};
}

}  // namespace

TEST(EvaluateChain, ComplementPairSumsToOneWithoutTies) {
  auto data = testutil::random_dataset(5, 300, 9);
  double ab = evaluate_chain(data.effects, {"A", "B"}, 0.0);
  double ba = evaluate_chain(data.effects, {"B", "A"}, 0.0);
  EXPECT_DOUBLE_EQ(ab + ba, 1.0);
}

TEST(EvaluateChain, Errors) {
  auto data = testutil::random_dataset(3, 10, 1);
  EXPECT_THROW(evaluate_chain(data.effects, {"A", "Z"}, 0.0), ParseError);
  EXPECT_THROW(evaluate_chain(data.effects, {"A", "A"}, 0.0), ConfigError);
  EXPECT_THROW(evaluate_chain(data.effects, {"A"}, 0.0), ConfigError);
  EXPECT_THROW(evaluate_chain(data.effects, {"A", "B"}, -1.0), ConfigError);
}

TEST(EvaluateChain, JointEventOverConsecutivePairs) {
  auto data = testutil::dataset_from_effects(
      testutil::letters(3), {{0.0, 0.5, 1.0}, {0.0, 0.5, 0.6}, {0.0, 0.7, 0.5}});
  EXPECT_DOUBLE_EQ(evaluate_chain(data.effects, {"A", "B", "C"}, 0.0), 2.0 / 3.0);
  // With MID 0.2 the second row's B->C gap (0.1) fails.
  EXPECT_DOUBLE_EQ(evaluate_chain(data.effects, {"A", "B", "C"}, 0.2), 1.0 / 3.0);
}

TEST(SeedSize2, AllOrderedPairs) {
  auto data = testutil::random_dataset(5, 40, 3);
  auto seeds = seed_size2(data.effects, 0.0);
  EXPECT_EQ(seeds.size(), 20u);
}

TEST(SeedSize2, TwoTreatmentsSumToK) {
  auto data = testutil::random_dataset(2, 100, 4);
  auto seeds = seed_size2(data.effects, 0.0);
  ASSERT_EQ(seeds.size(), 2u);
  EXPECT_EQ(seeds[0].count + seeds[1].count, 100);
}

TEST(ExpandCandidates, ToyStructureSize3) {
  auto credible2 = toy_credible2();
  auto candidates = expand_candidates(credible2, credible2, 5);
  std::vector<std::vector<int>> expected = {{0, 1, 2}, {0, 1, 3}, {0, 1, 4}, {0, 2, 4},
                                            {0, 3, 4}, {1, 2, 4}, {1, 3, 4}};
  EXPECT_EQ(candidates, expected);
}

TEST(ExpandCandidates, ToyStructureSize4) {
  auto credible2 = toy_credible2();
  // All seven size-3 candidates were credible in the demonstration.
  auto size3 = expand_candidates(credible2, credible2, 5);
  auto size4 = expand_candidates(size3, credible2, 5);
  std::vector<std::vector<int>> expected = {{0, 1, 2, 4}, {0, 1, 3, 4}};
  EXPECT_EQ(size4, expected);
}

TEST(ExpandCandidates, EmptyLevelStops) {
  auto credible2 = toy_credible2();
  EXPECT_TRUE(expand_candidates({}, credible2, 5).empty());
}

TEST(ExpandCandidates, RespectsMaxSize) {
  std::vector<std::vector<int>> level3 = {{0, 1, 2}};
  std::vector<std::vector<int>> pairs = {{2, 3}};
  EXPECT_TRUE(expand_candidates(level3, pairs, 4).empty());  // size 4 = n not allowed
  EXPECT_EQ(expand_candidates(level3, pairs, 5).size(), 1u);
}

TEST(Uncover, DeterministicDataYieldsAllSubchains) {
  // Well-separated identical rankings: every order-preserving chain of sizes
  // 2..n-1 is credible at tau = 1.
  std::vector<std::vector<double>> rows(20, {0.0, 1.0, 2.0, 3.0});
  auto data = testutil::dataset_from_effects(testutil::letters(4), rows);
  auto chains = uncover_partial_hierarchies(data.effects, 1.0, 0.0);
  EXPECT_EQ(chains.size(), 6u + 4u);  // all ordered pairs + all ordered triples
  for (const auto& c : chains) EXPECT_EQ(c.count, 20);
}

TEST(Uncover, MatchesBruteForceOverAllChains) {
  auto data = testutil::random_dataset(5, 100, 55);
  for (double tau : {0.5, 0.7}) {
    for (double mid : {0.0, 0.1}) {
      auto mined = uncover_partial_hierarchies(data.effects, tau, mid);
      std::map<std::string, long long> mined_map;
      for (const auto& c : mined)
        mined_map[detail::chain_key(c.chain)] = c.count;

      // Brute force: evaluate every ordered tuple of sizes 2..n-1 directly.
      std::map<std::string, long long> brute;
      std::vector<int> idx = {0, 1, 2, 3, 4};
      for (int s = 2; s <= 4; ++s) {
        std::sort(idx.begin(), idx.end());
        do {
          std::vector<int> chain(idx.begin(), idx.begin() + s);
          std::vector<int> suffix(idx.begin() + s, idx.end());
          if (!std::is_sorted(suffix.begin(), suffix.end())) continue;
          long long count = detail::chain_support_count(data.effects, chain, mid);
          if (meets_threshold(count, 100, tau)) brute[detail::chain_key(chain)] = count;
        } while (std::next_permutation(idx.begin(), idx.end()));
      }
      EXPECT_EQ(mined_map, brute) << "tau=" << tau << " mid=" << mid;
    }
  }
}

TEST(Uncover, SubChainMonotonicity) {
  auto data = testutil::random_dataset(6, 150, 66);
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<int> pool = {0, 1, 2, 3, 4, 5};
    std::shuffle(pool.begin(), pool.end(), rng);
    int len = 3 + static_cast<int>(rng() % 3);
    std::vector<int> chain(pool.begin(), pool.begin() + len);
    // Random order-preserving sub-chain (keep each element with p ~ 1/2,
    // at least two kept).
    std::vector<int> sub;
    for (int t : chain)
      if (rng() % 2) sub.push_back(t);
    if (sub.size() < 2) continue;
    double mid = (trial % 2) ? 0.1 : 0.0;
    EXPECT_GE(detail::chain_support_count(data.effects, sub, mid),
              detail::chain_support_count(data.effects, chain, mid));
  }
}

TEST(Uncover, SupportNonIncreasingInMid) {
  auto data = testutil::random_dataset(5, 120, 77);
  std::vector<int> chain = {0, 2, 4};
  long long prev = data.k();
  for (double mid : {0.0, 0.05, 0.1, 0.2, 0.5, 1.0}) {
    long long count = detail::chain_support_count(data.effects, chain, mid);
    EXPECT_LE(count, prev);
    prev = count;
  }
}

TEST(Uncover, RankConsistencyAtMidZero) {
  auto data = testutil::random_dataset(5, 130, 88);
  std::vector<int> chain = {1, 0, 3};
  long long by_effects = detail::chain_support_count(data.effects, chain, 0.0);
  long long by_ranks = 0;
  for (const auto& rank_of : data.rank_of)
    if (rank_of[1] < rank_of[0] && rank_of[0] < rank_of[3]) ++by_ranks;
  EXPECT_EQ(by_effects, by_ranks);
}

TEST(Uncover, SuffixPruningDoesNotChangeOutput) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    auto data = testutil::random_dataset(5, 100, seed);
    auto plain = uncover_partial_hierarchies(data.effects, 0.6, 0.0, 1e-12, 1, false);
    auto pruned = uncover_partial_hierarchies(data.effects, 0.6, 0.0, 1e-12, 1, true);
    ASSERT_EQ(plain.size(), pruned.size());
    for (std::size_t i = 0; i < plain.size(); ++i) {
      EXPECT_EQ(plain[i].chain, pruned[i].chain);
      EXPECT_EQ(plain[i].count, pruned[i].count);
    }
  }
}

TEST(Uncover, ThreadCountDoesNotChangeOutput) {
  auto data = testutil::random_dataset(5, 100, 91);
  auto one = uncover_partial_hierarchies(data.effects, 0.6, 0.0, 1e-12, 1);
  auto four = uncover_partial_hierarchies(data.effects, 0.6, 0.0, 1e-12, 4);
  ASSERT_EQ(one.size(), four.size());
  for (std::size_t i = 0; i < one.size(); ++i) EXPECT_EQ(one[i].chain, four[i].chain);
}

TEST(Uncover, TwoTreatmentNetworkHasNoChains) {
  auto data = testutil::random_dataset(2, 50, 5);
  EXPECT_TRUE(uncover_partial_hierarchies(data.effects, 0.5, 0.0).empty());
}
