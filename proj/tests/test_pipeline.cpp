#include <gtest/gtest.h>

#include "rankmine/oracle.hpp"
#include "rankmine/pipeline.hpp"
#include "rankmine/serialize.hpp"
#include "rankmine/simulate.hpp"
#include "test_util.hpp"

using namespace rankmine;

namespace {

AnalysisConfig config(double tau, double mid = 0.0, int threads = 1) {
  AnalysisConfig cfg;
  cfg.tau = tau;
  cfg.mid = mid;
  cfg.threads = threads;
  return cfg;
}

}  // namespace

TEST(Pipeline, MatchesBruteForceOnSampledInstances) {
  int instance = 0;
  for (int n : {3, 5}) {
    for (double tau : {0.5, 0.8}) {
      for (double mid : {0.0, 0.1}) {
        auto data = testutil::random_dataset(n, 80, 1000 + instance++);
        CredibleCatalog mined = build_catalog(data, config(tau, mid));
        CredibleCatalog reference = oracle::brute_force_catalog(data, tau, mid);
        EXPECT_EQ(oracle::diff_catalogs(mined, reference), "")
            << "n=" << n << " tau=" << tau << " mid=" << mid;
      }
    }
  }
}

TEST(Pipeline, DeterministicAcrossRunsAndThreads) {
  auto data = make_dataset(simulate_toy(500, 11));
  AnalysisResult a = run_analysis(data, config(0.8), true, true);
  AnalysisResult b = run_analysis(data, config(0.8), true, true);
  EXPECT_EQ(result_to_json_text(a), result_to_json_text(b));
  AnalysisResult c = run_analysis(data, config(0.8, 0.0, 4), true, true);
  EXPECT_EQ(result_to_json_text(a), result_to_json_text(c));
}

TEST(Pipeline, SensitivityDeltaIsExactlyTheTauStarGap) {
  auto data = make_dataset(simulate_toy(800, 5));
  AnalysisConfig cfg = config(0.9);
  AnalysisResult res = run_analysis(data, cfg, false, true);
  double tau_star = sensitivity_threshold(0.9, data.k());
  ASSERT_TRUE(res.manifest.tau_star.has_value());
  EXPECT_DOUBLE_EQ(*res.manifest.tau_star, tau_star);
  for (const auto& e : res.sensitivity_added) {
    EXPECT_TRUE(meets_threshold(e.count, e.k_total, tau_star));
    EXPECT_FALSE(meets_threshold(e.count, e.k_total, 0.9));
  }
  // Base entries plus additions equal a fresh run at tau*.
  CredibleCatalog wider = build_catalog(data, config(tau_star));
  EXPECT_EQ(res.catalog.entries.size() + res.sensitivity_added.size(),
            wider.entries.size());
}

TEST(Pipeline, TrimOnlyAnnotates) {
  auto data = testutil::random_dataset(5, 100, 2000);
  AnalysisResult plain = run_analysis(data, config(0.7), false, false);
  AnalysisResult trimmed = run_analysis(data, config(0.7), true, false);
  ASSERT_EQ(plain.catalog.entries.size(), trimmed.catalog.entries.size());
  for (std::size_t i = 0; i < plain.catalog.entries.size(); ++i) {
    EXPECT_EQ(question_key(plain.catalog.entries[i].q),
              question_key(trimmed.catalog.entries[i].q));
    EXPECT_EQ(plain.catalog.entries[i].count, trimmed.catalog.entries[i].count);
  }
  EXPECT_TRUE(plain.report.empty());
}

TEST(Pipeline, JsonSchemaInvariants) {
  auto data = make_dataset(simulate_toy(400, 9));
  AnalysisResult res = run_analysis(data, config(0.8), true, false);
  nlohmann::json j = result_to_json(res);
  ASSERT_TRUE(j.contains("manifest"));
  ASSERT_TRUE(j.contains("entries"));
  ASSERT_TRUE(j.contains("trim_report"));
  EXPECT_EQ(j["manifest"]["n"], 5);
  EXPECT_EQ(j["manifest"]["k"], 400);
  for (const auto& e : j["entries"]) {
    ASSERT_TRUE(e.contains("kind"));
    ASSERT_TRUE(e.contains("pi_hat"));
    ASSERT_TRUE(e.contains("count"));
    double pi = e["pi_hat"].get<double>();
    EXPECT_GE(pi, 0.0);
    EXPECT_LE(pi, 1.0);
    EXPECT_EQ(e["count"].get<long long>() / 400.0, pi);
    // redundant <=> trimmed_by nonempty
    EXPECT_EQ(e["redundant"].get<bool>(), !e["trimmed_by"].empty());
    if (e["kind"] == "ranked_permutation" || e["kind"] == "ranked_combination") {
      EXPECT_TRUE(e.contains("rank_lo"));
      EXPECT_TRUE(e.contains("rank_hi"));
    }
    if (e["kind"] == "rank_set") EXPECT_TRUE(e.contains("ranks"));
    if (e["kind"] == "partial_hierarchy") EXPECT_TRUE(e.contains("mid"));
  }
  for (const auto& r : j["trim_report"]) {
    int rule = r["rule"].get<int>();
    EXPECT_GE(rule, 1);
    EXPECT_LE(rule, 18);
    EXPECT_FALSE(r["witnesses"].empty());
  }
}

TEST(Pipeline, TableAndCsvRender) {
  auto data = make_dataset(simulate_toy(300, 13));
  AnalysisResult res = run_analysis(data, config(0.8), true, false);
  std::string table = result_to_table(res);
  EXPECT_NE(table.find("Partial Hierarchies"), std::string::npos);
  std::string csv = result_to_csv(res);
  EXPECT_NE(csv.find("kind,question,count,k,pi_hat,redundant,trimmed_by"),
            std::string::npos);
}

TEST(Pipeline, PlotDataCoversEveryTreatmentRankPair) {
  auto data = make_dataset(simulate_toy(200, 17));
  auto dists = rank_distributions(data.ranks);
  auto hdrs = hdr_sets(dists, 0.8);
  std::string csv = plot_data_csv(dists, hdrs, data.labels());
  // header + 5 treatments x 5 ranks
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 26);
  nlohmann::json j = plot_data_json(dists, hdrs, data.labels());
  EXPECT_EQ(j["treatments"].size(), 5u);
  for (const auto& t : j["treatments"]) EXPECT_FALSE(t["hdr"].empty());
}

TEST(Pipeline, BlockedNetworkTrimsLikeARealAnalysis) {
  // Three tied pairs: {A,B} best, {C,D} middle, {E,F} worst, with clear
  // separation between blocks. The trimmed catalog should keep the two
  // block-ranked combinations (both phrasings of the same partition), the
  // size-3 chains, and the informative HDRs, and mark everything they imply.
  std::vector<std::string> labels = {"A", "B", "C", "D", "E", "F"};
  std::vector<double> mean = {0.1, 0.5, 0.6, 2.0, 2.1};  // B..F vs A = 0
  std::vector<std::vector<double>> cov(5, std::vector<double>(5, 0.0));
  for (int i = 0; i < 5; ++i) cov[i][i] = 0.04;
  auto data = make_dataset(simulate_mvn(labels, mean, cov, 2000, 123));
  AnalysisResult res = run_analysis(data, config(0.95), true, false);
  const auto& cat = res.catalog;

  int kept_rc = 0, kept_ph3 = 0, kept_rs = 0, kept_total = 0;
  for (const auto& e : cat.entries) {
    if (!e.redundant) {
      ++kept_total;
      if (e.q.kind == Kind::RankedCombination) ++kept_rc;
      if (e.q.kind == Kind::PartialHierarchy && e.q.size() == 3) ++kept_ph3;
      if (e.q.kind == Kind::RankSet) ++kept_rs;
    }
    // Every credible size-2 chain is implied by a size-3 chain (rule 3), and
    // every unranked combination by its ranked version (rule 6).
    if (e.q.kind == Kind::PartialHierarchy && e.q.size() == 2) {
      EXPECT_TRUE(e.redundant) << display_question(e.q, cat.labels);
      for (const auto& t : e.trimmed_by) EXPECT_EQ(t.rule, 3);
    }
    if (e.q.kind == Kind::Combination) {
      ASSERT_TRUE(e.redundant) << display_question(e.q, cat.labels);
      EXPECT_EQ(e.trimmed_by[0].rule, 6);
    }
  }
  // Both members of the complement pair stay.
  const CatalogEntry* top = cat.find(testutil::rc({0, 1, 2, 3}, 1, 4));
  const CatalogEntry* bottom = cat.find(testutil::rc({4, 5}, 5, 6));
  ASSERT_NE(top, nullptr);
  ASSERT_NE(bottom, nullptr);
  EXPECT_FALSE(top->redundant);
  EXPECT_FALSE(bottom->redundant);
  // The tied bottom pair's HDRs are implied by the block combination.
  for (int t : {4, 5}) {
    const CatalogEntry* hdr = cat.find(testutil::rs(t, {5, 6}));
    ASSERT_NE(hdr, nullptr);
    ASSERT_TRUE(hdr->redundant);
    EXPECT_EQ(hdr->trimmed_by[0].rule, 10);
  }
  EXPECT_EQ(kept_rc, 2);
  EXPECT_EQ(kept_ph3, 6);
  EXPECT_EQ(kept_rs, 4);
  EXPECT_EQ(kept_total, 12);
}

TEST(Pipeline, TopHdrPlusBottomRunTrimsTheMiddlePair) {
  // A clearly best, B and C tied at ranks 2-3, D..G cleanly ordered 4..7.
  // The top HDR and the bottom ranked permutation jointly pin the middle
  // ranked combination, which rule 15 trims; the pair's HDRs fall to the
  // combination (rule 10); and the two chains through B and through C are
  // the informative partial hierarchies that remain.
  std::vector<std::string> labels = {"A", "B", "C", "D", "E", "F", "G"};
  std::vector<double> mean = {0.5, 0.55, 1.5, 2.0, 2.5, 3.0};
  std::vector<std::vector<double>> cov(6, std::vector<double>(6, 0.0));
  for (int i = 0; i < 6; ++i) cov[i][i] = 0.0225;
  auto data = make_dataset(simulate_mvn(labels, mean, cov, 1000, 321));
  AnalysisResult res = run_analysis(data, config(0.95), true, false);
  const auto& cat = res.catalog;

  const CatalogEntry* bottom_run = cat.find(testutil::rp({3, 4, 5, 6}, 4, 7));
  ASSERT_NE(bottom_run, nullptr);
  EXPECT_FALSE(bottom_run->redundant);
  const CatalogEntry* top_hdr = cat.find(testutil::rs(0, {1}));
  ASSERT_NE(top_hdr, nullptr);
  EXPECT_FALSE(top_hdr->redundant);

  const CatalogEntry* middle = cat.find(testutil::rc({1, 2}, 2, 3));
  ASSERT_NE(middle, nullptr);
  ASSERT_TRUE(middle->redundant);
  EXPECT_EQ(middle->trimmed_by[0].rule, 15);
  bool mark_found = false;
  for (const auto& m : res.report)
    if (m.rule == 15 && m.target_key == question_key(testutil::rc({1, 2}, 2, 3))) {
      mark_found = true;
      EXPECT_EQ(m.method, TrimMethod::Bound);
      EXPECT_TRUE(m.applied);
    }
  EXPECT_TRUE(mark_found);

  for (int t : {1, 2}) {
    const CatalogEntry* hdr = cat.find(testutil::rs(t, {2, 3}));
    ASSERT_NE(hdr, nullptr);
    ASSERT_TRUE(hdr->redundant);
    EXPECT_EQ(hdr->trimmed_by[0].rule, 10);
  }

  // Retention cascade: {A,B,C} 1-3 splits into A@{1} and {B,C} 2-3 (rule 18),
  // but the finer combination was itself trimmed, so the coarse block stays
  // and the relation is only reported.
  const CatalogEntry* triple = cat.find(testutil::rc({0, 1, 2}, 1, 3));
  ASSERT_NE(triple, nullptr);
  EXPECT_FALSE(triple->redundant);
  bool advisory = false;
  for (const auto& m : res.report)
    if (m.rule == 18 && m.target_key == question_key(testutil::rc({0, 1, 2}, 1, 3)) &&
        !m.applied)
      advisory = true;
  EXPECT_TRUE(advisory);

  // The only non-redundant chains are the two full-length ones.
  std::set<std::string> kept_chains;
  for (const auto& e : cat.entries)
    if (e.q.kind == Kind::PartialHierarchy && !e.redundant)
      kept_chains.insert(display_question(e.q, cat.labels));
  EXPECT_EQ(kept_chains,
            (std::set<std::string>{"A>B>D>E>F>G", "A>C>D>E>F>G"}));
}

TEST(Pipeline, TwoTreatmentNetwork) {
  auto data = testutil::random_dataset(2, 100, 3000);
  CredibleCatalog mined = build_catalog(data, config(0.5));
  CredibleCatalog reference = oracle::brute_force_catalog(data, 0.5, 0.0);
  EXPECT_EQ(oracle::diff_catalogs(mined, reference), "");
}
