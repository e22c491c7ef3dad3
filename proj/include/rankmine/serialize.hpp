#pragma once

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "rankmine/hdr.hpp"
#include "rankmine/pipeline.hpp"
#include "rankmine/question.hpp"
#include "rankmine/taxonomy.hpp"
#include "rankmine/trim.hpp"

namespace rankmine {

namespace detail {

inline std::string fixed4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

inline nlohmann::json entry_to_json(const CatalogEntry& e,
                                    const std::vector<std::string>& labels) {
  nlohmann::json j;
  j["kind"] = kind_name(e.q.kind);
  j["question"] = display_question(e.q, labels);
  nlohmann::json names = nlohmann::json::array();
  for (int t : e.q.treatments) names.push_back(labels[static_cast<std::size_t>(t)]);
  j["treatments"] = std::move(names);
  if (e.q.kind == Kind::RankedPermutation || e.q.kind == Kind::RankedCombination) {
    j["rank_lo"] = e.q.rank_lo;
    j["rank_hi"] = e.q.rank_hi;
  }
  if (e.q.kind == Kind::PartialHierarchy) j["mid"] = e.q.mid;
  if (e.q.kind == Kind::RankSet) j["ranks"] = e.q.ranks;
  j["count"] = e.count;
  j["k"] = e.k_total;
  j["pi_hat"] = e.pi_hat();
  j["redundant"] = e.redundant;
  nlohmann::json trimmed = nlohmann::json::array();
  for (const auto& ref : e.trimmed_by)
    trimmed.push_back({{"rule", ref.rule}, {"witness", ref.witness}});
  j["trimmed_by"] = std::move(trimmed);
  return j;
}

}  // namespace detail

/// Catalog JSON. Deterministic: object keys are sorted, probabilities are
/// exact fractions of integers, and no timing or host information is
/// included.
inline nlohmann::json result_to_json(const AnalysisResult& res) {
  const auto& cat = res.catalog;
  nlohmann::json manifest;
  manifest["input"] = res.manifest.input;
  manifest["simulated"] = res.manifest.simulated;
  manifest["seed"] = res.manifest.seed;
  manifest["k"] = res.manifest.k;
  manifest["n"] = res.manifest.n;
  manifest["labels"] = res.manifest.labels;
  manifest["tau"] = res.manifest.tau;
  if (res.manifest.tau_star)
    manifest["tau_star"] = *res.manifest.tau_star;
  else
    manifest["tau_star"] = nullptr;
  // Worker count and timings are runtime details, not analysis inputs; they
  // stay out of the JSON so identical analyses serialize byte-identically.
  manifest["mid"] = res.manifest.mid;
  manifest["direction"] = direction_name(res.manifest.direction);
  manifest["trim"] = res.manifest.trim;

  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : cat.entries) entries.push_back(detail::entry_to_json(e, cat.labels));

  nlohmann::json report = nlohmann::json::array();
  for (const auto& m : res.report) {
    nlohmann::json r;
    r["rule"] = m.rule;
    auto target = cat.index.find(m.target_key);
    r["target"] = display_question(cat.entries[target->second].q, cat.labels);
    nlohmann::json witnesses = nlohmann::json::array();
    for (const auto& w : m.witness_keys) {
      auto it = cat.index.find(w);
      witnesses.push_back(display_question(cat.entries[it->second].q, cat.labels));
    }
    r["witnesses"] = std::move(witnesses);
    r["method"] = trim_method_name(m.method);
    if (m.joint_bound >= 0.0) r["joint_bound"] = m.joint_bound;
    if (m.joint_pi >= 0.0) r["joint_pi"] = m.joint_pi;
    r["action"] = m.applied ? "trimmed" : "kept";
    report.push_back(std::move(r));
  }

  nlohmann::json out;
  out["manifest"] = std::move(manifest);
  out["entries"] = std::move(entries);
  out["trim_report"] = std::move(report);
  if (res.manifest.tau_star) {
    nlohmann::json added = nlohmann::json::array();
    for (const auto& e : res.sensitivity_added)
      added.push_back(detail::entry_to_json(e, cat.labels));
    out["sensitivity"] = {{"tau_star", *res.manifest.tau_star},
                          {"added", std::move(added)}};
  }
  return out;
}

inline std::string result_to_json_text(const AnalysisResult& res) {
  return result_to_json(res).dump(2) + "\n";
}

inline const char* kind_heading(Kind k) {
  switch (k) {
    case Kind::RankedPermutation: return "Ranked Permutations";
    case Kind::Permutation: return "Permutations";
    case Kind::PartialHierarchy: return "Partial Hierarchies";
    case Kind::RankedCombination: return "Ranked Combinations";
    case Kind::Combination: return "Combinations";
    case Kind::RankSet: return "Rank Sets (HDR)";
  }
  return "?";
}

/// Human-readable table grouped by kind, descending pi_hat within group.
inline std::string result_to_table(const AnalysisResult& res) {
  const auto& cat = res.catalog;
  std::ostringstream out;
  out << "n=" << cat.n << "  K=" << cat.k_total << "  tau=" << cat.tau
      << "  mid=" << cat.mid << "\n";
  for (Kind kind : {Kind::RankedPermutation, Kind::Permutation, Kind::PartialHierarchy,
                    Kind::RankedCombination, Kind::Combination, Kind::RankSet}) {
    std::vector<const CatalogEntry*> group;
    for (const auto& e : cat.entries)
      if (e.q.kind == kind) group.push_back(&e);
    if (group.empty()) continue;
    std::stable_sort(group.begin(), group.end(),
                     [](const CatalogEntry* a, const CatalogEntry* b) {
                       return a->count > b->count;
                     });
    out << "\n" << kind_heading(kind) << "\n";
    for (const auto* e : group) {
      out << "  " << detail::fixed4(e->pi_hat()) << "  "
          << display_question(e->q, cat.labels);
      if (e->redundant) {
        out << "  [redundant:";
        for (std::size_t i = 0; i < e->trimmed_by.size(); ++i)
          out << (i ? "; " : " ") << "rule " << e->trimmed_by[i].rule << " via "
              << e->trimmed_by[i].witness;
        out << "]";
      }
      out << "\n";
    }
  }
  if (res.manifest.tau_star) {
    out << "\nSensitivity (tau* = " << detail::fixed4(*res.manifest.tau_star) << ")\n";
    if (res.sensitivity_added.empty()) out << "  no additional credible questions\n";
    for (const auto& e : res.sensitivity_added)
      out << "  " << detail::fixed4(e.pi_hat()) << "  "
          << display_question(e.q, cat.labels) << "\n";
  }
  return out.str();
}

/// Flat CSV of catalog entries.
inline std::string result_to_csv(const AnalysisResult& res) {
  const auto& cat = res.catalog;
  std::ostringstream out;
  out << "kind,question,count,k,pi_hat,redundant,trimmed_by\n";
  for (const auto& e : cat.entries) {
    out << kind_name(e.q.kind) << ",\"" << display_question(e.q, cat.labels) << "\","
        << e.count << "," << e.k_total << "," << detail::fixed4(e.pi_hat()) << ","
        << (e.redundant ? "true" : "false") << ",\"";
    for (std::size_t i = 0; i < e.trimmed_by.size(); ++i)
      out << (i ? "; " : "") << "rule " << e.trimmed_by[i].rule << " via "
          << e.trimmed_by[i].witness;
    out << "\"\n";
  }
  return out.str();
}

/// Rankogram probabilities with HDR membership, for external plotting.
inline std::string plot_data_csv(const std::vector<RankDistribution>& dists,
                                 const std::vector<HdrSet>& hdrs,
                                 const std::vector<std::string>& labels) {
  std::ostringstream out;
  out << "treatment,rank,count,k,pi_hat,in_hdr\n";
  for (std::size_t t = 0; t < dists.size(); ++t) {
    const auto& d = dists[t];
    for (std::size_t r = 0; r < d.counts.size(); ++r) {
      bool in = std::binary_search(hdrs[t].ranks.begin(), hdrs[t].ranks.end(),
                                   static_cast<int>(r + 1));
      out << labels[static_cast<std::size_t>(d.treatment)] << "," << (r + 1) << ","
          << d.counts[r] << "," << d.k_total << ","
          << detail::fixed4(d.prob(static_cast<int>(r + 1))) << ","
          << (in ? "true" : "false") << "\n";
    }
  }
  return out.str();
}

inline nlohmann::json plot_data_json(const std::vector<RankDistribution>& dists,
                                     const std::vector<HdrSet>& hdrs,
                                     const std::vector<std::string>& labels) {
  nlohmann::json treatments = nlohmann::json::array();
  for (std::size_t t = 0; t < dists.size(); ++t) {
    const auto& d = dists[t];
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t r = 0; r < d.counts.size(); ++r)
      rows.push_back({{"rank", r + 1},
                      {"count", d.counts[r]},
                      {"pi_hat", d.prob(static_cast<int>(r + 1))}});
    treatments.push_back({{"treatment", labels[static_cast<std::size_t>(d.treatment)]},
                          {"k", d.k_total},
                          {"ranks", std::move(rows)},
                          {"hdr", hdrs[t].ranks},
                          {"hdr_pi_hat", hdrs[t].pi_hat()}});
  }
  return nlohmann::json{{"treatments", std::move(treatments)}};
}

/// Per-kind question counts with the log10 total.
inline std::string count_table(int n) {
  QuestionCount c = count_total(n);
  std::ostringstream out;
  out << "questions for n=" << n << "\n";
  out << "  ranked permutations   " << c.ranked_permutations << "\n";
  out << "  permutations          " << c.permutations << "\n";
  out << "  partial hierarchies   " << c.partial_hierarchies << "\n";
  out << "  ranked combinations   " << c.ranked_combinations << "\n";
  out << "  combinations          " << c.combinations << "\n";
  out << "  rank sets             " << c.rank_sets << "\n";
  out << "  total                 " << c.total() << "\n";
  out << "  log10(total)          " << detail::fixed4(c.log10_total()) << "\n";
  return out.str();
}

inline nlohmann::json count_json(int n) {
  QuestionCount c = count_total(n);
  return nlohmann::json{{"n", n},
                        {"ranked_permutations", c.ranked_permutations},
                        {"permutations", c.permutations},
                        {"partial_hierarchies", c.partial_hierarchies},
                        {"ranked_combinations", c.ranked_combinations},
                        {"combinations", c.combinations},
                        {"rank_sets", c.rank_sets},
                        {"total", c.total()},
                        {"log10_total", c.log10_total()}};
}

}  // namespace rankmine
