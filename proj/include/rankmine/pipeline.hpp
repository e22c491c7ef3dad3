#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rankmine/catalog.hpp"
#include "rankmine/common.hpp"
#include "rankmine/data.hpp"
#include "rankmine/trim.hpp"

namespace rankmine {

struct RunManifest {
  std::string input;  // file path, or the simulator name
  std::uint64_t seed = 0;
  bool simulated = false;
  long long k = 0;
  int n = 0;
  std::vector<std::string> labels;
  double tau = 0.0;
  std::optional<double> tau_star;
  double mid = 0.0;
  Direction direction = Direction::LowerIsBetter;
  bool trim = true;
  int threads = 1;
  StageTimings timings;
};

struct AnalysisResult {
  CredibleCatalog catalog;
  TrimReport report;
  RunManifest manifest;
  std::vector<CatalogEntry> sensitivity_added;
};

/// Full analysis: mine the catalog, optionally trim, optionally rerun at the
/// sensitivity threshold tau* and report the added questions.
inline AnalysisResult run_analysis(const Dataset& data, const AnalysisConfig& cfg,
                                   bool trim = true, bool sensitivity = false) {
  AnalysisResult res;
  res.manifest.k = data.k();
  res.manifest.n = data.n();
  res.manifest.labels = data.labels();
  res.manifest.tau = cfg.tau;
  res.manifest.mid = cfg.mid;
  res.manifest.direction = cfg.direction;
  res.manifest.trim = trim;
  res.manifest.threads = cfg.threads;

  res.catalog = build_catalog(data, cfg, &res.manifest.timings);
  if (trim) {
    detail::StageClock clock;
    auto [trimmed, report] = trim_all(res.catalog, data);
    res.catalog = std::move(trimmed);
    res.report = std::move(report);
    res.manifest.timings.trim_s = clock.lap();
  }

  if (sensitivity) {
    double tau_star = sensitivity_threshold(cfg.tau, data.k());
    res.manifest.tau_star = tau_star;
    AnalysisConfig star = cfg;
    star.tau = tau_star;
    CredibleCatalog wider = build_catalog(data, star);
    for (const auto& entry : wider.entries)
      if (!res.catalog.index.count(question_key(entry.q)))
        res.sensitivity_added.push_back(entry);
  }
  return res;
}

}  // namespace rankmine
