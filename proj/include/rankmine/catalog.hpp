#pragma once

#include <chrono>
#include <map>
#include <string>
#include <vector>

#include "rankmine/arrangements.hpp"
#include "rankmine/common.hpp"
#include "rankmine/data.hpp"
#include "rankmine/hdr.hpp"
#include "rankmine/partial.hpp"
#include "rankmine/question.hpp"

namespace rankmine {

struct TrimRef {
  int rule = 0;
  std::string witness;  // display form of the implying question(s)
};

struct CatalogEntry {
  Question q;
  long long count = 0;
  long long k_total = 0;
  bool redundant = false;
  std::vector<TrimRef> trimmed_by;

  double pi_hat() const {
    return static_cast<double>(count) / static_cast<double>(k_total);
  }
};

/// All credible questions of one analysis run, grouped by kind and sorted
/// deterministically; `index` maps question keys to entry positions.
struct CredibleCatalog {
  std::vector<std::string> labels;
  long long k_total = 0;
  int n = 0;
  double tau = 0.0;
  double mid = 0.0;
  double float_guard = 1e-12;
  std::vector<CatalogEntry> entries;
  std::map<std::string, std::size_t> index;

  const CatalogEntry* find(const Question& q) const {
    auto it = index.find(question_key(q));
    return it == index.end() ? nullptr : &entries[it->second];
  }

  void rebuild_index() {
    index.clear();
    for (std::size_t i = 0; i < entries.size(); ++i)
      index[question_key(entries[i].q)] = i;
  }
};

/// Wall-clock seconds per mining stage. Reported on stderr by the CLI; never
/// serialized into the catalog JSON, which must be byte-identical across runs.
struct StageTimings {
  double load_s = 0.0;
  double arrangements_s = 0.0;
  double partial_s = 0.0;
  double hdr_s = 0.0;
  double trim_s = 0.0;
};

namespace detail {

class StageClock {
 public:
  StageClock() : start_(std::chrono::steady_clock::now()) {}
  double lap() {
    auto now = std::chrono::steady_clock::now();
    double s = std::chrono::duration<double>(now - start_).count();
    start_ = now;
    return s;
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

inline bool entry_less(const CatalogEntry& a, const CatalogEntry& b) {
  if (a.q.kind != b.q.kind) return static_cast<int>(a.q.kind) < static_cast<int>(b.q.kind);
  if (a.q.size() != b.q.size()) return a.q.size() < b.q.size();
  if (a.q.rank_lo != b.q.rank_lo) return a.q.rank_lo < b.q.rank_lo;
  if (a.q.rank_hi != b.q.rank_hi) return a.q.rank_hi < b.q.rank_hi;
  if (a.count != b.count) return a.count > b.count;
  return question_key(a.q) < question_key(b.q);
}

inline void finish_catalog(CredibleCatalog& c) {
  std::sort(c.entries.begin(), c.entries.end(), entry_less);
  c.rebuild_index();
}

}  // namespace detail

/// Runs the three mining passes and assembles the untrimmed credible catalog:
/// windowed ranked permutations and their aggregates filtered at tau, the
/// monotone partial-hierarchy expansion, and one HDR per treatment.
inline CredibleCatalog build_catalog(const Dataset& data, const AnalysisConfig& cfg,
                                     StageTimings* timings = nullptr) {
  cfg.validate();
  const int n = data.n();
  const long long k = data.k();
  CredibleCatalog cat;
  cat.labels = data.labels();
  cat.k_total = k;
  cat.n = n;
  cat.tau = cfg.tau;
  cat.mid = cfg.mid;
  cat.float_guard = cfg.float_guard;

  auto add = [&cat, k](const Question& q, long long count) {
    cat.entries.push_back(CatalogEntry{q, count, k, false, {}});
  };

  detail::StageClock clock;
  FrequencyTable windows = tabulate_ranked_permutations(data.ranks, cfg.threads);
  for (const auto& e :
       filter_credible(canonicalize_ranked_permutations(windows, n), k, cfg.tau, cfg.float_guard))
    add(e.q, e.count);
  for (const auto& e :
       filter_credible(aggregate_permutations(windows, n), k, cfg.tau, cfg.float_guard))
    add(e.q, e.count);
  FrequencyTable ranked_combs = aggregate_ranked_combinations(windows, n);
  for (const auto& e : filter_credible(ranked_combs, k, cfg.tau, cfg.float_guard))
    add(e.q, e.count);
  for (const auto& e :
       filter_credible(aggregate_combinations(ranked_combs), k, cfg.tau, cfg.float_guard))
    add(e.q, e.count);
  if (timings) timings->arrangements_s = clock.lap();

  for (const auto& chain : uncover_partial_hierarchies(
           data.effects, cfg.tau, cfg.mid, cfg.float_guard, cfg.threads, cfg.prune_suffix)) {
    Question q;
    q.kind = Kind::PartialHierarchy;
    q.treatments = chain.chain;
    q.mid = cfg.mid;
    add(q, chain.count);
  }
  if (timings) timings->partial_s = clock.lap();

  for (const auto& h : hdr_sets(rank_distributions(data.ranks), cfg.tau, cfg.float_guard)) {
    Question q;
    q.kind = Kind::RankSet;
    q.treatments = {h.treatment};
    q.ranks = h.ranks;
    add(q, h.count);
  }
  if (timings) timings->hdr_s = clock.lap();

  detail::finish_catalog(cat);
  return cat;
}

}  // namespace rankmine
