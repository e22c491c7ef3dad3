#pragma once

#include <map>
#include <string>
#include <vector>

#include "rankmine/common.hpp"
#include "rankmine/data.hpp"
#include "rankmine/question.hpp"

namespace rankmine {

struct FreqEntry {
  Question q;
  long long count = 0;
};

/// Observed questions keyed by their verbatim (non-canonical) question key.
/// Counts are integers; empirical probabilities are derived on demand so the
/// aggregation identities hold exactly.
using FrequencyTable = std::map<std::string, FreqEntry>;

namespace detail {

inline void bump(FrequencyTable& t, Question q, long long by) {
  std::string key = question_key(q);
  auto it = t.find(key);
  if (it == t.end())
    t.emplace(std::move(key), FreqEntry{std::move(q), by});
  else
    it->second.count += by;
}

}  // namespace detail

/// Compiles every observed ranked permutation: for each sample row, every
/// contiguous window of length 2..n becomes one increment of the windowed
/// question (sequence, rank span). Partitioning rows across threads and
/// merging by key addition yields the same table for any worker count.
inline FrequencyTable tabulate_ranked_permutations(const RankMatrix& rm, int threads = 1) {
  const int n = rm.n();
  auto worker = [&rm, n](std::size_t lo, std::size_t hi) {
    FrequencyTable local;
    Question q;
    q.kind = Kind::RankedPermutation;
    for (std::size_t k = lo; k < hi; ++k) {
      const auto& row = rm.rows[k];
      for (int s = 2; s <= n; ++s) {
        for (int start = 0; start + s <= n; ++start) {
          q.treatments.assign(row.begin() + start, row.begin() + start + s);
          q.rank_lo = start + 1;
          q.rank_hi = start + s;
          detail::bump(local, q, 1);
        }
      }
    }
    return local;
  };
  auto parts = run_chunked<FrequencyTable>(rm.rows.size(), threads, worker);
  FrequencyTable table;
  for (auto& part : parts)
    for (auto& [key, entry] : part) {
      auto it = table.find(key);
      if (it == table.end())
        table.emplace(key, std::move(entry));
      else
        it->second.count += entry.count;
    }
  return table;
}

/// Groups observed ranked permutations by treatment sequence (sizes 2..n-1),
/// summing counts over rank spans.
inline FrequencyTable aggregate_permutations(const FrequencyTable& ranked, int n) {
  FrequencyTable out;
  for (const auto& [key, entry] : ranked) {
    if (entry.q.size() > n - 1) continue;
    Question q;
    q.kind = Kind::Permutation;
    q.treatments = entry.q.treatments;
    detail::bump(out, std::move(q), entry.count);
  }
  return out;
}

/// Groups observed ranked permutations by (sorted treatment set, rank span),
/// summing counts over the internal orderings; sizes 2..n-1 only.
inline FrequencyTable aggregate_ranked_combinations(const FrequencyTable& ranked, int n) {
  FrequencyTable out;
  for (const auto& [key, entry] : ranked) {
    if (entry.q.size() > n - 1) continue;
    Question q;
    q.kind = Kind::RankedCombination;
    q.treatments = entry.q.treatments;
    std::sort(q.treatments.begin(), q.treatments.end());
    q.rank_lo = entry.q.rank_lo;
    q.rank_hi = entry.q.rank_hi;
    detail::bump(out, std::move(q), entry.count);
  }
  return out;
}

/// Groups observed ranked combinations by treatment set, summing counts over
/// rank spans.
inline FrequencyTable aggregate_combinations(const FrequencyTable& ranked_combs) {
  FrequencyTable out;
  for (const auto& [key, entry] : ranked_combs) {
    Question q;
    q.kind = Kind::Combination;
    q.treatments = entry.q.treatments;
    detail::bump(out, std::move(q), entry.count);
  }
  return out;
}

/// Rewrites size-n windows to their canonical size-(n-1) form ranked
/// 1..n-1 so full-hierarchy findings surface as valid questions. The
/// canonical form's prefix window counts exactly the same samples, so a
/// collision must agree. Size-(n-1) windows anchored at rank 2 stay verbatim:
/// both phrasings of a full hierarchy are reported, like the complement
/// forms of ranked combinations.
inline FrequencyTable canonicalize_ranked_permutations(const FrequencyTable& ranked, int n) {
  FrequencyTable out;
  for (const auto& [key, entry] : ranked)
    if (entry.q.size() < n) out.emplace(key, entry);
  for (const auto& [key, entry] : ranked) {
    if (entry.q.size() < n) continue;
    Question c = canonicalize(entry.q, n);
    std::string ckey = question_key(c);
    auto it = out.find(ckey);
    if (it == out.end()) {
      out.emplace(std::move(ckey), FreqEntry{std::move(c), entry.count});
    } else if (it->second.count != entry.count) {
      throw std::logic_error("equivalent ranked permutations disagree on support");
    }
  }
  return out;
}

/// Entries meeting the credibility threshold, ordered by
/// (size, rank span, descending count, key) for stable output.
inline std::vector<FreqEntry> filter_credible(const FrequencyTable& t, long long k,
                                              double tau, double guard = 1e-12) {
  std::vector<FreqEntry> out;
  for (const auto& [key, entry] : t)
    if (meets_threshold(entry.count, k, tau, guard)) out.push_back(entry);
  std::sort(out.begin(), out.end(), [](const FreqEntry& a, const FreqEntry& b) {
    if (a.q.size() != b.q.size()) return a.q.size() < b.q.size();
    if (a.q.rank_lo != b.q.rank_lo) return a.q.rank_lo < b.q.rank_lo;
    if (a.q.rank_hi != b.q.rank_hi) return a.q.rank_hi < b.q.rank_hi;
    if (a.count != b.count) return a.count > b.count;
    return question_key(a.q) < question_key(b.q);
  });
  return out;
}

}  // namespace rankmine
