#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "rankmine/common.hpp"
#include "rankmine/data.hpp"
#include "rankmine/question.hpp"

namespace rankmine {

/// A partial-hierarchy chain with its supporting-sample count.
struct ChainSupport {
  std::vector<int> chain;
  long long count = 0;
};

namespace detail {

/// Counts samples in which every consecutive pair of the chain differs by at
/// least `mid` on the lower-is-better scale (a joint event per sample).
inline long long chain_support_count(const SampleMatrix& m, const std::vector<int>& chain,
                                     double mid) {
  long long count = 0;
  for (const auto& row : m.values) {
    bool ok = true;
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
      if (!(row[static_cast<std::size_t>(chain[i + 1])] -
                row[static_cast<std::size_t>(chain[i])] >=
            mid)) {
        ok = false;
        break;
      }
    }
    if (ok) ++count;
  }
  return count;
}

inline std::string chain_key(const std::vector<int>& chain) {
  std::string s;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    if (i) s += ',';
    append_int(s, chain[i]);
  }
  return s;
}

}  // namespace detail

/// Empirical probability that the named treatments beat each other in chain
/// order, each step by at least `mid`.
inline double evaluate_chain(const SampleMatrix& m, const std::vector<std::string>& chain,
                             double mid) {
  if (mid < 0.0) throw ConfigError("mid must be >= 0");
  if (chain.size() < 2) throw ConfigError("chain needs at least 2 treatments");
  std::vector<int> idx;
  std::set<int> seen;
  for (const auto& name : chain) {
    int t = m.index_of(name);
    if (!seen.insert(t).second) throw ConfigError("chain repeats treatment: " + name);
    idx.push_back(t);
  }
  return static_cast<double>(detail::chain_support_count(m, idx, mid)) /
         static_cast<double>(m.k());
}

/// All n(n-1) ordered pairs with their supports, in (first, second) index
/// order.
inline std::vector<ChainSupport> seed_size2(const SampleMatrix& m, double mid) {
  const int n = m.n();
  std::vector<ChainSupport> out;
  out.reserve(static_cast<std::size_t>(n) * (n - 1));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (a == b) continue;
      ChainSupport c;
      c.chain = {a, b};
      c.count = detail::chain_support_count(m, c.chain, mid);
      out.push_back(std::move(c));
    }
  return out;
}

/// Extends each credible size-k chain ending in T by every credible size-2
/// chain (T, U) with U not already used. Candidates inherit the sorted order
/// of their parents; the result is duplicate-free by construction.
inline std::vector<std::vector<int>> expand_candidates(
    const std::vector<std::vector<int>>& credible_k,
    const std::vector<std::vector<int>>& credible_2, int n,
    const std::set<std::string>* credible_k_keys = nullptr) {
  std::vector<std::vector<int>> out;
  if (credible_k.empty()) return out;
  const int k = static_cast<int>(credible_k.front().size());
  if (k + 1 > n - 1) return out;
  for (const auto& chain : credible_k) {
    const int tail = chain.back();
    for (const auto& pair : credible_2) {
      if (pair[0] != tail) continue;
      const int next = pair[1];
      if (std::find(chain.begin(), chain.end(), next) != chain.end()) continue;
      std::vector<int> cand = chain;
      cand.push_back(next);
      if (credible_k_keys) {
        // Optional pruning: the size-k suffix must itself be credible.
        std::vector<int> suffix(cand.begin() + 1, cand.end());
        if (!credible_k_keys->count(detail::chain_key(suffix))) continue;
      }
      out.push_back(std::move(cand));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Seeds with all size-2 chains, then grows credible chains one treatment at
/// a time, stopping at the first size level with no credible chains. Returns
/// every credible chain of sizes 2..n-1 with its support.
inline std::vector<ChainSupport> uncover_partial_hierarchies(const SampleMatrix& m,
                                                             double tau, double mid,
                                                             double guard = 1e-12,
                                                             int threads = 1,
                                                             bool prune_suffix = false) {
  const int n = m.n();
  const long long k_total = m.k();
  std::vector<ChainSupport> result;
  // Chains of size n are ranked permutations; at n = 2 no partial-hierarchy
  // sizes exist.
  if (n < 3) return result;

  std::vector<std::vector<int>> credible2;
  for (auto& seed : seed_size2(m, mid)) {
    if (meets_threshold(seed.count, k_total, tau, guard)) {
      credible2.push_back(seed.chain);
      result.push_back(std::move(seed));
    }
  }
  std::sort(credible2.begin(), credible2.end());

  std::vector<std::vector<int>> level = credible2;
  while (!level.empty()) {
    std::set<std::string> level_keys;
    if (prune_suffix)
      for (const auto& chain : level) level_keys.insert(detail::chain_key(chain));
    auto candidates =
        expand_candidates(level, credible2, n, prune_suffix ? &level_keys : nullptr);
    if (candidates.empty()) break;

    std::vector<long long> counts(candidates.size(), 0);
    auto worker = [&](std::size_t lo, std::size_t hi) {
      for (std::size_t i = lo; i < hi; ++i)
        counts[i] = detail::chain_support_count(m, candidates[i], mid);
      return 0;
    };
    run_chunked<int>(candidates.size(), threads, worker);

    std::vector<std::vector<int>> next;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (meets_threshold(counts[i], k_total, tau, guard)) {
        next.push_back(candidates[i]);
        result.push_back(ChainSupport{std::move(candidates[i]), counts[i]});
      }
    }
    level = std::move(next);
  }

  std::sort(result.begin(), result.end(), [](const ChainSupport& a, const ChainSupport& b) {
    if (a.chain.size() != b.chain.size()) return a.chain.size() < b.chain.size();
    return a.chain < b.chain;
  });
  return result;
}

}  // namespace rankmine
