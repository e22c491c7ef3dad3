#pragma once

#include <algorithm>
#include <vector>

#include "rankmine/common.hpp"
#include "rankmine/data.hpp"

namespace rankmine {

/// Rankogram of one treatment: counts[r] samples put it at rank r+1; the
/// counts sum to K exactly.
struct RankDistribution {
  int treatment = 0;
  std::vector<long long> counts;
  long long k_total = 0;

  double prob(int rank1based) const {
    return static_cast<double>(counts[static_cast<std::size_t>(rank1based - 1)]) /
           static_cast<double>(k_total);
  }
};

/// Smallest rank set whose mass reaches tau with every in-set rank at least
/// as probable as any out-of-set rank.
struct HdrSet {
  int treatment = 0;
  std::vector<int> ranks;  // sorted, 1-based
  long long count = 0;
  long long k_total = 0;

  double pi_hat() const {
    return static_cast<double>(count) / static_cast<double>(k_total);
  }
};

/// One rank distribution per treatment, in treatment order.
inline std::vector<RankDistribution> rank_distributions(const RankMatrix& rm) {
  const int n = rm.n();
  std::vector<RankDistribution> out(static_cast<std::size_t>(n));
  for (int t = 0; t < n; ++t) {
    out[static_cast<std::size_t>(t)].treatment = t;
    out[static_cast<std::size_t>(t)].counts.assign(static_cast<std::size_t>(n), 0);
    out[static_cast<std::size_t>(t)].k_total = rm.k();
  }
  for (const auto& row : rm.rows)
    for (int r = 0; r < n; ++r)
      ++out[static_cast<std::size_t>(row[r])].counts[static_cast<std::size_t>(r)];
  return out;
}

/// Starts from all ranks and repeatedly removes the minimum-probability rank
/// while the remaining mass stays at or above tau. Equal minima drop the
/// higher rank index first, so results are deterministic.
inline HdrSet hdr_set(const RankDistribution& d, double tau, double guard = 1e-12) {
  const int n = static_cast<int>(d.counts.size());
  std::vector<bool> in(static_cast<std::size_t>(n), true);
  long long mass = 0;
  for (long long c : d.counts) mass += c;
  int remaining = n;
  while (remaining > 1) {
    int victim = -1;
    for (int r = 0; r < n; ++r) {
      if (!in[static_cast<std::size_t>(r)]) continue;
      if (victim < 0 || d.counts[static_cast<std::size_t>(r)] <=
                            d.counts[static_cast<std::size_t>(victim)])
        victim = r;  // ties: higher index wins, so keep scanning upward
    }
    long long after = mass - d.counts[static_cast<std::size_t>(victim)];
    if (!meets_threshold(after, d.k_total, tau, guard)) break;
    in[static_cast<std::size_t>(victim)] = false;
    mass = after;
    --remaining;
  }
  HdrSet h;
  h.treatment = d.treatment;
  h.k_total = d.k_total;
  h.count = mass;
  for (int r = 0; r < n; ++r)
    if (in[static_cast<std::size_t>(r)]) h.ranks.push_back(r + 1);
  return h;
}

inline std::vector<HdrSet> hdr_sets(const std::vector<RankDistribution>& dists, double tau,
                                    double guard = 1e-12) {
  std::vector<HdrSet> out;
  out.reserve(dists.size());
  for (const auto& d : dists) out.push_back(hdr_set(d, tau, guard));
  return out;
}

}  // namespace rankmine
