#pragma once

#include <algorithm>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "rankmine/catalog.hpp"
#include "rankmine/common.hpp"
#include "rankmine/data.hpp"
#include "rankmine/question.hpp"

namespace rankmine {
namespace oracle {

inline constexpr int kDefaultCap = 7;

namespace detail {

inline void check_cap(int n, int cap) {
  if (n < 2) throw ConfigError("oracle requires n >= 2");
  if (n > cap)
    throw ConfigError("oracle refuses n = " + std::to_string(n) + " (cap " +
                      std::to_string(cap) + "); raise the cap to override");
}

template <typename Fn>
void for_each_subset(int n, int size, Fn fn) {
  std::vector<int> pick(static_cast<std::size_t>(size));
  for (int i = 0; i < size; ++i) pick[static_cast<std::size_t>(i)] = i;
  while (true) {
    fn(pick);
    int i = size - 1;
    while (i >= 0 && pick[static_cast<std::size_t>(i)] == n - size + i) --i;
    if (i < 0) break;
    ++pick[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < size; ++j)
      pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
  }
}

template <typename Fn>
void for_each_tuple(int n, int size, Fn fn) {
  for_each_subset(n, size, [&](std::vector<int> combo) {
    std::sort(combo.begin(), combo.end());
    do {
      fn(combo);
    } while (std::next_permutation(combo.begin(), combo.end()));
  });
}

}  // namespace detail

/// Exhaustive, deduplicated question list for one kind, restricted to the
/// forms the mining pipeline can emit (ranked permutations canonicalized;
/// ranked combinations kept verbatim, complement pairs included).
inline std::vector<Question> enumerate_all_questions(int n, Kind kind, double mid = 0.0,
                                                     int cap = kDefaultCap) {
  detail::check_cap(n, cap);
  std::set<std::string> seen;
  std::vector<Question> out;
  auto push = [&seen, &out](Question q) {
    std::string key = question_key(q);
    if (seen.insert(std::move(key)).second) out.push_back(std::move(q));
  };
  switch (kind) {
    case Kind::RankedPermutation: {
      // Sizes 2..n-1 verbatim, mirroring the mining output, where only
      // size-n windows normalize down. At n = 2 the two full orderings are
      // the only questions.
      int top = n == 2 ? 2 : n - 1;
      for (int s = 2; s <= top; ++s)
        detail::for_each_tuple(n, s, [&](const std::vector<int>& tuple) {
          for (int lo = 1; lo + s - 1 <= n; ++lo) {
            Question q;
            q.kind = Kind::RankedPermutation;
            q.treatments = tuple;
            q.rank_lo = lo;
            q.rank_hi = lo + s - 1;
            push(std::move(q));
          }
        });
      break;
    }
    case Kind::Permutation:
    case Kind::PartialHierarchy:
      for (int s = 2; s <= n - 1; ++s)
        detail::for_each_tuple(n, s, [&](const std::vector<int>& tuple) {
          Question q;
          q.kind = kind;
          q.treatments = tuple;
          if (kind == Kind::PartialHierarchy) q.mid = mid;
          push(std::move(q));
        });
      break;
    case Kind::RankedCombination:
      for (int s = 2; s <= n - 1; ++s)
        detail::for_each_subset(n, s, [&](const std::vector<int>& combo) {
          for (int lo = 1; lo + s - 1 <= n; ++lo) {
            Question q;
            q.kind = Kind::RankedCombination;
            q.treatments = combo;
            q.rank_lo = lo;
            q.rank_hi = lo + s - 1;
            push(std::move(q));
          }
        });
      break;
    case Kind::Combination:
      for (int s = 2; s <= n - 1; ++s)
        detail::for_each_subset(n, s, [&](const std::vector<int>& combo) {
          Question q;
          q.kind = Kind::Combination;
          q.treatments = combo;
          push(std::move(q));
        });
      break;
    case Kind::RankSet:
      for (int t = 0; t < n; ++t) {
        for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
          Question q;
          q.kind = Kind::RankSet;
          q.treatments = {t};
          for (int r = 0; r < n; ++r)
            if (mask & (1u << r)) q.ranks.push_back(r + 1);
          push(std::move(q));
        }
      }
      break;
  }
  std::sort(out.begin(), out.end(), [](const Question& a, const Question& b) {
    return question_key(a) < question_key(b);
  });
  return out;
}

/// Number of unique questions of a kind, counting equivalent forms once.
inline std::size_t unique_question_count(int n, Kind kind, int cap = kDefaultCap) {
  std::set<std::string> keys;
  for (const auto& q : enumerate_all_questions(n, kind, 0.0, cap))
    keys.insert(counting_key(q, n));
  return keys.size();
}

/// Direct per-sample indicator, written against the best-to-worst rank rows
/// (independent of the mining and trim code paths).
inline bool question_true_in_row(const Dataset& data, const Question& q, std::size_t row) {
  const auto& ranked = data.ranks.rows[row];  // ranked[r] = treatment at rank r+1
  const int n = data.n();
  switch (q.kind) {
    case Kind::RankedPermutation: {
      for (int i = 0; i < q.size(); ++i)
        if (ranked[static_cast<std::size_t>(q.rank_lo - 1 + i)] !=
            q.treatments[static_cast<std::size_t>(i)])
          return false;
      return true;
    }
    case Kind::Permutation: {
      const int s = q.size();
      for (int start = 0; start + s <= n; ++start) {
        bool match = true;
        for (int i = 0; i < s; ++i)
          if (ranked[static_cast<std::size_t>(start + i)] !=
              q.treatments[static_cast<std::size_t>(i)]) {
            match = false;
            break;
          }
        if (match) return true;
      }
      return false;
    }
    case Kind::PartialHierarchy: {
      const auto& effects = data.effects.values[row];
      for (std::size_t i = 0; i + 1 < q.treatments.size(); ++i)
        if (!(effects[static_cast<std::size_t>(q.treatments[i + 1])] -
                  effects[static_cast<std::size_t>(q.treatments[i])] >=
              q.mid))
          return false;
      return true;
    }
    case Kind::RankedCombination: {
      std::vector<int> window(ranked.begin() + (q.rank_lo - 1),
                              ranked.begin() + q.rank_hi);
      std::sort(window.begin(), window.end());
      return window == q.treatments;
    }
    case Kind::Combination: {
      const int s = q.size();
      for (int start = 0; start + s <= n; ++start) {
        std::vector<int> window(ranked.begin() + start, ranked.begin() + start + s);
        std::sort(window.begin(), window.end());
        if (window == q.treatments) return true;
      }
      return false;
    }
    case Kind::RankSet: {
      for (int r = 0; r < n; ++r)
        if (ranked[static_cast<std::size_t>(r)] == q.treatments[0])
          return std::find(q.ranks.begin(), q.ranks.end(), r + 1) != q.ranks.end();
      return false;
    }
  }
  return false;
}

inline long long evaluate_question_count(const Dataset& data, const Question& q) {
  validate_question(q, data.n());
  long long count = 0;
  for (std::size_t row = 0; row < data.ranks.rows.size(); ++row)
    if (question_true_in_row(data, q, row)) ++count;
  return count;
}

/// Empirical probability of a question by direct evaluation.
inline double evaluate_question(const Dataset& data, const Question& q) {
  return static_cast<double>(evaluate_question_count(data, q)) /
         static_cast<double>(data.k());
}

namespace detail {

/// Reference HDR: exhaustively searches all rank subsets for the smallest
/// credible one, preferring larger mass and then lower rank indices. This is
/// the independent counterpart of the greedy removal in hdr.hpp.
inline Question reference_hdr(const Dataset& data, int treatment, double tau,
                              double guard) {
  const int n = data.n();
  std::vector<long long> counts(static_cast<std::size_t>(n), 0);
  for (const auto& row : data.rank_of)
    ++counts[static_cast<std::size_t>(row[static_cast<std::size_t>(treatment)] - 1)];

  Question best;
  best.kind = Kind::RankSet;
  best.treatments = {treatment};
  for (int size = 1; size <= n; ++size) {
    long long best_mass = -1;
    std::vector<int> best_ranks;
    for_each_subset(n, size, [&](const std::vector<int>& pick) {
      long long mass = 0;
      std::vector<int> ranks;
      for (int idx : pick) {
        mass += counts[static_cast<std::size_t>(idx)];
        ranks.push_back(idx + 1);
      }
      if (mass > best_mass || (mass == best_mass && ranks < best_ranks)) {
        best_mass = mass;
        best_ranks = ranks;
      }
    });
    if (meets_threshold(best_mass, data.k(), tau, guard)) {
      best.ranks = best_ranks;
      return best;
    }
  }
  best.ranks.resize(static_cast<std::size_t>(n));
  for (int r = 0; r < n; ++r) best.ranks[static_cast<std::size_t>(r)] = r + 1;
  return best;
}

}  // namespace detail

/// Brute-force reference catalog: every question of every kind evaluated
/// directly and filtered at tau, plus one reference HDR per treatment.
/// Untrimmed by construction.
inline CredibleCatalog brute_force_catalog(const Dataset& data, double tau, double mid,
                                           double guard = 1e-12, int cap = kDefaultCap) {
  const int n = data.n();
  detail::check_cap(n, cap);
  CredibleCatalog cat;
  cat.labels = data.labels();
  cat.k_total = data.k();
  cat.n = n;
  cat.tau = tau;
  cat.mid = mid;
  cat.float_guard = guard;

  for (Kind kind : {Kind::RankedPermutation, Kind::Permutation, Kind::PartialHierarchy,
                    Kind::RankedCombination, Kind::Combination}) {
    for (const auto& q : enumerate_all_questions(n, kind, mid, cap)) {
      long long count = evaluate_question_count(data, q);
      if (meets_threshold(count, data.k(), tau, guard))
        cat.entries.push_back(CatalogEntry{q, count, data.k(), false, {}});
    }
  }
  for (int t = 0; t < n; ++t) {
    Question q = detail::reference_hdr(data, t, tau, guard);
    long long count = evaluate_question_count(data, q);
    cat.entries.push_back(CatalogEntry{q, count, data.k(), false, {}});
  }

  rankmine::detail::finish_catalog(cat);
  return cat;
}

/// Lists every difference between two catalogs (empty string when equal).
inline std::string diff_catalogs(const CredibleCatalog& a, const CredibleCatalog& b,
                                 const char* name_a = "pipeline",
                                 const char* name_b = "oracle") {
  std::ostringstream out;
  std::size_t ia = 0, ib = 0;
  while (ia < a.entries.size() || ib < b.entries.size()) {
    const CatalogEntry* ea = ia < a.entries.size() ? &a.entries[ia] : nullptr;
    const CatalogEntry* eb = ib < b.entries.size() ? &b.entries[ib] : nullptr;
    std::string ka = ea ? question_key(ea->q) : "";
    std::string kb = eb ? question_key(eb->q) : "";
    if (ea && eb && ka == kb) {
      if (ea->count != eb->count)
        out << "count mismatch for " << display_question(ea->q, a.labels) << ": "
            << name_a << "=" << ea->count << " " << name_b << "=" << eb->count << "\n";
      ++ia;
      ++ib;
    } else if (eb == nullptr || (ea && rankmine::detail::entry_less(*ea, *eb))) {
      out << "only in " << name_a << ": " << display_question(ea->q, a.labels) << "\n";
      ++ia;
    } else {
      out << "only in " << name_b << ": " << display_question(eb->q, b.labels) << "\n";
      ++ib;
    }
  }
  return out.str();
}

}  // namespace oracle
}  // namespace rankmine
