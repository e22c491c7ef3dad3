#pragma once

#include <cmath>
#include <cstdint>

#include "rankmine/common.hpp"
#include "rankmine/question.hpp"

namespace rankmine {

namespace detail {

// Exact helpers; counts stay within uint64 for n <= 20.
inline std::uint64_t falling_factorial(int n, int s) {
  std::uint64_t v = 1;
  for (int i = 0; i < s; ++i) v *= static_cast<std::uint64_t>(n - i);
  return v;
}

inline std::uint64_t binomial(int n, int s) {
  if (s < 0 || s > n) return 0;
  std::uint64_t v = 1;
  for (int i = 1; i <= s; ++i) v = v * static_cast<std::uint64_t>(n - s + i) / static_cast<std::uint64_t>(i);
  return v;
}

inline void check_count_range(int n) {
  if (n < 2) throw ConfigError("question counts require n >= 2");
  if (n > 20) throw ConfigError("question counts overflow beyond n = 20");
}

}  // namespace detail

/// Ordered treatments holding specific consecutive ranks. Sizes 2..n-2 carry
/// n-s+1 ranking ranges each; the n! term covers the equivalence class of
/// full-information questions (size n, and size n-1 anchored at either end).
inline std::uint64_t count_ranked_permutations(int n) {
  detail::check_count_range(n);
  std::uint64_t total = 0;
  for (int s = 2; s <= n - 2; ++s)
    total += detail::falling_factorial(n, s) * static_cast<std::uint64_t>(n - s + 1);
  total += detail::falling_factorial(n, n);
  return total;
}

/// Ordered treatments ranking consecutively anywhere; sizes 2..n-1.
inline std::uint64_t count_permutations(int n) {
  detail::check_count_range(n);
  std::uint64_t total = 0;
  for (int s = 2; s <= n - 1; ++s) total += detail::falling_factorial(n, s);
  return total;
}

/// Ordered relations among subsets, other treatments possibly interleaved;
/// sizes 2..n-1, with the size-2 count halved by complement symmetry.
/// For n = 2 the formula counts the single pairwise question even though the
/// taxonomy classifies size-n orderings under ranked permutations, so the
/// enumeration of this kind is empty at n = 2.
inline std::uint64_t count_partial_hierarchies(int n) {
  detail::check_count_range(n);
  std::uint64_t total = detail::binomial(n, 2);
  for (int s = 3; s <= n - 1; ++s) total += detail::falling_factorial(n, s);
  return total;
}

/// Treatment sets holding a specific ranking range, sizes 2..n-1, with
/// top/bottom complement pairs counted once: n * (2^(n-1) - n + 1).
/// Degenerates at n = 2 (no size in 2..n-1 exists; the enumeration is empty).
inline std::uint64_t count_ranked_combinations(int n) {
  detail::check_count_range(n);
  return static_cast<std::uint64_t>(n) *
         ((std::uint64_t{1} << (n - 1)) - static_cast<std::uint64_t>(n) + 1);
}

/// Treatment sets ranking consecutively anywhere: 2^n - n - 2.
inline std::uint64_t count_combinations(int n) {
  detail::check_count_range(n);
  return (std::uint64_t{1} << n) - static_cast<std::uint64_t>(n) - 2;
}

/// Per-treatment rank sets: n * (2^n - 2) proper non-empty subsets.
inline std::uint64_t count_rank_sets(int n) {
  detail::check_count_range(n);
  return static_cast<std::uint64_t>(n) * ((std::uint64_t{1} << n) - 2);
}

struct QuestionCount {
  std::uint64_t ranked_permutations = 0;
  std::uint64_t permutations = 0;
  std::uint64_t partial_hierarchies = 0;
  std::uint64_t ranked_combinations = 0;
  std::uint64_t combinations = 0;
  std::uint64_t rank_sets = 0;

  std::uint64_t total() const {
    return ranked_permutations + permutations + partial_hierarchies +
           ranked_combinations + combinations + rank_sets;
  }
  double log10_total() const { return std::log10(static_cast<double>(total())); }
};

inline QuestionCount count_total(int n) {
  QuestionCount c;
  c.ranked_permutations = count_ranked_permutations(n);
  c.permutations = count_permutations(n);
  c.partial_hierarchies = count_partial_hierarchies(n);
  c.ranked_combinations = count_ranked_combinations(n);
  c.combinations = count_combinations(n);
  c.rank_sets = count_rank_sets(n);
  return c;
}

inline std::uint64_t count_of_kind(int n, Kind kind) {
  switch (kind) {
    case Kind::RankedPermutation: return count_ranked_permutations(n);
    case Kind::Permutation: return count_permutations(n);
    case Kind::PartialHierarchy: return count_partial_hierarchies(n);
    case Kind::RankedCombination: return count_ranked_combinations(n);
    case Kind::Combination: return count_combinations(n);
    case Kind::RankSet: return count_rank_sets(n);
  }
  return 0;
}

}  // namespace rankmine
