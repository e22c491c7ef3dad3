#pragma once

#include <algorithm>
#include <charconv>
#include <string>
#include <vector>

#include "rankmine/common.hpp"

namespace rankmine {

/// The six binary hierarchy question kinds. Order matters: catalogs group
/// and serialize entries in this order.
enum class Kind {
  RankedPermutation,
  Permutation,
  PartialHierarchy,
  RankedCombination,
  Combination,
  RankSet,
};

inline const char* kind_name(Kind k) {
  switch (k) {
    case Kind::RankedPermutation: return "ranked_permutation";
    case Kind::Permutation: return "permutation";
    case Kind::PartialHierarchy: return "partial_hierarchy";
    case Kind::RankedCombination: return "ranked_combination";
    case Kind::Combination: return "combination";
    case Kind::RankSet: return "rank_set";
  }
  return "?";
}

/// One binary treatment-hierarchy question. Treatments are indices into the
/// run's label list; order is meaningful for ranked permutations,
/// permutations and partial hierarchies, and sorted for combination kinds.
/// rank_lo/rank_hi are 1-based and used by the ranked kinds; `ranks` is the
/// sorted rank set of a RankSet question; `mid` applies to partial
/// hierarchies only.
struct Question {
  Kind kind = Kind::RankedPermutation;
  std::vector<int> treatments;
  int rank_lo = 0;
  int rank_hi = 0;
  double mid = 0.0;
  std::vector<int> ranks;

  int size() const { return static_cast<int>(treatments.size()); }

  friend bool operator==(const Question& a, const Question& b) {
    return a.kind == b.kind && a.treatments == b.treatments && a.rank_lo == b.rank_lo &&
           a.rank_hi == b.rank_hi && a.mid == b.mid && a.ranks == b.ranks;
  }
};

namespace detail {

inline void append_int(std::string& s, long long v) {
  char buf[24];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  s.append(buf, ptr);
}

inline std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace detail

/// Deterministic map/sort key. Encodes the question verbatim (no
/// canonicalization).
inline std::string question_key(const Question& q) {
  std::string s;
  switch (q.kind) {
    case Kind::RankedPermutation: s = "R"; break;
    case Kind::Permutation: s = "P"; break;
    case Kind::PartialHierarchy: s = "H"; break;
    case Kind::RankedCombination: s = "C"; break;
    case Kind::Combination: s = "U"; break;
    case Kind::RankSet: s = "S"; break;
  }
  if (q.kind == Kind::RankedPermutation || q.kind == Kind::RankedCombination) {
    s += '|';
    detail::append_int(s, q.rank_lo);
    s += '-';
    detail::append_int(s, q.rank_hi);
  }
  if (q.kind == Kind::PartialHierarchy) {
    s += '|';
    s += detail::format_double(q.mid);
  }
  s += '|';
  for (std::size_t i = 0; i < q.treatments.size(); ++i) {
    if (i) s += ',';
    detail::append_int(s, q.treatments[i]);
  }
  if (q.kind == Kind::RankSet) {
    s += '|';
    for (std::size_t i = 0; i < q.ranks.size(); ++i) {
      if (i) s += ',';
      detail::append_int(s, q.ranks[i]);
    }
  }
  return s;
}

/// Human-readable form, e.g. "(A,B)@1-2", "{C,D}@3-4", "A>B>C", "E@{5}".
inline std::string display_question(const Question& q,
                                    const std::vector<std::string>& labels) {
  auto name = [&](int t) { return labels[static_cast<std::size_t>(t)]; };
  std::string s;
  switch (q.kind) {
    case Kind::RankedPermutation:
    case Kind::Permutation:
      s = "(";
      for (std::size_t i = 0; i < q.treatments.size(); ++i) {
        if (i) s += ",";
        s += name(q.treatments[i]);
      }
      s += ")";
      break;
    case Kind::PartialHierarchy:
      for (std::size_t i = 0; i < q.treatments.size(); ++i) {
        if (i) s += ">";
        s += name(q.treatments[i]);
      }
      if (q.mid > 0.0) s += " [MID=" + detail::format_double(q.mid) + "]";
      break;
    case Kind::RankedCombination:
    case Kind::Combination:
      s = "{";
      for (std::size_t i = 0; i < q.treatments.size(); ++i) {
        if (i) s += ",";
        s += name(q.treatments[i]);
      }
      s += "}";
      break;
    case Kind::RankSet: {
      s = name(q.treatments[0]) + "@{";
      for (std::size_t i = 0; i < q.ranks.size(); ++i) {
        if (i) s += ",";
        detail::append_int(s, q.ranks[i]);
      }
      s += "}";
      return s;
    }
  }
  if (q.kind == Kind::RankedPermutation || q.kind == Kind::RankedCombination) {
    s += "@";
    detail::append_int(s, q.rank_lo);
    s += "-";
    detail::append_int(s, q.rank_hi);
  }
  return s;
}

/// Well-formedness check against a network of n treatments.
inline void validate_question(const Question& q, int n) {
  auto fail = [](const std::string& msg) { throw ConfigError("malformed question: " + msg); };
  const int s = q.size();
  if (n < 2) fail("n < 2");
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int t : q.treatments) {
    if (t < 0 || t >= n) fail("treatment index out of range");
    if (seen[static_cast<std::size_t>(t)]) fail("repeated treatment");
    seen[static_cast<std::size_t>(t)] = true;
  }
  switch (q.kind) {
    case Kind::RankedPermutation:
      if (s < 2 || s > n) fail("ranked permutation size must be 2..n");
      if (q.rank_lo < 1 || q.rank_hi > n || q.rank_hi - q.rank_lo + 1 != s)
        fail("ranked permutation span must cover its size");
      break;
    case Kind::Permutation:
      if (s < 2 || s > n - 1) fail("permutation size must be 2..n-1");
      break;
    case Kind::PartialHierarchy:
      if (s < 2 || s > n - 1) fail("partial hierarchy size must be 2..n-1");
      if (q.mid < 0.0) fail("mid must be >= 0");
      break;
    case Kind::RankedCombination:
      if (s < 2 || s > n - 1) fail("ranked combination size must be 2..n-1");
      if (q.rank_lo < 1 || q.rank_hi > n || q.rank_hi - q.rank_lo + 1 != s)
        fail("ranked combination span must cover its size");
      if (!std::is_sorted(q.treatments.begin(), q.treatments.end()))
        fail("combination treatments must be sorted");
      break;
    case Kind::Combination:
      if (s < 2 || s > n - 1) fail("combination size must be 2..n-1");
      if (!std::is_sorted(q.treatments.begin(), q.treatments.end()))
        fail("combination treatments must be sorted");
      break;
    case Kind::RankSet: {
      if (s != 1) fail("rank set concerns exactly one treatment");
      // The full set is allowed as the degenerate HDR of a flat distribution;
      // enumeration and counting still use proper subsets only.
      if (q.ranks.empty() || static_cast<int>(q.ranks.size()) > n)
        fail("rank set must be a non-empty subset of ranks");
      if (!std::is_sorted(q.ranks.begin(), q.ranks.end())) fail("ranks must be sorted");
      for (std::size_t i = 0; i + 1 < q.ranks.size(); ++i)
        if (q.ranks[i] == q.ranks[i + 1]) fail("repeated rank");
      for (int r : q.ranks)
        if (r < 1 || r > n) fail("rank out of range");
      break;
    }
  }
}

namespace detail {

inline std::vector<int> complement_of(const std::vector<int>& treatments, int n) {
  std::vector<bool> in(static_cast<std::size_t>(n), false);
  for (int t : treatments) in[static_cast<std::size_t>(t)] = true;
  std::vector<int> out;
  for (int t = 0; t < n; ++t)
    if (!in[static_cast<std::size_t>(t)]) out.push_back(t);
  return out;
}

}  // namespace detail

/// Maps a question to its canonical representative among event-equivalent
/// forms. The mapping is idempotent and preserves the per-sample indicator:
///  - a ranked permutation of all n treatments, and the size-(n-1) form
///    ranked 2..n, both determine the full hierarchy and map to the
///    size-(n-1) form ranked 1..n-1;
///  - a bottom-anchored ranked combination whose complement has size 2..n-2
///    maps to the complement ranked 1..j;
///  - combination treatment lists are kept sorted.
inline Question canonicalize(const Question& q, int n) {
  validate_question(q, n);
  Question c = q;
  switch (c.kind) {
    case Kind::RankedPermutation:
      if (c.size() == n && n >= 3) {
        c.treatments.pop_back();
        c.rank_lo = 1;
        c.rank_hi = n - 1;
      } else if (c.size() == n - 1 && c.rank_lo == 2 && c.rank_hi == n && n >= 3) {
        auto missing = detail::complement_of(c.treatments, n);
        std::vector<int> seq;
        seq.push_back(missing[0]);
        for (int i = 0; i + 1 < c.size(); ++i) seq.push_back(c.treatments[static_cast<std::size_t>(i)]);
        c.treatments = std::move(seq);
        c.rank_lo = 1;
        c.rank_hi = n - 1;
      }
      break;
    case Kind::RankedCombination: {
      std::sort(c.treatments.begin(), c.treatments.end());
      // {C'}_{j+1}^{n} <=> {C}_1^{j} when the complement C has size 2..n-2.
      if (c.rank_hi == n && c.rank_lo >= 3) {
        int j = c.rank_lo - 1;
        c.treatments = detail::complement_of(c.treatments, n);
        c.rank_lo = 1;
        c.rank_hi = j;
      }
      break;
    }
    case Kind::Combination:
      std::sort(c.treatments.begin(), c.treatments.end());
      break;
    default:
      break;
  }
  return c;
}

/// Key used when counting unique questions. On top of canonicalize, a size-2
/// partial hierarchy and its reversal count as one question (each determines
/// the other through the complement), matching the taxonomy counts.
inline std::string counting_key(const Question& q, int n) {
  Question c = canonicalize(q, n);
  if (c.kind == Kind::PartialHierarchy && c.size() == 2 &&
      c.treatments[0] > c.treatments[1])
    std::swap(c.treatments[0], c.treatments[1]);
  return question_key(c);
}

}  // namespace rankmine
