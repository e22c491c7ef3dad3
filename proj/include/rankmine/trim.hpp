#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "rankmine/catalog.hpp"
#include "rankmine/common.hpp"
#include "rankmine/data.hpp"
#include "rankmine/question.hpp"

namespace rankmine {

/// Fréchet-style floor on the joint probability of two events.
inline double joint_lower_bound(double p1, double p2) {
  double b = p1 + p2 - 1.0;
  return b > 0.0 ? b : 0.0;
}

namespace detail {

/// Per-sample indicator used by the trim pass. Kept separate from the
/// oracle's evaluator so the two can cross-check each other.
inline bool true_in_sample(const Dataset& data, const Question& q, std::size_t row) {
  const auto& rank_of = data.rank_of[row];
  switch (q.kind) {
    case Kind::RankedPermutation: {
      for (int i = 0; i < q.size(); ++i)
        if (rank_of[static_cast<std::size_t>(q.treatments[static_cast<std::size_t>(i)])] !=
            q.rank_lo + i)
          return false;
      return true;
    }
    case Kind::Permutation: {
      int base = rank_of[static_cast<std::size_t>(q.treatments[0])];
      for (int i = 1; i < q.size(); ++i)
        if (rank_of[static_cast<std::size_t>(q.treatments[static_cast<std::size_t>(i)])] !=
            base + i)
          return false;
      return true;
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
      for (int t : q.treatments) {
        int r = rank_of[static_cast<std::size_t>(t)];
        if (r < q.rank_lo || r > q.rank_hi) return false;
      }
      return true;
    }
    case Kind::Combination: {
      int lo = data.n() + 1, hi = 0;
      for (int t : q.treatments) {
        int r = rank_of[static_cast<std::size_t>(t)];
        lo = std::min(lo, r);
        hi = std::max(hi, r);
      }
      return hi - lo + 1 == q.size();
    }
    case Kind::RankSet: {
      int r = rank_of[static_cast<std::size_t>(q.treatments[0])];
      return std::binary_search(q.ranks.begin(), q.ranks.end(), r);
    }
  }
  return false;
}

}  // namespace detail

inline long long joint_empirical_count(const Dataset& data,
                                       const std::vector<Question>& qs) {
  for (const auto& q : qs) validate_question(q, data.n());
  long long count = 0;
  const std::size_t k = data.effects.values.size();
  for (std::size_t row = 0; row < k; ++row) {
    bool all = true;
    for (const auto& q : qs)
      if (!detail::true_in_sample(data, q, row)) {
        all = false;
        break;
      }
    if (all) ++count;
  }
  return count;
}

/// Fraction of samples in which every listed question is simultaneously true.
inline double joint_empirical(const Dataset& data, const std::vector<Question>& qs) {
  return static_cast<double>(joint_empirical_count(data, qs)) /
         static_cast<double>(data.k());
}

enum class TrimMethod { Structural, Bound, Empirical };

inline const char* trim_method_name(TrimMethod m) {
  switch (m) {
    case TrimMethod::Structural: return "structural";
    case TrimMethod::Bound: return "bound";
    case TrimMethod::Empirical: return "empirical";
  }
  return "?";
}

/// One detected redundancy relation. Whether it actually trims the target is
/// decided by the retention policy in trim_all and recorded in `applied`.
struct TrimMark {
  int rule = 0;
  std::string target_key;
  std::vector<std::string> witness_keys;
  TrimMethod method = TrimMethod::Structural;
  double joint_bound = -1.0;      // max(p1 + p2 - 1, 0), joint rules only
  double joint_pi = -1.0;         // exact conjunction, when the bound was inconclusive
  bool applied = false;
};

using TrimReport = std::vector<TrimMark>;

namespace detail {

inline bool is_contiguous_subseq(const std::vector<int>& small,
                                 const std::vector<int>& big) {
  if (small.size() >= big.size()) return false;
  for (std::size_t start = 0; start + small.size() <= big.size(); ++start) {
    bool ok = true;
    for (std::size_t i = 0; i < small.size(); ++i)
      if (big[start + i] != small[i]) {
        ok = false;
        break;
      }
    if (ok) return true;
  }
  return false;
}

inline bool is_subsequence(const std::vector<int>& small, const std::vector<int>& big) {
  if (small.size() >= big.size()) return false;
  std::size_t i = 0;
  for (int v : big) {
    if (i < small.size() && small[i] == v) ++i;
  }
  return i == small.size();
}

inline std::vector<int> sorted_copy(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  return v;
}

inline TrimMark make_mark(int rule, const Question& target,
                          std::initializer_list<const Question*> witnesses) {
  TrimMark m;
  m.rule = rule;
  m.target_key = question_key(target);
  for (const Question* w : witnesses) m.witness_keys.push_back(question_key(*w));
  return m;
}

}  // namespace detail

/// Rules 1-8: within-kind supersets (shorter or wider questions implied by a
/// longer one of the same kind) and cross-kind supersets (a more informative
/// kind implying a less informative one over the same treatments).
inline TrimReport mark_superset_redundancies(const CredibleCatalog& c) {
  TrimReport marks;
  for (const auto& target : c.entries) {
    const Question& t = target.q;
    for (const auto& witness : c.entries) {
      const Question& w = witness.q;
      if (&target == &witness) continue;
      switch (t.kind) {
        case Kind::RankedPermutation:
          if (w.kind == Kind::RankedPermutation && w.rank_lo <= t.rank_lo &&
              t.rank_hi <= w.rank_hi && (w.rank_lo < t.rank_lo || t.rank_hi < w.rank_hi)) {
            bool aligned = true;
            for (int r = t.rank_lo; r <= t.rank_hi; ++r)
              if (w.treatments[static_cast<std::size_t>(r - w.rank_lo)] !=
                  t.treatments[static_cast<std::size_t>(r - t.rank_lo)]) {
                aligned = false;
                break;
              }
            if (aligned) marks.push_back(detail::make_mark(1, t, {&w}));
          }
          break;
        case Kind::Permutation:
          if (w.kind == Kind::Permutation &&
              detail::is_contiguous_subseq(t.treatments, w.treatments))
            marks.push_back(detail::make_mark(2, t, {&w}));
          else if (w.kind == Kind::RankedPermutation && w.treatments == t.treatments)
            marks.push_back(detail::make_mark(5, t, {&w}));
          break;
        case Kind::PartialHierarchy:
          if (w.kind == Kind::PartialHierarchy && w.mid == t.mid &&
              detail::is_subsequence(t.treatments, w.treatments))
            marks.push_back(detail::make_mark(3, t, {&w}));
          else if (t.mid == 0.0 && w.kind == Kind::Permutation &&
                   w.treatments == t.treatments)
            marks.push_back(detail::make_mark(4, t, {&w}));
          break;
        case Kind::RankedCombination:
          if (w.kind == Kind::RankedPermutation && w.rank_lo == t.rank_lo &&
              w.rank_hi == t.rank_hi &&
              detail::sorted_copy(w.treatments) == t.treatments)
            marks.push_back(detail::make_mark(8, t, {&w}));
          break;
        case Kind::Combination:
          if (w.kind == Kind::RankedCombination && w.treatments == t.treatments)
            marks.push_back(detail::make_mark(6, t, {&w}));
          else if (w.kind == Kind::Permutation &&
                   detail::sorted_copy(w.treatments) == t.treatments)
            marks.push_back(detail::make_mark(7, t, {&w}));
          break;
        case Kind::RankSet:
          break;
      }
    }
  }
  return marks;
}

/// Rules 9-10: a credible ranked permutation pins each of its treatments to a
/// single rank, and a credible ranked combination pins each member to the
/// span, so matching HDR entries are redundant.
inline TrimReport mark_hdr_implications(const CredibleCatalog& c) {
  TrimReport marks;
  for (const auto& witness : c.entries) {
    const Question& w = witness.q;
    if (w.kind == Kind::RankedPermutation) {
      for (int i = 0; i < w.size(); ++i) {
        Question rs;
        rs.kind = Kind::RankSet;
        rs.treatments = {w.treatments[static_cast<std::size_t>(i)]};
        rs.ranks = {w.rank_lo + i};
        if (c.find(rs)) marks.push_back(detail::make_mark(9, rs, {&w}));
      }
    } else if (w.kind == Kind::RankedCombination) {
      std::vector<int> span;
      for (int r = w.rank_lo; r <= w.rank_hi; ++r) span.push_back(r);
      for (int t : w.treatments) {
        Question rs;
        rs.kind = Kind::RankSet;
        rs.treatments = {t};
        rs.ranks = span;
        if (c.find(rs)) marks.push_back(detail::make_mark(10, rs, {&w}));
      }
    }
  }
  return marks;
}

namespace detail {

inline bool disjoint_sorted(const std::vector<int>& a, const std::vector<int>& b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return false;
    if (a[i] < b[j])
      ++i;
    else
      ++j;
  }
  return true;
}

inline bool single_rank(const Question& q) {
  return q.kind == Kind::RankSet && q.ranks.size() == 1;
}

/// Joint-credibility probe for two catalog entries: cheap Fréchet bound
/// first, exact conjunction over the samples only when inconclusive.
/// Returns true and fills the mark when the pair is jointly credible.
inline bool jointly_credible(const CredibleCatalog& c, const Dataset& data,
                             const CatalogEntry& a, const CatalogEntry& b, TrimMark& m) {
  long long floor_count = a.count + b.count - c.k_total;
  if (floor_count < 0) floor_count = 0;
  m.joint_bound =
      joint_lower_bound(static_cast<double>(a.count) / static_cast<double>(c.k_total),
                        static_cast<double>(b.count) / static_cast<double>(c.k_total));
  if (meets_threshold(floor_count, c.k_total, c.tau, c.float_guard)) {
    m.method = TrimMethod::Bound;
    return true;
  }
  long long joint = joint_empirical_count(data, {a.q, b.q});
  m.joint_pi = static_cast<double>(joint) / static_cast<double>(c.k_total);
  if (meets_threshold(joint, c.k_total, c.tau, c.float_guard)) {
    m.method = TrimMethod::Empirical;
    return true;
  }
  return false;
}

}  // namespace detail

/// Rules 11-18: redundancies through implicit partition blocks.
///   11     top/bottom complement ranked combinations (equivalent questions)
///   12a/b  single-rank HDR equivalent to the size-(n-1) ranked combination
///   13     full-information ranked permutation implies the leftover rank
///   14-16  jointly credible tail blocks imply the middle ranked combination
///   17-18  jointly credible finer splits imply the coarse ranked combination
inline TrimReport mark_partition_blocks(const CredibleCatalog& c, const Dataset& data) {
  TrimReport marks;
  const int n = c.n;

  for (const auto& entry : c.entries) {
    const Question& q = entry.q;
    if (q.kind == Kind::RankedCombination) {
      // Rule 11: bottom-anchored member of a complement pair.
      if (q.rank_lo >= 2 && q.rank_hi == n && q.size() <= n - 2) {
        Question top;
        top.kind = Kind::RankedCombination;
        top.treatments = detail::complement_of(q.treatments, n);
        top.rank_lo = 1;
        top.rank_hi = q.rank_lo - 1;
        if (top.size() >= 2 && c.find(top))
          marks.push_back(detail::make_mark(11, q, {&top}));
      }
      // Rules 12a/12b: complement of a single-rank HDR.
      if (q.size() == n - 1) {
        auto missing = detail::complement_of(q.treatments, n);
        Question rs;
        rs.kind = Kind::RankSet;
        rs.treatments = {missing[0]};
        if (q.rank_lo == 2 && q.rank_hi == n)
          rs.ranks = {1};
        else if (q.rank_lo == 1 && q.rank_hi == n - 1)
          rs.ranks = {n};
        if (!rs.ranks.empty() && c.find(rs))
          marks.push_back(detail::make_mark(12, q, {&rs}));
      }
    } else if (q.kind == Kind::RankedPermutation && q.size() == n - 1) {
      // Rule 13: the one treatment left out has a forced rank.
      auto missing = detail::complement_of(q.treatments, n);
      Question rs;
      rs.kind = Kind::RankSet;
      rs.treatments = {missing[0]};
      if (q.rank_lo == 1 && q.rank_hi == n - 1)
        rs.ranks = {n};
      else if (q.rank_lo == 2 && q.rank_hi == n)
        rs.ranks = {1};
      if (!rs.ranks.empty() && c.find(rs)) {
        TrimMark m = detail::make_mark(13, rs, {&q});
        marks.push_back(std::move(m));
      }
    }
  }

  // Tail blocks anchored at the top (rank 1) and bottom (rank n).
  struct Tail {
    const CatalogEntry* entry;
    int inner_rank;  // last rank covered from its end of the hierarchy
  };
  std::vector<Tail> top_tails, bottom_tails;
  for (const auto& entry : c.entries) {
    const Question& q = entry.q;
    if (detail::single_rank(q)) {
      if (q.ranks[0] == 1) top_tails.push_back({&entry, 1});
      if (q.ranks[0] == n) bottom_tails.push_back({&entry, n});
    } else if (q.kind == Kind::RankedPermutation) {
      if (q.rank_lo == 1 && q.rank_hi <= n - 3) top_tails.push_back({&entry, q.rank_hi});
      if (q.rank_hi == n && q.rank_lo >= 4) bottom_tails.push_back({&entry, q.rank_lo});
    }
  }

  // Rules 14-16: the complement of two jointly credible tails is a middle
  // ranked combination.
  for (const auto& top : top_tails) {
    for (const auto& bottom : bottom_tails) {
      const Question& a = top.entry->q;
      const Question& b = bottom.entry->q;
      if (top.inner_rank + 1 >= bottom.inner_rank) continue;
      if (!detail::disjoint_sorted(detail::sorted_copy(a.treatments),
                                   detail::sorted_copy(b.treatments)))
        continue;
      Question middle;
      middle.kind = Kind::RankedCombination;
      std::vector<int> used = a.treatments;
      used.insert(used.end(), b.treatments.begin(), b.treatments.end());
      middle.treatments = detail::complement_of(used, n);
      middle.rank_lo = top.inner_rank + 1;
      middle.rank_hi = bottom.inner_rank - 1;
      if (middle.size() < 2) continue;
      if (middle.rank_hi - middle.rank_lo + 1 != middle.size()) continue;
      if (!c.find(middle)) continue;
      int rule = 16;
      if (detail::single_rank(a) && detail::single_rank(b))
        rule = 14;
      else if (detail::single_rank(a) || detail::single_rank(b))
        rule = 15;
      TrimMark m = detail::make_mark(rule, middle, {&a, &b});
      if (detail::jointly_credible(c, data, *top.entry, *bottom.entry, m))
        marks.push_back(std::move(m));
    }
  }

  // Rules 17-18: a ranked combination split into an adjacent finer pair.
  for (const auto& coarse : c.entries) {
    const Question& q = coarse.q;
    if (q.kind != Kind::RankedCombination) continue;
    for (const auto& first : c.entries) {
      const Question& f = first.q;
      bool f_is_perm = f.kind == Kind::RankedPermutation;
      bool f_is_hdr = detail::single_rank(f);
      if (!f_is_perm && !f_is_hdr) continue;
      int f_lo = f_is_perm ? f.rank_lo : f.ranks[0];
      int f_hi = f_is_perm ? f.rank_hi : f.ranks[0];
      if (f_lo != q.rank_lo && f_hi != q.rank_hi) continue;
      for (const auto& second : c.entries) {
        const Question& s = second.q;
        if (s.kind != Kind::RankedCombination) continue;
        int lo = std::min(f_lo, s.rank_lo);
        int hi = std::max(f_hi, s.rank_hi);
        if (lo != q.rank_lo || hi != q.rank_hi) continue;
        bool adjacent = (f_hi + 1 == s.rank_lo) || (s.rank_hi + 1 == f_lo);
        if (!adjacent) continue;
        std::vector<int> uni = detail::sorted_copy(f.treatments);
        if (!detail::disjoint_sorted(uni, s.treatments)) continue;
        uni.insert(uni.end(), s.treatments.begin(), s.treatments.end());
        std::sort(uni.begin(), uni.end());
        if (uni != q.treatments) continue;
        TrimMark m = detail::make_mark(f_is_perm ? 17 : 18, q, {&f, &s});
        if (detail::jointly_credible(c, data, first, second, m))
          marks.push_back(std::move(m));
      }
    }
  }

  return marks;
}

namespace detail {

inline void sort_report(TrimReport& r) {
  std::sort(r.begin(), r.end(), [](const TrimMark& a, const TrimMark& b) {
    if (a.rule != b.rule) return a.rule < b.rule;
    if (a.target_key != b.target_key) return a.target_key < b.target_key;
    return a.witness_keys < b.witness_keys;
  });
  r.erase(std::unique(r.begin(), r.end(),
                      [](const TrimMark& a, const TrimMark& b) {
                        return a.rule == b.rule && a.target_key == b.target_key &&
                               a.witness_keys == b.witness_keys;
                      }),
          r.end());
}

}  // namespace detail

/// Collects every redundancy mark over the full catalog, then resolves final
/// flags in one deterministic pass:
///   - rules 1-10, 12, 13 always trim their target;
///   - rule 11 trims the bottom member only when its top partner is itself
///     redundant (otherwise both phrasings stay, and the relation is only
///     reported);
///   - rules 14-16 trim the middle block only when both tail witnesses are
///     retained in the final output, so the trimmed block stays derivable;
///   - rules 17-18 likewise require both finer witnesses to be retained.
/// Non-applied marks remain in the report for audit.
inline std::pair<CredibleCatalog, TrimReport> trim_all(const CredibleCatalog& catalog,
                                                       const Dataset& data) {
  TrimReport all = mark_superset_redundancies(catalog);
  TrimReport hdr = mark_hdr_implications(catalog);
  TrimReport part = mark_partition_blocks(catalog, data);
  all.insert(all.end(), hdr.begin(), hdr.end());
  all.insert(all.end(), part.begin(), part.end());
  detail::sort_report(all);

  // Retention decisions are made phase by phase so later phases see the
  // earlier outcomes; within a phase the sorted mark order fixes any cascade.
  std::set<std::string> redundant;
  auto retained = [&redundant](const std::string& key) { return !redundant.count(key); };
  for (auto& m : all)
    if (m.rule <= 10 || m.rule == 12 || m.rule == 13) {
      redundant.insert(m.target_key);
      m.applied = true;
    }
  for (auto& m : all)
    if (m.rule == 11 && !retained(m.witness_keys[0])) {
      redundant.insert(m.target_key);
      m.applied = true;
    }
  for (auto& m : all)
    if (m.rule >= 14 && m.rule <= 16 && retained(m.witness_keys[0]) &&
        retained(m.witness_keys[1])) {
      redundant.insert(m.target_key);
      m.applied = true;
    }
  for (auto& m : all)
    if (m.rule >= 17 && retained(m.witness_keys[0]) && retained(m.witness_keys[1])) {
      redundant.insert(m.target_key);
      m.applied = true;
    }

  CredibleCatalog out = catalog;
  auto display = [&out](const std::string& key) {
    auto it = out.index.find(key);
    return display_question(out.entries[it->second].q, out.labels);
  };
  for (const auto& m : all) {
    if (!m.applied) continue;
    auto it = out.index.find(m.target_key);
    CatalogEntry& entry = out.entries[it->second];
    entry.redundant = true;
    std::string witness;
    for (std::size_t i = 0; i < m.witness_keys.size(); ++i) {
      if (i) witness += " & ";
      witness += display(m.witness_keys[i]);
    }
    entry.trimmed_by.push_back(TrimRef{m.rule, witness});
  }
  return {std::move(out), std::move(all)};
}

}  // namespace rankmine
