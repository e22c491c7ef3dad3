#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "rankmine/common.hpp"

namespace rankmine {

/// K x n matrix of relative effects vs. a fixed reference, one column per
/// treatment. Values are stored normalized so that smaller is always better;
/// `input_direction` records the convention of the source data.
struct SampleMatrix {
  std::vector<std::string> labels;
  std::vector<std::vector<double>> values;  // K rows of n effects
  Direction input_direction = Direction::LowerIsBetter;

  long long k() const { return static_cast<long long>(values.size()); }
  int n() const { return static_cast<int>(labels.size()); }

  void validate() const {
    if (labels.size() < 2) throw ParseError("need at least 2 treatments");
    if (values.empty()) throw ParseError("need at least 1 sample row");
    std::set<std::string> seen;
    for (const auto& l : labels) {
      if (l.empty()) throw ParseError("empty treatment name");
      if (!seen.insert(l).second) throw ParseError("duplicate treatment name: " + l);
    }
    for (std::size_t r = 0; r < values.size(); ++r) {
      if (values[r].size() != labels.size())
        throw ParseError("row " + std::to_string(r + 1) + " has " +
                         std::to_string(values[r].size()) + " cells, expected " +
                         std::to_string(labels.size()));
      for (double v : values[r])
        if (!std::isfinite(v))
          throw ParseError("non-finite value in row " + std::to_string(r + 1));
    }
  }

  int index_of(const std::string& name) const {
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == name) return static_cast<int>(i);
    throw ParseError("unknown treatment: " + name);
  }
};

/// K x n matrix of treatment indices ordered best to worst per sample row.
struct RankMatrix {
  std::vector<std::string> labels;
  std::vector<std::vector<int>> rows;  // rows[k][r] = treatment at rank r+1

  long long k() const { return static_cast<long long>(rows.size()); }
  int n() const { return static_cast<int>(labels.size()); }
};

/// Sorts each sample row into a best-to-worst hierarchy. Ties keep input
/// column order (stable sort), so catalogs are reproducible.
inline RankMatrix rank_samples(const SampleMatrix& m) {
  RankMatrix rm;
  rm.labels = m.labels;
  rm.rows.reserve(m.values.size());
  const int n = m.n();
  std::vector<int> order(n);
  for (const auto& row : m.values) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&row](int a, int b) { return row[a] < row[b]; });
    rm.rows.push_back(order);
  }
  return rm;
}

/// Effects plus the derived rank hierarchy and its inverse (rank of each
/// treatment per sample), which the miners and trim checks share read-only.
struct Dataset {
  SampleMatrix effects;
  RankMatrix ranks;
  std::vector<std::vector<int>> rank_of;  // rank_of[k][t] = 1-based rank of t

  long long k() const { return effects.k(); }
  int n() const { return effects.n(); }
  const std::vector<std::string>& labels() const { return effects.labels; }
};

inline Dataset make_dataset(SampleMatrix m) {
  m.validate();
  Dataset d;
  d.effects = std::move(m);
  d.ranks = rank_samples(d.effects);
  const int n = d.effects.n();
  d.rank_of.resize(d.ranks.rows.size(), std::vector<int>(n, 0));
  for (std::size_t k = 0; k < d.ranks.rows.size(); ++k)
    for (int r = 0; r < n; ++r) d.rank_of[k][d.ranks.rows[k][r]] = r + 1;
  return d;
}

/// Builds a dataset directly from a rank matrix by synthesizing effects from
/// rank positions. Only valid for MID = 0 analyses (rank input carries no
/// effect-scale information).
inline Dataset make_dataset_from_ranks(RankMatrix rm) {
  SampleMatrix m;
  m.labels = rm.labels;
  const int n = rm.n();
  m.values.reserve(rm.rows.size());
  for (const auto& row : rm.rows) {
    std::vector<double> effects(n, 0.0);
    for (int r = 0; r < n; ++r) effects[row[r]] = static_cast<double>(r + 1);
    m.values.push_back(std::move(effects));
  }
  return make_dataset(std::move(m));
}

}  // namespace rankmine
