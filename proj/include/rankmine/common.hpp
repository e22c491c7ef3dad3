#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace rankmine {

/// Preference direction of the effect scale. Internally everything is
/// normalized to lower-is-better on load; this enum records the input
/// convention.
enum class Direction { LowerIsBetter, HigherIsBetter };

inline const char* direction_name(Direction d) {
  return d == Direction::LowerIsBetter ? "lower" : "higher";
}

/// Input or file-format problem (exit code 2 at the CLI).
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Invalid configuration (exit code 3 at the CLI).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Analysis knobs shared by every mining stage.
struct AnalysisConfig {
  double tau = 0.95;
  double mid = 0.0;
  Direction direction = Direction::LowerIsBetter;
  // Guard for "pi_hat >= tau" comparisons: pi_hat is count/K and tau is a
  // user-entered decimal, so exact-threshold fixtures need a tolerance.
  double float_guard = 1e-12;
  int threads = 1;
  // Extra candidate pruning for partial hierarchies (suffix must also be
  // credible). Off by default; output is identical either way.
  bool prune_suffix = false;

  void validate() const {
    if (!(tau > 0.0) || !(tau <= 1.0)) throw ConfigError("tau must be in (0, 1]");
    if (!(mid >= 0.0)) throw ConfigError("mid must be >= 0");
    if (threads < 1) throw ConfigError("threads must be >= 1");
  }
};

/// True when count/k meets the credibility threshold, guarded against
/// floating-point noise at exact boundaries.
inline bool meets_threshold(long long count, long long k, double tau,
                            double guard = 1e-12) {
  return static_cast<double>(count) / static_cast<double>(k) >= tau - guard;
}

/// Monte Carlo sensitivity companion of tau: tau - 2*sqrt(tau*(1-tau)/K).
inline double sensitivity_threshold(double tau, long long k) {
  if (k < 1) throw ConfigError("sensitivity threshold requires K >= 1");
  if (!(tau > 0.0) || !(tau > 0.0 && tau <= 1.0))
    throw ConfigError("tau must be in (0, 1]");
  if (tau == 1.0) return 1.0;  // zero variance
  return tau - 2.0 * std::sqrt(tau * (1.0 - tau) / static_cast<double>(k));
}

/// Runs work(lo, hi) over [0, count) split into up to `threads` contiguous
/// chunks and returns the per-chunk results in chunk order, so callers can
/// merge deterministically regardless of the worker count.
template <typename Result, typename Work>
std::vector<Result> run_chunked(std::size_t count, int threads, Work work) {
  std::vector<Result> results;
  if (count == 0) return results;
  std::size_t nchunks = threads < 1 ? 1 : static_cast<std::size_t>(threads);
  if (nchunks > count) nchunks = count;
  results.resize(nchunks);
  if (nchunks == 1) {
    results[0] = work(std::size_t{0}, count);
    return results;
  }
  std::vector<std::thread> pool;
  pool.reserve(nchunks);
  std::size_t base = count / nchunks;
  std::size_t extra = count % nchunks;
  std::size_t lo = 0;
  for (std::size_t c = 0; c < nchunks; ++c) {
    std::size_t hi = lo + base + (c < extra ? 1 : 0);
    pool.emplace_back([&results, c, lo, hi, &work] { results[c] = work(lo, hi); });
    lo = hi;
  }
  for (auto& t : pool) t.join();
  return results;
}

}  // namespace rankmine
