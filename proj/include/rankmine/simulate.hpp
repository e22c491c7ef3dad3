#pragma once

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "rankmine/common.hpp"
#include "rankmine/data.hpp"

namespace rankmine {

/// Deterministic standard-normal sampler (mt19937_64 + Box-Muller).
/// std::normal_distribution is not identical across standard libraries, and
/// catalogs must be reproducible from a seed alone.
class NormalSampler {
 public:
  explicit NormalSampler(std::uint64_t seed) : rng_(seed) {}

  double operator()() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = 1.0 - uniform01();  // (0, 1]
    double u2 = uniform01();
    double mag = std::sqrt(-2.0 * std::log(u1));
    constexpr double two_pi = 6.283185307179586476925286766559;
    spare_ = mag * std::sin(two_pi * u2);
    has_spare_ = true;
    return mag * std::cos(two_pi * u2);
  }

 private:
  double uniform01() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

  std::mt19937_64 rng_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

namespace detail {

/// Lower-triangular Cholesky factor of a symmetric positive-definite matrix.
inline std::vector<std::vector<double>> cholesky(
    const std::vector<std::vector<double>>& a) {
  const std::size_t n = a.size();
  std::vector<std::vector<double>> l(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double sum = a[i][j];
      for (std::size_t k = 0; k < j; ++k) sum -= l[i][k] * l[j][k];
      if (i == j) {
        if (sum <= 0.0) throw ConfigError("covariance matrix not positive definite");
        l[i][i] = std::sqrt(sum);
      } else {
        l[i][j] = sum / l[j][j];
      }
    }
  }
  return l;
}

}  // namespace detail

/// Draws K samples from a multivariate normal and prefixes a zero reference
/// column, producing a lower-is-better effects matrix.
inline SampleMatrix simulate_mvn(const std::vector<std::string>& labels,
                                 const std::vector<double>& mean,
                                 const std::vector<std::vector<double>>& cov,
                                 long long k, std::uint64_t seed) {
  if (k < 1) throw ConfigError("K must be >= 1");
  const std::size_t d = mean.size();
  auto l = detail::cholesky(cov);
  NormalSampler normal(seed);
  SampleMatrix m;
  m.labels = labels;
  m.values.reserve(static_cast<std::size_t>(k));
  std::vector<double> z(d);
  for (long long row = 0; row < k; ++row) {
    for (std::size_t i = 0; i < d; ++i) z[i] = normal();
    std::vector<double> effects(d + 1, 0.0);
    for (std::size_t i = 0; i < d; ++i) {
      double v = mean[i];
      for (std::size_t j = 0; j <= i; ++j) v += l[i][j] * z[j];
      effects[i + 1] = v;
    }
    m.values.push_back(std::move(effects));
  }
  m.validate();
  return m;
}

/// Five-treatment demonstration instance: relative effects of B..E vs. A with
/// means (0.25, 0.95, 1.25, 1.5), variances (0.025, 0.150, 0.025, 0.025) and
/// all covariances 0.010; smaller is better.
inline SampleMatrix simulate_toy(long long k, std::uint64_t seed) {
  const std::vector<std::string> labels = {"A", "B", "C", "D", "E"};
  const std::vector<double> mean = {0.25, 0.95, 1.25, 1.5};
  const std::vector<double> var = {0.025, 0.150, 0.025, 0.025};
  std::vector<std::vector<double>> cov(4, std::vector<double>(4, 0.010));
  for (int i = 0; i < 4; ++i) cov[i][i] = var[i];
  return simulate_mvn(labels, mean, cov, k, seed);
}

/// Synthetic instance with overlapping independent marginals, used for
/// randomized equivalence checks and stress runs. Treatment i has mean
/// i*mean_step and standard deviation sd; the first column is the zero
/// reference.
inline SampleMatrix simulate_gaussian(int n, long long k, std::uint64_t seed,
                                      double mean_step = 0.25, double sd = 0.5) {
  if (n < 2 || n > 26) throw ConfigError("simulate_gaussian supports 2..26 treatments");
  if (k < 1) throw ConfigError("K must be >= 1");
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back(std::string(1, static_cast<char>('A' + i)));
  std::vector<double> mean;
  std::vector<std::vector<double>> cov(static_cast<std::size_t>(n - 1),
                                       std::vector<double>(static_cast<std::size_t>(n - 1), 0.0));
  for (int i = 0; i < n - 1; ++i) {
    mean.push_back((i + 1) * mean_step);
    cov[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = sd * sd;
  }
  return simulate_mvn(labels, mean, cov, k, seed);
}

}  // namespace rankmine
