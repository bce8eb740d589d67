#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "starclt/errors.hpp"
#include "starclt/set_partition.hpp"

namespace starclt {

struct GueSampleConfig {
  unsigned d = 1;
  std::uint64_t count = 0;
  std::uint64_t seed = 0;
  unsigned shards = 4;
};

using ComplexMatrix = Eigen::MatrixXcd;

/// One GUE matrix: diagonal N(0, 1/d), off-diagonal real and imaginary parts
/// N(0, 1/(2d)). Upper triangle drawn row-major, real part before imaginary.
inline ComplexMatrix draw_gue(unsigned d, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const double diag_sd = std::sqrt(1.0 / d);
  const double off_sd = std::sqrt(1.0 / (2.0 * d));
  ComplexMatrix m(d, d);
  for (unsigned r = 0; r < d; ++r) {
    for (unsigned c = r; c < d; ++c) {
      if (r == c) {
        m(r, c) = {diag_sd * normal(rng), 0.0};
      } else {
        const double re = off_sd * normal(rng);
        const double im = off_sd * normal(rng);
        m(r, c) = {re, im};
        m(c, r) = {re, -im};
      }
    }
  }
  return m;
}

/// Running (sum, sum of squares, count); combining is associative.
struct MomentAccumulator {
  double sum = 0.0;
  double sum_squares = 0.0;
  std::uint64_t count = 0;

  void add(double x) {
    sum += x;
    sum_squares += x * x;
    ++count;
  }

  MomentAccumulator& operator+=(const MomentAccumulator& other) {
    sum += other.sum;
    sum_squares += other.sum_squares;
    count += other.count;
    return *this;
  }

  double mean() const { return count ? sum / count : 0.0; }

  double standard_error() const {
    if (count < 2) return 0.0;
    const double m = mean();
    const double variance = (sum_squares - count * m * m) / (count - 1);
    return std::sqrt(std::max(variance, 0.0) / count);
  }
};

struct MonteCarloEstimate {
  double estimate;
  double standard_error;
};

namespace detail {

inline std::vector<Index> distinct_labels(std::span<const Index> word) {
  std::vector<Index> labels(word.begin(), word.end());
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  return labels;
}

inline std::uint64_t shard_size(const GueSampleConfig& cfg, unsigned shard) {
  const std::uint64_t base = cfg.count / cfg.shards;
  return base + (shard < cfg.count % cfg.shards ? 1 : 0);
}

}  // namespace detail

/// Samples of Re tr_d(M_{i(1)} ... M_{i(k)}) for one shard, seeded by seed ^ shard.
/// Matrices are drawn per sample in increasing label order.
inline MomentAccumulator sample_shard(std::span<const Index> word, const GueSampleConfig& cfg, unsigned shard) {
  std::mt19937_64 rng(cfg.seed ^ shard);
  const auto labels = detail::distinct_labels(word);
  MomentAccumulator acc;
  std::map<Index, ComplexMatrix> draws;
  const std::uint64_t n = detail::shard_size(cfg, shard);
  for (std::uint64_t s = 0; s < n; ++s) {
    for (Index label : labels) draws[label] = draw_gue(cfg.d, rng);
    ComplexMatrix product = ComplexMatrix::Identity(cfg.d, cfg.d);
    for (Index label : word) product = product * draws[label];
    acc.add(product.trace().real() / cfg.d);
  }
  return acc;
}

/// Monte Carlo estimate of the expected normalized trace of the matrix word.
inline MonteCarloEstimate sample_joint_moment(std::span<const Index> word, const GueSampleConfig& cfg) {
  if (cfg.d == 0) throw InvalidArgument("GUE dimension must be positive");
  if (cfg.count < 100) throw InvalidArgument("Monte Carlo needs at least 100 samples");
  if (cfg.shards == 0) throw InvalidArgument("shard count must be positive");
  if (word.empty()) throw InvalidArgument("matrix word must be non-empty");
  MomentAccumulator total;
  for (unsigned shard = 0; shard < cfg.shards; ++shard) total += sample_shard(word, cfg, shard);
  return {total.mean(), total.standard_error()};
}

inline MonteCarloEstimate sample_joint_moment(const IndexTuple& word, const GueSampleConfig& cfg) {
  return sample_joint_moment(word.entries(), cfg);
}

/// Empirical second moments of the entries of sampled GUE matrices.
struct EntryVariances {
  MonteCarloEstimate diagonal;
  MonteCarloEstimate off_diagonal_real;
  MonteCarloEstimate off_diagonal_imag;
};

inline EntryVariances sample_entry_variances(unsigned d, std::uint64_t count, std::uint64_t seed) {
  if (d < 2) throw InvalidArgument("entry variances need d >= 2");
  std::mt19937_64 rng(seed);
  MomentAccumulator diag, re, im;
  for (std::uint64_t s = 0; s < count; ++s) {
    const auto m = draw_gue(d, rng);
    diag.add(std::norm(m(0, 0)));
    re.add(m(0, 1).real() * m(0, 1).real());
    im.add(m(0, 1).imag() * m(0, 1).imag());
  }
  return {{diag.mean(), diag.standard_error()}, {re.mean(), re.standard_error()}, {im.mean(), im.standard_error()}};
}

}  // namespace starclt
