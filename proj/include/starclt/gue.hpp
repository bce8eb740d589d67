#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "starclt/clt.hpp"
#include "starclt/errors.hpp"
#include "starclt/pairing_stats.hpp"
#include "starclt/rational.hpp"
#include "starclt/set_partition.hpp"

namespace starclt {

/// E tr_d(M_{i(1)} ... M_{i(k)}) for independent d x d GUE matrices by the
/// Wick formula: d^{-(k+2)/2} times the sum over pairings pi <= Ker(i) of
/// d^{#(c_{1->k} p_pi)}.
inline Rational wick_joint_moment(std::span<const Index> i, std::int64_t d) {
  if (d <= 0) throw InvalidArgument("GUE dimension must be positive");
  const std::size_t k = i.size();
  if (k == 0) return 1;
  if (k % 2 == 1) return 0;
  const Rational dim(d);
  const auto cycle = forward_cycle(k);
  Rational total = 0;
  for_each_pairing_below(SetPartition::from_labels(i), [&](const PairPartition& pi) {
    total += power(dim, orbit_count_first(cycle * pairing_permutation(pi), static_cast<Point>(k)));
  });
  return total / power(dim, (k + 2) / 2);
}

inline Rational wick_joint_moment(const IndexTuple& i, std::int64_t d) { return wick_joint_moment(i.entries(), d); }

/// k-th moment of the average empirical eigenvalue distribution of one GUE matrix.
inline Rational nu_moment(unsigned k, std::int64_t d) {
  std::vector<Index> ones(k, 1);
  return wick_joint_moment(ones, d);
}

/// The sequence of independent GUE matrices, as an exchangeable oracle.
class WickOracle final : public ExchangeableOracle {
 public:
  explicit WickOracle(std::int64_t d) : d_(d) {
    if (d <= 0) throw InvalidArgument("GUE dimension must be positive");
  }
  Rational moment(std::span<const Index> indices) const override { return wick_joint_moment(indices, d_); }
  std::string name() const override { return "GUE d=" + std::to_string(d_); }

 private:
  std::int64_t d_;
};

}  // namespace starclt
