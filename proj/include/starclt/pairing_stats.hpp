#pragma once

#include <cstddef>
#include <vector>

#include "starclt/permutation.hpp"
#include "starclt/rational.hpp"
#include "starclt/set_partition.hpp"

namespace starclt {

/// p_pi = (a_1,b_1)...(a_h,b_h), the involution swapping each pair.
inline Permutation pairing_permutation(const PairPartition& pi) {
  CycleDecomposition cycles;
  for (const auto& [a, b] : pi.pairs()) cycles.push_back({a, b});
  return Permutation::from_cycles(cycles);
}

/// c_{1->k} = (1, 2, ..., k).
inline Permutation forward_cycle(std::size_t k) { return Permutation::forward_cycle(static_cast<Point>(k)); }

/// c_{k->1} = (k, ..., 2, 1).
inline Permutation backward_cycle(std::size_t k) { return Permutation::backward_cycle(static_cast<Point>(k)); }

/// The labelling used to build q_pi: positions a_j and b_j both get label j.
inline std::vector<Index> pair_labels(const PairPartition& pi) {
  std::vector<Index> labels(pi.ground_size());
  for (std::size_t j = 0; j < pi.pairs().size(); ++j) {
    labels[pi.pairs()[j].first - 1] = static_cast<Index>(j + 1);
    labels[pi.pairs()[j].second - 1] = static_cast<Index>(j + 1);
  }
  return labels;
}

/// q_pi = gamma_{i(1)} gamma_{i(2)} ... gamma_{i(2h)} with i(a_j) = i(b_j) = j.
/// Only gamma_1..gamma_h occur, so q_pi fixes every point above h+1.
inline Permutation q_permutation(const PairPartition& pi) {
  Permutation q;
  for (Index label : pair_labels(pi)) q = q * Permutation::star_generator(label);
  return q;
}

/// (h+1) - #(q_pi | {1..h+1}); the star-generator moment is q^{this}.
inline std::size_t u_exponent(const PairPartition& pi) {
  const std::size_t h = pi.pair_count();
  return (h + 1) - orbit_count_first(q_permutation(pi), static_cast<Point>(h + 1));
}

/// (k+2)/2 - #(c_{1->k} p_pi | {1..k}); the Wick term is (1/d)^{this}.
inline std::size_t v_exponent(const PairPartition& pi) {
  const std::size_t k = pi.ground_size();
  auto word = forward_cycle(k) * pairing_permutation(pi);
  return (k + 2) / 2 - orbit_count_first(word, static_cast<Point>(k));
}

/// Sum over pairings pi <= rho of q^{v_exponent(pi)}; zero when rho has an odd block.
inline Rational v_of_partition(const SetPartition& rho, const Rational& q) {
  Rational total = 0;
  for_each_pairing_below(rho, [&](const PairPartition& pi) { total += power(q, v_exponent(pi)); });
  return total;
}

/// Everything this module knows about one pairing.
struct PairingStatistics {
  PairPartition pi;
  Permutation p_pi;
  Permutation q_pi;
  std::size_t u_exponent;
  std::size_t v_exponent;

  static PairingStatistics of(const PairPartition& pi) {
    return {pi, pairing_permutation(pi), q_permutation(pi), starclt::u_exponent(pi), starclt::v_exponent(pi)};
  }
};

/// Tests the exponent identity u_exponent(pi) == v_exponent(pi).
inline bool check_exponent_identity(const PairPartition& pi) { return u_exponent(pi) == v_exponent(pi); }

/// b_0 = 2h+1 followed by the pair maxima b_1, ..., b_h.
inline std::vector<Point> right_endpoints(const PairPartition& pi) {
  std::vector<Point> b{static_cast<Point>(pi.ground_size() + 1)};
  for (const auto& pair : pi.pairs()) b.push_back(pair.second);
  return b;
}

/// The restriction of q_pi to {1..h+1} and the permutation induced by
/// p_pi c_{(2h+1)->1} on {b_0, ..., b_h} are conjugate under i -> b_{i-1}.
inline bool check_conjugacy_lemma(const PairPartition& pi) {
  const std::size_t h = pi.pair_count();
  const auto b = right_endpoints(pi);
  const auto q = q_permutation(pi);
  const auto induced = induced_permutation(pairing_permutation(pi) * backward_cycle(2 * h + 1), b);
  for (std::size_t i = 1; i <= h + 1; ++i) {
    Point image = q(static_cast<Point>(i));
    if (image < 1 || image > h + 1) return false;
    if (induced(b[i - 1]) != b[image - 1]) return false;
  }
  return true;
}

/// Every orbit of p_pi c_{(2h+1)->1} inside {1..2h+1} meets {b_0, ..., b_h}.
inline bool check_orbit_lemma(const PairPartition& pi) {
  const std::size_t n = pi.ground_size() + 1;
  const auto b = right_endpoints(pi);
  const auto word = pairing_permutation(pi) * backward_cycle(n);
  std::vector<bool> marked(n + 1, false);
  for (Point x : b) marked[x] = true;
  std::vector<bool> visited(n + 1, false);
  for (Point start = 1; start <= n; ++start) {
    if (visited[start]) continue;
    bool meets = false;
    for (Point x = start; !visited[x]; x = word(x)) {
      visited[x] = true;
      meets = meets || marked[x];
    }
    if (!meets) return false;
  }
  return true;
}

/// #(p_pi c_{1->(2h+1)} | {1..2h+1}) == #(p_pi c_{1->2h} | {1..2h}).
inline bool check_orbit_extension(const PairPartition& pi) {
  const std::size_t k = pi.ground_size();
  const auto p = pairing_permutation(pi);
  return orbit_count_first(p * forward_cycle(k + 1), static_cast<Point>(k + 1)) ==
         orbit_count_first(p * forward_cycle(k), static_cast<Point>(k));
}

}  // namespace starclt
