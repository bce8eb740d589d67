#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <shared_mutex>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "starclt/check_result.hpp"
#include "starclt/errors.hpp"
#include "starclt/group_algebra.hpp"
#include "starclt/rational.hpp"
#include "starclt/set_partition.hpp"

namespace starclt {

/// Joint-moment evaluator phi(a_{i(1)} ... a_{i(k)}) of a sequence (a_n).
/// The empty product evaluates to 1.
class ExchangeableOracle {
 public:
  virtual ~ExchangeableOracle() = default;
  virtual Rational moment(std::span<const Index> indices) const = 0;
  virtual std::string name() const = 0;
};

/// a_n = gamma_n under phi_q: the product permutation evaluated at q^{length}.
class StarGeneratorOracle final : public ExchangeableOracle {
 public:
  explicit StarGeneratorOracle(CharacterParameter q) : q_(std::move(q)) {}

  Rational moment(std::span<const Index> indices) const override {
    Permutation product;
    for (Index i : indices) product = product * Permutation::star_generator(i);
    return phi(product, q_);
  }

  std::string name() const override { return "star-generators q=" + to_string(q_.q); }

 private:
  CharacterParameter q_;
};

/// a_n = gamma_n - q, multiplied out in the group algebra.
class CenteredStarGeneratorOracle final : public ExchangeableOracle {
 public:
  explicit CenteredStarGeneratorOracle(CharacterParameter q, Budget budget = {})
      : q_(std::move(q)), budget_(budget) {}

  Rational moment(std::span<const Index> indices) const override {
    auto product = GroupAlgebraElement::identity();
    for (Index i : indices) {
      product = GroupAlgebraElement::multiply(product, centered_generator(i, q_), budget_.max_terms);
    }
    return phi(product, q_);
  }

  std::string name() const override { return "centered star-generators q=" + to_string(q_.q); }

 private:
  CharacterParameter q_;
  Budget budget_;
};

/// Wraps an arbitrary callable; used for controls and ad-hoc sequences.
class FunctionOracle final : public ExchangeableOracle {
 public:
  using Fn = std::function<Rational(std::span<const Index>)>;
  FunctionOracle(std::string name, Fn fn) : name_(std::move(name)), fn_(std::move(fn)) {}
  Rational moment(std::span<const Index> indices) const override { return fn_(indices); }
  std::string name() const override { return name_; }

 private:
  std::string name_;
  Fn fn_;
};

inline std::string format_tuple(std::span<const Index> tuple) {
  std::ostringstream out;
  out << '(';
  for (std::size_t p = 0; p < tuple.size(); ++p) out << (p ? "," : "") << tuple[p];
  out << ')';
  return out.str();
}

/// The function on partitions t(pi) = phi(a_{i(1)} ... a_{i(k)}) for any i with
/// Ker(i) = pi, evaluated on the canonical representative (block labels) and
/// memoized. Lookups are thread-safe; racing first evaluations of one key may
/// both compute, and agree.
class PartitionFunction {
 public:
  explicit PartitionFunction(std::shared_ptr<const ExchangeableOracle> oracle) : oracle_(std::move(oracle)) {
    if (!oracle_) throw InvalidArgument("partition function needs an oracle");
  }

  Rational operator()(const SetPartition& pi) const {
    {
      std::shared_lock lock(mutex_);
      auto it = memo_.find(pi);
      if (it != memo_.end()) return it->second;
    }
    auto labels = pi.block_labels();
    Rational value = oracle_->moment(labels);
    std::unique_lock lock(mutex_);
    memo_.emplace(pi, value);
    return value;
  }

  Rational operator()(const PairPartition& pi) const { return (*this)(pi.partition()); }

  /// t(1_1) == 0, the vanishing condition needed by the limit theorem.
  bool is_centered() const { return (*this)(SetPartition::one_block(1)) == 0; }

  const ExchangeableOracle& oracle() const { return *oracle_; }

  std::size_t cached() const {
    std::shared_lock lock(mutex_);
    return memo_.size();
  }

 private:
  std::shared_ptr<const ExchangeableOracle> oracle_;
  mutable std::shared_mutex mutex_;
  mutable std::map<SetPartition, Rational> memo_;
};

inline Rational t_value(const PartitionFunction& t, const SetPartition& pi) { return t(pi); }

/// Oracle values at equal-kernel tuples agree. Tuples are drawn uniformly
/// from {1..2k}^k and relabelled by a random injection.
inline CheckResult check_exchangeable(const ExchangeableOracle& oracle, std::size_t k_max, std::size_t trials,
                                      std::uint64_t seed) {
  CheckResult result{"exchangeable", "joint moments depend only on the kernel of the index tuple", 0, 0, {}};
  std::mt19937_64 rng(seed);
  for (std::size_t trial = 0; trial < trials; ++trial) {
    const std::size_t k = 1 + rng() % k_max;
    std::vector<Index> i(k);
    for (auto& x : i) x = static_cast<Index>(1 + rng() % (2 * k));
    std::vector<Index> relabel(3 * k);
    for (std::size_t v = 0; v < relabel.size(); ++v) relabel[v] = static_cast<Index>(v + 1);
    std::shuffle(relabel.begin(), relabel.end(), rng);
    std::vector<Index> j(k);
    for (std::size_t p = 0; p < k; ++p) j[p] = relabel[i[p] - 1];
    Rational lhs = oracle.moment(i);
    Rational rhs = oracle.moment(j);
    result.record(lhs == rhs, "i=" + format_tuple(i) + " j=" + format_tuple(j) + ": " + to_string(lhs) +
                                  " != " + to_string(rhs));
  }
  return result;
}

/// phi(... a_{i(j)} ...) = phi(a_{i(j)}) phi(product without position j)
/// whenever the label i(j) occurs only once.
inline CheckResult check_singleton_factorization(const ExchangeableOracle& oracle, std::size_t k_max,
                                                 std::size_t trials, std::uint64_t seed) {
  CheckResult result{"singleton-factorization", "a uniquely occurring index factors out of the joint moment", 0,
                     0, {}};
  std::mt19937_64 rng(seed);
  for (std::size_t trial = 0; trial < trials; ++trial) {
    const std::size_t k = 1 + rng() % k_max;
    std::vector<Index> i(k);
    for (auto& x : i) x = static_cast<Index>(1 + rng() % (2 * k));
    const std::size_t lone = rng() % k;
    Index fresh;
    do {
      fresh = static_cast<Index>(1 + rng() % (3 * k));
    } while (std::find(i.begin(), i.end(), fresh) != i.end());
    i[lone] = fresh;
    std::vector<Index> rest;
    for (std::size_t p = 0; p < k; ++p) {
      if (p != lone) rest.push_back(i[p]);
    }
    const Index single[] = {fresh};
    Rational lhs = oracle.moment(i);
    Rational rhs = oracle.moment(single) * oracle.moment(rest);
    result.record(lhs == rhs, "i=" + format_tuple(i) + " lone position " + std::to_string(lone + 1) + ": " +
                                  to_string(lhs) + " != " + to_string(rhs));
  }
  return result;
}

/// mu(X_{i(1)} ... X_{i(k)}) = sum of t(pi) over pairings pi <= Ker(i), for any t.
inline Rational pairing_functional(const PartitionFunction& t, const SetPartition& kernel_of_i) {
  Rational total = 0;
  for_each_pairing_below(kernel_of_i, [&](const PairPartition& pi) { total += t(pi); });
  return total;
}

inline void require_centered(const PartitionFunction& t) {
  if (!t.is_centered()) {
    throw NotCenteredError("limit moments need t(1_1) = 0; got " + to_string(t(SetPartition::one_block(1))) +
                           " for " + t.oracle().name());
  }
}

/// The limit-law moment for the tuple i: sum of t(pi) over pairings below Ker(i).
inline Rational limit_moment(const PartitionFunction& t, const IndexTuple& i) {
  require_centered(t);
  return pairing_functional(t, kernel(i));
}

/// Sum of t(pi) over all of P2(2m), with the value 1 at m = 0. No centering check.
inline Rational pairing_sum(const PartitionFunction& t, unsigned m) {
  if (m == 0) return 1;
  return pairing_functional(t, SetPartition::one_block(2 * m));
}

/// alpha_{2m}: the order-2m moment of the univariate limit law.
inline Rational alpha_coefficient(const PartitionFunction& t, unsigned m) {
  require_centered(t);
  return pairing_sum(t, m);
}

/// Checks the effect of translating the sequence by lambda (u from a_n + lambda,
/// t from a_n):
///  - per pairing: u(pi) = lambda^{2m} + sum over non-empty pi-saturated A of
///    lambda^{2m-|A|} t(pi|A);
///  - aggregated: beta_{2m}/(2m)! = sum_l alpha_{2l}/(2l)! (lambda^2/2)^{m-l}/(m-l)!.
inline CheckResult translation_check(const PartitionFunction& t, const PartitionFunction& u,
                                     const Rational& lambda, unsigned m_max) {
  require_centered(t);
  CheckResult result{"translation", "translating an exchangeable sequence multiplies the e.g.f. by a Gaussian factor",
                     0, 0, {}};
  for (unsigned m = 1; m <= m_max; ++m) {
    for (const auto& pi : enumerate_pair_partitions(2 * m)) {
      Rational rhs = power(lambda, 2 * m);
      const auto& pairs = pi.pairs();
      for (std::uint32_t mask = 1; mask < (1U << m); ++mask) {
        std::vector<Point> subset;
        for (unsigned b = 0; b < m; ++b) {
          if (mask & (1U << b)) {
            subset.push_back(pairs[b].first);
            subset.push_back(pairs[b].second);
          }
        }
        rhs += power(lambda, 2 * m - subset.size()) * t(restrict(pi.partition(), subset));
      }
      Rational lhs = u(pi);
      result.record(lhs == rhs, "pairing " + pi.to_string() + ": u=" + to_string(lhs) + " expansion=" + to_string(rhs));
    }
    Rational beta_scaled = pairing_sum(u, m) / Rational(factorial(2 * m));
    Rational cauchy = 0;
    const Rational half_lambda_sq = lambda * lambda / 2;
    for (unsigned l = 0; l <= m; ++l) {
      cauchy += pairing_sum(t, l) / Rational(factorial(2 * l)) * power(half_lambda_sq, m - l) /
                Rational(factorial(m - l));
    }
    result.record(beta_scaled == cauchy, "m=" + std::to_string(m) + ": beta/(2m)!=" + to_string(beta_scaled) +
                                             " Cauchy product=" + to_string(cauchy));
  }
  return result;
}

/// Joint moments mu(X_{i(1)} ... X_{i(k)}) for every tuple over {1..r} with 1 <= k <= cap.
class MomentTable {
 public:
  MomentTable(unsigned r, unsigned cap) : r_(r), cap_(cap) {
    if (r == 0) throw InvalidArgument("moment table needs r >= 1");
  }

  unsigned variables() const { return r_; }
  unsigned order_cap() const { return cap_; }

  void set(std::vector<Index> tuple, Rational value) {
    if (tuple.empty() || tuple.size() > cap_) throw InvalidArgument("tuple length outside 1..cap");
    for (Index i : tuple) {
      if (i == 0 || i > r_) throw InvalidArgument("tuple label outside 1..r");
    }
    entries_[std::move(tuple)] = std::move(value);
  }

  const Rational& at(const std::vector<Index>& tuple) const {
    auto it = entries_.find(tuple);
    if (it == entries_.end()) throw InvalidArgument("moment table has no entry for " + format_tuple(tuple));
    return it->second;
  }

  bool contains(const std::vector<Index>& tuple) const { return entries_.count(tuple) != 0; }

  /// Every tuple of every length 1..cap is present.
  bool is_complete() const {
    std::size_t expected = 0;
    std::size_t layer = 1;
    for (unsigned k = 1; k <= cap_; ++k) {
      layer *= r_;
      expected += layer;
    }
    return entries_.size() == expected;
  }

  const std::map<std::vector<Index>, Rational>& entries() const { return entries_; }

 private:
  unsigned r_;
  unsigned cap_;
  std::map<std::vector<Index>, Rational> entries_;
};

/// Calls visit(tuple) for every tuple over {1..r} of length k, lexicographically.
inline void for_each_tuple(unsigned r, unsigned k, const std::function<void(const std::vector<Index>&)>& visit) {
  std::vector<Index> tuple(k, 1);
  while (true) {
    visit(tuple);
    std::size_t p = k;
    while (p > 0 && tuple[p - 1] == r) tuple[--p] = 1;
    if (p == 0) return;
    ++tuple[p - 1];
  }
}

/// Fills a table with `moment(kernel)` for each tuple, evaluating each kernel once.
inline MomentTable tabulate_by_kernel(unsigned r, unsigned order_cap,
                                      const std::function<Rational(const SetPartition&)>& moment) {
  MomentTable table(r, order_cap);
  std::map<SetPartition, Rational> by_kernel;
  for (unsigned k = 1; k <= order_cap; ++k) {
    for_each_tuple(r, k, [&](const std::vector<Index>& tuple) {
      auto ker = SetPartition::from_labels(tuple);
      auto it = by_kernel.find(ker);
      if (it == by_kernel.end()) it = by_kernel.emplace(ker, moment(ker)).first;
      table.set(tuple, it->second);
    });
  }
  return table;
}

/// The r-variate limit distribution, tabulated up to total order order_cap.
inline MomentTable multivariate_limit_moments(const PartitionFunction& t, unsigned r, unsigned order_cap) {
  require_centered(t);
  return tabulate_by_kernel(r, order_cap, [&](const SetPartition& ker) { return pairing_functional(t, ker); });
}

/// Aggregates over tuples with prescribed letter counts (l_1, ..., l_r) match
/// the colouring count: zero unless all l_p = 2 j_p are even, and then
/// (alpha_{2m}/(2m)!) * m!/(j_1! ... j_r!).
inline CheckResult check_multinomial_aggregates(const MomentTable& table, const PartitionFunction& t) {
  CheckResult result{"multinomial-aggregates", "commuting e.g.f. coefficients are multinomial colourings of pairings",
                     0, 0, {}};
  const unsigned r = table.variables();
  std::map<std::vector<unsigned>, Rational> aggregates;
  for (const auto& [tuple, value] : table.entries()) {
    std::vector<unsigned> counts(r, 0);
    for (Index i : tuple) ++counts[i - 1];
    aggregates[counts] += value;
  }
  for (const auto& [counts, total] : aggregates) {
    unsigned k = 0;
    bool all_even = true;
    for (unsigned c : counts) {
      k += c;
      all_even = all_even && c % 2 == 0;
    }
    Rational coefficient = total / Rational(factorial(k));
    Rational expected = 0;
    if (all_even) {
      const unsigned m = k / 2;
      Rational multinomial = Rational(factorial(m));
      for (unsigned c : counts) multinomial /= Rational(factorial(c / 2));
      expected = pairing_sum(t, m) / Rational(factorial(2 * m)) * multinomial;
    }
    std::ostringstream w;
    w << "counts=(";
    for (std::size_t p = 0; p < counts.size(); ++p) w << (p ? "," : "") << counts[p];
    w << "): " << to_string(coefficient) << " != " << to_string(expected);
    result.record(coefficient == expected, w.str());
  }
  return result;
}

}  // namespace starclt
