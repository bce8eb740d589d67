#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "starclt/errors.hpp"
#include "starclt/permutation.hpp"

namespace starclt {

/// Label of a variable in a joint moment, X_{i(1)} ... X_{i(k)}.
using Index = std::uint32_t;

/// Non-empty tuple of positive labels (i(1), ..., i(k)).
class IndexTuple {
 public:
  IndexTuple() = delete;
  explicit IndexTuple(std::vector<Index> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) throw InvalidArgument("index tuple must have length >= 1");
    for (Index i : entries_) {
      if (i == 0) throw InvalidArgument("index tuple entries must be positive");
    }
  }
  IndexTuple(std::initializer_list<Index> entries) : IndexTuple(std::vector<Index>(entries)) {}

  /// Parses "1,2,1,2".
  static IndexTuple parse(std::string_view text) {
    std::vector<Index> entries;
    std::size_t start = 0;
    while (start <= text.size()) {
      auto comma = text.find(',', start);
      auto token = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
      std::string digits;
      for (char c : token) {
        if (c == ' ') continue;
        if (c < '0' || c > '9') throw ParseError("bad index tuple '" + std::string(text) + "'");
        digits.push_back(c);
      }
      if (digits.empty()) throw ParseError("empty entry in index tuple '" + std::string(text) + "'");
      entries.push_back(static_cast<Index>(std::stoul(digits)));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    return IndexTuple(std::move(entries));
  }

  std::size_t size() const { return entries_.size(); }
  Index operator[](std::size_t p) const { return entries_[p]; }
  std::span<const Index> entries() const { return entries_; }

  friend bool operator==(const IndexTuple&, const IndexTuple&) = default;
  friend auto operator<=>(const IndexTuple&, const IndexTuple&) = default;

 private:
  std::vector<Index> entries_;
};

/// A partition of {1, ..., k} into non-empty blocks.
/// Canonical form: each block ascending, blocks ordered by their minima.
class SetPartition {
 public:
  using Block = std::vector<Point>;

  SetPartition() = default;

  SetPartition(std::size_t k, std::vector<Block> blocks) : k_(k), blocks_(std::move(blocks)) {
    std::vector<int> hits(k_ + 1, 0);
    for (auto& block : blocks_) {
      if (block.empty()) throw InvalidArgument("set partition has an empty block");
      std::sort(block.begin(), block.end());
      for (Point x : block) {
        if (x == 0 || x > k_) throw InvalidArgument("block element " + std::to_string(x) + " outside {1..k}");
        if (hits[x]++ != 0) throw InvalidArgument("blocks are not disjoint at " + std::to_string(x));
      }
    }
    for (std::size_t x = 1; x <= k_; ++x) {
      if (hits[x] == 0) throw InvalidArgument("blocks do not cover " + std::to_string(x));
    }
    std::sort(blocks_.begin(), blocks_.end(), [](const Block& a, const Block& b) { return a.front() < b.front(); });
  }

  /// Partition into level sets of a label sequence (no positivity requirement).
  static SetPartition from_labels(std::span<const Index> labels) {
    std::map<Index, Block> level_sets;
    for (std::size_t p = 0; p < labels.size(); ++p) level_sets[labels[p]].push_back(static_cast<Point>(p + 1));
    std::vector<Block> blocks;
    blocks.reserve(level_sets.size());
    for (auto& [label, block] : level_sets) blocks.push_back(std::move(block));
    return SetPartition(labels.size(), std::move(blocks));
  }

  /// 1_k, the single-block partition.
  static SetPartition one_block(std::size_t k) {
    Block b(k);
    for (std::size_t i = 0; i < k; ++i) b[i] = static_cast<Point>(i + 1);
    return SetPartition(k, {b});
  }

  /// 0_k, the partition into singletons.
  static SetPartition singletons(std::size_t k) {
    std::vector<Block> blocks;
    for (std::size_t i = 1; i <= k; ++i) blocks.push_back({static_cast<Point>(i)});
    return SetPartition(k, std::move(blocks));
  }

  /// Parses "{{1,5},{2,4},{3,7},{6,8}}"; k is the largest element.
  static SetPartition parse(std::string_view text) {
    std::vector<Block> blocks;
    std::size_t pos = text.find('{');
    if (pos == std::string_view::npos) throw ParseError("expected '{' in partition '" + std::string(text) + "'");
    ++pos;
    Point max_elem = 0;
    while (true) {
      pos = text.find_first_not_of(" ,", pos);
      if (pos == std::string_view::npos) throw ParseError("unterminated partition '" + std::string(text) + "'");
      if (text[pos] == '}') break;
      if (text[pos] != '{') throw ParseError("expected block in partition '" + std::string(text) + "'");
      auto close = text.find('}', pos);
      if (close == std::string_view::npos) throw ParseError("unterminated block in '" + std::string(text) + "'");
      Block block;
      std::string digits;
      for (std::size_t i = pos + 1; i <= close; ++i) {
        char c = text[i];
        if (c >= '0' && c <= '9') {
          digits.push_back(c);
        } else if (c == ',' || c == '}') {
          if (digits.empty()) throw ParseError("empty entry in block of '" + std::string(text) + "'");
          block.push_back(static_cast<Point>(std::stoul(digits)));
          max_elem = std::max(max_elem, block.back());
          digits.clear();
        } else if (c != ' ') {
          throw ParseError("bad character in partition '" + std::string(text) + "'");
        }
      }
      blocks.push_back(std::move(block));
      pos = close + 1;
    }
    return SetPartition(max_elem, std::move(blocks));
  }

  std::size_t ground_size() const { return k_; }
  std::size_t block_count() const { return blocks_.size(); }
  const std::vector<Block>& blocks() const { return blocks_; }

  /// For each position 1..k, the 1-based index of its block in canonical order.
  /// This is the canonical representative tuple whose kernel is this partition.
  std::vector<Index> block_labels() const {
    std::vector<Index> labels(k_);
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      for (Point x : blocks_[b]) labels[x - 1] = static_cast<Index>(b + 1);
    }
    return labels;
  }

  bool has_singleton() const {
    return std::any_of(blocks_.begin(), blocks_.end(), [](const Block& b) { return b.size() == 1; });
  }

  bool has_odd_block() const {
    return std::any_of(blocks_.begin(), blocks_.end(), [](const Block& b) { return b.size() % 2 == 1; });
  }

  bool is_pairing() const {
    return std::all_of(blocks_.begin(), blocks_.end(), [](const Block& b) { return b.size() == 2; });
  }

  std::string to_string() const {
    std::ostringstream out;
    out << '{';
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      out << (b ? "," : "") << '{';
      for (std::size_t i = 0; i < blocks_[b].size(); ++i) out << (i ? "," : "") << blocks_[b][i];
      out << '}';
    }
    out << '}';
    return out.str();
  }

  friend bool operator==(const SetPartition&, const SetPartition&) = default;
  friend auto operator<=>(const SetPartition&, const SetPartition&) = default;

 private:
  std::size_t k_ = 0;
  std::vector<Block> blocks_;
};

inline std::ostream& operator<<(std::ostream& os, const SetPartition& p) { return os << p.to_string(); }

/// A set partition of {1, ..., 2h} into pairs, with its canonical writing
/// (a_1, b_1), ..., (a_h, b_h): a_j < b_j and a_1 < a_2 < ... < a_h (so a_1 = 1).
class PairPartition {
 public:
  using Pair = std::pair<Point, Point>;

  explicit PairPartition(SetPartition partition) : partition_(std::move(partition)) {
    if (!partition_.is_pairing()) throw InvalidArgument("not a pair partition: " + partition_.to_string());
    for (const auto& block : partition_.blocks()) pairs_.emplace_back(block[0], block[1]);
  }

  static PairPartition from_pairs(std::size_t k, const std::vector<Pair>& pairs) {
    std::vector<SetPartition::Block> blocks;
    for (const auto& [a, b] : pairs) blocks.push_back({a, b});
    return PairPartition(SetPartition(k, std::move(blocks)));
  }

  static PairPartition parse(std::string_view text) { return PairPartition(SetPartition::parse(text)); }

  std::size_t ground_size() const { return partition_.ground_size(); }
  std::size_t pair_count() const { return pairs_.size(); }
  const std::vector<Pair>& pairs() const { return pairs_; }
  const SetPartition& partition() const { return partition_; }
  std::string to_string() const { return partition_.to_string(); }

  friend bool operator==(const PairPartition& a, const PairPartition& b) { return a.partition_ == b.partition_; }
  friend auto operator<=>(const PairPartition& a, const PairPartition& b) { return a.partition_ <=> b.partition_; }

 private:
  SetPartition partition_;
  std::vector<Pair> pairs_;
};

inline std::ostream& operator<<(std::ostream& os, const PairPartition& p) { return os << p.to_string(); }

/// Ker(i): positions p, q share a block iff i(p) = i(q).
inline SetPartition kernel(const IndexTuple& i) { return SetPartition::from_labels(i.entries()); }

/// Reverse refinement: every block of pi lies inside a block of rho.
inline bool is_below(const SetPartition& pi, const SetPartition& rho) {
  if (pi.ground_size() != rho.ground_size()) {
    throw GroundSetMismatch("cannot compare partitions of " + std::to_string(pi.ground_size()) + " and " +
                            std::to_string(rho.ground_size()) + " points");
  }
  auto rho_labels = rho.block_labels();
  for (const auto& block : pi.blocks()) {
    for (Point x : block) {
      if (rho_labels[x - 1] != rho_labels[block.front() - 1]) return false;
    }
  }
  return true;
}

namespace detail {

// Pairs the smallest unpaired element with every admissible partner, recursively.
// `group` assigns each position a class; only positions of equal class may pair.
inline void pairings_within(std::vector<Index>& group, std::vector<bool>& used,
                            std::vector<PairPartition::Pair>& current,
                            const std::function<void(const std::vector<PairPartition::Pair>&)>& visit) {
  std::size_t first = 0;
  while (first < used.size() && used[first]) ++first;
  if (first == used.size()) {
    visit(current);
    return;
  }
  used[first] = true;
  for (std::size_t partner = first + 1; partner < used.size(); ++partner) {
    if (used[partner] || group[partner] != group[first]) continue;
    used[partner] = true;
    current.emplace_back(static_cast<Point>(first + 1), static_cast<Point>(partner + 1));
    pairings_within(group, used, current, visit);
    current.pop_back();
    used[partner] = false;
  }
  used[first] = false;
}

}  // namespace detail

/// Visits every pair partition of {1..k} lying below rho, in canonical order
/// (partner of the smallest unpaired point increasing). Nothing is visited
/// when rho has an odd block.
inline void for_each_pairing_below(const SetPartition& rho, const std::function<void(const PairPartition&)>& visit) {
  if (rho.has_odd_block()) return;
  auto group = rho.block_labels();
  std::vector<bool> used(rho.ground_size(), false);
  std::vector<PairPartition::Pair> current;
  const std::size_t k = rho.ground_size();
  detail::pairings_within(group, used, current, [&](const std::vector<PairPartition::Pair>& pairs) {
    visit(PairPartition::from_pairs(k, pairs));
  });
}

/// All pi in P2(k) with pi <= rho.
inline std::vector<PairPartition> pairings_below(const SetPartition& rho) {
  std::vector<PairPartition> out;
  for_each_pairing_below(rho, [&](const PairPartition& p) { out.push_back(p); });
  return out;
}

/// P2(k): (k-1)!! pairings for even k, none for odd k.
inline std::vector<PairPartition> enumerate_pair_partitions(std::size_t k) {
  if (k == 0 || k % 2 == 1) return {};
  return pairings_below(SetPartition::one_block(k));
}

inline constexpr std::size_t kDefaultPartitionCap = 12;

/// All of P(k) via restricted growth strings. k is capped (Bell(12) ~ 4.2M).
inline std::vector<SetPartition> enumerate_partitions(std::size_t k, std::size_t cap = kDefaultPartitionCap) {
  if (k > cap) throw BudgetExceeded("enumerate_partitions: k=" + std::to_string(k) + " exceeds cap " + std::to_string(cap));
  std::vector<SetPartition> out;
  if (k == 0) return out;
  std::vector<Index> labels(k, 1);
  std::vector<Index> max_prefix(k, 1);
  while (true) {
    out.push_back(SetPartition::from_labels(labels));
    // Next restricted growth string: bump the rightmost position that can grow.
    std::size_t p = k - 1;
    while (p > 0 && labels[p] > max_prefix[p - 1]) --p;
    if (p == 0) break;
    ++labels[p];
    max_prefix[p] = std::max(max_prefix[p - 1], labels[p]);
    for (std::size_t q = p + 1; q < k; ++q) {
      labels[q] = 1;
      max_prefix[q] = max_prefix[q - 1];
    }
  }
  return out;
}

/// pi | A: the blocks {V n A} relabelled to {1..|A|} in increasing order.
inline SetPartition restrict(const SetPartition& pi, std::span<const Point> subset) {
  auto points = detail::sorted_unique(subset);
  if (points.empty()) throw InvalidArgument("restrict needs a non-empty subset");
  if (points.back() > pi.ground_size() || points.front() == 0) throw InvalidArgument("subset is not inside {1..k}");
  auto labels = pi.block_labels();
  std::vector<Index> restricted;
  restricted.reserve(points.size());
  for (Point x : points) restricted.push_back(labels[x - 1]);
  return SetPartition::from_labels(restricted);
}

/// True iff the subset is a union of blocks of pi (the empty set qualifies).
inline bool is_saturated(const SetPartition& pi, std::span<const Point> subset) {
  auto points = detail::sorted_unique(subset);
  for (const auto& block : pi.blocks()) {
    auto inside = std::count_if(block.begin(), block.end(),
                                [&](Point x) { return std::binary_search(points.begin(), points.end(), x); });
    if (inside != 0 && inside != static_cast<std::ptrdiff_t>(block.size())) return false;
  }
  return std::all_of(points.begin(), points.end(), [&](Point x) { return x >= 1 && x <= pi.ground_size(); });
}

inline bool is_saturated(const PairPartition& pi, std::span<const Point> subset) {
  return is_saturated(pi.partition(), subset);
}

/// No two pairs {a,b}, {c,d} with a < c < b < d.
inline bool is_noncrossing(const PairPartition& pi) {
  const auto& pairs = pi.pairs();
  for (std::size_t x = 0; x < pairs.size(); ++x) {
    for (std::size_t y = x + 1; y < pairs.size(); ++y) {
      auto [a, b] = pairs[x];
      auto [c, d] = pairs[y];
      if ((a < c && c < b && b < d) || (c < a && a < d && d < b)) return false;
    }
  }
  return true;
}

inline bool has_singleton(const SetPartition& pi) { return pi.has_singleton(); }

/// Uniformly random element of P2(2h).
template <class Rng>
PairPartition random_pair_partition(std::size_t h, Rng& rng) {
  if (h == 0) throw InvalidArgument("random_pair_partition needs h >= 1");
  std::vector<Point> points(2 * h);
  for (std::size_t i = 0; i < points.size(); ++i) points[i] = static_cast<Point>(i + 1);
  std::shuffle(points.begin(), points.end(), rng);
  std::vector<PairPartition::Pair> pairs;
  for (std::size_t i = 0; i < h; ++i) pairs.emplace_back(points[2 * i], points[2 * i + 1]);
  return PairPartition::from_pairs(2 * h, pairs);
}

}  // namespace starclt
