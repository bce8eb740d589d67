#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "starclt/errors.hpp"

namespace starclt {

/// A positive integer acted on by permutations.
using Point = std::uint32_t;

/// Disjoint cycles of length >= 2, each rotated to start at its minimum,
/// sorted by minimum. Fixed points are never listed.
using CycleDecomposition = std::vector<std::vector<Point>>;

/// Finite-support bijection of {1, 2, 3, ...}.
///
/// Only the moved points are stored, as (x, p(x)) pairs sorted by x, so the
/// identity is the empty table and equality is structural. Composition is
/// right-to-left function application: (p * q)(x) = p(q(x)).
class Permutation {
 public:
  using Mapping = std::pair<Point, Point>;

  Permutation() = default;

  static Permutation transposition(Point a, Point b) {
    if (a == 0 || b == 0) throw InvalidArgument("permutation points must be positive");
    if (a == b) return {};
    return Permutation(a < b ? std::vector<Mapping>{{a, b}, {b, a}} : std::vector<Mapping>{{b, a}, {a, b}});
  }

  /// The star-generator (1, n+1).
  static Permutation star_generator(Point n) {
    if (n == 0) throw InvalidArgument("star_generator index must be >= 1");
    return transposition(1, n + 1);
  }

  /// The k-cycle 1 -> 2 -> ... -> k -> 1; identity for k = 1.
  static Permutation forward_cycle(Point k) {
    if (k == 0) throw InvalidArgument("forward_cycle length must be >= 1");
    std::vector<Point> cycle(k);
    for (Point i = 0; i < k; ++i) cycle[i] = i + 1;
    return from_cycles({cycle});
  }

  /// The k-cycle k -> k-1 -> ... -> 1 -> k, inverse of forward_cycle(k).
  static Permutation backward_cycle(Point k) { return forward_cycle(k).inverse(); }

  /// Builds a permutation from pairwise disjoint cycles. Cycles of length 1 are
  /// accepted and ignored.
  static Permutation from_cycles(const CycleDecomposition& cycles) {
    std::vector<Mapping> table;
    for (const auto& cycle : cycles) {
      if (cycle.empty()) throw InvalidArgument("empty cycle");
      if (cycle.size() == 1) {
        if (cycle[0] == 0) throw InvalidArgument("permutation points must be positive");
        continue;
      }
      for (std::size_t i = 0; i < cycle.size(); ++i) {
        if (cycle[i] == 0) throw InvalidArgument("permutation points must be positive");
        table.emplace_back(cycle[i], cycle[(i + 1) % cycle.size()]);
      }
    }
    std::sort(table.begin(), table.end());
    for (std::size_t i = 1; i < table.size(); ++i) {
      if (table[i].first == table[i - 1].first) {
        throw InvalidArgument("cycles are not disjoint (point " + std::to_string(table[i].first) + " repeated)");
      }
    }
    return Permutation(std::move(table));
  }

  /// Builds a permutation from an explicit table x -> image; fixed entries are dropped.
  /// Throws unless the table is a bijection of its key set.
  static Permutation from_mapping(std::vector<Mapping> table) {
    std::erase_if(table, [](const Mapping& m) { return m.first == m.second; });
    std::sort(table.begin(), table.end());
    std::vector<Point> keys;
    std::vector<Point> values;
    for (const auto& [x, y] : table) {
      if (x == 0 || y == 0) throw InvalidArgument("permutation points must be positive");
      keys.push_back(x);
      values.push_back(y);
    }
    std::sort(values.begin(), values.end());
    if (std::adjacent_find(keys.begin(), keys.end()) != keys.end() || keys != values) {
      throw InvalidArgument("mapping is not a bijection of its support");
    }
    return Permutation(std::move(table));
  }

  /// Parses cycle notation such as "(1,5)(2,4)" or "()" for the identity.
  /// Overlapping cycles are read as a product and composed right to left,
  /// so "(1,2)(1,3)" parses to (1,3,2).
  static Permutation parse(std::string_view text) {
    Permutation result;
    std::vector<Permutation> factors;
    std::size_t pos = 0;
    auto skip_space = [&] {
      while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    };
    skip_space();
    if (pos == text.size()) throw ParseError("empty permutation text");
    while (pos < text.size()) {
      if (text[pos] != '(') throw ParseError("expected '(' in permutation '" + std::string(text) + "'");
      auto close = text.find(')', pos);
      if (close == std::string_view::npos) throw ParseError("unbalanced '(' in '" + std::string(text) + "'");
      std::string_view body = text.substr(pos + 1, close - pos - 1);
      std::vector<Point> cycle;
      std::size_t start = 0;
      bool blank = body.find_first_not_of(" \t") == std::string_view::npos;
      while (!blank && start <= body.size()) {
        auto comma = body.find(',', start);
        auto token = body.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        std::string digits;
        for (char c : token) {
          if (c == ' ' || c == '\t') continue;
          if (c < '0' || c > '9') throw ParseError("bad character in cycle '" + std::string(body) + "'");
          digits.push_back(c);
        }
        if (digits.empty()) throw ParseError("empty entry in cycle '" + std::string(body) + "'");
        cycle.push_back(static_cast<Point>(std::stoul(digits)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
      }
      std::vector<Point> sorted = cycle;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw ParseError("repeated point inside cycle '" + std::string(body) + "'");
      }
      if (!cycle.empty()) factors.push_back(from_cycles({cycle}));
      pos = close + 1;
      skip_space();
    }
    for (const auto& f : factors) result = result * f;
    return result;
  }

  Point operator()(Point x) const {
    auto it = std::lower_bound(table_.begin(), table_.end(), x,
                               [](const Mapping& m, Point v) { return m.first < v; });
    return (it != table_.end() && it->first == x) ? it->second : x;
  }

  friend Permutation operator*(const Permutation& p, const Permutation& q) {
    if (q.is_identity()) return p;
    if (p.is_identity()) return q;
    std::vector<Point> points;
    points.reserve(p.table_.size() + q.table_.size());
    auto pi = p.table_.begin();
    auto qi = q.table_.begin();
    while (pi != p.table_.end() || qi != q.table_.end()) {
      if (qi == q.table_.end() || (pi != p.table_.end() && pi->first < qi->first)) {
        points.push_back((pi++)->first);
      } else if (pi == p.table_.end() || qi->first < pi->first) {
        points.push_back((qi++)->first);
      } else {
        points.push_back(pi->first);
        ++pi;
        ++qi;
      }
    }
    std::vector<Mapping> table;
    table.reserve(points.size());
    for (Point x : points) {
      Point y = p(q(x));
      if (y != x) table.emplace_back(x, y);
    }
    return Permutation(std::move(table));
  }

  Permutation inverse() const {
    std::vector<Mapping> table;
    table.reserve(table_.size());
    for (const auto& [x, y] : table_) table.emplace_back(y, x);
    std::sort(table.begin(), table.end());
    return Permutation(std::move(table));
  }

  bool is_identity() const { return table_.empty(); }

  /// Moved points in increasing order.
  std::vector<Point> support() const {
    std::vector<Point> s;
    s.reserve(table_.size());
    for (const auto& m : table_) s.push_back(m.first);
    return s;
  }

  /// Largest moved point, or 0 for the identity.
  Point degree() const { return table_.empty() ? 0 : table_.back().first; }

  const std::vector<Mapping>& mapping() const { return table_; }

  CycleDecomposition cycles() const {
    CycleDecomposition result;
    std::vector<bool> seen(table_.size(), false);
    for (std::size_t i = 0; i < table_.size(); ++i) {
      if (seen[i]) continue;
      // Keys ascend, so the first unseen key is the minimum of its cycle.
      std::vector<Point> cycle;
      for (std::size_t j = i; !seen[j]; j = index_of(table_[j].second)) {
        seen[j] = true;
        cycle.push_back(table_[j].first);
      }
      result.push_back(std::move(cycle));
    }
    return result;
  }

  /// Minimal number of transpositions whose product is this permutation:
  /// the sum of (cycle length - 1) over all cycles.
  std::size_t length() const {
    std::vector<bool> seen(table_.size(), false);
    std::size_t cycle_count = 0;
    for (std::size_t i = 0; i < table_.size(); ++i) {
      if (seen[i]) continue;
      ++cycle_count;
      for (std::size_t j = i; !seen[j]; j = index_of(table_[j].second)) seen[j] = true;
    }
    return table_.size() - cycle_count;
  }

  int sign() const { return length() % 2 == 0 ? 1 : -1; }

  std::string to_string() const {
    if (is_identity()) return "()";
    std::ostringstream out;
    for (const auto& cycle : cycles()) {
      out << '(';
      for (std::size_t i = 0; i < cycle.size(); ++i) out << (i ? "," : "") << cycle[i];
      out << ')';
    }
    return out.str();
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  explicit Permutation(std::vector<Mapping> table) : table_(std::move(table)) {}

  // Position of a moved point in the table.
  std::size_t index_of(Point x) const {
    return static_cast<std::size_t>(
        std::lower_bound(table_.begin(), table_.end(), x, [](const Mapping& m, Point v) { return m.first < v; }) -
        table_.begin());
  }

  std::vector<Mapping> table_;
};

inline std::ostream& operator<<(std::ostream& os, const Permutation& p) { return os << p.to_string(); }

/// Composition (p o q)(x) = p(q(x)).
inline Permutation compose(const Permutation& p, const Permutation& q) { return p * q; }

inline Permutation inverse(const Permutation& p) { return p.inverse(); }

/// by o p o by^{-1}: relabels every point x of p as by(x).
inline Permutation conjugate(const Permutation& p, const Permutation& by) {
  std::vector<Permutation::Mapping> table;
  table.reserve(p.mapping().size());
  for (const auto& [x, y] : p.mapping()) table.emplace_back(by(x), by(y));
  return Permutation::from_mapping(std::move(table));
}

namespace detail {
inline std::vector<Point> sorted_unique(std::span<const Point> points) {
  std::vector<Point> s(points.begin(), points.end());
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}
}  // namespace detail

/// Number of orbits (fixed points included) into which p splits the finite set
/// `set`. Throws NotInvariantError unless p(set) = set.
inline std::size_t orbit_count(const Permutation& p, std::span<const Point> set) {
  auto points = detail::sorted_unique(set);
  for (Point a : points) {
    if (!std::binary_search(points.begin(), points.end(), p(a))) {
      throw NotInvariantError("set is not invariant: " + std::to_string(a) + " maps to " + std::to_string(p(a)));
    }
  }
  std::vector<bool> visited(points.size(), false);
  std::size_t orbits = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (visited[i]) continue;
    ++orbits;
    for (Point x = points[i];;) {
      auto idx = static_cast<std::size_t>(std::lower_bound(points.begin(), points.end(), x) - points.begin());
      if (visited[idx]) break;
      visited[idx] = true;
      x = p(x);
    }
  }
  return orbits;
}

/// Orbit count of p on {1, ..., n}.
inline std::size_t orbit_count_first(const Permutation& p, Point n) {
  std::vector<Point> set(n);
  for (Point i = 0; i < n; ++i) set[i] = i + 1;
  return orbit_count(p, set);
}

/// The bijection of `set` induced by p: each a maps to the first point of
/// p(a), p(p(a)), ... that lies back in `set`. The result fixes every point
/// outside `set`.
inline Permutation induced_permutation(const Permutation& p, std::span<const Point> set) {
  auto points = detail::sorted_unique(set);
  if (points.empty()) throw InvalidArgument("induced_permutation needs a non-empty set");
  std::vector<Permutation::Mapping> table;
  table.reserve(points.size());
  for (Point a : points) {
    Point v = p(a);
    while (!std::binary_search(points.begin(), points.end(), v)) v = p(v);
    table.emplace_back(a, v);
  }
  return Permutation::from_mapping(std::move(table));
}

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (const auto& [x, y] : p.mapping()) {
      h ^= (static_cast<std::size_t>(x) << 32U) | y;
      h *= 0x100000001b3ULL;
    }
    return h;
  }
};

}  // namespace starclt
