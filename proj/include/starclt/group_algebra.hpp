#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "starclt/errors.hpp"
#include "starclt/permutation.hpp"
#include "starclt/rational.hpp"

namespace starclt {

/// Work limits for the brute-force paths. Both can be raised through the
/// environment (STARCLT_MAX_TERMS, STARCLT_MAX_TUPLES).
struct Budget {
  std::size_t max_terms = 2'000'000;     // group-algebra element size
  std::uint64_t max_tuples = 10'000'000;  // index tuples enumerated by the tuple path

  static Budget from_environment() {
    Budget b;
    if (const char* v = std::getenv("STARCLT_MAX_TERMS")) b.max_terms = std::strtoull(v, nullptr, 10);
    if (const char* v = std::getenv("STARCLT_MAX_TUPLES")) b.max_tuples = std::strtoull(v, nullptr, 10);
    return b;
  }
};

/// The parameter q of the length character tau -> q^{||tau||}.
/// Positive-definite only for q in {1/d} u {0} u {-1/d}; not enforced.
struct CharacterParameter {
  Rational q;

  static CharacterParameter from_dimension(std::int64_t d) {
    if (d <= 0) throw InvalidArgument("dimension d must be positive");
    return {make_rational(1, d)};
  }
};

/// Finite rational combination of permutations. Zero coefficients are never stored.
class GroupAlgebraElement {
 public:
  using Terms = std::unordered_map<Permutation, Rational, PermutationHash>;

  GroupAlgebraElement() = default;

  static GroupAlgebraElement of(const Permutation& p, const Rational& coefficient = 1) {
    GroupAlgebraElement a;
    a.add_term(p, coefficient);
    return a;
  }

  static GroupAlgebraElement scalar(const Rational& c) { return of(Permutation{}, c); }
  static GroupAlgebraElement identity() { return scalar(1); }

  void add_term(const Permutation& p, const Rational& coefficient) {
    if (coefficient == 0) return;
    auto [it, inserted] = terms_.try_emplace(p, coefficient);
    if (!inserted) {
      it->second += coefficient;
      if (it->second == 0) terms_.erase(it);
    }
  }

  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  Rational coefficient(const Permutation& p) const {
    auto it = terms_.find(p);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  /// Terms ordered by permutation, for deterministic output.
  std::vector<std::pair<Permutation, Rational>> sorted_terms() const {
    std::vector<std::pair<Permutation, Rational>> out(terms_.begin(), terms_.end());
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
  }

  GroupAlgebraElement& operator+=(const GroupAlgebraElement& other) {
    for (const auto& [p, c] : other.terms_) add_term(p, c);
    return *this;
  }
  GroupAlgebraElement& operator-=(const GroupAlgebraElement& other) {
    for (const auto& [p, c] : other.terms_) add_term(p, -c);
    return *this;
  }
  GroupAlgebraElement& operator*=(const Rational& c) {
    if (c == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [p, coefficient] : terms_) coefficient *= c;
    return *this;
  }

  friend GroupAlgebraElement operator+(GroupAlgebraElement a, const GroupAlgebraElement& b) { return a += b; }
  friend GroupAlgebraElement operator-(GroupAlgebraElement a, const GroupAlgebraElement& b) { return a -= b; }
  friend GroupAlgebraElement operator*(GroupAlgebraElement a, const Rational& c) { return a *= c; }
  friend GroupAlgebraElement operator*(const Rational& c, GroupAlgebraElement a) { return a *= c; }

  /// Product in the group algebra; throws BudgetExceeded past max_terms terms.
  static GroupAlgebraElement multiply(const GroupAlgebraElement& a, const GroupAlgebraElement& b,
                                      std::size_t max_terms) {
    GroupAlgebraElement out;
    for (const auto& [p, cp] : a.terms_) {
      for (const auto& [q, cq] : b.terms_) {
        out.add_term(p * q, cp * cq);
        if (out.size() > max_terms) {
          throw BudgetExceeded("group algebra product exceeds " + std::to_string(max_terms) + " terms");
        }
      }
    }
    return out;
  }

  friend GroupAlgebraElement operator*(const GroupAlgebraElement& a, const GroupAlgebraElement& b) {
    return multiply(a, b, Budget{}.max_terms);
  }

  /// tau* = tau^{-1}, extended linearly (coefficients are real).
  GroupAlgebraElement star() const {
    GroupAlgebraElement out;
    for (const auto& [p, c] : terms_) out.add_term(p.inverse(), c);
    return out;
  }

  std::string to_string() const {
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [p, c] : sorted_terms()) {
      out << (first ? "" : " + ") << starclt::to_string(c) << "*" << p.to_string();
      first = false;
    }
    return out.str();
  }

  friend bool operator==(const GroupAlgebraElement& a, const GroupAlgebraElement& b) { return a.terms_ == b.terms_; }

 private:
  Terms terms_;
};

inline GroupAlgebraElement star(const GroupAlgebraElement& a) { return a.star(); }

/// The length character: the linear extension of tau -> q^{||tau||} (with 0^0 = 1).
inline Rational phi(const GroupAlgebraElement& a, const CharacterParameter& q) {
  Rational total = 0;
  for (const auto& [p, c] : a.terms()) total += c * power(q.q, p.length());
  return total;
}

inline Rational phi(const Permutation& p, const CharacterParameter& q) { return power(q.q, p.length()); }

inline GroupAlgebraElement star_generator_element(Point n) {
  return GroupAlgebraElement::of(Permutation::star_generator(n));
}

/// gamma_n - q * e; its character value is zero.
inline GroupAlgebraElement centered_generator(Point n, const CharacterParameter& q) {
  auto x = star_generator_element(n);
  x.add_term(Permutation{}, -q.q);
  return x;
}

/// gamma_1 + ... + gamma_n, minus n*q*e when centered.
inline GroupAlgebraElement generator_sum(Point n, const CharacterParameter& q, bool centered) {
  GroupAlgebraElement x;
  for (Point i = 1; i <= n; ++i) x += star_generator_element(i);
  if (centered) x.add_term(Permutation{}, -Rational(n) * q.q);
  return x;
}

/// phi_q((x_1 + ... + x_n)^p), x_i = gamma_i or gamma_i - q, by repeated
/// multiplication in the group algebra.
inline Rational sum_moment(Point n, unsigned p, const CharacterParameter& q, bool centered,
                           const Budget& budget = {}) {
  if (n == 0) throw InvalidArgument("sum_moment needs n >= 1");
  const auto x = generator_sum(n, q, centered);
  auto acc = GroupAlgebraElement::identity();
  for (unsigned j = 0; j < p; ++j) acc = GroupAlgebraElement::multiply(acc, x, budget.max_terms);
  return phi(acc, q);
}

/// c_{n,p}(tau) for every tau: how many tuples i in {1..n}^p (surjective ones
/// only when transitive_only) have gamma_{i(1)} ... gamma_{i(p)} = tau.
inline std::map<Permutation, BigInt> factorization_counts(Point n, unsigned p, bool transitive_only,
                                                          const Budget& budget = {}) {
  if (n == 0) throw InvalidArgument("factorization counts need n >= 1");
  BigInt tuples = 1;
  for (unsigned j = 0; j < p; ++j) tuples *= n;
  if (tuples > budget.max_tuples) {
    throw BudgetExceeded("n^p = " + tuples.str() + " tuples exceeds budget " + std::to_string(budget.max_tuples));
  }
  std::map<Permutation, BigInt> counts;
  std::vector<unsigned> uses(n + 1, 0);
  unsigned distinct = 0;
  std::vector<Permutation> generators;
  for (Point i = 1; i <= n; ++i) generators.push_back(Permutation::star_generator(i));

  // Depth-first over tuples, carrying the prefix product.
  auto recurse = [&](auto&& self, unsigned depth, const Permutation& prefix) -> void {
    if (depth == p) {
      if (!transitive_only || distinct == n) counts[prefix] += 1;
      return;
    }
    if (transitive_only && n - distinct > p - depth) return;
    for (Point i = 1; i <= n; ++i) {
      if (uses[i]++ == 0) ++distinct;
      self(self, depth + 1, prefix * generators[i - 1]);
      if (--uses[i] == 0) --distinct;
    }
  };
  recurse(recurse, 0, Permutation{});
  return counts;
}

inline BigInt count_factorizations(const Permutation& tau, Point n, unsigned p, bool transitive_only,
                                   const Budget& budget = {}) {
  auto counts = factorization_counts(n, p, transitive_only, budget);
  auto it = counts.find(tau);
  return it == counts.end() ? BigInt(0) : it->second;
}

/// The same moment as sum_moment, computed independently from factorization
/// counts: sum over tau of c_{n,j}(tau) q^{||tau||}, binomially recombined
/// with the scalar shift -n*q when centered.
inline Rational sum_moment_by_tuples(Point n, unsigned p, const CharacterParameter& q, bool centered,
                                     const Budget& budget = {}) {
  auto raw = [&](unsigned j) {
    Rational total = 0;
    for (const auto& [tau, c] : factorization_counts(n, j, false, budget)) total += Rational(c) * phi(tau, q);
    return total;
  };
  if (!centered) return raw(p);
  const Rational shift = -Rational(n) * q.q;
  Rational total = 0;
  for (unsigned j = 0; j <= p; ++j) total += Rational(binomial(p, j)) * power(shift, p - j) * raw(j);
  return total;
}

/// phi_q(s_n^p) for s_n = n^{-1/2} (sum of centered generators), written as
/// coefficient * n^{-1/2} when p is odd so the value stays rational.
struct ScaledMoment {
  Rational coefficient;
  bool times_inverse_sqrt_n = false;
  Point n = 1;

  double to_double() const {
    double v = starclt::to_double(coefficient);
    return times_inverse_sqrt_n ? v / std::sqrt(static_cast<double>(n)) : v;
  }
};

inline ScaledMoment scaled_moment(Point n, unsigned p, const CharacterParameter& q, const Budget& budget = {}) {
  Rational raw = sum_moment(n, p, q, true, budget);
  return {raw / power(Rational(n), p / 2), p % 2 == 1, n};
}

inline constexpr unsigned kDefaultSymmetricGroupCap = 7;

/// Sum over tau in S_n of q^{||tau||}, by enumerating S_n.
inline Rational lambda_n_enumerated(unsigned n, const CharacterParameter& q,
                                    unsigned cap = kDefaultSymmetricGroupCap) {
  if (n == 0) throw InvalidArgument("lambda_n needs n >= 1");
  if (n > cap) throw BudgetExceeded("S_" + std::to_string(n) + " exceeds enumeration cap " + std::to_string(cap));
  std::vector<Point> images(n);
  std::iota(images.begin(), images.end(), Point{1});
  // Tally permutations by length, then weight each length class once.
  std::vector<std::uint64_t> by_length(n, 0);
  do {
    std::vector<Permutation::Mapping> table;
    for (Point x = 1; x <= n; ++x) table.emplace_back(x, images[x - 1]);
    ++by_length[Permutation::from_mapping(std::move(table)).length()];
  } while (std::next_permutation(images.begin(), images.end()));
  Rational total = 0;
  for (std::size_t len = 0; len < n; ++len) total += Rational(by_length[len]) * power(q.q, len);
  return total;
}

/// (1+q)(1+2q)...(1+(n-1)q).
inline Rational lambda_n_product(unsigned n, const CharacterParameter& q) {
  Rational product = 1;
  for (unsigned j = 1; j < n; ++j) product *= 1 + Rational(j) * q.q;
  return product;
}

/// The all-ones eigenvalue of the Gram matrix [phi(sigma^{-1} tau)] over S_n.
/// Enumerates S_n and throws if the result disagrees with the product formula.
inline Rational lambda_n(unsigned n, const CharacterParameter& q, unsigned cap = kDefaultSymmetricGroupCap) {
  Rational enumerated = lambda_n_enumerated(n, q, cap);
  if (enumerated != lambda_n_product(n, q)) {
    throw Error("lambda_n: enumeration " + to_string(enumerated) + " disagrees with product formula " +
                to_string(lambda_n_product(n, q)));
  }
  return enumerated;
}

}  // namespace starclt
