#pragma once

#include <algorithm>
#include <chrono>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "starclt/analytic.hpp"
#include "starclt/check_result.hpp"
#include "starclt/clt.hpp"
#include "starclt/group_algebra.hpp"
#include "starclt/gue.hpp"
#include "starclt/gue_sampler.hpp"
#include "starclt/pairing_stats.hpp"

namespace starclt {

/// A check together with its wall-clock cost.
struct TimedCheck {
  CheckResult result;
  double elapsed_ms = 0.0;
};

inline TimedCheck timed(const std::function<CheckResult()>& run) {
  const auto start = std::chrono::steady_clock::now();
  TimedCheck out{run(), 0.0};
  out.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return out;
}

/// Applies a predicate to every pairing in the list.
inline CheckResult scan_pairings(std::string check, std::string reference, const std::vector<PairPartition>& pairings,
                                 const std::function<bool(const PairPartition&)>& predicate) {
  CheckResult result{std::move(check), std::move(reference), 0, 0, {}};
  for (const auto& pi : pairings) result.record(predicate(pi), pi.to_string());
  return result;
}

inline std::vector<PairPartition> random_pairings(std::size_t h, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<PairPartition> out;
  out.reserve(count);
  for (std::size_t j = 0; j < count; ++j) out.push_back(random_pair_partition(h, rng));
  return out;
}

inline CheckResult exponent_identity_check(std::size_t h) {
  return scan_pairings("pairing-identity h=" + std::to_string(h), "u_exponent equals v_exponent on all of P2(2h)",
                       enumerate_pair_partitions(2 * h), check_exponent_identity);
}

inline CheckResult exponent_identity_random_check(std::size_t h, std::size_t count, std::uint64_t seed) {
  return scan_pairings("pairing-identity-random h=" + std::to_string(h),
                       "u_exponent equals v_exponent on random pairings", random_pairings(h, count, seed),
                       check_exponent_identity);
}

/// Conjugacy, orbit-intersection and orbit-extension statements for one pairing list.
inline CheckResult pairing_lemmas_check(std::string check, const std::vector<PairPartition>& pairings) {
  return scan_pairings(std::move(check),
                       "q_pi conjugate to the induced permutation on right endpoints; every orbit meets them",
                       pairings, [](const PairPartition& pi) {
                         return check_conjugacy_lemma(pi) && check_orbit_lemma(pi) && check_orbit_extension(pi);
                       });
}

inline CheckResult wick_examples_check(std::int64_t d) {
  CheckResult result{"wick-examples d=" + std::to_string(d), "GUE words (1,2,1,2), (1,1,1,1), (1,1,1,1,1,1)", 0, 0,
                     {}};
  const Rational inv = make_rational(1, d * d);
  const std::vector<std::pair<IndexTuple, Rational>> cases{
      {IndexTuple{1, 2, 1, 2}, inv}, {IndexTuple{1, 1, 1, 1}, 2 + inv}, {IndexTuple{1, 1, 1, 1, 1, 1}, 5 + 10 * inv}};
  for (const auto& [word, expected] : cases) {
    const auto got = wick_joint_moment(word, d);
    result.record(got == expected, format_tuple(word.entries()) + ": " + to_string(got));
  }
  return result;
}

/// nu_egf moments against Wick sums over pairings, k <= k_max.
inline CheckResult nu_moments_check(std::int64_t d, unsigned k_max) {
  CheckResult result{"nu-moments d=" + std::to_string(d), "e.g.f. of the averaged GUE law matches the Wick formula",
                     0, 0, {}};
  const auto series = nu_egf(d, k_max).moments(k_max);
  for (unsigned k = 0; k <= k_max; ++k) {
    const auto wick = k == 0 ? Rational(1) : wick_joint_moment(IndexTuple(std::vector<Index>(k, 1)), d);
    result.record(series[k] == wick, "k=" + std::to_string(k) + ": " + to_string(series[k]) + " vs " + to_string(wick));
  }
  return result;
}

inline CheckResult convolution_suite_check(std::int64_t d, unsigned k_max) {
  auto r = convolution_check(d, k_max);
  r.check += " d=" + std::to_string(d);
  return r;
}

/// Pairing sums over group-algebra values of centered star-generators against mu_egf.
inline CheckResult alpha_check(std::int64_t d, unsigned m_max) {
  CheckResult result{"alpha-vs-egf d=" + std::to_string(d),
                     "limit moments from partition sums equal the closed-form e.g.f. of mu_d", 0, 0, {}};
  PartitionFunction t(std::make_shared<CenteredStarGeneratorOracle>(CharacterParameter::from_dimension(d)));
  const auto mu = mu_egf(d, 2 * m_max).moments(2 * m_max);
  for (unsigned m = 0; m <= m_max; ++m) {
    const auto a = alpha_coefficient(t, m);
    result.record(a == mu[2 * m], "m=" + std::to_string(m) + ": " + to_string(a) + " vs " + to_string(mu[2 * m]));
  }
  return result;
}

inline CheckResult catalan_check(unsigned m_max) {
  CheckResult result{"semicircle-catalan", "the canonical trace gives Catalan numbers", 0, 0, {}};
  PartitionFunction t(std::make_shared<CenteredStarGeneratorOracle>(CharacterParameter{0}));
  BigInt catalan = 1;
  for (unsigned m = 0; m <= m_max; ++m) {
    const auto a = alpha_coefficient(t, m);
    result.record(a == Rational(catalan), "m=" + std::to_string(m) + ": " + to_string(a));
    catalan = catalan * 2 * (2 * m + 1) / (m + 2);
  }
  return result;
}

inline CheckResult lambda_check(const Rational& q, unsigned n_max) {
  CheckResult result{"lambda-product q=" + to_string(q), "sum over S_n of q^{||tau||} equals prod (1 + j q)", 0, 0,
                     {}};
  for (unsigned n = 1; n <= n_max; ++n) {
    const auto lhs = lambda_n_enumerated(n, CharacterParameter{q});
    const auto rhs = lambda_n_product(n, CharacterParameter{q});
    result.record(lhs == rhs, "n=" + std::to_string(n) + ": " + to_string(lhs) + " vs " + to_string(rhs));
  }
  return result;
}

/// The density polynomial reproduces the moments of mu_d up to twice the solved range.
inline CheckResult density_check(std::int64_t d) {
  CheckResult result{"density d=" + std::to_string(d), "polynomial times Gaussian carries the moments of mu_d", 0, 0,
                     {}};
  const auto p = density_polynomial(d);
  const unsigned top = 2 * static_cast<unsigned>(d);
  const auto mu = mu_egf(d, 2 * top).moments(2 * top);
  for (unsigned m = 0; m <= top; ++m) {
    const auto e = p.expectation(m);
    result.record(e == mu[2 * m], "m=" + std::to_string(m) + ": " + to_string(e));
  }
  return result;
}

inline CheckResult multivariate_suite_check(unsigned r, std::int64_t d, unsigned cap) {
  return multivariate_convolution_report(r, d, cap);
}

/// |phi(s_n^p) - alpha| strictly decreases along the given n.
inline CheckResult convergence_check(const Rational& q, unsigned p, const std::vector<Point>& ns) {
  CheckResult result{"finite-n-convergence q=" + to_string(q) + " p=" + std::to_string(p),
                     "normalized sums of centered star-generators approach the limit moment", 0, 0, {}};
  PartitionFunction t(std::make_shared<CenteredStarGeneratorOracle>(CharacterParameter{q}));
  const double limit = p % 2 ? 0.0 : to_double(alpha_coefficient(t, p / 2));
  double previous = 0.0;
  for (std::size_t j = 0; j < ns.size(); ++j) {
    const double gap = std::abs(scaled_moment(ns[j], p, CharacterParameter{q}).to_double() - limit);
    if (j > 0) {
      result.record(gap < previous, "n=" + std::to_string(ns[j]) + ": gap " + std::to_string(gap) +
                                        " not below " + std::to_string(previous));
    }
    previous = gap;
  }
  return result;
}

inline CheckResult monte_carlo_check(const IndexTuple& word, unsigned d, std::uint64_t samples, std::uint64_t seed,
                                     double band = 3.0) {
  CheckResult result{"monte-carlo d=" + std::to_string(d) + " word=" + format_tuple(word.entries()),
                     "sampled GUE trace moment within standard-error band of the Wick value", 0, 0, {}};
  const auto est = sample_joint_moment(word, GueSampleConfig{d, samples, seed});
  const double exact = to_double(wick_joint_moment(word, d));
  result.record(std::abs(est.estimate - exact) < band * est.standard_error,
                "estimate " + std::to_string(est.estimate) + " +- " + std::to_string(est.standard_error) +
                    " vs " + std::to_string(exact));
  return result;
}

}  // namespace starclt
