#pragma once

#include <CLI11.hpp>
#include <algorithm>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "starclt/starclt.hpp"

namespace starclt::cli {

using nlohmann::json;

enum ExitCode : int { kPass = 0, kFailed = 1, kInvalid = 2 };

struct RunConfig {
  std::string command;
  std::string kind;  // verify suite, moments kind or gue kind
  std::optional<std::int64_t> d;
  std::optional<std::string> q;
  std::optional<unsigned> order;
  std::optional<unsigned> n;
  std::optional<unsigned> p;
  unsigned r = 2;
  unsigned max_h = 5;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> samples;
  std::string format = "text";
  std::string out;
  std::string tuple;
  bool transitive = false;
  bool centered = false;
  bool timing = false;
  unsigned points = 201;
  double range = 3.0;
};

struct RunResult {
  int exit_code = kPass;
  std::string output;
  std::string error;
};

inline constexpr std::uint64_t kDefaultVerifySeed = 20240601;
inline constexpr std::uint64_t kDefaultSamples = 200000;

namespace detail {

struct ConfigError : Error {
  using Error::Error;
};

inline std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline json rationals(const std::vector<Rational>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

inline std::string join_rationals(const std::vector<Rational>& v) {
  std::string out;
  for (std::size_t j = 0; j < v.size(); ++j) out += (j ? ", " : "") + to_string(v[j]);
  return out;
}

inline std::int64_t dimension(const RunConfig& cfg) {
  if (cfg.d) return *cfg.d;
  if (cfg.q) {
    const Rational q = parse_rational(*cfg.q);
    if (q > 0 && numerator(q) == 1) return static_cast<std::int64_t>(denominator(q));
    throw ConfigError("--q " + *cfg.q + " is not of the form 1/d; pass --d");
  }
  throw ConfigError(cfg.command + " needs --d");
}

inline Rational parameter(const RunConfig& cfg) {
  if (cfg.q) return parse_rational(*cfg.q);
  if (cfg.d) return make_rational(1, *cfg.d);
  throw ConfigError(cfg.command + " needs --q or --d");
}

template <class T>
T required(const std::optional<T>& v, const std::string& flag, const std::string& command) {
  if (!v) throw ConfigError(command + " needs " + flag);
  return *v;
}

inline std::vector<Rational> series_coefficients(const TruncatedSeries& s, unsigned order) {
  std::vector<Rational> out;
  for (unsigned k = 0; k <= order; ++k) out.push_back(s.coefficient(k));
  return out;
}

inline std::string emit_json(const json& j) { return j.dump(2) + "\n"; }

// ---- verification reports ----

using CheckList = std::vector<std::function<CheckResult()>>;

inline CheckResult renamed(CheckResult r, std::string name) {
  r.check = std::move(name);
  return r;
}

inline std::string text_line(const TimedCheck& t) {
  const auto& r = t.result;
  std::string line;
  if (r.check.rfind("pairing-identity h=", 0) == 0) {
    line = std::to_string(r.cases) + " pairings checked at h=" + r.check.substr(19) + ", " +
           std::to_string(r.failures) + " failures";
  } else {
    line = std::string(r.passed() ? "pass " : "FAIL ") + r.check + ": " + std::to_string(r.cases) + " cases, " +
           std::to_string(r.failures) + " failures (" + r.reference + ")";
  }
  for (const auto& w : r.witnesses) line += "\n  witness: " + w;
  return line;
}

inline RunResult report(const RunConfig& cfg, const CheckList& checks) {
  std::vector<TimedCheck> rows;
  for (const auto& c : checks) rows.push_back(timed(c));
  std::stable_sort(rows.begin(), rows.end(),
                   [](const TimedCheck& a, const TimedCheck& b) { return a.result.check < b.result.check; });
  std::size_t failed = 0;
  for (const auto& row : rows) failed += row.result.passed() ? 0 : 1;
  auto elapsed = [&](const TimedCheck& row) { return cfg.timing ? row.elapsed_ms : 0.0; };

  RunResult out;
  out.exit_code = failed ? kFailed : kPass;
  if (cfg.format == "json") {
    json j;
    j["command"] = "verify " + cfg.kind;
    j["passed"] = failed == 0;
    j["checks"] = json::array();
    for (const auto& row : rows) {
      j["checks"].push_back({{"check", row.result.check},
                             {"paper_ref", row.result.reference},
                             {"cases", row.result.cases},
                             {"failures", row.result.failures},
                             {"witnesses", row.result.witnesses},
                             {"elapsed_ms", elapsed(row)}});
    }
    out.output = emit_json(j);
  } else if (cfg.format == "csv") {
    std::ostringstream s;
    s << "check,paper_ref,cases,failures,elapsed_ms,witnesses\n";
    for (const auto& row : rows) {
      std::string w;
      for (std::size_t k = 0; k < row.result.witnesses.size(); ++k) w += (k ? "; " : "") + row.result.witnesses[k];
      s << csv_field(row.result.check) << ',' << csv_field(row.result.reference) << ',' << row.result.cases << ','
        << row.result.failures << ',' << format_double(elapsed(row)) << ',' << csv_field(w) << '\n';
    }
    out.output = s.str();
  } else {
    std::ostringstream s;
    for (const auto& row : rows) {
      s << text_line(row);
      if (cfg.timing) {
        char buf[32];
        std::snprintf(buf, sizeof buf, " [%.1f ms]", row.elapsed_ms);
        s << buf;
      }
      s << '\n';
    }
    s << rows.size() << " checks, " << failed << " failed\n";
    out.output = s.str();
  }
  return out;
}

inline void add_exchangeability(CheckList& checks, const Rational& q, std::size_t trials, std::uint64_t seed) {
  const CharacterParameter param{q};
  checks.push_back([=] {
    return renamed(check_exchangeable(StarGeneratorOracle(param), 8, trials, seed), "exchangeable raw");
  });
  checks.push_back([=] {
    return renamed(check_exchangeable(CenteredStarGeneratorOracle(param), 8, trials, seed + 1),
                   "exchangeable centered");
  });
  checks.push_back([=] {
    return renamed(check_singleton_factorization(StarGeneratorOracle(param), 8, trials, seed + 2),
                   "singleton-factorization raw");
  });
  checks.push_back([=] {
    return renamed(check_singleton_factorization(CenteredStarGeneratorOracle(param), 8, trials, seed + 3),
                   "singleton-factorization centered");
  });
}

inline void add_pairing_suite(CheckList& checks, unsigned max_h, std::uint64_t seed, bool random_part) {
  for (unsigned h = 1; h <= max_h; ++h) checks.push_back([=] { return exponent_identity_check(h); });
  checks.push_back([=] {
    CheckResult all{"pairing-lemmas exhaustive", "", 0, 0, {}};
    for (unsigned h = 1; h <= max_h; ++h) {
      auto r = pairing_lemmas_check("", enumerate_pair_partitions(2 * h));
      all.reference = r.reference;
      all.merge(r);
    }
    return all;
  });
  if (!random_part) return;
  for (unsigned h = 6; h <= 8; ++h) {
    checks.push_back([=] { return exponent_identity_random_check(h, 1000, seed + h); });
  }
  checks.push_back([=] {
    CheckResult all{"pairing-lemmas random", "", 0, 0, {}};
    for (unsigned h = 6; h <= 8; ++h) {
      auto r = pairing_lemmas_check("", random_pairings(h, 500, seed + 10 + h));
      all.reference = r.reference;
      all.merge(r);
    }
    return all;
  });
}

inline CheckResult translation_named(const Rational& q, unsigned m_max) {
  return renamed(star_translation_check(q, m_max), "translation q=" + to_string(q));
}

inline CheckResult multinomial_named(const Rational& q, unsigned r, unsigned cap) {
  PartitionFunction t(std::make_shared<CenteredStarGeneratorOracle>(CharacterParameter{q}));
  auto result = check_multinomial_aggregates(multivariate_limit_moments(t, r, cap), t);
  result.check = "multinomial-aggregates r=" + std::to_string(r);
  return result;
}

inline CheckResult sum_of_squares_named(const Rational& q, unsigned r, unsigned cap) {
  PartitionFunction t(std::make_shared<CenteredStarGeneratorOracle>(CharacterParameter{q}));
  auto result = sum_of_squares_check(t, r, cap);
  result.check = "sum-of-squares r=" + std::to_string(r);
  return result;
}

inline CheckResult gram_named(const Rational& q, unsigned n) {
  CheckResult r{"gram-psd n=" + std::to_string(n), "the Gram matrix of phi_q on S_n is positive semidefinite", 0, 0,
                {}};
  r.record(gram_psd_check(n, CharacterParameter{q}), "q=" + to_string(q));
  return r;
}

inline RunResult verify(const RunConfig& cfg) {
  const std::uint64_t seed = cfg.seed.value_or(kDefaultVerifySeed);
  CheckList checks;
  if (cfg.kind == "pairing-identity") {
    for (unsigned h = 1; h <= cfg.max_h; ++h) checks.push_back([=] { return exponent_identity_check(h); });
  } else if (cfg.kind == "convolution") {
    const auto d = dimension(cfg);
    const unsigned order = cfg.order.value_or(kDefaultUnivariateCap);
    checks.push_back([=] { return convolution_suite_check(d, order); });
    checks.push_back([=] { return nu_moments_check(d, order); });
  } else if (cfg.kind == "multivariate") {
    const auto d = dimension(cfg);
    const unsigned cap = cfg.order.value_or(kDefaultMultivariateCap);
    const unsigned r = cfg.r;
    const Rational q = make_rational(1, d);
    checks.push_back([=] { return multivariate_suite_check(r, d, cap); });
    checks.push_back([=] { return sum_of_squares_named(q, r, cap); });
    checks.push_back([=] { return multinomial_named(q, r, cap); });
  } else if (cfg.kind == "clt") {
    const Rational q = parameter(cfg);
    const unsigned order = cfg.order.value_or(8);
    const unsigned m_max = std::min(order / 2, 4U);
    const unsigned cap = std::min(order, 6U);
    add_exchangeability(checks, q, 500, seed);
    checks.push_back([=] { return translation_named(q, m_max); });
    checks.push_back([=] { return multinomial_named(q, 2, cap); });
    checks.push_back([=] { return sum_of_squares_named(q, 2, cap); });
    checks.push_back([=] { return lambda_check(q, 6); });
    if (q == 0) checks.push_back([=] { return catalan_check(std::min(order / 2, 5U)); });
    if (q > 0 && numerator(q) == 1) {
      const auto d = static_cast<std::int64_t>(denominator(q));
      checks.push_back([=] { return alpha_check(d, std::min(order / 2, 5U)); });
    }
  } else if (cfg.kind == "all") {
    const auto d = dimension(cfg);
    const Rational q = make_rational(1, d);
    const unsigned order = cfg.order.value_or(10);
    const unsigned m_max = order / 2;
    const auto samples = cfg.samples.value_or(kDefaultSamples);
    checks.push_back([=] { return wick_examples_check(d); });
    checks.push_back([=] { return nu_moments_check(d, order); });
    add_pairing_suite(checks, cfg.max_h, seed, true);
    checks.push_back([=] { return convolution_suite_check(d, order); });
    checks.push_back([=] { return alpha_check(d, m_max); });
    checks.push_back([=] { return catalan_check(m_max); });
    checks.push_back([=] { return lambda_check(q, 6); });
    checks.push_back([=] { return lambda_check(-q, 6); });
    checks.push_back([=] { return gram_named(q, 4); });
    add_exchangeability(checks, q, 500, seed);
    checks.push_back([=] { return translation_named(q, std::min(m_max, 4U)); });
    const unsigned cap = std::min(order, kDefaultMultivariateCap);
    for (unsigned r : {1U, 2U}) checks.push_back([=] { return multivariate_suite_check(r, d, cap); });
    checks.push_back([=] { return sum_of_squares_named(q, 2, std::min(order, 6U)); });
    checks.push_back([=] { return multinomial_named(q, 2, std::min(order, 6U)); });
    if (d >= 2) {
      checks.push_back([=] { return density_check(d); });
      checks.push_back([=] { return convergence_check(q, 4, {4, 8, 12}); });
    }
    checks.push_back([=] {
      return monte_carlo_check(IndexTuple{1, 1, 1, 1}, static_cast<unsigned>(d), samples, seed);
    });
  } else {
    throw ConfigError("unknown verify suite '" + cfg.kind + "'");
  }
  return report(cfg, checks);
}

// ---- computations ----

inline RunResult moments(const RunConfig& cfg) {
  RunResult out;
  json j;
  std::vector<Rational> values;
  if (cfg.kind == "sum") {
    const auto n = required(cfg.n, "--n", "moments sum");
    const auto p = required(cfg.p, "--p", "moments sum");
    const CharacterParameter q{parameter(cfg)};
    const auto budget = Budget::from_environment();
    const auto value = sum_moment(n, p, q, cfg.centered, budget);
    j = {{"command", "moments sum"}, {"n", n},     {"p", p},
         {"q", to_string(q.q)},     {"centered", cfg.centered}, {"value", to_string(value)}};
    if (cfg.centered) {
      const auto s = scaled_moment(n, p, q, budget);
      j["scaled"] = {{"coefficient", to_string(s.coefficient)},
                     {"times_inverse_sqrt_n", s.times_inverse_sqrt_n},
                     {"approx", s.to_double()}};
    }
    values = {value};
  } else if (cfg.kind == "mu" || cfg.kind == "nu") {
    const auto d = dimension(cfg);
    const unsigned order = cfg.order.value_or(kDefaultUnivariateCap);
    values = (cfg.kind == "mu" ? mu_egf(d, order) : nu_egf(d, order)).moments(order);
    j = {{"command", "moments " + cfg.kind}, {"d", d}, {"order", order}, {"moments", rationals(values)}};
  } else {
    throw ConfigError("unknown moments kind '" + cfg.kind + "'");
  }
  if (cfg.format == "json") {
    out.output = emit_json(j);
  } else if (cfg.format == "csv") {
    std::ostringstream s;
    s << "k,moment\n";
    if (cfg.kind == "sum") {
      s << *cfg.p << ',' << to_string(values[0]) << '\n';
    } else {
      for (std::size_t k = 0; k < values.size(); ++k) s << k << ',' << to_string(values[k]) << '\n';
    }
    out.output = s.str();
  } else {
    out.output = join_rationals(values) + "\n";
  }
  return out;
}

inline RunResult factorizations(const RunConfig& cfg) {
  const auto n = required(cfg.n, "--n", "factorizations");
  const auto p = required(cfg.p, "--p", "factorizations");
  const auto counts = factorization_counts(n, p, cfg.transitive, Budget::from_environment());
  BigInt total = 0;
  json rows = json::array();
  std::ostringstream csv;
  std::ostringstream text;
  csv << "permutation,length,count\n";
  for (const auto& [tau, c] : counts) {
    total += c;
    rows.push_back({{"permutation", tau.to_string()}, {"length", tau.length()}, {"count", c.str()}});
    csv << csv_field(tau.to_string()) << ',' << tau.length() << ',' << c.str() << '\n';
    text << tau.to_string() << ' ' << c.str() << '\n';
  }
  RunResult out;
  if (cfg.format == "json") {
    out.output = emit_json({{"command", "factorizations"},
                            {"n", n},
                            {"p", p},
                            {"transitive", cfg.transitive},
                            {"total", total.str()},
                            {"counts", rows}});
  } else if (cfg.format == "csv") {
    out.output = csv.str();
  } else {
    out.output = text.str() + "total " + total.str() + "\n";
  }
  return out;
}

inline RunResult gue(const RunConfig& cfg) {
  if (cfg.tuple.empty()) throw ConfigError("gue " + cfg.kind + " needs --tuple");
  const auto word = IndexTuple::parse(cfg.tuple);
  const auto d = dimension(cfg);
  const auto exact = wick_joint_moment(word, d);
  std::vector<Index> entries(word.entries().begin(), word.entries().end());
  RunResult out;
  if (cfg.kind == "wick") {
    if (cfg.format == "json") {
      out.output = emit_json({{"command", "gue wick"}, {"tuple", entries}, {"d", d}, {"value", to_string(exact)}});
    } else if (cfg.format == "csv") {
      out.output = "tuple,d,value\n" + csv_field(cfg.tuple) + "," + std::to_string(d) + "," + to_string(exact) + "\n";
    } else {
      out.output = to_string(exact) + "\n";
    }
    return out;
  }
  if (cfg.kind != "mc") throw ConfigError("unknown gue kind '" + cfg.kind + "'");
  const auto seed = required(cfg.seed, "--seed", "gue mc");
  const std::uint64_t samples = cfg.samples ? *cfg.samples : cfg.n ? *cfg.n : kDefaultSamples;
  const GueSampleConfig sc{static_cast<unsigned>(d), samples, seed};
  const auto est = sample_joint_moment(word, sc);
  if (cfg.format == "json") {
    out.output = emit_json({{"command", "gue mc"},
                            {"tuple", entries},
                            {"d", d},
                            {"samples", samples},
                            {"seed", seed},
                            {"shards", sc.shards},
                            {"estimate", est.estimate},
                            {"standard_error", est.standard_error},
                            {"exact", to_string(exact)}});
  } else if (cfg.format == "csv") {
    out.output = "estimate,standard_error,exact\n" + format_double(est.estimate) + "," +
                 format_double(est.standard_error) + "," + to_string(exact) + "\n";
  } else {
    out.output = format_double(est.estimate) + " +- " + format_double(est.standard_error) + " (exact " +
                 to_string(exact) + ")\n";
  }
  return out;
}

inline RunResult density(const RunConfig& cfg) {
  const auto d = dimension(cfg);
  const auto p = density_polynomial(d);
  if (cfg.points < 2) throw ConfigError("--points must be at least 2");
  const auto dense = p.dense_coefficients();
  std::vector<std::pair<double, double>> samples;
  for (unsigned j = 0; j < cfg.points; ++j) {
    const double t = -cfg.range + 2.0 * cfg.range * j / (cfg.points - 1);
    samples.emplace_back(t, p.density(t));
  }
  RunResult out;
  if (cfg.format == "json") {
    json s = json::array();
    for (const auto& [t, y] : samples) s.push_back({t, y});
    out.output = emit_json({{"command", "density"},
                            {"d", d},
                            {"variance", to_string(p.variance)},
                            {"coefficients", rationals(dense)},
                            {"samples", s}});
  } else if (cfg.format == "csv") {
    std::ostringstream o;
    o << "power,coefficient\n";
    for (std::size_t k = 0; k < dense.size(); ++k) o << k << ',' << to_string(dense[k]) << '\n';
    o << "\nt,density\n";
    for (const auto& [t, y] : samples) o << format_double(t) << ',' << format_double(y) << '\n';
    out.output = o.str();
  } else {
    out.output = "P(t) = " + p.to_string() + "\nvariance " + to_string(p.variance) + "\n";
  }
  return out;
}

inline RunResult egf(const RunConfig& cfg) {
  const auto d = dimension(cfg);
  const unsigned order = cfg.order.value_or(kDefaultUnivariateCap);
  const auto mu = series_coefficients(mu_egf(d, order), order);
  const auto nu = series_coefficients(nu_egf(d, order), order);
  const auto qp = series_coefficients(q_polynomial(d, order), order);
  RunResult out;
  if (cfg.format == "json") {
    out.output = emit_json({{"command", "egf"},
                            {"d", d},
                            {"order", order},
                            {"mu", rationals(mu)},
                            {"nu", rationals(nu)},
                            {"q_polynomial", rationals(qp)}});
  } else if (cfg.format == "csv") {
    std::ostringstream o;
    o << "power,mu,nu,q_polynomial\n";
    for (unsigned k = 0; k <= order; ++k) {
      o << k << ',' << to_string(mu[k]) << ',' << to_string(nu[k]) << ',' << to_string(qp[k]) << '\n';
    }
    out.output = o.str();
  } else {
    out.output = "mu: " + join_rationals(mu) + "\nnu: " + join_rationals(nu) + "\nQ: " + join_rationals(qp) + "\n";
  }
  return out;
}

inline RunResult dispatch(const RunConfig& cfg) {
  if (cfg.d && cfg.q) throw ConfigError("pass only one of --d and --q");
  if (cfg.d && *cfg.d <= 0) throw ConfigError("--d must be positive");
  if (cfg.command == "verify") return verify(cfg);
  if (cfg.command == "moments") return moments(cfg);
  if (cfg.command == "factorizations") return factorizations(cfg);
  if (cfg.command == "gue") return gue(cfg);
  if (cfg.command == "density") return density(cfg);
  if (cfg.command == "egf") return egf(cfg);
  throw ConfigError("unknown command '" + cfg.command + "'");
}

}  // namespace detail

/// Parses arguments (without the program name) and runs the command.
inline RunResult run(const std::vector<std::string>& args) {
  RunConfig cfg;
  CLI::App app{"Exact checks for the length character, star-generator CLT and GUE moments", "starclt"};
  app.fallthrough();
  app.require_subcommand(1);

  app.add_option("--d", cfg.d, "dimension d (q = 1/d)");
  app.add_option("--q", cfg.q, "character parameter as num/den");
  app.add_option("--order", cfg.order, "moment order or truncation cap");
  app.add_option("--n", cfg.n, "number of generators (gue mc: sample count)");
  app.add_option("--p", cfg.p, "power");
  app.add_option("--r", cfg.r, "number of variables");
  app.add_option("--max-h", cfg.max_h, "largest h for pairing scans");
  app.add_option("--seed", cfg.seed, "random seed");
  app.add_option("--samples", cfg.samples, "Monte Carlo sample count");
  app.add_option("--format,--emit", cfg.format, "text, json or csv")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--out", cfg.out, "write the report to this file");
  app.add_option("--tuple", cfg.tuple, "index tuple, e.g. 1,2,1,2");
  app.add_option("--points", cfg.points, "density sample points");
  app.add_option("--range", cfg.range, "density samples cover [-range, range]");
  app.add_flag("--transitive", cfg.transitive, "only transitive factorizations");
  app.add_flag("--centered", cfg.centered, "use centered generators");
  app.add_flag("--timing", cfg.timing, "report elapsed_ms");

  auto* verify = app.add_subcommand("verify", "run identity checks");
  verify->add_option("suite", cfg.kind, "all, pairing-identity, clt, convolution or multivariate")
      ->required()
      ->check(CLI::IsMember({"all", "pairing-identity", "clt", "convolution", "multivariate"}));
  auto* moments = app.add_subcommand("moments", "exact moments");
  moments->add_option("kind", cfg.kind, "sum, mu or nu")->required()->check(CLI::IsMember({"sum", "mu", "nu"}));
  app.add_subcommand("factorizations", "count factorizations into star-generators");
  auto* gue = app.add_subcommand("gue", "GUE joint moments");
  gue->add_option("kind", cfg.kind, "wick or mc")->required()->check(CLI::IsMember({"wick", "mc"}));
  app.add_subcommand("density", "density of the limit law");
  app.add_subcommand("egf", "generating-function coefficients");

  RunResult result;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    result.output = app.help();
    return result;
  } catch (const CLI::ParseError& e) {
    result.exit_code = kInvalid;
    result.error = e.what();
    return result;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  try {
    result = detail::dispatch(cfg);
  } catch (const BudgetExceeded& e) {
    return {kInvalid, "", std::string("budget exceeded: ") + e.what()};
  } catch (const Error& e) {
    return {kInvalid, "", e.what()};
  }
  if (!cfg.out.empty()) {
    std::ofstream file(cfg.out, std::ios::binary);
    if (!file) return {kInvalid, "", "cannot write " + cfg.out};
    file << result.output;
    result.output.clear();
  }
  return result;
}

}  // namespace starclt::cli
