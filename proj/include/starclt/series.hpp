#pragma once

#include <cstddef>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "starclt/errors.hpp"
#include "starclt/rational.hpp"

namespace starclt {

/// Power series in r commuting variables, truncated above total degree cap.
class TruncatedSeries {
 public:
  using Exponents = std::vector<unsigned>;

  TruncatedSeries(unsigned r, unsigned cap) : r_(r), cap_(cap) {
    if (r == 0) throw InvalidArgument("series needs at least one variable");
  }

  static TruncatedSeries constant(unsigned r, unsigned cap, const Rational& c) {
    TruncatedSeries s(r, cap);
    s.add_term(Exponents(r, 0), c);
    return s;
  }

  /// c * z_p^power (p is 1-based).
  static TruncatedSeries monomial(unsigned r, unsigned cap, unsigned p, unsigned power, const Rational& c = 1) {
    if (p == 0 || p > r) throw InvalidArgument("variable index outside 1..r");
    Exponents e(r, 0);
    e[p - 1] = power;
    TruncatedSeries s(r, cap);
    s.add_term(e, c);
    return s;
  }

  /// Univariate series from coefficients c_0, c_1, ...
  static TruncatedSeries univariate(unsigned cap, const std::vector<Rational>& coefficients) {
    TruncatedSeries s(1, cap);
    for (unsigned j = 0; j < coefficients.size(); ++j) s.add_term({j}, coefficients[j]);
    return s;
  }

  unsigned variables() const { return r_; }
  unsigned cap() const { return cap_; }
  const std::map<Exponents, Rational>& terms() const { return terms_; }

  static unsigned degree(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0U); }

  /// Adds c z^e; terms above the cap are dropped.
  void add_term(const Exponents& e, const Rational& c) {
    if (e.size() != r_) throw InvalidArgument("exponent vector has wrong length");
    if (c == 0 || degree(e) > cap_) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Rational coefficient(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  Rational coefficient(unsigned power) const { return coefficient(Exponents{power}); }

  Rational constant_term() const { return coefficient(Exponents(r_, 0)); }

  TruncatedSeries& operator+=(const TruncatedSeries& other) {
    require_compatible(other);
    for (const auto& [e, c] : other.terms_) add_term(e, c);
    return *this;
  }

  TruncatedSeries& operator-=(const TruncatedSeries& other) {
    require_compatible(other);
    for (const auto& [e, c] : other.terms_) add_term(e, -c);
    return *this;
  }

  TruncatedSeries& operator*=(const Rational& c) {
    if (c == 0) terms_.clear();
    for (auto& [e, coefficient] : terms_) coefficient *= c;
    return *this;
  }

  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
  friend TruncatedSeries operator*(TruncatedSeries a, const Rational& c) { return a *= c; }
  friend TruncatedSeries operator*(const Rational& c, TruncatedSeries a) { return a *= c; }

  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    a.require_compatible(b);
    TruncatedSeries out(a.r_, a.cap_);
    for (const auto& [ea, ca] : a.terms_) {
      const unsigned da = degree(ea);
      for (const auto& [eb, cb] : b.terms_) {
        if (da + degree(eb) > a.cap_) continue;
        Exponents e(a.r_);
        for (unsigned p = 0; p < a.r_; ++p) e[p] = ea[p] + eb[p];
        out.add_term(e, ca * cb);
      }
    }
    return out;
  }

  /// exp(A) for A with zero constant term. With B = exp(A) and the Euler
  /// operator E = sum z_p d/dz_p, E B = (E A) B gives, degree by degree,
  /// n B_n = sum_{j=1}^{n} j A_j B_{n-j}.
  TruncatedSeries exp() const {
    if (constant_term() != 0) throw InvalidArgument("exp needs a zero constant term");
    std::vector<TruncatedSeries> a(cap_ + 1, TruncatedSeries(r_, cap_));
    for (const auto& [e, c] : terms_) a[degree(e)].add_term(e, c);
    std::vector<TruncatedSeries> b(cap_ + 1, TruncatedSeries(r_, cap_));
    b[0] = constant(r_, cap_, 1);
    for (unsigned n = 1; n <= cap_; ++n) {
      TruncatedSeries sum(r_, cap_);
      for (unsigned j = 1; j <= n; ++j) {
        if (a[j].terms_.empty() || b[n - j].terms_.empty()) continue;
        sum += (a[j] * b[n - j]) * Rational(j);
      }
      b[n] = sum * make_rational(1, n);
    }
    TruncatedSeries out(r_, cap_);
    for (const auto& part : b) out += part;
    return out;
  }

  /// Univariate only: k! times the coefficient of z^k, for k = 0..k_max.
  std::vector<Rational> moments(unsigned k_max) const {
    if (r_ != 1) throw InvalidArgument("moments are read off univariate series");
    if (k_max > cap_) throw InvalidArgument("requested moments beyond the truncation cap");
    std::vector<Rational> out(k_max + 1);
    for (unsigned k = 0; k <= k_max; ++k) out[k] = Rational(factorial(k)) * coefficient(k);
    return out;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      out << (first ? "" : " + ") << starclt::to_string(c);
      for (unsigned p = 0; p < r_; ++p) {
        if (e[p] == 0) continue;
        out << "*z" << (p + 1);
        if (e[p] > 1) out << '^' << e[p];
      }
      first = false;
    }
    return out.str();
  }

  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
    return a.r_ == b.r_ && a.cap_ == b.cap_ && a.terms_ == b.terms_;
  }

 private:
  void require_compatible(const TruncatedSeries& other) const {
    if (r_ != other.r_ || cap_ != other.cap_) throw InvalidArgument("series differ in variables or cap");
  }

  unsigned r_;
  unsigned cap_;
  std::map<Exponents, Rational> terms_;
};

/// F(z_1^2 + ... + z_r^2) for a univariate F, truncated at total degree cap.
inline TruncatedSeries compose_with_sum_of_squares(const TruncatedSeries& f, unsigned r, unsigned cap) {
  if (f.variables() != 1) throw InvalidArgument("outer series must be univariate");
  TruncatedSeries w(r, cap);
  for (unsigned p = 1; p <= r; ++p) w += TruncatedSeries::monomial(r, cap, p, 2);
  TruncatedSeries out(r, cap);
  TruncatedSeries w_power = TruncatedSeries::constant(r, cap, 1);
  for (unsigned m = 0; 2 * m <= cap; ++m) {
    out += w_power * f.coefficient(m);
    w_power = w_power * w;
  }
  return out;
}

}  // namespace starclt
