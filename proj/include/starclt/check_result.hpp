#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace starclt {

/// Outcome of an identity verified over many cases.
struct CheckResult {
  static constexpr std::size_t kMaxWitnesses = 5;

  std::string check;
  std::string reference;  // which identity this is, in words
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::vector<std::string> witnesses;

  bool passed() const { return failures == 0 && cases > 0; }

  void record(bool ok, const std::string& witness) {
    ++cases;
    if (ok) return;
    ++failures;
    if (witnesses.size() < kMaxWitnesses) witnesses.push_back(witness);
  }

  void merge(const CheckResult& other) {
    cases += other.cases;
    failures += other.failures;
    for (const auto& w : other.witnesses) {
      if (witnesses.size() < kMaxWitnesses) witnesses.push_back(w);
    }
  }
};

}  // namespace starclt
