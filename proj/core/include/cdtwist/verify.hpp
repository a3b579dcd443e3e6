#pragma once

// Invariant suites run by `cdtwist verify`. Each suite is exhaustive over
// indices below 2^max_exp unless noted and stops at its first counterexample.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cdtwist/basis.hpp"

namespace cdtwist {

using TwistFunction = std::function<Sign(BasisIndex, BasisIndex)>;

struct SuiteResult {
  std::string name;
  std::uint64_t checked = 0;
  /// Human-readable first failure, naming the offending (p, q).
  std::optional<std::string> counterexample;

  [[nodiscard]] bool passed() const noexcept { return !counterexample; }
};

struct VerifyOptions {
  int max_exp = 8;
  /// Closed-form twist under test; defaults to omega2.
  TwistFunction twist;
  std::uint64_t seed = 0x0cd0'7715'7ULL;
  /// Stop after the first failing suite.
  bool fail_fast = false;
};

inline constexpr int kMaxVerifyExponent = 10;

/// Runs every suite. Throws std::invalid_argument unless 1 <= max_exp <= 10.
std::vector<SuiteResult> run_verification(const VerifyOptions& options);

/// Fixed-width summary table, one row per suite.
std::string format_summary(const std::vector<SuiteResult>& results);

}  // namespace cdtwist
