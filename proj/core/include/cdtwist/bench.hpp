#pragma once

// Throughput comparison of the closed-form twist against the doubling oracle.
// Inputs are drawn from a seeded generator; every strategy is checked against
// the others in exact arithmetic before it is timed.

#include <chrono>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cdtwist {

inline constexpr std::uint64_t kDefaultBenchSeed = 0x5eed'cd71'2024'0001ULL;

struct BenchCase {
  std::string strategy;
  int dim_exp = 0;
  std::uint64_t terms = 1;
  std::uint64_t ops = 0;
  std::uint64_t elapsed_ns = 0;

  [[nodiscard]] double ops_per_second() const noexcept {
    return elapsed_ns == 0 ? 0.0 : static_cast<double>(ops) * 1e9 / static_cast<double>(elapsed_ns);
  }
};

struct BenchReport {
  std::vector<BenchCase> cases;
  std::string environment;
  std::uint64_t seed = kDefaultBenchSeed;
  std::uint64_t verified_samples = 0;

  [[nodiscard]] const BenchCase* find(std::string_view strategy) const noexcept;
};

struct BenchOptions {
  std::uint64_t seed = kDefaultBenchSeed;
  /// Timing stops at whichever floor is reached first.
  std::uint64_t min_ops = 10'000;
  std::chrono::nanoseconds min_time = std::chrono::seconds(1);
  /// Values above 1 shard samples across workers, each with its own timer.
  unsigned threads = 1;
};

/// Seed from CDTWIST_SEED (decimal or 0x-prefixed hex) or kDefaultBenchSeed.
std::uint64_t seed_from_environment();

/// The index pairs bench_basis_products times, reproducible from the seed.
std::vector<std::pair<std::uint64_t, std::uint64_t>> sample_index_pairs(std::uint64_t seed,
                                                                        int max_exp,
                                                                        std::uint64_t samples);

/// Strategies "closed_form" and "oracle" on pairs below 2^max_exp.
/// Requires 1 <= max_exp <= 20 and samples >= 1.
BenchReport bench_basis_products(int max_exp, std::uint64_t samples,
                                 const BenchOptions& options = {});

/// Strategies "mul_twist" and "mul_doubling" on elements with `terms` nonzero
/// +-1 coefficients below 2^exp. Requires 0 <= exp <= 14, 1 <= terms <= 2^exp.
BenchReport bench_element_mul(int exp, std::uint64_t terms, std::uint64_t samples,
                              const BenchOptions& options = {});

/// Thrown when strategies disagree during the correctness pass.
class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// "strategy,dim_exp,terms,ops,elapsed_ns" records preceded by '#' metadata lines.
std::string to_csv(const BenchReport& report);
std::string to_json(const BenchReport& report);

}  // namespace cdtwist
