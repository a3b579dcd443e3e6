#include "cdtwist/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <random>
#include <set>
#include <thread>

#include <sys/utsname.h>

#include <json.hpp>

#include "cdtwist/basis.hpp"
#include "cdtwist/element.hpp"

namespace cdtwist {

namespace {

using Clock = std::chrono::steady_clock;

std::string host_description() {
  std::string out;
  utsname info{};
  if (uname(&info) == 0) {
    out = std::string(info.sysname) + " " + info.release + " " + info.machine;
  } else {
    out = "unknown host";
  }
  out += ", " + std::to_string(std::thread::hardware_concurrency()) + " hw threads";
#if defined(__clang__)
  out += ", clang " __clang_version__;
#elif defined(__GNUC__)
  out += ", gcc " __VERSION__;
#endif
  return out;
}

// Defeats dead-code elimination of the timed calls.
std::atomic<std::uint64_t> g_sink{0};

struct WorkerResult {
  std::uint64_t ops = 0;
  std::uint64_t elapsed_ns = 0;
};

// Repeats op over the worker's shard of [0, samples) until min_ops or min_time.
template <typename Op>
WorkerResult time_shard(std::uint64_t samples, unsigned worker, unsigned workers,
                        std::uint64_t min_ops, std::chrono::nanoseconds min_time, Op& op) {
  WorkerResult result;
  std::uint64_t sink = 0;
  const auto start = Clock::now();
  auto elapsed = [&] { return Clock::now() - start; };
  auto floor_reached = [&] { return result.ops >= min_ops || elapsed() >= min_time; };
  bool done = false;
  while (!done) {
    for (std::uint64_t i = worker; i < samples; i += workers) {
      sink ^= op(i);
      ++result.ops;
      if ((result.ops & 255) == 0 && floor_reached()) {
        done = true;
        break;
      }
    }
    done = done || floor_reached();
  }
  result.elapsed_ns = static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::nanoseconds>(elapsed()).count());
  g_sink.fetch_xor(sink, std::memory_order_relaxed);
  return result;
}

template <typename Op>
BenchCase time_strategy(std::string strategy, int dim_exp, std::uint64_t terms,
                        std::uint64_t samples, const BenchOptions& options, Op op) {
  BenchCase c{std::move(strategy), dim_exp, terms, 0, 0};
  const unsigned workers =
      static_cast<unsigned>(std::clamp<std::uint64_t>(options.threads, 1, samples));
  if (workers == 1) {
    const WorkerResult r = time_shard(samples, 0, 1, options.min_ops, options.min_time, op);
    c.ops = r.ops;
    c.elapsed_ns = r.elapsed_ns;
    return c;
  }
  std::vector<WorkerResult> results(workers);
  {
    std::vector<std::jthread> pool;
    const std::uint64_t per_worker_ops = (options.min_ops + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        Op local = op;
        results[w] = time_shard(samples, w, workers, per_worker_ops, options.min_time, local);
      });
    }
  }
  for (const WorkerResult& r : results) {
    c.ops += r.ops;
    c.elapsed_ns = std::max(c.elapsed_ns, r.elapsed_ns);
  }
  return c;
}

std::uint64_t digest(const SignedBasis& b) {
  return b.index.value() * 2 + (b.sign.negative() ? 1 : 0);
}

std::uint64_t digest(const Element& e) {
  return e.term_count() * 0x9e3779b97f4a7c15ULL ^ e.max_index();
}

std::vector<Element> sample_elements(std::mt19937_64& rng, int exp, std::uint64_t terms,
                                     std::uint64_t count) {
  const std::uint64_t mask = (std::uint64_t{1} << exp) - 1;
  std::vector<Element> out;
  out.reserve(count);
  for (std::uint64_t k = 0; k < count; ++k) {
    std::set<std::uint64_t> support;
    while (support.size() < terms) {
      support.insert(rng() & mask);
    }
    Element e;
    for (const std::uint64_t index : support) {
      e.accumulate(BasisIndex(index), (rng() & 1) != 0 ? -1 : 1);
    }
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace

const BenchCase* BenchReport::find(std::string_view strategy) const noexcept {
  const auto it = std::find_if(cases.begin(), cases.end(),
                               [&](const BenchCase& c) { return c.strategy == strategy; });
  return it == cases.end() ? nullptr : &*it;
}

std::uint64_t seed_from_environment() {
  const char* raw = std::getenv("CDTWIST_SEED");
  if (raw == nullptr || *raw == '\0') {
    return kDefaultBenchSeed;
  }
  char* end = nullptr;
  const unsigned long long value = std::strtoull(raw, &end, 0);
  if (end == raw || *end != '\0') {
    throw std::invalid_argument(std::string("CDTWIST_SEED is not an integer: ") + raw);
  }
  return value;
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> sample_index_pairs(std::uint64_t seed,
                                                                        int max_exp,
                                                                        std::uint64_t samples) {
  std::mt19937_64 rng(seed);
  const std::uint64_t mask = (std::uint64_t{1} << max_exp) - 1;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs(samples);
  for (auto& [p, q] : pairs) {
    p = rng() & mask;
    q = rng() & mask;
  }
  return pairs;
}

BenchReport bench_basis_products(int max_exp, std::uint64_t samples,
                                 const BenchOptions& options) {
  if (max_exp < 1 || max_exp > 20) {
    throw std::invalid_argument("bench_basis_products: max_exp must be in [1, 20]");
  }
  if (samples == 0) {
    throw std::invalid_argument("bench_basis_products: samples must be positive");
  }
  BenchReport report;
  report.seed = options.seed;
  report.environment = host_description();

  const auto pairs = sample_index_pairs(options.seed, max_exp, samples);
  for (const auto& [p, q] : pairs) {
    const auto fast = basis_mul(ProductVariant::P2, BasisIndex(p), BasisIndex(q));
    const auto slow = oracle_basis_mul(ProductVariant::P2, BasisIndex(p), BasisIndex(q));
    if (fast != slow) {
      throw VerificationError("closed form disagrees with oracle at (" + std::to_string(p) +
                              ", " + std::to_string(q) + ")");
    }
  }
  report.verified_samples = pairs.size();

  report.cases.push_back(time_strategy("closed_form", max_exp, 1, samples, options,
                                       [&](std::uint64_t i) {
                                         return digest(basis_mul(ProductVariant::P2,
                                                                 BasisIndex(pairs[i].first),
                                                                 BasisIndex(pairs[i].second)));
                                       }));
  report.cases.push_back(time_strategy("oracle", max_exp, 1, samples, options,
                                       [&](std::uint64_t i) {
                                         return digest(oracle_basis_mul(
                                             ProductVariant::P2, BasisIndex(pairs[i].first),
                                             BasisIndex(pairs[i].second)));
                                       }));
  return report;
}

BenchReport bench_element_mul(int exp, std::uint64_t terms, std::uint64_t samples,
                              const BenchOptions& options) {
  if (exp < 0 || exp > 14) {
    throw std::invalid_argument("bench_element_mul: exp must be in [0, 14]");
  }
  if (terms == 0 || terms > (std::uint64_t{1} << exp)) {
    throw std::invalid_argument("bench_element_mul: terms must be in [1, 2^exp]");
  }
  if (samples == 0) {
    throw std::invalid_argument("bench_element_mul: samples must be positive");
  }
  BenchReport report;
  report.seed = options.seed;
  report.environment = host_description();

  std::mt19937_64 rng(options.seed);
  const auto lhs = sample_elements(rng, exp, terms, samples);
  const auto rhs = sample_elements(rng, exp, terms, samples);
  for (std::uint64_t i = 0; i < samples; ++i) {
    if (mul_twist(lhs[i], rhs[i]) != mul_doubling(ProductVariant::P2, lhs[i], rhs[i])) {
      throw VerificationError("mul_twist disagrees with mul_doubling on sample " +
                              std::to_string(i) + ": " + to_string(lhs[i]) + " * " +
                              to_string(rhs[i]));
    }
  }
  report.verified_samples = samples;

  report.cases.push_back(time_strategy("mul_twist", exp, terms, samples, options,
                                       [&](std::uint64_t i) {
                                         return digest(mul_twist(lhs[i], rhs[i]));
                                       }));
  report.cases.push_back(time_strategy("mul_doubling", exp, terms, samples, options,
                                       [&](std::uint64_t i) {
                                         return digest(mul_doubling(ProductVariant::P2, lhs[i],
                                                                    rhs[i]));
                                       }));
  return report;
}

std::string to_csv(const BenchReport& report) {
  std::string out = "# environment: " + report.environment + "\n";
  out += "# seed: " + std::to_string(report.seed) + "\n";
  out += "# verified_samples: " + std::to_string(report.verified_samples) + "\n";
  out += "strategy,dim_exp,terms,ops,elapsed_ns\n";
  for (const BenchCase& c : report.cases) {
    out += c.strategy + "," + std::to_string(c.dim_exp) + "," + std::to_string(c.terms) + "," +
           std::to_string(c.ops) + "," + std::to_string(c.elapsed_ns) + "\n";
  }
  return out;
}

std::string to_json(const BenchReport& report) {
  nlohmann::json doc;
  doc["environment"] = report.environment;
  doc["seed"] = report.seed;
  doc["verified_samples"] = report.verified_samples;
  doc["cases"] = nlohmann::json::array();
  for (const BenchCase& c : report.cases) {
    doc["cases"].push_back({{"strategy", c.strategy},
                            {"dim_exp", c.dim_exp},
                            {"terms", c.terms},
                            {"ops", c.ops},
                            {"elapsed_ns", c.elapsed_ns},
                            {"ops_per_second", c.ops_per_second()}});
  }
  return doc.dump(2) + "\n";
}

}  // namespace cdtwist
