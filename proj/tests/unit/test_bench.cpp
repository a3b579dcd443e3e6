#include <cstdlib>

#include <doctest.h>
#include <json.hpp>

#include "cdtwist/bench.hpp"

using namespace cdtwist;

namespace {

BenchOptions quick() {
  BenchOptions o;
  o.min_ops = 500;
  o.min_time = std::chrono::milliseconds(20);
  return o;
}

}  // namespace

TEST_SUITE("bench") {

TEST_CASE("argument bounds") {
  CHECK_THROWS_AS(bench_basis_products(0, 10, quick()), std::invalid_argument);
  CHECK_THROWS_AS(bench_basis_products(21, 10, quick()), std::invalid_argument);
  CHECK_THROWS_AS(bench_basis_products(4, 0, quick()), std::invalid_argument);
  CHECK_THROWS_AS(bench_element_mul(-1, 1, 10, quick()), std::invalid_argument);
  CHECK_THROWS_AS(bench_element_mul(15, 1, 10, quick()), std::invalid_argument);
  CHECK_THROWS_AS(bench_element_mul(2, 5, 10, quick()), std::invalid_argument);
  CHECK_THROWS_AS(bench_element_mul(2, 0, 10, quick()), std::invalid_argument);
  CHECK_THROWS_AS(bench_element_mul(2, 1, 0, quick()), std::invalid_argument);
}

TEST_CASE("smallest inputs run") {
  const BenchReport basis = bench_basis_products(1, 10, quick());
  REQUIRE(basis.cases.size() == 2);
  CHECK(basis.find("closed_form") != nullptr);
  CHECK(basis.find("oracle") != nullptr);
  CHECK(basis.find("nope") == nullptr);
  CHECK(basis.verified_samples == 10);
  for (const BenchCase& c : basis.cases) {
    CHECK(c.ops > 0);
    CHECK(c.dim_exp == 1);
  }

  const BenchReport element = bench_element_mul(2, 1, 10, quick());
  REQUIRE(element.cases.size() == 2);
  CHECK(element.find("mul_twist")->terms == 1);
  CHECK(element.find("mul_doubling")->dim_exp == 2);
  CHECK(bench_element_mul(0, 1, 3, quick()).verified_samples == 3);
}

TEST_CASE("samples are reproducible from the seed") {
  const auto a = sample_index_pairs(42, 16, 1000);
  CHECK(a == sample_index_pairs(42, 16, 1000));
  CHECK(a != sample_index_pairs(43, 16, 1000));
  for (const auto& [p, q] : a) {
    CHECK(p < (1u << 16));
    CHECK(q < (1u << 16));
  }
}

TEST_CASE("CDTWIST_SEED") {
  ::unsetenv("CDTWIST_SEED");
  CHECK(seed_from_environment() == kDefaultBenchSeed);
  ::setenv("CDTWIST_SEED", "1234", 1);
  CHECK(seed_from_environment() == 1234);
  ::setenv("CDTWIST_SEED", "0xff", 1);
  CHECK(seed_from_environment() == 255);
  ::setenv("CDTWIST_SEED", "12x", 1);
  CHECK_THROWS_AS(seed_from_environment(), std::invalid_argument);
  ::unsetenv("CDTWIST_SEED");
}

TEST_CASE("element strategies agree before timing") {
  const BenchReport r = bench_element_mul(10, 4, 100, quick());
  CHECK(r.verified_samples == 100);
  BenchOptions threaded = quick();
  threaded.threads = 3;
  CHECK(bench_basis_products(12, 3000, threaded).verified_samples == 3000);
}

TEST_CASE("report formats") {
  BenchReport r;
  r.environment = "test host";
  r.seed = 7;
  r.verified_samples = 3;
  r.cases.push_back({"closed_form", 4, 1, 100, 2000});
  r.cases.push_back({"oracle", 4, 1, 100, 0});
  CHECK(r.cases[0].ops_per_second() == doctest::Approx(5e7));
  CHECK(r.cases[1].ops_per_second() == 0.0);

  CHECK(to_csv(r) ==
        "# environment: test host\n"
        "# seed: 7\n"
        "# verified_samples: 3\n"
        "strategy,dim_exp,terms,ops,elapsed_ns\n"
        "closed_form,4,1,100,2000\n"
        "oracle,4,1,100,0\n");

  const auto doc = nlohmann::json::parse(to_json(r));
  CHECK(doc["seed"] == 7);
  CHECK(doc["environment"] == "test host");
  REQUIRE(doc["cases"].size() == 2);
  CHECK(doc["cases"][0]["strategy"] == "closed_form");
  CHECK(doc["cases"][0]["elapsed_ns"] == 2000);
}

}  // TEST_SUITE
