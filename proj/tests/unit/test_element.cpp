#include <random>

#include <doctest.h>

#include "cdtwist/element.hpp"
#include "dense_oracle.hpp"

using namespace cdtwist;

namespace {

Element e(std::uint64_t index, const Scalar& c = 1) { return Element::basis(BasisIndex(index), c); }

struct ElementGen {
  std::mt19937_64 rng;

  explicit ElementGen(std::uint64_t seed) : rng(seed) {}

  // Up to `terms` entries below `limit`, coefficients n/d with |n| <= 6, d <= 3.
  Element operator()(std::uint64_t limit, std::uint64_t terms, bool integral = false) {
    std::uniform_int_distribution<std::uint64_t> index(0, limit - 1);
    std::uniform_int_distribution<int> num(-6, 6);
    std::uniform_int_distribution<int> den(1, integral ? 1 : 3);
    Element x;
    for (std::uint64_t t = 0; t < terms; ++t) {
      Scalar c(num(rng), den(rng));
      c.canonicalize();
      x.accumulate(BasisIndex(index(rng)), c);
    }
    return x;
  }
};

testing::Dense to_dense(const Element& x, std::size_t dim) {
  testing::Dense out(dim, 0);
  for (const auto& [index, c] : x) {
    REQUIRE(c.get_den() == 1);
    out.at(index) = c.get_num().get_si();
  }
  return out;
}

}  // namespace

TEST_SUITE("element") {

TEST_CASE("canonical form") {
  Element x;
  CHECK(x.is_zero());
  CHECK(x.term_count() == 0);
  x.accumulate(BasisIndex(4), 2);
  x.accumulate(BasisIndex(1), Scalar(1, 2));
  x.accumulate(BasisIndex(4), -2);
  CHECK(x == e(1, Scalar(1, 2)));
  x.accumulate(BasisIndex(9), 0);
  CHECK(x.term_count() == 1);

  const Element y = e(7) + e(2) + e(5);
  std::vector<std::uint64_t> order;
  for (const auto& [index, c] : y) {
    order.push_back(index);
  }
  CHECK(order == std::vector<std::uint64_t>{2, 5, 7});
  CHECK(y.max_index() == 7);
}

TEST_CASE("add") {
  CHECK(add(e(1), e(2)) == e(1) + e(2));
  CHECK(add(e(1), e(2)).term_count() == 2);
  CHECK(add(e(1), e(1, -1)).is_zero());
  CHECK(add(e(0, 2) + e(3), e(3)) == e(0, 2) + e(3, 2));
}

TEST_CASE("conjugate") {
  CHECK(conjugate(e(0)) == e(0));
  for (std::uint64_t p : {1ULL, 6ULL, 1023ULL}) {
    CHECK(conjugate(e(p)) == e(p, -1));
  }
  CHECK(conjugate(e(0, 3) + e(5, 2)) == e(0, 3) + e(5, -2));
  ElementGen gen(7);
  for (int i = 0; i < 100; ++i) {
    const Element x = gen(512, 6);
    CHECK(conjugate(conjugate(x)) == x);
  }
}

TEST_CASE("shuffle_pair and split") {
  for (std::uint64_t k : {0ULL, 1ULL, 6ULL, 400ULL}) {
    CHECK(shuffle_pair(e(k), Element{}) == e(2 * k));
    CHECK(shuffle_pair(Element{}, e(k)) == e(2 * k + 1));
    CHECK(split(e(2 * k)) == std::pair{e(k), Element{}});
    CHECK(split(e(2 * k + 1)) == std::pair{Element{}, e(k)});
  }
  CHECK(shuffle_pair(Element{}, Element{}).is_zero());
  CHECK(split(Element{}) == std::pair{Element{}, Element{}});
  CHECK_THROWS_AS(shuffle_pair(e(1ULL << 62), Element{}), std::overflow_error);
  CHECK_NOTHROW(shuffle_pair(e((1ULL << 62) - 1), Element{}));

  ElementGen gen(11);
  for (int i = 0; i < 200; ++i) {
    const Element x = gen(1 << 12, 8);
    const auto [a, b] = split(x);
    CHECK(shuffle_pair(a, b) == x);
    CHECK(split(shuffle_pair(a, b)) == std::pair{a, b});
    // (a, b)* = (a*, -b)
    CHECK(conjugate(shuffle_pair(a, b)) == shuffle_pair(conjugate(a), -b));
  }
}

TEST_CASE("mul_doubling worked values") {
  CHECK(mul_doubling(ProductVariant::P2, e(3), e(14)) == e(13, -1));
  ElementGen gen(3);
  for (const ProductVariant v : kAllVariants) {
    const Element y = gen(64, 5);
    CHECK(mul_doubling(v, e(0), y) == y);
    CHECK(mul_doubling(v, y, e(0)) == y);
    CHECK(mul_doubling(v, Element{}, y).is_zero());
  }
  // (1 + e1)^2 = 1 + 2 e1 + e1^2 = 2 e1, since e1^2 = -1.
  const Element one_plus_e1 = e(0) + e(1);
  CHECK(mul_doubling(ProductVariant::P2, one_plus_e1, one_plus_e1) == e(1, 2));
  CHECK(mul_doubling(ProductVariant::P2, e(0, Scalar(1, 2)), e(0, 4)) == e(0, 2));
}

TEST_CASE("mul_doubling matches the dense reference") {
  ElementGen gen(5);
  for (const ProductVariant v : kAllVariants) {
    CAPTURE(to_string(v));
    for (int i = 0; i < 60; ++i) {
      const Element x = gen(32, 6, true);
      const Element y = gen(32, 6, true);
      const auto expected = testing::dense_mul(v, to_dense(x, 32), to_dense(y, 32));
      CHECK(to_dense(mul_doubling(v, x, y), 32) == expected);
    }
  }
}

TEST_CASE("mul_twist worked values") {
  CHECK(mul_twist(e(35), e(55)) == e(20));
  CHECK(mul_twist(e(51), e(12)) == e(63, -1));
  CHECK(mul_twist(e(3), e(14)) == e(13, -1));
  CHECK(mul_twist(Element{}, e(4)).is_zero());
}

TEST_CASE("mul_twist equals mul_doubling(P2)") {
  for (std::uint64_t p = 0; p < 256; ++p) {
    for (std::uint64_t q = 0; q < 256; ++q) {
      if (mul_twist(e(p), e(q)) != mul_doubling(ProductVariant::P2, e(p), e(q))) {
        FAIL_CHECK("basis mismatch at (" << p << ", " << q << ")");
      }
    }
  }
  ElementGen gen(17);
  for (int i = 0; i < 1000; ++i) {
    const Element x = gen(1 << 10, 5);
    const Element y = gen(1 << 10, 5);
    const Element expected = mul_doubling(ProductVariant::P2, x, y);
    if (mul_twist(x, y) != expected) {
      FAIL_CHECK(to_string(x) << " * " << to_string(y));
    }
  }
}

TEST_CASE("bilinearity") {
  ElementGen gen(23);
  for (int i = 0; i < 200; ++i) {
    const Element x = gen(256, 4);
    const Element x2 = gen(256, 4);
    const Element y = gen(256, 4);
    const Element y2 = gen(256, 4);
    CHECK(mul_twist(x + x2, y) == mul_twist(x, y) + mul_twist(x2, y));
    CHECK(mul_twist(x, y + y2) == mul_twist(x, y) + mul_twist(x, y2));
    const Scalar s(3, 7);
    CHECK(mul_twist(s * x, y) == s * mul_twist(x, y));
  }
}

TEST_CASE("anticommutativity on basis vectors") {
  for (std::uint64_t p = 1; p < 64; ++p) {
    for (std::uint64_t q = 1; q < 64; ++q) {
      if (p != q) {
        CHECK(mul_twist(e(p), e(q)) == -mul_twist(e(q), e(p)));
      }
    }
  }
}

TEST_CASE("norm_sq") {
  CHECK(norm_sq(e(9)) == 1);
  CHECK(norm_sq(Element{}) == 0);
  CHECK(norm_sq(e(0) + e(1) + e(2) + e(3)) == 4);
  CHECK(norm_sq(e(4, Scalar(1, 2)) + e(5, -3)) == Scalar(37, 4));
}

TEST_CASE("norm composition holds through dimension 4") {
  ElementGen gen(29);
  for (const std::uint64_t dim : {1ULL, 2ULL, 4ULL}) {
    for (int i = 0; i < 300; ++i) {
      const Element x = gen(dim, dim);
      const Element y = gen(dim, dim);
      CHECK(norm_sq(mul_twist(x, y)) == norm_sq(x) * norm_sq(y));
    }
  }
}

TEST_CASE("P2 twist at dimension 8 has zero divisors") {
  // Closed form: e1e4 = e5, e1e7 = -e6, e2e4 = e6, e2e7 = -e5.
  const Element x = e(1) + e(2);
  const Element y = e(4) + e(7);
  CHECK(mul_twist(x, y).is_zero());
  CHECK(mul_doubling(ProductVariant::P2, x, y).is_zero());
  CHECK(norm_sq(mul_twist(x, y)) != norm_sq(x) * norm_sq(y));

  // The standard product P3 does compose at this level.
  ElementGen gen(31);
  for (int i = 0; i < 100; ++i) {
    const Element a = gen(8, 8);
    const Element b = gen(8, 8);
    CHECK(norm_sq(mul_doubling(ProductVariant::P3, a, b)) == norm_sq(a) * norm_sq(b));
  }
}

TEST_CASE("find_zero_divisor") {
  CHECK_FALSE(find_zero_divisor(1).has_value());
  CHECK_FALSE(find_zero_divisor(2).has_value());
  CHECK_FALSE(find_zero_divisor(4).has_value());

  const auto eight = find_zero_divisor(8);
  REQUIRE(eight.has_value());
  CHECK(eight->first == e(1) + e(2));
  CHECK(eight->second == e(4) + e(7));

  const auto sixteen = find_zero_divisor(16);
  REQUIRE(sixteen.has_value());
  const auto& [x, y] = *sixteen;
  CHECK_FALSE(x.is_zero());
  CHECK_FALSE(y.is_zero());
  CHECK(mul_doubling(ProductVariant::P2, x, y).is_zero());

  for (const std::uint64_t bad : {0ULL, 3ULL, 12ULL, 32ULL}) {
    CHECK_THROWS_AS(find_zero_divisor(bad), std::invalid_argument);
  }
}

}  // TEST_SUITE
