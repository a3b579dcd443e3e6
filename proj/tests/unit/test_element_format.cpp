#include <random>

#include <doctest.h>

#include "cdtwist/element.hpp"

using namespace cdtwist;

namespace {

Element e(std::uint64_t index, const Scalar& c = 1) { return Element::basis(BasisIndex(index), c); }

std::string parse_error_token(std::string_view text) {
  try {
    parse_element(text);
  } catch (const ParseError& err) {
    return err.token();
  }
  return "<no error>";
}

}  // namespace

TEST_SUITE("element_format") {

TEST_CASE("parse") {
  CHECK(parse_element("3*e0 - 1/2*e5") == e(0, 3) + e(5, Scalar(-1, 2)));
  CHECK(parse_element("e3") == e(3));
  CHECK(parse_element("-e13") == e(13, -1));
  CHECK(parse_element("+e2") == e(2));
  CHECK(parse_element("  e1+e2 ") == e(1) + e(2));
  CHECK(parse_element("e1 +\te2\n- 2 * e7") == e(1) + e(2) + e(7, -2));
  CHECK(parse_element("0").is_zero());
  CHECK(parse_element("e4 - e4").is_zero());
  CHECK(parse_element("2/4*e1") == e(1, Scalar(1, 2)));
  CHECK(parse_element("e9223372036854775807") == e(BasisIndex::kMax));
}

TEST_CASE("parse errors name the offending token") {
  CHECK(parse_error_token("") == "");
  CHECK(parse_error_token("e") == "e");
  CHECK(parse_error_token("e1 e2") == "e2");
  CHECK(parse_error_token("3 e2") == "e2");
  CHECK(parse_error_token("e1 + x7") == "x7");
  CHECK(parse_error_token("1/0*e1") == "1/0");
  CHECK(parse_error_token("1/*e1") == "1/");
  CHECK(parse_error_token("e1 +") == "+");
  CHECK(parse_error_token("e9223372036854775808") == "e9223372036854775808");
  CHECK(parse_error_token("3*") == "*");
  CHECK_THROWS_AS(parse_element("e1 -- e2"), ParseError);
}

TEST_CASE("serialize") {
  CHECK(to_string(Element{}) == "0");
  CHECK(to_string(e(13, -1)) == "-e13");
  CHECK(to_string(e(0, -2)) == "-2*e0");
  CHECK(to_string(e(5, Scalar(-1, 2)) + e(0, 3)) == "3*e0 - 1/2*e5");
  CHECK(to_string(e(2, 3) + e(5, -1)) == "3*e2 - e5");
  CHECK(to_string(e(1) + e(2)) == "e1 + e2");
}

TEST_CASE("serialize then parse is the identity") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> num(-20, 20);
  std::uniform_int_distribution<int> den(1, 9);
  std::uniform_int_distribution<std::uint64_t> index(0, 1 << 20);
  for (int i = 0; i < 500; ++i) {
    Element x;
    const int terms = static_cast<int>(rng() % 6);
    for (int t = 0; t < terms; ++t) {
      Scalar c(num(rng), den(rng));
      c.canonicalize();
      x.accumulate(BasisIndex(index(rng)), c);
    }
    const std::string text = to_string(x);
    CHECK(parse_element(text) == x);
    CHECK(to_string(parse_element(text)) == text);
  }
}

}  // TEST_SUITE
