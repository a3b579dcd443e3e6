#include <bit>
#include <fstream>
#include <sstream>

#include <doctest.h>

#include "cdtwist/atlas.hpp"

using namespace cdtwist;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST_SUITE("atlas") {

TEST_CASE("exponent bounds") {
  for (const int bad : {0, -1, 13}) {
    CHECK_THROWS_AS(build_table(ProductVariant::P2, bad), std::invalid_argument);
  }
  CHECK(build_table(ProductVariant::P2, 1).size() == 2);
}

TEST_CASE("n = 1 renders to exact bytes") {
  const auto pgm = render_pgm(build_table(ProductVariant::P2, 1));
  const std::string header = "P5\n2 2\n255\n";
  std::vector<std::uint8_t> expected(header.begin(), header.end());
  expected.insert(expected.end(), {192, 192, 192, 255});
  CHECK(pgm == expected);
  CHECK(render_txt(build_table(ProductVariant::P2, 1)) == "++\n+-\n");
}

TEST_CASE("P2 table at n = 7 follows the sign laws") {
  const OmegaTable t = build_table(ProductVariant::P2, 7);
  const std::uint64_t size = t.size();
  for (std::uint64_t k = 0; k < size; ++k) {
    CHECK(t.at(0, k) == Sign::plus());
    CHECK(t.at(k, 0) == Sign::plus());
    if (k > 0) {
      CHECK(t.at(k, k) == Sign::minus());
    }
  }
  for (std::uint64_t p = 1; p < size; ++p) {
    for (std::uint64_t q = 1; q < size; ++q) {
      if (p == q) {
        continue;
      }
      REQUIRE(t.at(p, q) == -t.at(q, p));
      const std::uint64_t lo = std::min(p, q);
      const std::uint64_t hi = std::max(p, q);
      const int n = std::bit_width(lo) - 1;
      const Sign ordered = (hi >> (n + 1)) == 0 ? Sign::plus() : Sign::from_parity(hi >> n);
      REQUIRE(t.at(lo, hi) == ordered);
    }
  }
}

TEST_CASE("cells agree with omega2 and the oracle") {
  for (int n = 1; n <= 8; ++n) {
    const OmegaTable t = build_table(ProductVariant::P2, n);
    for (std::uint64_t p = 0; p < t.size(); ++p) {
      for (std::uint64_t q = 0; q < t.size(); ++q) {
        REQUIRE(t.at(p, q) == omega2(BasisIndex(p), BasisIndex(q)));
      }
    }
  }
  const OmegaTable t3 = build_table(ProductVariant::P3, 6);
  for (std::uint64_t p = 0; p < t3.size(); ++p) {
    for (std::uint64_t q = 0; q < t3.size(); ++q) {
      REQUIRE(t3.at(p, q) ==
              oracle_basis_mul(ProductVariant::P3, BasisIndex(p), BasisIndex(q)).sign);
    }
  }
}

TEST_CASE("rendering is deterministic and thread-count invariant") {
  const auto one = render_pgm(build_table(ProductVariant::P2, 9, 1));
  CHECK(render_pgm(build_table(ProductVariant::P2, 9, 1)) == one);
  CHECK(render_pgm(build_table(ProductVariant::P2, 9, 3)) == one);
  CHECK(render_pgm(build_table(ProductVariant::P2, 9, 0)) == one);
}

TEST_CASE("checksums match the frozen manifest") {
  const auto golden = parse_checksums(read_file(std::string(CDTWIST_GOLDEN_DIR) + "/atlas.sums"));
  REQUIRE(golden.size() == 4);
  for (const ChecksumEntry& entry : golden) {
    CAPTURE(to_string(entry.variant));
    CAPTURE(entry.n);
    CHECK(table_checksum(build_table(entry.variant, entry.n)) == entry.digest);
  }
  CHECK(table_checksum(build_table(ProductVariant::P2, 10)) !=
        table_checksum(build_table(ProductVariant::P3, 10)));
}

TEST_CASE("sha256_hex") {
  CHECK(sha256_hex({}) == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  const std::string abc = "abc";
  const std::vector<std::uint8_t> bytes(abc.begin(), abc.end());
  CHECK(sha256_hex(bytes) == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("txt rendering") {
  const std::string txt = render_txt(build_table(ProductVariant::P2, 2));
  CHECK(txt == "++++\n+-+-\n+--+\n++--\n");
}

TEST_CASE("checksum manifest format") {
  const std::vector<ChecksumEntry> entries{
      {ProductVariant::P2, 5, std::string(64, 'a')},
      {ProductVariant::T3, 12, std::string(64, '0')},
  };
  const std::string text = format_checksums(entries);
  CHECK(text == "P2 5 " + std::string(64, 'a') + "\nT3 12 " + std::string(64, '0') + "\n");
  CHECK(parse_checksums("# header\n\n" + text) == entries);
  CHECK_THROWS_AS(parse_checksums("P9 5 " + std::string(64, 'a')), std::invalid_argument);
  CHECK_THROWS_AS(parse_checksums("P2 5 abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_checksums("P2 x " + std::string(64, 'a')), std::invalid_argument);
}

}  // TEST_SUITE
