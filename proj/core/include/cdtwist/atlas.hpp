#pragma once

// Dense twist-sign tables and their bitmap renderings.
//
// Rows are indexed by p and columns by q. In the PGM rendering +1 is gray
// (192) and -1 is white (255), p increasing downward, q rightward.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cdtwist/basis.hpp"

namespace cdtwist {

inline constexpr std::uint8_t kGrayPlus = 192;
inline constexpr std::uint8_t kWhiteMinus = 255;
inline constexpr int kMinTableExponent = 1;
inline constexpr int kMaxTableExponent = 12;

class OmegaTable {
 public:
  OmegaTable(ProductVariant variant, int n);

  [[nodiscard]] ProductVariant variant() const noexcept { return variant_; }
  [[nodiscard]] int exponent() const noexcept { return n_; }
  [[nodiscard]] std::uint64_t size() const noexcept { return std::uint64_t{1} << n_; }

  [[nodiscard]] Sign at(std::uint64_t p, std::uint64_t q) const noexcept {
    return Sign::from_parity(minus_[p * size() + q]);
  }
  void set(std::uint64_t p, std::uint64_t q, Sign s) noexcept {
    minus_[p * size() + q] = s.negative() ? 1 : 0;
  }

  /// Row-major cells, 1 where the sign is -1.
  [[nodiscard]] std::span<const std::uint8_t> cells() const noexcept { return minus_; }

 private:
  ProductVariant variant_;
  int n_;
  std::vector<std::uint8_t> minus_;
};

/// Cell (p, q) = omega(v, p, q) for p, q < 2^n. Requires 1 <= n <= 12, else
/// throws std::invalid_argument. Rows are filled by up to `threads` workers
/// (0 picks the hardware concurrency).
OmegaTable build_table(ProductVariant v, int n, unsigned threads = 0);

/// Binary graymap: "P5\n<w> <h>\n255\n" followed by one byte per cell.
std::vector<std::uint8_t> render_pgm(const OmegaTable& table);

/// One line per row, '+' for +1 and '-' for -1.
std::string render_txt(const OmegaTable& table);

/// Lower-case hex SHA-256 of arbitrary bytes.
std::string sha256_hex(std::span<const std::uint8_t> bytes);

/// sha256_hex of render_pgm(table).
std::string table_checksum(const OmegaTable& table);

/// One line of an atlas.sums manifest: "<variant> <n> <digest>".
struct ChecksumEntry {
  ProductVariant variant;
  int n;
  std::string digest;

  friend bool operator==(const ChecksumEntry&, const ChecksumEntry&) = default;
};

std::vector<ChecksumEntry> parse_checksums(std::string_view text);
std::string format_checksums(std::span<const ChecksumEntry> entries);

}  // namespace cdtwist
