#pragma once

// Basis-level arithmetic for Cayley-Dickson algebras in the shuffle basis.
//
// Basis vectors e_p are indexed by non-negative integers. The shuffle basis
// satisfies e_0 = 1, e_{2k} = (e_k, 0) and e_{2k+1} = (0, e_k), so splitting
// an index into (index >> 1, index & 1) is one level of pair doubling.
// Every product of two basis vectors is +-e_{p xor q}; the sign is the twist.

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cdtwist {

/// Index of a shuffle-basis vector e_p, bounded to 63 bits.
class BasisIndex {
 public:
  static constexpr std::uint64_t kMax = (std::uint64_t{1} << 63) - 1;

  constexpr BasisIndex() = default;

  /// Throws std::out_of_range when value exceeds kMax.
  constexpr explicit BasisIndex(std::uint64_t value) : value_(value) {
    if (value > kMax) {
      throw std::out_of_range("basis index exceeds 2^63 - 1");
    }
  }

  [[nodiscard]] constexpr std::uint64_t value() const noexcept { return value_; }

  friend constexpr auto operator<=>(BasisIndex, BasisIndex) = default;

 private:
  std::uint64_t value_ = 0;
};

/// An element of {+1, -1}.
class Sign {
 public:
  [[nodiscard]] static constexpr Sign plus() noexcept { return Sign(1); }
  [[nodiscard]] static constexpr Sign minus() noexcept { return Sign(-1); }

  /// Sign from a parity bit: 0 -> +1, 1 -> -1.
  [[nodiscard]] static constexpr Sign from_parity(std::uint64_t bit) noexcept {
    return (bit & 1) != 0 ? minus() : plus();
  }

  [[nodiscard]] constexpr int value() const noexcept { return value_; }
  [[nodiscard]] constexpr bool negative() const noexcept { return value_ < 0; }

  constexpr Sign operator-() const noexcept { return Sign(-value_); }
  friend constexpr Sign operator*(Sign a, Sign b) noexcept {
    return Sign(a.value_ * b.value_);
  }
  friend constexpr bool operator==(Sign, Sign) = default;

 private:
  constexpr explicit Sign(int v) noexcept : value_(static_cast<std::int8_t>(v)) {}
  std::int8_t value_ = 1;
};

/// Formats as "+1" / "-1".
std::string to_string(Sign s);

/// Exactly +e_index or -e_index.
struct SignedBasis {
  Sign sign = Sign::plus();
  BasisIndex index;

  friend constexpr bool operator==(const SignedBasis&, const SignedBasis&) = default;
};

/// Formats with an explicit sign, e.g. "+e20" or "-e13".
std::string to_string(const SignedBasis& b);

// ---------------------------------------------------------------------------
// Doubling products

/// The eight Cayley-Dickson doubling products. Tk is the transpose of Pk:
/// Pk(e_p, e_q) = Tk(e_q, e_p).
enum class ProductVariant : std::uint8_t { P0, P1, P2, P3, T0, T1, T2, T3 };

inline constexpr std::array<ProductVariant, 8> kAllVariants = {
    ProductVariant::P0, ProductVariant::P1, ProductVariant::P2, ProductVariant::P3,
    ProductVariant::T0, ProductVariant::T1, ProductVariant::T2, ProductVariant::T3};

[[nodiscard]] constexpr ProductVariant transpose_of(ProductVariant v) noexcept {
  const auto raw = static_cast<std::uint8_t>(v);
  return static_cast<ProductVariant>(raw < 4 ? raw + 4 : raw - 4);
}

std::string_view to_string(ProductVariant v) noexcept;

/// Accepts "P0".."P3" and "T0".."T3" (case-insensitive).
std::optional<ProductVariant> parse_variant(std::string_view text) noexcept;

/// Operand slot in (a,b)(c,d).
enum class Operand : std::uint8_t { A, B, C, D };

/// One signed bilinear term of a doubling formula, e.g. "-b*d" in the first
/// component of P2 is {0, -1, B, true, D, false}.
struct DoublingTerm {
  std::uint8_t component;  // 0 = first pair slot, 1 = second
  std::int8_t coefficient; // +1 or -1
  Operand lhs;
  bool lhs_conjugated;
  Operand rhs;
  bool rhs_conjugated;
};

/// The four terms of variant v's formula, two per output component.
std::span<const DoublingTerm, 4> doubling_formula(ProductVariant v) noexcept;

// ---------------------------------------------------------------------------
// Index arithmetic and twists

[[nodiscard]] constexpr BasisIndex xor_index(BasisIndex p, BasisIndex q) noexcept {
  return BasisIndex(p.value() ^ q.value());
}

/// floor(log2 p): the N with 2^N <= p < 2^(N+1). Throws std::domain_error for p = 0.
int block_exponent(BasisIndex p);

/// Closed-form twist of P2. Constant time.
Sign omega2(BasisIndex p, BasisIndex q) noexcept;

/// e_p * e_q evaluated by recursive pair doubling under variant v.
/// Independent of the closed form; cost is linear in the bit length of max(p, q).
SignedBasis oracle_basis_mul(ProductVariant v, BasisIndex p, BasisIndex q) noexcept;

/// Twist of variant v. P2 and T2 use the closed form; other variants use the oracle.
Sign omega(ProductVariant v, BasisIndex p, BasisIndex q) noexcept;

/// e_p * e_q = omega(v, p, q) e_{p xor q}.
SignedBasis basis_mul(ProductVariant v, BasisIndex p, BasisIndex q) noexcept;

}  // namespace cdtwist
