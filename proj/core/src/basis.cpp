#include "cdtwist/basis.hpp"

#include <algorithm>
#include <bit>
#include <cctype>

namespace cdtwist {

namespace {

using enum Operand;

// (a,b)(c,d) for each variant, first component terms then second.
constexpr std::array<std::array<DoublingTerm, 4>, 8> kFormulas = {{
    // P0: (ca - b*d, da* + bc)
    {{{0, +1, C, false, A, false}, {0, -1, B, true, D, false},
      {1, +1, D, false, A, true}, {1, +1, B, false, C, false}}},
    // P1: (ca - db*, a*d + cb)
    {{{0, +1, C, false, A, false}, {0, -1, D, false, B, true},
      {1, +1, A, true, D, false}, {1, +1, C, false, B, false}}},
    // P2: (ac - b*d, da* + bc)
    {{{0, +1, A, false, C, false}, {0, -1, B, true, D, false},
      {1, +1, D, false, A, true}, {1, +1, B, false, C, false}}},
    // P3: (ac - db*, a*d + cb)
    {{{0, +1, A, false, C, false}, {0, -1, D, false, B, true},
      {1, +1, A, true, D, false}, {1, +1, C, false, B, false}}},
    // T0: (ca - bd*, ad + c*b)
    {{{0, +1, C, false, A, false}, {0, -1, B, false, D, true},
      {1, +1, A, false, D, false}, {1, +1, C, true, B, false}}},
    // T1: (ca - d*b, da + bc*)
    {{{0, +1, C, false, A, false}, {0, -1, D, true, B, false},
      {1, +1, D, false, A, false}, {1, +1, B, false, C, true}}},
    // T2: (ac - bd*, ad + c*b)
    {{{0, +1, A, false, C, false}, {0, -1, B, false, D, true},
      {1, +1, A, false, D, false}, {1, +1, C, true, B, false}}},
    // T3: (ac - d*b, da + bc*)
    {{{0, +1, A, false, C, false}, {0, -1, D, true, B, false},
      {1, +1, D, false, A, false}, {1, +1, B, false, C, true}}},
}};

constexpr std::array<std::string_view, 8> kVariantNames = {"P0", "P1", "P2", "P3",
                                                           "T0", "T1", "T2", "T3"};

// Conjugating a basis vector negates it unless it is e_0.
constexpr Sign conjugation_sign(std::uint64_t index) noexcept {
  return index == 0 ? Sign::plus() : Sign::minus();
}

}  // namespace

std::string to_string(Sign s) { return s.negative() ? "-1" : "+1"; }

std::string to_string(const SignedBasis& b) {
  return (b.sign.negative() ? "-e" : "+e") + std::to_string(b.index.value());
}

std::string_view to_string(ProductVariant v) noexcept {
  return kVariantNames[static_cast<std::size_t>(v)];
}

std::optional<ProductVariant> parse_variant(std::string_view text) noexcept {
  if (text.size() != 2) {
    return std::nullopt;
  }
  const auto upper = static_cast<char>(std::toupper(static_cast<unsigned char>(text[0])));
  for (std::size_t i = 0; i < kVariantNames.size(); ++i) {
    if (kVariantNames[i][0] == upper && kVariantNames[i][1] == text[1]) {
      return kAllVariants[i];
    }
  }
  return std::nullopt;
}

std::span<const DoublingTerm, 4> doubling_formula(ProductVariant v) noexcept {
  return kFormulas[static_cast<std::size_t>(v)];
}

int block_exponent(BasisIndex p) {
  if (p.value() == 0) {
    throw std::domain_error("block_exponent: index 0 has no block");
  }
  return std::bit_width(p.value()) - 1;
}

Sign omega2(BasisIndex p, BasisIndex q) noexcept {
  const std::uint64_t lo = std::min(p.value(), q.value());
  const std::uint64_t hi = std::max(p.value(), q.value());
  if (lo == 0) {
    return Sign::plus();
  }
  if (lo == hi) {
    return Sign::minus();
  }
  const int n = std::bit_width(lo) - 1;
  // Same dyadic block gives +1; otherwise bit n of the larger index decides.
  const Sign ordered = (hi >> (n + 1)) == 0 ? Sign::plus() : Sign::from_parity(hi >> n);
  return p.value() < q.value() ? ordered : -ordered;
}

SignedBasis oracle_basis_mul(ProductVariant v, BasisIndex p, BasisIndex q) noexcept {
  // Each level splits e_x = (e_{x/2}, 0) or (0, e_{x/2}). With one nonzero slot
  // per operand exactly one formula term survives, so the recursion is a chain:
  // accumulate that term's sign and descend into its operand pair.
  const auto formula = doubling_formula(v);
  Sign sign = Sign::plus();
  std::uint64_t x = p.value();
  std::uint64_t y = q.value();
  while ((x | y) != 0) {
    const bool x_odd = (x & 1) != 0;
    const bool y_odd = (y & 1) != 0;
    const std::uint64_t x_half = x >> 1;
    const std::uint64_t y_half = y >> 1;
    auto present = [&](Operand slot) {
      switch (slot) {
        case A: return !x_odd;
        case B: return x_odd;
        case C: return !y_odd;
        case D: return y_odd;
      }
      return false;
    };
    auto value_of = [&](Operand slot) {
      return (slot == A || slot == B) ? x_half : y_half;
    };
    for (const DoublingTerm& term : formula) {
      if (!present(term.lhs) || !present(term.rhs)) {
        continue;
      }
      const std::uint64_t lhs = value_of(term.lhs);
      const std::uint64_t rhs = value_of(term.rhs);
      if (term.coefficient < 0) {
        sign = -sign;
      }
      if (term.lhs_conjugated) {
        sign = sign * conjugation_sign(lhs);
      }
      if (term.rhs_conjugated) {
        sign = sign * conjugation_sign(rhs);
      }
      x = lhs;
      y = rhs;
      break;
    }
  }
  return {sign, xor_index(p, q)};
}

Sign omega(ProductVariant v, BasisIndex p, BasisIndex q) noexcept {
  switch (v) {
    case ProductVariant::P2:
      return omega2(p, q);
    case ProductVariant::T2:
      return omega2(q, p);
    default:
      return oracle_basis_mul(v, p, q).sign;
  }
}

SignedBasis basis_mul(ProductVariant v, BasisIndex p, BasisIndex q) noexcept {
  return {omega(v, p, q), xor_index(p, q)};
}

}  // namespace cdtwist
