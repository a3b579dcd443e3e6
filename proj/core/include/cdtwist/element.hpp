#pragma once

// Sparse elements of a Cayley-Dickson algebra with exact rational coefficients.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include <gmpxx.h>

#include "cdtwist/basis.hpp"

namespace cdtwist {

using Scalar = mpq_class;

/// Finite linear combination of basis vectors in canonical form: no zero
/// coefficients are stored and terms iterate in ascending index order.
class Element {
 public:
  using Terms = std::map<std::uint64_t, Scalar>;
  using const_iterator = Terms::const_iterator;

  Element() = default;

  static Element basis(BasisIndex index, const Scalar& coefficient = 1);
  static Element real(const Scalar& value) { return basis(BasisIndex(0), value); }

  /// Adds coefficient * e_index in place, dropping the term if it cancels.
  void accumulate(BasisIndex index, const Scalar& coefficient);

  [[nodiscard]] Scalar coefficient(BasisIndex index) const;
  [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }
  /// True when the support is a subset of {0}.
  [[nodiscard]] bool is_real() const noexcept;
  [[nodiscard]] std::size_t term_count() const noexcept { return terms_.size(); }
  /// Largest index in the support; 0 for the zero element.
  [[nodiscard]] std::uint64_t max_index() const noexcept;

  [[nodiscard]] const_iterator begin() const noexcept { return terms_.begin(); }
  [[nodiscard]] const_iterator end() const noexcept { return terms_.end(); }

  Element operator-() const;
  Element& operator+=(const Element& other);
  Element& operator-=(const Element& other);
  Element& operator*=(const Scalar& factor);

  friend Element operator+(Element x, const Element& y) { return x += y; }
  friend Element operator-(Element x, const Element& y) { return x -= y; }
  friend Element operator*(const Scalar& s, Element x) { return x *= s; }
  friend bool operator==(const Element&, const Element&) = default;

 private:
  Terms terms_;
};

Element add(const Element& x, const Element& y);

/// Negates every coordinate except the real one.
Element conjugate(const Element& x);

/// The pair (a, b) as one element: coordinate 2k from a_k, 2k+1 from b_k.
/// Throws std::overflow_error when a doubled index leaves the BasisIndex range.
Element shuffle_pair(const Element& a, const Element& b);

/// Inverse of shuffle_pair.
std::pair<Element, Element> split(const Element& x);

/// Product under variant v by recursive pair doubling. Bilinear; the base case
/// multiplies two real elements.
Element mul_doubling(ProductVariant v, const Element& x, const Element& y);

/// P2 product by bilinear expansion over the closed-form twist:
/// sum over p, q of x_p y_q omega2(p, q) e_{p xor q}.
Element mul_twist(const Element& x, const Element& y);

/// Sum of squared coordinates.
Scalar norm_sq(const Element& x);

/// Searches x = e_a +- e_b, y = e_c +- e_d (a < b, c < d, all below dim) for
/// mul_twist(x, y) = 0. dim must be one of 1, 2, 4, 8, 16; otherwise throws
/// std::invalid_argument.
std::optional<std::pair<Element, Element>> find_zero_divisor(std::uint64_t dim);

// ---------------------------------------------------------------------------
// Text format: terms joined by + / -, each "[coeff*]e<index>" where coeff is
// an integer or n/d. "0" is the zero element.

class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& message, std::string token, std::size_t offset);

  [[nodiscard]] const std::string& token() const noexcept { return token_; }
  [[nodiscard]] std::size_t offset() const noexcept { return offset_; }

 private:
  std::string token_;
  std::size_t offset_;
};

Element parse_element(std::string_view text);

/// Canonical serialization, ascending by index, e.g. "3*e0 - 1/2*e5", "-e13", "0".
std::string to_string(const Element& x);

}  // namespace cdtwist
