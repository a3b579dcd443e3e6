#include "cdtwist/element.hpp"

#include <array>
#include <bit>
#include <vector>

namespace cdtwist {

Element Element::basis(BasisIndex index, const Scalar& coefficient) {
  Element e;
  e.accumulate(index, coefficient);
  return e;
}

void Element::accumulate(BasisIndex index, const Scalar& coefficient) {
  if (sgn(coefficient) == 0) {
    return;
  }
  auto [it, inserted] = terms_.try_emplace(index.value(), coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (sgn(it->second) == 0) {
      terms_.erase(it);
    }
  }
}

Scalar Element::coefficient(BasisIndex index) const {
  const auto it = terms_.find(index.value());
  return it == terms_.end() ? Scalar(0) : it->second;
}

bool Element::is_real() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0);
}

std::uint64_t Element::max_index() const noexcept {
  return terms_.empty() ? 0 : terms_.rbegin()->first;
}

Element Element::operator-() const {
  Element out = *this;
  for (auto& [index, coefficient] : out.terms_) {
    coefficient = -coefficient;
  }
  return out;
}

Element& Element::operator+=(const Element& other) {
  for (const auto& [index, coefficient] : other.terms_) {
    accumulate(BasisIndex(index), coefficient);
  }
  return *this;
}

Element& Element::operator-=(const Element& other) {
  for (const auto& [index, coefficient] : other.terms_) {
    accumulate(BasisIndex(index), -coefficient);
  }
  return *this;
}

Element& Element::operator*=(const Scalar& factor) {
  if (sgn(factor) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [index, coefficient] : terms_) {
    coefficient *= factor;
  }
  return *this;
}

Element add(const Element& x, const Element& y) { return x + y; }

Element conjugate(const Element& x) {
  Element out;
  for (const auto& [index, coefficient] : x) {
    out.accumulate(BasisIndex(index), index == 0 ? Scalar(coefficient) : Scalar(-coefficient));
  }
  return out;
}

Element shuffle_pair(const Element& a, const Element& b) {
  constexpr std::uint64_t kMaxHalf = BasisIndex::kMax >> 1;
  Element out;
  for (const auto& [index, coefficient] : a) {
    if (index > kMaxHalf) {
      throw std::overflow_error("shuffle_pair: index " + std::to_string(index) +
                                " overflows when doubled");
    }
    out.accumulate(BasisIndex(index << 1), coefficient);
  }
  for (const auto& [index, coefficient] : b) {
    if (index > kMaxHalf) {
      throw std::overflow_error("shuffle_pair: index " + std::to_string(index) +
                                " overflows when doubled");
    }
    out.accumulate(BasisIndex((index << 1) | 1), coefficient);
  }
  return out;
}

std::pair<Element, Element> split(const Element& x) {
  std::pair<Element, Element> out;
  for (const auto& [index, coefficient] : x) {
    Element& half = (index & 1) == 0 ? out.first : out.second;
    half.accumulate(BasisIndex(index >> 1), coefficient);
  }
  return out;
}

Element mul_doubling(ProductVariant v, const Element& x, const Element& y) {
  if (x.is_zero() || y.is_zero()) {
    return {};
  }
  if (x.is_real() && y.is_real()) {
    return Element::real(x.coefficient(BasisIndex(0)) * y.coefficient(BasisIndex(0)));
  }

  auto [a, b] = split(x);
  auto [c, d] = split(y);
  const std::array<const Element*, 4> operands = {&a, &b, &c, &d};
  std::array<std::optional<Element>, 4> conjugates;
  auto fetch = [&](Operand slot, bool conjugated) -> const Element& {
    const auto i = static_cast<std::size_t>(slot);
    if (!conjugated) {
      return *operands[i];
    }
    if (!conjugates[i]) {
      conjugates[i] = conjugate(*operands[i]);
    }
    return *conjugates[i];
  };

  std::array<Element, 2> halves;
  for (const DoublingTerm& term : doubling_formula(v)) {
    const Element& lhs = fetch(term.lhs, term.lhs_conjugated);
    const Element& rhs = fetch(term.rhs, term.rhs_conjugated);
    if (lhs.is_zero() || rhs.is_zero()) {
      continue;
    }
    Element product = mul_doubling(v, lhs, rhs);
    if (term.coefficient < 0) {
      halves[term.component] -= product;
    } else {
      halves[term.component] += product;
    }
  }
  return shuffle_pair(halves[0], halves[1]);
}

Element mul_twist(const Element& x, const Element& y) {
  Element out;
  Scalar product;
  for (const auto& [p, xp] : x) {
    for (const auto& [q, yq] : y) {
      const BasisIndex ip(p);
      const BasisIndex iq(q);
      product = xp * yq;
      if (omega2(ip, iq).negative()) {
        product = -product;
      }
      out.accumulate(xor_index(ip, iq), product);
    }
  }
  return out;
}

Scalar norm_sq(const Element& x) {
  Scalar total = 0;
  for (const auto& [index, coefficient] : x) {
    total += coefficient * coefficient;
  }
  return total;
}

std::optional<std::pair<Element, Element>> find_zero_divisor(std::uint64_t dim) {
  if (dim == 0 || dim > 16 || !std::has_single_bit(dim)) {
    throw std::invalid_argument("find_zero_divisor: dim must be 1, 2, 4, 8 or 16");
  }

  std::vector<Element> candidates;
  for (std::uint64_t lo = 0; lo < dim; ++lo) {
    for (std::uint64_t hi = lo + 1; hi < dim; ++hi) {
      for (const int s : {+1, -1}) {
        Element e = Element::basis(BasisIndex(lo));
        e.accumulate(BasisIndex(hi), s);
        candidates.push_back(std::move(e));
      }
    }
  }
  for (const Element& x : candidates) {
    for (const Element& y : candidates) {
      if (mul_twist(x, y).is_zero()) {
        return std::pair{x, y};
      }
    }
  }
  return std::nullopt;
}

}  // namespace cdtwist
