#pragma once

// Twist-tree traversal for omega2.
//
// The bits of p and q are interleaved into doublets (p_i, q_i), most
// significant first, and fed to a finite automaton starting at node C. The
// final node's label decides the sign: "-1" and "-D" mean -1, anything else +1.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cdtwist/basis.hpp"

namespace cdtwist {

/// Two-bit instruction: high bit from p, low bit from q. 0b10 means p_i = 1, q_i = 0.
using Doublet = std::uint8_t;

/// Left-padded bit pairs of (p, q), most significant first. Never empty.
struct DoubletSequence {
  std::vector<Doublet> doublets;

  /// Formats as comma-separated pairs, e.g. "11,10,11".
  [[nodiscard]] std::string to_string() const;
  friend bool operator==(const DoubletSequence&, const DoubletSequence&) = default;
};

/// Pads the shorter binary expansion with leading zeros; (0, 0) yields "00".
DoubletSequence interleave_bits(BasisIndex p, BasisIndex q);

/// Deterministic, total automaton over doublets. States are identified by
/// label; the start state is "C". Labels beginning with '-' are negative
/// terminals. "+1" and "-1" must be absorbing.
class TwistAutomaton {
 public:
  using State = std::uint8_t;

  /// Parses "state doublet -> state" lines ('#' comments and blank lines are
  /// ignored; a Unicode arrow is also accepted). Throws std::invalid_argument
  /// when the table is not total, names no start state, or lets +1/-1 escape.
  static TwistAutomaton parse(std::string_view text);

  /// The reconstructed omega2 tree shipped with the library.
  static const TwistAutomaton& shipped();

  [[nodiscard]] State start() const noexcept { return start_; }
  [[nodiscard]] State next(State s, Doublet d) const noexcept {
    return transitions_[static_cast<std::size_t>(s) * 4 + (d & 3)];
  }
  [[nodiscard]] const std::string& label(State s) const { return labels_.at(s); }
  [[nodiscard]] bool negative(State s) const { return labels_.at(s).starts_with('-'); }
  [[nodiscard]] std::size_t state_count() const noexcept { return labels_.size(); }
  [[nodiscard]] std::optional<State> find(std::string_view label) const;

  /// Returns a copy with one transition redirected.
  [[nodiscard]] TwistAutomaton with_transition(std::string_view from, Doublet d,
                                               std::string_view to) const;

  /// One line per transition, states in declaration order, doublets 00..11.
  [[nodiscard]] std::string serialize() const;

  friend bool operator==(const TwistAutomaton&, const TwistAutomaton&) = default;

 private:
  friend std::vector<TwistAutomaton> fit_automaton(std::string_view partial, int max_exp);

  TwistAutomaton() = default;
  // Resolves the start state and checks that +1/-1 are absorbing.
  void finalize();

  std::vector<std::string> labels_;
  std::vector<State> transitions_;
  State start_ = 0;
};

struct Traversal {
  Sign sign = Sign::plus();
  /// Visited labels, beginning with the start state.
  std::vector<std::string> path;
};

Sign traverse(const TwistAutomaton& automaton, BasisIndex p, BasisIndex q);
Traversal trace(const TwistAutomaton& automaton, BasisIndex p, BasisIndex q);

/// traverse with the shipped automaton.
Sign traverse(BasisIndex p, BasisIndex q);

struct AutomatonReport {
  std::uint64_t checked = 0;
  struct Mismatch {
    std::uint64_t p;
    std::uint64_t q;
    Sign expected;
    Sign actual;
  };
  std::optional<Mismatch> first_mismatch;

  [[nodiscard]] bool ok() const noexcept { return !first_mismatch; }
};

/// Compares traverse against omega2 for all p, q < 2^max_exp in row-major order.
AutomatonReport validate_automaton(const TwistAutomaton& automaton, int max_exp = 12);

/// Completes a partial table whose unknown successors are written "?". Every
/// completion over the declared states is tried; those agreeing with omega2 on
/// all p, q < 2^max_exp, on both minimal-length and 00-padded doublet
/// sequences, are returned in enumeration order.
std::vector<TwistAutomaton> fit_automaton(std::string_view partial, int max_exp = 6);

/// Transitions read off the tree description; unknown successors are "?".
std::string_view stated_transitions() noexcept;

}  // namespace cdtwist
