#include "cdtwist/treewalk.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

namespace cdtwist {

namespace {

// Known transitions of the omega2 tree. C is the root; T is reached once q
// holds the higher top bit, -D when both top bits coincide, D when p does.
constexpr std::string_view kStatedTable = R"(C 00 -> ?
C 01 -> T
C 10 -> ?
C 11 -> -D
T 00 -> T
T 01 -> T
T 10 -> +1
T 11 -> -1
D 00 -> ?
D 01 -> ?
D 10 -> ?
D 11 -> ?
-D 00 -> -D
-D 01 -> +1
-D 10 -> ?
-D 11 -> -D
+1 00 -> +1
+1 01 -> +1
+1 10 -> +1
+1 11 -> +1
-1 00 -> -1
-1 01 -> -1
-1 10 -> -1
-1 11 -> -1
)";

// The unique completion of kStatedTable found by fit_automaton; frozen here
// and regression-checked by validate_automaton.
constexpr std::string_view kShippedTable = R"(C 00 -> C
C 01 -> T
C 10 -> D
C 11 -> -D
T 00 -> T
T 01 -> T
T 10 -> +1
T 11 -> -1
D 00 -> D
D 01 -> -1
D 10 -> D
D 11 -> +1
-D 00 -> -D
-D 01 -> +1
-D 10 -> -1
-D 11 -> -D
+1 00 -> +1
+1 01 -> +1
+1 10 -> +1
+1 11 -> +1
-1 00 -> -1
-1 01 -> -1
-1 10 -> -1
-1 11 -> -1
)";

constexpr std::array<std::string_view, 4> kDoubletNames = {"00", "01", "10", "11"};
constexpr std::uint8_t kUnknown = 0xff;

struct RawTable {
  std::vector<std::string> labels;
  std::vector<std::uint8_t> transitions;  // kUnknown for "?"
};

std::uint8_t intern(RawTable& table, std::string_view label) {
  const auto it = std::find(table.labels.begin(), table.labels.end(), label);
  if (it != table.labels.end()) {
    return static_cast<std::uint8_t>(it - table.labels.begin());
  }
  if (table.labels.size() >= kUnknown) {
    throw std::invalid_argument("automaton: too many states");
  }
  table.labels.emplace_back(label);
  table.transitions.resize(table.labels.size() * 4, kUnknown);
  return static_cast<std::uint8_t>(table.labels.size() - 1);
}

RawTable parse_raw(std::string_view text, bool allow_unknown) {
  struct Row {
    int line_no;
    std::uint8_t src;
    std::size_t doublet;
    std::string to;
  };
  RawTable table;
  std::vector<Row> rows;
  std::vector<bool> seen;
  std::istringstream lines{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    for (const std::string_view arrow : {"→", "->"}) {
      if (const auto at = line.find(arrow); at != std::string::npos) {
        line.replace(at, arrow.size(), " -> ");
        break;
      }
    }
    std::istringstream fields(line);
    std::string from, doublet, arrow, to, extra;
    if (!(fields >> from)) {
      continue;
    }
    const auto fail = [&](const std::string& why) {
      return std::invalid_argument("automaton line " + std::to_string(line_no) + ": " + why);
    };
    if (!(fields >> doublet >> arrow >> to) || arrow != "->" || (fields >> extra)) {
      throw fail("expected 'state doublet -> state'");
    }
    const auto d = std::find(kDoubletNames.begin(), kDoubletNames.end(), doublet);
    if (d == kDoubletNames.end()) {
      throw fail("bad doublet '" + doublet + "'");
    }
    if (to == "?" && !allow_unknown) {
      throw fail("unknown successor not allowed");
    }
    // States are numbered by first appearance as a source.
    const std::uint8_t src = intern(table, from);
    rows.push_back({line_no, src, static_cast<std::size_t>(d - kDoubletNames.begin()), to});
  }
  for (const Row& row : rows) {
    const std::uint8_t dst = row.to == "?" ? kUnknown : intern(table, row.to);
    const std::size_t slot = static_cast<std::size_t>(row.src) * 4 + row.doublet;
    seen.resize(table.transitions.size(), false);
    if (seen[slot]) {
      throw std::invalid_argument("automaton line " + std::to_string(row.line_no) +
                                  ": duplicate transition for " + table.labels[row.src] + " " +
                                  std::string(kDoubletNames[row.doublet]));
    }
    seen[slot] = true;
    table.transitions[slot] = dst;
  }
  seen.resize(table.transitions.size(), false);
  for (std::size_t slot = 0; slot < seen.size(); ++slot) {
    if (!seen[slot]) {
      throw std::invalid_argument("automaton: missing transition for " +
                                  table.labels[slot / 4] + " " +
                                  std::string(kDoubletNames[slot % 4]));
    }
  }
  return table;
}

std::size_t doublet_count(std::uint64_t p, std::uint64_t q) {
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::bit_width(p | q)));
}

template <typename Visit>
TwistAutomaton::State run(const TwistAutomaton& a, std::uint64_t p, std::uint64_t q,
                          std::size_t length, Visit&& visit) {
  TwistAutomaton::State s = a.start();
  for (std::size_t i = length; i-- > 0;) {
    const auto d = static_cast<Doublet>(((i < 64 ? (p >> i) & 1 : 0) << 1) |
                                        (i < 64 ? (q >> i) & 1 : 0));
    s = a.next(s, d);
    visit(s);
  }
  return s;
}

Sign classify(const TwistAutomaton& a, TwistAutomaton::State s) {
  return a.negative(s) ? Sign::minus() : Sign::plus();
}

}  // namespace

std::string DoubletSequence::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < doublets.size(); ++i) {
    if (i != 0) {
      out += ',';
    }
    out += kDoubletNames[doublets[i] & 3];
  }
  return out;
}

DoubletSequence interleave_bits(BasisIndex p, BasisIndex q) {
  const std::uint64_t pv = p.value();
  const std::uint64_t qv = q.value();
  DoubletSequence seq;
  const std::size_t length = doublet_count(pv, qv);
  seq.doublets.reserve(length);
  for (std::size_t i = length; i-- > 0;) {
    seq.doublets.push_back(static_cast<Doublet>((((pv >> i) & 1) << 1) | ((qv >> i) & 1)));
  }
  return seq;
}

TwistAutomaton TwistAutomaton::parse(std::string_view text) {
  RawTable raw = parse_raw(text, false);
  TwistAutomaton a;
  a.labels_ = std::move(raw.labels);
  a.transitions_ = std::move(raw.transitions);
  a.finalize();
  return a;
}

void TwistAutomaton::finalize() {
  const auto start = find("C");
  if (!start) {
    throw std::invalid_argument("automaton: no start state 'C'");
  }
  start_ = *start;
  for (const std::string_view terminal : {"+1", "-1"}) {
    const auto s = find(terminal);
    if (!s) {
      continue;
    }
    for (Doublet d = 0; d < 4; ++d) {
      if (next(*s, d) != *s) {
        throw std::invalid_argument("automaton: state " + std::string(terminal) +
                                    " must be absorbing");
      }
    }
  }
}

const TwistAutomaton& TwistAutomaton::shipped() {
  static const TwistAutomaton automaton = parse(kShippedTable);
  return automaton;
}

std::optional<TwistAutomaton::State> TwistAutomaton::find(std::string_view label) const {
  const auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) {
    return std::nullopt;
  }
  return static_cast<State>(it - labels_.begin());
}

TwistAutomaton TwistAutomaton::with_transition(std::string_view from, Doublet d,
                                               std::string_view to) const {
  const auto src = find(from);
  const auto dst = find(to);
  if (!src || !dst) {
    throw std::invalid_argument("automaton: unknown state in with_transition");
  }
  TwistAutomaton copy = *this;
  copy.transitions_[static_cast<std::size_t>(*src) * 4 + (d & 3)] = *dst;
  return copy;
}

std::string TwistAutomaton::serialize() const {
  std::string out;
  for (std::size_t s = 0; s < labels_.size(); ++s) {
    for (std::size_t d = 0; d < 4; ++d) {
      out += labels_[s];
      out += ' ';
      out += kDoubletNames[d];
      out += " -> ";
      out += labels_[transitions_[s * 4 + d]];
      out += '\n';
    }
  }
  return out;
}

Sign traverse(const TwistAutomaton& automaton, BasisIndex p, BasisIndex q) {
  const auto end = run(automaton, p.value(), q.value(), doublet_count(p.value(), q.value()),
                       [](TwistAutomaton::State) {});
  return classify(automaton, end);
}

Traversal trace(const TwistAutomaton& automaton, BasisIndex p, BasisIndex q) {
  Traversal out;
  out.path.push_back(automaton.label(automaton.start()));
  const auto end =
      run(automaton, p.value(), q.value(), doublet_count(p.value(), q.value()),
          [&](TwistAutomaton::State s) { out.path.push_back(automaton.label(s)); });
  out.sign = classify(automaton, end);
  return out;
}

Sign traverse(BasisIndex p, BasisIndex q) { return traverse(TwistAutomaton::shipped(), p, q); }

AutomatonReport validate_automaton(const TwistAutomaton& automaton, int max_exp) {
  if (max_exp < 0 || max_exp > 16) {
    throw std::invalid_argument("validate_automaton: max_exp must be in [0, 16]");
  }
  AutomatonReport report;
  const std::uint64_t limit = std::uint64_t{1} << max_exp;
  for (std::uint64_t p = 0; p < limit; ++p) {
    for (std::uint64_t q = 0; q < limit; ++q) {
      const BasisIndex ip(p);
      const BasisIndex iq(q);
      const Sign expected = omega2(ip, iq);
      const Sign actual = traverse(automaton, ip, iq);
      ++report.checked;
      if (expected != actual) {
        report.first_mismatch = AutomatonReport::Mismatch{p, q, expected, actual};
        return report;
      }
    }
  }
  return report;
}

std::vector<TwistAutomaton> fit_automaton(std::string_view partial, int max_exp) {
  if (max_exp < 1 || max_exp > 10) {
    throw std::invalid_argument("fit_automaton: max_exp must be in [1, 10]");
  }
  const RawTable raw = parse_raw(partial, true);
  std::vector<std::size_t> holes;
  for (std::size_t slot = 0; slot < raw.transitions.size(); ++slot) {
    if (raw.transitions[slot] == kUnknown) {
      holes.push_back(slot);
    }
  }

  TwistAutomaton candidate;
  candidate.labels_ = raw.labels;
  candidate.transitions_ = raw.transitions;
  const auto state_count = static_cast<std::uint8_t>(raw.labels.size());
  constexpr std::size_t kPadding = 2;
  const std::uint64_t limit = std::uint64_t{1} << max_exp;

  auto agrees = [&](const TwistAutomaton& a) {
    for (std::uint64_t p = 0; p < limit; ++p) {
      for (std::uint64_t q = 0; q < limit; ++q) {
        const Sign expected = omega2(BasisIndex(p), BasisIndex(q));
        const std::size_t length = doublet_count(p, q);
        for (const std::size_t pad : {std::size_t{0}, kPadding}) {
          const auto end = run(a, p, q, length + pad, [](TwistAutomaton::State) {});
          if (classify(a, end) != expected) {
            return false;
          }
        }
      }
    }
    return true;
  };

  std::vector<TwistAutomaton> fits;
  std::vector<std::uint8_t> choice(holes.size(), 0);
  while (true) {
    for (std::size_t h = 0; h < holes.size(); ++h) {
      candidate.transitions_[holes[h]] = choice[h];
    }
    bool well_formed = true;
    try {
      candidate.finalize();
    } catch (const std::invalid_argument&) {
      well_formed = false;
    }
    if (well_formed && agrees(candidate)) {
      fits.push_back(candidate);
    }
    // Odometer over hole assignments, last hole varies fastest.
    std::size_t h = holes.size();
    while (h > 0) {
      --h;
      if (++choice[h] < state_count) {
        break;
      }
      choice[h] = 0;
      if (h == 0) {
        return fits;
      }
    }
    if (holes.empty()) {
      return fits;
    }
  }
}

std::string_view stated_transitions() noexcept { return kStatedTable; }

}  // namespace cdtwist
