#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "numera/numeration.hpp"

namespace numera {

using State = std::uint32_t;
inline constexpr std::int32_t kNoTransition = -1;

/// Partial deterministic automaton over the digit alphabet {0, ..., alphabet_size-1}.
/// A missing transition rejects.
class Dfa {
 public:
  Dfa() : Dfa(1, 1) {}
  Dfa(std::size_t state_count, std::uint32_t alphabet_size, State initial = 0);

  [[nodiscard]] std::size_t state_count() const noexcept { return finals_.size(); }
  [[nodiscard]] std::uint32_t alphabet_size() const noexcept { return alphabet_; }
  [[nodiscard]] State initial() const noexcept { return initial_; }
  [[nodiscard]] bool is_final(State q) const { return finals_.at(q) != 0; }
  [[nodiscard]] std::size_t final_count() const;

  /// Target of (q, d) or nullopt when undefined.
  [[nodiscard]] std::optional<State> next(State q, Digit d) const {
    const std::int32_t t = table_[index(q, d)];
    if (t < 0) return std::nullopt;
    return static_cast<State>(t);
  }
  /// Raw table lookup; kNoTransition when undefined. No bounds checks beyond debug asserts.
  [[nodiscard]] std::int32_t raw_next(State q, Digit d) const noexcept {
    return table_[static_cast<std::size_t>(q) * alphabet_ + d];
  }

  [[nodiscard]] std::optional<State> run(const Word& w) const { return run_from(initial_, w); }
  [[nodiscard]] std::optional<State> run_from(State q, const Word& w) const;
  [[nodiscard]] bool accepts(const Word& w) const;

  void set_transition(State from, Digit d, State to);
  void clear_transition(State from, Digit d);
  void set_final(State q, bool final = true);
  void set_initial(State q);

  /// Same automaton with a different initial state.
  [[nodiscard]] Dfa rerooted(State q) const;

  friend bool operator==(const Dfa&, const Dfa&) = default;

 private:
  [[nodiscard]] std::size_t index(State q, Digit d) const;

  std::uint32_t alphabet_ = 1;
  State initial_ = 0;
  std::vector<std::int32_t> table_;
  std::vector<char> finals_;
};

/// Nondeterministic automaton; multiple initial states allowed.
class Nfa {
 public:
  Nfa(std::size_t state_count, std::uint32_t alphabet_size);

  [[nodiscard]] std::size_t state_count() const noexcept { return finals_.size(); }
  [[nodiscard]] std::uint32_t alphabet_size() const noexcept { return alphabet_; }
  [[nodiscard]] const std::vector<State>& initials() const noexcept { return initials_; }
  [[nodiscard]] bool is_final(State q) const { return finals_.at(q) != 0; }
  [[nodiscard]] const std::vector<State>& targets(State q, Digit d) const {
    return transitions_.at(static_cast<std::size_t>(q) * alphabet_ + d);
  }

  void add_transition(State from, Digit d, State to);
  void add_initial(State q);
  void set_final(State q, bool final = true);

  [[nodiscard]] bool accepts(const Word& w) const;

 private:
  std::uint32_t alphabet_;
  std::vector<std::vector<State>> transitions_;
  std::vector<State> initials_;
  std::vector<char> finals_;
};

struct SccDecomposition {
  /// Component id per state. Ids are in reverse topological order of the
  /// condensation (Tarjan order): edges only go from higher to lower or equal ids.
  std::vector<std::uint32_t> component;
  /// Per component: has an internal edge (more than one state, or a self-loop).
  std::vector<bool> non_trivial;

  [[nodiscard]] std::size_t component_count() const noexcept { return non_trivial.size(); }
  [[nodiscard]] std::size_t non_trivial_count() const;
  [[nodiscard]] std::vector<State> members(std::uint32_t id) const;
};

struct EquivalenceResult {
  bool equivalent = true;
  /// Shortest (then radix-least) word accepted by exactly one automaton.
  std::optional<Word> counterexample;

  explicit operator bool() const noexcept { return equivalent; }
};

/// Keeps states that are accessible and co-accessible. Surviving states
/// keep their relative order. Returns the one-state empty automaton when
/// the language is empty.
Dfa trim(const Dfa& a);
[[nodiscard]] bool is_trim(const Dfa& a);

/// One non-final initial state, no transitions.
Dfa empty_language_dfa(std::uint32_t alphabet_size);

/// Trim minimal partial DFA (Hopcroft on the sink-completed automaton).
Dfa minimize(const Dfa& a);

/// Trim minimal partial DFA via double reversal (Brzozowski).
Dfa minimize_brzozowski(const Dfa& a);

Nfa reverse(const Dfa& a);
Nfa reverse(const Nfa& a);
/// Subset construction; only reachable non-empty subsets are built.
Dfa determinize(const Nfa& n);
/// Product automaton; a transition exists only where both operands define one.
Dfa intersect(const Dfa& a, const Dfa& b);

EquivalenceResult equivalent(const Dfa& a, const Dfa& b);

SccDecomposition scc(const Dfa& a);

/// States of trim(a) that accept infinitely many words, as ids of `a`.
std::vector<State> states_with_infinite_right_language(const Dfa& a);

/// Reachable part renumbered in BFS order from the initial state, digits ascending.
Dfa canonical_form(const Dfa& a);

/// Graphviz rendering of canonical_form(a). The format is fixed:
///
///   digraph automaton {
///     rankdir=LR;
///     node [shape=circle];
///     init [shape=point, style=invis];
///     init -> q0;
///     q0 [shape=doublecircle];          (one line per final state, ascending)
///     q0 -> q1 [label="1"];             (source ascending, then target ascending)
///   }
///
/// Digits sharing a source and target are joined by commas in ascending order.
std::string to_dot(const Dfa& a);

/// Transition table of canonical_form(a): header "state final" followed by one
/// column per digit; rows "r<i> <0|1> <target...>", with "-" for undefined.
std::string to_table(const Dfa& a);

/// All accepted words of length <= max_length in radix order.
std::vector<Word> enumerate_accepted(const Dfa& a, std::size_t max_length);

/// Number of accepted words of each exact length 0..max_length.
std::vector<BigInt> count_accepted_by_length(const Dfa& a, std::size_t max_length);

}  // namespace numera
