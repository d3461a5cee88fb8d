#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "numera/automata.hpp"
#include "numera/numeration.hpp"

namespace numera {

/// Digit sequence t_1 t_2 ... driving the canonical automaton of a Bertrand
/// system. With an empty `period` the sequence is the finite expansion
/// t_1..t_n (t_n >= 1) and digit t_n is forbidden in the last state; otherwise
/// it is the eventually periodic sequence preperiod (period)^omega.
struct BertrandDirective {
  std::vector<Digit> preperiod;
  std::vector<Digit> period;

  [[nodiscard]] bool finite() const noexcept { return period.empty(); }
  [[nodiscard]] std::size_t length() const noexcept { return preperiod.size() + period.size(); }
};

/// Throws InputError naming the first shift that exceeds the sequence.
void check_bertrand_directive(const BertrandDirective& directive);

/// Canonical automaton for the directive, minimized and canonically numbered.
Dfa build_bertrand_automaton(const BertrandDirective& directive);

/// "fibonacci", "lbonacci:<l>" (l >= 2) and "sqrt2plus1".
[[nodiscard]] bool is_preset(std::string_view name);
NumerationSystem preset_system(std::string_view name);
Dfa build_preset_automaton(std::string_view name);

struct NumerationCheck {
  bool ok = true;
  /// Shortest, then radix-least, word on which the automaton and the greedy predicate disagree.
  std::optional<Word> counterexample;

  explicit operator bool() const noexcept { return ok; }
};

/// Compares acceptance with is_greedy on every word of length <= max_length.
NumerationCheck verify_numeration_automaton(const Dfa& a, const NumerationSystem& system,
                                            std::size_t max_length);

struct H2Witness {
  State p = 0;
  State q = 0;
  Word word;
};

struct ZeroReturn {
  State state = 0;
  /// Smallest N with delta(state, 0^n) = initial for every tested n >= N.
  std::optional<std::size_t> bound;
};

/// Structural hypotheses on a numeration automaton.
///
/// C_U is the strongly connected component containing the initial state.
/// h1 holds when C_U is the only non-trivial component; states outside it
/// then accept finitely many words. For h2 a run that leaves the (partial)
/// automaton counts as ending outside C_U.
struct HypothesisReport {
  bool h1_holds = false;
  bool strongly_connected = false;
  std::size_t non_trivial_components = 0;
  std::vector<State> c_u_states;
  bool c_u_non_trivial = false;

  bool h2_holds = false;
  std::vector<H2Witness> h2_witnesses;
  std::vector<std::pair<State, State>> h2_failures;

  std::vector<ZeroReturn> zero_return_bounds;
  bool zero_return_holds = false;
  bool one_step_in_cu = false;
  /// Every non-trivial component other than C_U is a cycle of 0-edges.
  bool other_components_zero_cycles = true;

  std::vector<std::string> notes;

  [[nodiscard]] bool in_c_u(State q) const;
};

HypothesisReport check_hypotheses(const Dfa& a);

}  // namespace numera
