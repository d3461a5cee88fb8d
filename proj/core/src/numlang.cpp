#include "numera/numlang.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <unordered_map>

#include "numera/error.hpp"

namespace numera {

namespace {

// t_{i} for 0-based i of the infinite sequence (zeros after a finite directive).
Digit directive_digit(const BertrandDirective& t, std::size_t i) {
  if (i < t.preperiod.size()) return t.preperiod[i];
  if (t.finite()) return 0;
  return t.period[(i - t.preperiod.size()) % t.period.size()];
}

std::optional<std::uint32_t> parse_lbonacci(std::string_view name) {
  constexpr std::string_view prefix = "lbonacci:";
  if (!name.starts_with(prefix)) return std::nullopt;
  const std::string_view digits = name.substr(prefix.size());
  std::uint32_t l = 0;
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), l);
  if (ec != std::errc() || ptr != digits.data() + digits.size() || digits.empty()) {
    return std::nullopt;
  }
  return l;
}

std::uint32_t checked_lbonacci(std::string_view name) {
  const auto l = parse_lbonacci(name);
  if (!l || *l < 2) throw InputError("unknown preset '" + std::string(name) + "'");
  return *l;
}

}  // namespace

// Bertrand automata ---------------------------------------------------------

void check_bertrand_directive(const BertrandDirective& t) {
  const std::size_t n = t.length();
  if (n == 0) throw InputError("bertrand directive is empty");
  if (directive_digit(t, 0) == 0) throw InputError("bertrand directive must start with a nonzero digit");
  if (t.finite()) {
    if (t.preperiod.back() == 0) throw InputError("finite bertrand directive must end with a nonzero digit");
    // The single digit 1 is the expansion of 1 in base 1, which is no base at all.
    if (n == 1 && t.preperiod[0] == 1) throw InputError("finite bertrand directive '1' does not define a base > 1");
  } else if (std::all_of(t.period.begin(), t.period.end(), [](Digit d) { return d == 0; })) {
    throw InputError("bertrand directive period is all zeros; give the finite expansion instead");
  }

  // Both sequences are periodic from index n on, so 2n digits decide the comparison.
  const std::size_t horizon = 2 * n;
  for (std::size_t s = 1; s < n; ++s) {
    int cmp = 0;
    for (std::size_t i = 0; i < horizon && cmp == 0; ++i) {
      const Digit shifted = directive_digit(t, s + i);
      const Digit original = directive_digit(t, i);
      if (shifted != original) cmp = shifted < original ? -1 : 1;
    }
    if (cmp > 0 || (cmp == 0 && t.finite())) {
      throw InputError("bertrand directive is not admissible: shift by " + std::to_string(s) +
                       " is not below the sequence");
    }
  }
}

Dfa build_bertrand_automaton(const BertrandDirective& t) {
  check_bertrand_directive(t);
  const std::size_t n = t.length();
  Digit max_digit = 0;
  for (std::size_t i = 0; i < n; ++i) max_digit = std::max(max_digit, directive_digit(t, i));

  Dfa a(n, max_digit + 1, 0);
  for (State j = 0; j < n; ++j) {
    a.set_final(j);
    const Digit tj = directive_digit(t, j);
    for (Digit d = 0; d < tj; ++d) a.set_transition(j, d, 0);
    if (j + 1 < n) {
      a.set_transition(j, tj, j + 1);
    } else if (!t.finite()) {
      a.set_transition(j, tj, static_cast<State>(t.preperiod.size()));
    }
  }
  return minimize(a);
}

// Presets -------------------------------------------------------------------

bool is_preset(std::string_view name) {
  if (name == "fibonacci" || name == "sqrt2plus1") return true;
  const auto l = parse_lbonacci(name);
  return l && *l >= 2;
}

NumerationSystem preset_system(std::string_view name) {
  if (name == "fibonacci") return fibonacci_system();
  if (name == "sqrt2plus1") return sqrt2plus1_system();
  return lbonacci_system(checked_lbonacci(name));
}

Dfa build_preset_automaton(std::string_view name) {
  if (name == "sqrt2plus1") {
    Dfa a(2, 3, 0);
    a.set_final(0);
    a.set_final(1);
    a.set_transition(0, 0, 0);
    a.set_transition(0, 1, 0);
    a.set_transition(0, 2, 1);
    a.set_transition(1, 0, 0);
    return a;
  }
  const std::uint32_t l = name == "fibonacci" ? 2 : checked_lbonacci(name);
  Dfa a(l, 2, 0);
  for (State j = 0; j < l; ++j) {
    a.set_final(j);
    a.set_transition(j, 0, 0);
    if (j + 1 < l) a.set_transition(j, 1, j + 1);
  }
  return a;
}

// Oracle verification -------------------------------------------------------

NumerationCheck verify_numeration_automaton(const Dfa& a, const NumerationSystem& system,
                                            std::size_t max_length) {
  if (a.alphabet_size() != system.alphabet_bound()) {
    throw AlphabetMismatch("automaton alphabet " + std::to_string(a.alphabet_size()) +
                           " differs from system alphabet " +
                           std::to_string(system.alphabet_bound()));
  }
  const auto small = small_terms(system, max_length + 1);
  auto greedy = [&](const Word& w) {
    if (!small) return is_greedy(system, w);
    const std::size_t len = w.size();
    std::uint64_t suffix = 0;
    for (std::size_t j = 1; j <= len; ++j) {
      suffix += static_cast<std::uint64_t>(w.digits[len - j]) * (*small)[j - 1];
      if (suffix >= (*small)[j]) return false;
    }
    return true;
  };

  NumerationCheck out;
  for (std::size_t len = 0; len <= max_length && out.ok; ++len) {
    for_each_word(a.alphabet_size(), len, [&](const Word& w) {
      if (a.accepts(w) != greedy(w)) {
        out = {false, w};
        return false;
      }
      return true;
    });
  }
  return out;
}

// Hypotheses ----------------------------------------------------------------

bool HypothesisReport::in_c_u(State q) const {
  return std::binary_search(c_u_states.begin(), c_u_states.end(), q);
}

HypothesisReport check_hypotheses(const Dfa& input) {
  HypothesisReport r;
  const Dfa a = trim(input);
  if (a.state_count() != input.state_count()) {
    r.notes.push_back("input was not trim; state ids refer to the trimmed automaton");
  }
  const std::size_t n = a.state_count();
  const std::uint32_t k = a.alphabet_size();
  const SccDecomposition s = scc(a);
  const std::uint32_t cu = s.component[a.initial()];
  r.c_u_states = s.members(cu);
  r.c_u_non_trivial = s.non_trivial[cu];
  r.non_trivial_components = s.non_trivial_count();
  r.h1_holds = r.c_u_non_trivial && r.non_trivial_components == 1;
  r.strongly_connected = r.c_u_non_trivial && r.c_u_states.size() == n;

  // Any further non-trivial component must be a pure 0-cycle.
  for (std::uint32_t c = 0; c < s.component_count(); ++c) {
    if (c == cu || !s.non_trivial[c]) continue;
    for (State q : s.members(c)) {
      std::size_t internal = 0;
      bool zero_only = true;
      for (Digit d = 0; d < k; ++d) {
        const auto t = a.next(q, d);
        if (t && s.component[*t] == c) {
          ++internal;
          zero_only = zero_only && d == 0;
        }
      }
      if (internal != 1 || !zero_only) r.other_components_zero_cycles = false;
    }
  }
  if (r.non_trivial_components <= 1) {
    r.notes.push_back("no non-trivial component besides C_U; 0-cycle clause holds vacuously");
  }
  r.notes.push_back("h2: a run leaving the partial automaton counts as ending outside C_U");

  // h2 by breadth-first search over pairs; id n stands for a dead run.
  const auto dead = static_cast<State>(n);
  auto step = [&](State q, Digit d) -> State {
    if (q == dead) return dead;
    const std::int32_t t = a.raw_next(q, d);
    return t < 0 ? dead : static_cast<State>(t);
  };
  auto inside = [&](State q) { return q != dead && r.in_c_u(q); };
  r.h2_holds = true;
  for (std::size_t i = 0; i < r.c_u_states.size(); ++i) {
    for (std::size_t j = i + 1; j < r.c_u_states.size(); ++j) {
      const State p = r.c_u_states[i];
      const State q = r.c_u_states[j];
      struct Node {
        State x, y;
        std::int64_t parent;
        Digit digit;
      };
      std::vector<Node> nodes{{p, q, -1, 0}};
      std::unordered_map<std::uint64_t, bool> seen{{static_cast<std::uint64_t>(p) * (n + 1) + q, true}};
      std::optional<std::size_t> hit;
      for (std::size_t idx = 0; idx < nodes.size() && !hit; ++idx) {
        const Node cur = nodes[idx];
        if (inside(cur.x) != inside(cur.y)) {
          hit = idx;
          break;
        }
        if (cur.x == cur.y) continue;
        for (Digit d = 0; d < k; ++d) {
          const State nx = step(cur.x, d);
          const State ny = step(cur.y, d);
          if (seen.emplace(static_cast<std::uint64_t>(nx) * (n + 1) + ny, true).second) {
            nodes.push_back({nx, ny, static_cast<std::int64_t>(idx), d});
          }
        }
      }
      if (!hit) {
        r.h2_holds = false;
        r.h2_failures.emplace_back(p, q);
        continue;
      }
      Word w;
      for (auto at = static_cast<std::int64_t>(*hit); nodes[static_cast<std::size_t>(at)].parent >= 0;
           at = nodes[static_cast<std::size_t>(at)].parent) {
        w.digits.push_back(nodes[static_cast<std::size_t>(at)].digit);
      }
      std::reverse(w.digits.begin(), w.digits.end());
      r.h2_witnesses.push_back({p, q, std::move(w)});
    }
  }

  // Zero paths back to the initial state, tested up to n + 1 steps.
  const std::size_t horizon = n + 1;
  r.zero_return_holds = true;
  for (State p : r.c_u_states) {
    std::vector<State> path{p};
    for (std::size_t i = 0; i < horizon; ++i) path.push_back(step(path.back(), 0));
    ZeroReturn z{p, std::nullopt};
    if (path[horizon] == a.initial() && path[horizon - 1] == a.initial()) {
      std::size_t first = horizon;
      while (first > 0 && path[first - 1] == a.initial()) --first;
      z.bound = first;
    } else {
      r.zero_return_holds = false;
    }
    r.zero_return_bounds.push_back(z);
  }

  if (k >= 2) {
    const State t = step(a.initial(), 1);
    r.one_step_in_cu = inside(t);
  }
  return r;
}

}  // namespace numera
