#include "numera/automata.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>
#include <utility>

#include "numera/error.hpp"

namespace numera {

namespace {

struct VectorHash {
  std::size_t operator()(const std::vector<State>& v) const noexcept {
    std::size_t h = v.size() * 0x9e3779b97f4a7c15ULL;
    for (State s : v) h ^= s + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

void require_same_alphabet(std::uint32_t a, std::uint32_t b) {
  if (a != b) {
    throw AlphabetMismatch("alphabet sizes differ: " + std::to_string(a) + " vs " +
                           std::to_string(b));
  }
}

std::vector<char> accessible(const Dfa& a) {
  std::vector<char> seen(a.state_count(), 0);
  std::vector<State> stack{a.initial()};
  seen[a.initial()] = 1;
  while (!stack.empty()) {
    const State q = stack.back();
    stack.pop_back();
    for (Digit d = 0; d < a.alphabet_size(); ++d) {
      const std::int32_t t = a.raw_next(q, d);
      if (t >= 0 && !seen[static_cast<State>(t)]) {
        seen[static_cast<State>(t)] = 1;
        stack.push_back(static_cast<State>(t));
      }
    }
  }
  return seen;
}

// Reverse adjacency without digit labels.
std::vector<std::vector<State>> predecessors(const Dfa& a) {
  std::vector<std::vector<State>> pred(a.state_count());
  for (State q = 0; q < a.state_count(); ++q) {
    for (Digit d = 0; d < a.alphabet_size(); ++d) {
      const std::int32_t t = a.raw_next(q, d);
      if (t >= 0) pred[static_cast<State>(t)].push_back(q);
    }
  }
  return pred;
}

std::vector<char> backward_closure(const std::vector<std::vector<State>>& pred,
                                   std::vector<char> seed) {
  std::vector<State> stack;
  for (State q = 0; q < seed.size(); ++q) {
    if (seed[q]) stack.push_back(q);
  }
  while (!stack.empty()) {
    const State q = stack.back();
    stack.pop_back();
    for (State p : pred[q]) {
      if (!seed[p]) {
        seed[p] = 1;
        stack.push_back(p);
      }
    }
  }
  return seed;
}

std::vector<char> co_accessible(const Dfa& a) {
  std::vector<char> seed(a.state_count(), 0);
  for (State q = 0; q < a.state_count(); ++q) seed[q] = a.is_final(q) ? 1 : 0;
  return backward_closure(predecessors(a), std::move(seed));
}

// Restriction to `keep`, preserving relative order. `keep[initial]` must hold.
Dfa restrict_to(const Dfa& a, const std::vector<char>& keep, std::vector<std::int64_t>* old_to_new) {
  std::vector<std::int64_t> remap(a.state_count(), -1);
  State next_id = 0;
  for (State q = 0; q < a.state_count(); ++q) {
    if (keep[q]) remap[q] = next_id++;
  }
  Dfa out(next_id, a.alphabet_size(), static_cast<State>(remap[a.initial()]));
  for (State q = 0; q < a.state_count(); ++q) {
    if (remap[q] < 0) continue;
    const auto nq = static_cast<State>(remap[q]);
    out.set_final(nq, a.is_final(q));
    for (Digit d = 0; d < a.alphabet_size(); ++d) {
      const std::int32_t t = a.raw_next(q, d);
      if (t >= 0 && remap[static_cast<State>(t)] >= 0) {
        out.set_transition(nq, d, static_cast<State>(remap[static_cast<State>(t)]));
      }
    }
  }
  if (old_to_new) *old_to_new = std::move(remap);
  return out;
}

Dfa trim_with_map(const Dfa& a, std::vector<std::int64_t>* old_to_new) {
  const std::vector<char> acc = accessible(a);
  const std::vector<char> coacc = co_accessible(a);
  std::vector<char> keep(a.state_count());
  for (State q = 0; q < a.state_count(); ++q) keep[q] = acc[q] && coacc[q];
  if (!keep[a.initial()]) {
    if (old_to_new) old_to_new->assign(a.state_count(), -1);
    return empty_language_dfa(a.alphabet_size());
  }
  return restrict_to(a, keep, old_to_new);
}

// Refinable partition for Hopcroft's algorithm.
class Partition {
 public:
  explicit Partition(std::size_t n) : elems_(n), loc_(n), block_(n, 0) {
    std::iota(elems_.begin(), elems_.end(), 0);
    std::iota(loc_.begin(), loc_.end(), 0);
    first_.push_back(0);
    end_.push_back(static_cast<std::uint32_t>(n));
    mid_.push_back(0);
  }

  [[nodiscard]] std::size_t block_count() const noexcept { return first_.size(); }
  [[nodiscard]] std::uint32_t block_of(State s) const noexcept { return block_[s]; }
  [[nodiscard]] std::uint32_t size(std::uint32_t b) const noexcept { return end_[b] - first_[b]; }
  [[nodiscard]] std::vector<State> members(std::uint32_t b) const {
    return {elems_.begin() + first_[b], elems_.begin() + end_[b]};
  }

  void mark(State s) {
    const std::uint32_t b = block_[s];
    const std::uint32_t i = loc_[s];
    if (i < mid_[b]) return;
    if (mid_[b] == first_[b]) touched_.push_back(b);
    const std::uint32_t j = mid_[b];
    std::swap(elems_[i], elems_[j]);
    loc_[elems_[i]] = i;
    loc_[elems_[j]] = j;
    ++mid_[b];
  }

  // Splits every touched block into marked and unmarked parts. Calls
  // on_split(old, new) for each block actually split; the marked part
  // becomes the new block.
  template <typename F>
  void split(F&& on_split) {
    for (std::uint32_t b : touched_) {
      if (mid_[b] == end_[b]) {
        mid_[b] = first_[b];
        continue;
      }
      const auto nb = static_cast<std::uint32_t>(first_.size());
      first_.push_back(first_[b]);
      end_.push_back(mid_[b]);
      mid_.push_back(first_[b]);
      for (std::uint32_t i = first_[nb]; i < end_[nb]; ++i) block_[elems_[i]] = nb;
      first_[b] = mid_[b];
      on_split(b, nb);
    }
    touched_.clear();
  }

 private:
  std::vector<State> elems_;
  std::vector<std::uint32_t> loc_;
  std::vector<std::uint32_t> block_;
  std::vector<std::uint32_t> first_, end_, mid_;
  std::vector<std::uint32_t> touched_;
};

}  // namespace

// Dfa -----------------------------------------------------------------------

Dfa::Dfa(std::size_t state_count, std::uint32_t alphabet_size, State initial)
    : alphabet_(alphabet_size),
      initial_(initial),
      table_(state_count * alphabet_size, kNoTransition),
      finals_(state_count, 0) {
  if (state_count == 0) throw InputError("automaton needs at least one state");
  if (alphabet_size == 0) throw InputError("alphabet must be non-empty");
  if (initial >= state_count) throw InputError("initial state out of range");
}

std::size_t Dfa::index(State q, Digit d) const {
  if (q >= state_count()) throw InputError("state " + std::to_string(q) + " out of range");
  if (d >= alphabet_) throw AlphabetMismatch("digit " + std::to_string(d) + " out of range");
  return static_cast<std::size_t>(q) * alphabet_ + d;
}

std::size_t Dfa::final_count() const {
  return static_cast<std::size_t>(std::count(finals_.begin(), finals_.end(), 1));
}

std::optional<State> Dfa::run_from(State q, const Word& w) const {
  for (Digit d : w.digits) {
    if (d >= alphabet_) return std::nullopt;
    const std::int32_t t = raw_next(q, d);
    if (t < 0) return std::nullopt;
    q = static_cast<State>(t);
  }
  return q;
}

bool Dfa::accepts(const Word& w) const {
  const auto q = run(w);
  return q && is_final(*q);
}

void Dfa::set_transition(State from, Digit d, State to) {
  if (to >= state_count()) throw InputError("transition target out of range");
  table_[index(from, d)] = static_cast<std::int32_t>(to);
}

void Dfa::clear_transition(State from, Digit d) { table_[index(from, d)] = kNoTransition; }

void Dfa::set_final(State q, bool final) { finals_.at(q) = final ? 1 : 0; }

void Dfa::set_initial(State q) {
  if (q >= state_count()) throw InputError("initial state out of range");
  initial_ = q;
}

Dfa Dfa::rerooted(State q) const {
  Dfa out = *this;
  out.set_initial(q);
  return out;
}

// Nfa -----------------------------------------------------------------------

Nfa::Nfa(std::size_t state_count, std::uint32_t alphabet_size)
    : alphabet_(alphabet_size), transitions_(state_count * alphabet_size), finals_(state_count, 0) {
  if (alphabet_size == 0) throw InputError("alphabet must be non-empty");
}

void Nfa::add_transition(State from, Digit d, State to) {
  if (from >= state_count() || to >= state_count()) throw InputError("NFA state out of range");
  if (d >= alphabet_) throw AlphabetMismatch("digit out of range");
  auto& targets = transitions_[static_cast<std::size_t>(from) * alphabet_ + d];
  if (std::find(targets.begin(), targets.end(), to) == targets.end()) targets.push_back(to);
}

void Nfa::add_initial(State q) {
  if (q >= state_count()) throw InputError("NFA state out of range");
  if (std::find(initials_.begin(), initials_.end(), q) == initials_.end()) initials_.push_back(q);
}

void Nfa::set_final(State q, bool final) { finals_.at(q) = final ? 1 : 0; }

bool Nfa::accepts(const Word& w) const {
  std::vector<char> current(state_count(), 0);
  for (State q : initials_) current[q] = 1;
  for (Digit d : w.digits) {
    if (d >= alphabet_) return false;
    std::vector<char> next(state_count(), 0);
    for (State q = 0; q < state_count(); ++q) {
      if (!current[q]) continue;
      for (State t : targets(q, d)) next[t] = 1;
    }
    current = std::move(next);
  }
  for (State q = 0; q < state_count(); ++q) {
    if (current[q] && is_final(q)) return true;
  }
  return false;
}

// SccDecomposition ----------------------------------------------------------

std::size_t SccDecomposition::non_trivial_count() const {
  return static_cast<std::size_t>(std::count(non_trivial.begin(), non_trivial.end(), true));
}

std::vector<State> SccDecomposition::members(std::uint32_t id) const {
  std::vector<State> out;
  for (State q = 0; q < component.size(); ++q) {
    if (component[q] == id) out.push_back(q);
  }
  return out;
}

// Trimming ------------------------------------------------------------------

Dfa empty_language_dfa(std::uint32_t alphabet_size) { return Dfa(1, alphabet_size, 0); }

Dfa trim(const Dfa& a) { return trim_with_map(a, nullptr); }

bool is_trim(const Dfa& a) {
  const std::vector<char> acc = accessible(a);
  const std::vector<char> coacc = co_accessible(a);
  for (State q = 0; q < a.state_count(); ++q) {
    if (!acc[q] || !coacc[q]) return false;
  }
  return true;
}

// Minimization --------------------------------------------------------------

Dfa minimize(const Dfa& input) {
  const Dfa a = trim(input);
  if (a.final_count() == 0) return empty_language_dfa(a.alphabet_size());

  const std::size_t n = a.state_count() + 1;  // last state is the sink
  const auto sink = static_cast<State>(n - 1);
  const std::uint32_t k = a.alphabet_size();
  auto target = [&](State q, Digit d) -> State {
    if (q == sink) return sink;
    const std::int32_t t = a.raw_next(q, d);
    return t < 0 ? sink : static_cast<State>(t);
  };

  // Inverse transitions in CSR form, one array per digit.
  std::vector<std::vector<std::uint32_t>> pred_start(k, std::vector<std::uint32_t>(n + 1, 0));
  std::vector<std::vector<State>> pred(k, std::vector<State>(n));
  for (Digit d = 0; d < k; ++d) {
    auto& start = pred_start[d];
    for (State q = 0; q < n; ++q) ++start[target(q, d) + 1];
    std::partial_sum(start.begin(), start.end(), start.begin());
    std::vector<std::uint32_t> fill(start.begin(), start.end() - 1);
    for (State q = 0; q < n; ++q) pred[d][fill[target(q, d)]++] = q;
  }

  Partition part(n);
  for (State q = 0; q < a.state_count(); ++q) {
    if (a.is_final(q)) part.mark(q);
  }
  std::vector<std::vector<char>> in_work;  // per block, per digit
  std::deque<std::pair<std::uint32_t, Digit>> work;
  auto ensure_blocks = [&] {
    while (in_work.size() < part.block_count()) in_work.emplace_back(k, 0);
  };
  auto push = [&](std::uint32_t b, Digit d) {
    if (!in_work[b][d]) {
      in_work[b][d] = 1;
      work.emplace_back(b, d);
    }
  };
  auto on_split = [&](std::uint32_t old_block, std::uint32_t new_block) {
    ensure_blocks();
    for (Digit d = 0; d < k; ++d) {
      if (in_work[old_block][d]) {
        push(new_block, d);
      } else {
        push(part.size(new_block) <= part.size(old_block) ? new_block : old_block, d);
      }
    }
  };
  ensure_blocks();
  part.split(on_split);

  while (!work.empty()) {
    const auto [b, d] = work.front();
    work.pop_front();
    in_work[b][d] = 0;
    for (State t : part.members(b)) {
      for (std::uint32_t i = pred_start[d][t]; i < pred_start[d][t + 1]; ++i) part.mark(pred[d][i]);
    }
    part.split(on_split);
  }

  const std::uint32_t sink_block = part.block_of(sink);
  std::vector<std::int64_t> block_id(part.block_count(), -1);
  State next_id = 0;
  for (State q = 0; q < a.state_count(); ++q) {
    const std::uint32_t b = part.block_of(q);
    if (b != sink_block && block_id[b] < 0) block_id[b] = next_id++;
  }
  Dfa out(next_id, k, static_cast<State>(block_id[part.block_of(a.initial())]));
  for (State q = 0; q < a.state_count(); ++q) {
    const auto nq = static_cast<State>(block_id[part.block_of(q)]);
    out.set_final(nq, a.is_final(q));
    for (Digit d = 0; d < k; ++d) {
      const std::int32_t t = a.raw_next(q, d);
      if (t < 0) continue;
      const std::uint32_t tb = part.block_of(static_cast<State>(t));
      if (tb != sink_block) out.set_transition(nq, d, static_cast<State>(block_id[tb]));
    }
  }
  return canonical_form(out);
}

Dfa minimize_brzozowski(const Dfa& a) {
  return canonical_form(trim(determinize(reverse(determinize(reverse(a))))));
}

// Reversal, subsets, products -----------------------------------------------

Nfa reverse(const Dfa& a) {
  Nfa out(a.state_count(), a.alphabet_size());
  for (State q = 0; q < a.state_count(); ++q) {
    if (a.is_final(q)) out.add_initial(q);
    for (Digit d = 0; d < a.alphabet_size(); ++d) {
      const std::int32_t t = a.raw_next(q, d);
      if (t >= 0) out.add_transition(static_cast<State>(t), d, q);
    }
  }
  out.set_final(a.initial());
  return out;
}

Nfa reverse(const Nfa& a) {
  Nfa out(a.state_count(), a.alphabet_size());
  for (State q = 0; q < a.state_count(); ++q) {
    if (a.is_final(q)) out.add_initial(q);
    for (Digit d = 0; d < a.alphabet_size(); ++d) {
      for (State t : a.targets(q, d)) out.add_transition(t, d, q);
    }
  }
  for (State q : a.initials()) out.set_final(q);
  return out;
}

Dfa determinize(const Nfa& n) {
  const std::uint32_t k = n.alphabet_size();
  std::vector<State> start = n.initials();
  std::sort(start.begin(), start.end());
  if (start.empty()) return empty_language_dfa(k);

  std::unordered_map<std::vector<State>, State, VectorHash> ids;
  std::vector<std::vector<State>> subsets;
  std::vector<std::vector<std::int32_t>> rows;
  ids.emplace(start, 0);
  subsets.push_back(std::move(start));

  std::vector<std::uint32_t> stamp(n.state_count(), 0);
  std::uint32_t epoch = 0;
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    std::vector<std::int32_t> row(k, kNoTransition);
    for (Digit d = 0; d < k; ++d) {
      ++epoch;
      std::vector<State> next;
      for (State q : subsets[i]) {
        for (State t : n.targets(q, d)) {
          if (stamp[t] != epoch) {
            stamp[t] = epoch;
            next.push_back(t);
          }
        }
      }
      if (next.empty()) continue;
      std::sort(next.begin(), next.end());
      auto [it, inserted] = ids.emplace(next, static_cast<State>(subsets.size()));
      if (inserted) subsets.push_back(std::move(next));
      row[d] = static_cast<std::int32_t>(it->second);
    }
    rows.push_back(std::move(row));
  }

  Dfa out(subsets.size(), k, 0);
  for (State s = 0; s < subsets.size(); ++s) {
    out.set_final(s, std::any_of(subsets[s].begin(), subsets[s].end(),
                                 [&](State q) { return n.is_final(q); }));
    for (Digit d = 0; d < k; ++d) {
      if (rows[s][d] >= 0) out.set_transition(s, d, static_cast<State>(rows[s][d]));
    }
  }
  return out;
}

Dfa intersect(const Dfa& a, const Dfa& b) {
  require_same_alphabet(a.alphabet_size(), b.alphabet_size());
  const std::uint32_t k = a.alphabet_size();
  const std::uint64_t nb = b.state_count();
  auto key = [nb](State p, State q) { return static_cast<std::uint64_t>(p) * nb + q; };

  std::unordered_map<std::uint64_t, State> ids;
  std::vector<std::pair<State, State>> pairs{{a.initial(), b.initial()}};
  ids.emplace(key(a.initial(), b.initial()), 0);
  std::vector<std::vector<std::int32_t>> rows;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto [p, q] = pairs[i];
    std::vector<std::int32_t> row(k, kNoTransition);
    for (Digit d = 0; d < k; ++d) {
      const std::int32_t tp = a.raw_next(p, d);
      const std::int32_t tq = b.raw_next(q, d);
      if (tp < 0 || tq < 0) continue;
      const auto np = static_cast<State>(tp);
      const auto nq = static_cast<State>(tq);
      auto [it, inserted] = ids.emplace(key(np, nq), static_cast<State>(pairs.size()));
      if (inserted) pairs.emplace_back(np, nq);
      row[d] = static_cast<std::int32_t>(it->second);
    }
    rows.push_back(std::move(row));
  }
  Dfa out(pairs.size(), k, 0);
  for (State s = 0; s < pairs.size(); ++s) {
    out.set_final(s, a.is_final(pairs[s].first) && b.is_final(pairs[s].second));
    for (Digit d = 0; d < k; ++d) {
      if (rows[s][d] >= 0) out.set_transition(s, d, static_cast<State>(rows[s][d]));
    }
  }
  return out;
}

// Equivalence ---------------------------------------------------------------

EquivalenceResult equivalent(const Dfa& a, const Dfa& b) {
  require_same_alphabet(a.alphabet_size(), b.alphabet_size());
  const std::uint32_t k = a.alphabet_size();
  // Dead runs are represented by the extra id state_count().
  const auto dead_a = static_cast<State>(a.state_count());
  const auto dead_b = static_cast<State>(b.state_count());
  const std::uint64_t width = b.state_count() + 1;
  auto key = [width](State p, State q) { return static_cast<std::uint64_t>(p) * width + q; };
  auto final_a = [&](State p) { return p != dead_a && a.is_final(p); };
  auto final_b = [&](State q) { return q != dead_b && b.is_final(q); };

  struct Node {
    State p, q;
    std::int64_t parent;
    Digit digit;
  };
  std::vector<Node> nodes{{a.initial(), b.initial(), -1, 0}};
  std::unordered_map<std::uint64_t, std::size_t> seen{{key(a.initial(), b.initial()), 0}};

  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Node cur = nodes[i];
    if (final_a(cur.p) != final_b(cur.q)) {
      Word w;
      for (std::int64_t j = static_cast<std::int64_t>(i); nodes[static_cast<std::size_t>(j)].parent >= 0;
           j = nodes[static_cast<std::size_t>(j)].parent) {
        w.digits.push_back(nodes[static_cast<std::size_t>(j)].digit);
      }
      std::reverse(w.digits.begin(), w.digits.end());
      return {false, std::move(w)};
    }
    for (Digit d = 0; d < k; ++d) {
      State np = dead_a;
      State nq = dead_b;
      if (cur.p != dead_a) {
        const std::int32_t t = a.raw_next(cur.p, d);
        if (t >= 0) np = static_cast<State>(t);
      }
      if (cur.q != dead_b) {
        const std::int32_t t = b.raw_next(cur.q, d);
        if (t >= 0) nq = static_cast<State>(t);
      }
      if (np == dead_a && nq == dead_b) continue;
      if (seen.emplace(key(np, nq), nodes.size()).second) {
        nodes.push_back({np, nq, static_cast<std::int64_t>(i), d});
      }
    }
  }
  return {true, std::nullopt};
}

// SCC -----------------------------------------------------------------------

SccDecomposition scc(const Dfa& a) {
  const std::size_t n = a.state_count();
  const std::uint32_t k = a.alphabet_size();
  constexpr std::uint32_t kUnvisited = 0xffffffffU;
  std::vector<std::uint32_t> index(n, kUnvisited), low(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<State> stack;
  SccDecomposition out;
  out.component.assign(n, 0);
  std::uint32_t counter = 0;

  struct Frame {
    State q;
    Digit next_digit;
  };
  for (State root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    std::vector<Frame> call{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      Frame& f = call.back();
      if (f.next_digit < k) {
        const std::int32_t t = a.raw_next(f.q, f.next_digit++);
        if (t < 0) continue;
        const auto w = static_cast<State>(t);
        if (index[w] == kUnvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.q] = std::min(low[f.q], index[w]);
        }
        continue;
      }
      const State q = f.q;
      call.pop_back();
      if (!call.empty()) low[call.back().q] = std::min(low[call.back().q], low[q]);
      if (low[q] != index[q]) continue;
      const auto id = static_cast<std::uint32_t>(out.non_trivial.size());
      std::size_t size = 0;
      State member = 0;
      do {
        member = stack.back();
        stack.pop_back();
        on_stack[member] = 0;
        out.component[member] = id;
        ++size;
      } while (member != q);
      bool loop = false;
      if (size == 1) {
        for (Digit d = 0; d < k && !loop; ++d) loop = a.raw_next(q, d) == static_cast<std::int32_t>(q);
      }
      out.non_trivial.push_back(size > 1 || loop);
    }
  }
  return out;
}

std::vector<State> states_with_infinite_right_language(const Dfa& a) {
  std::vector<std::int64_t> old_to_new;
  const Dfa t = trim_with_map(a, &old_to_new);
  const SccDecomposition s = scc(t);
  std::vector<char> on_cycle(t.state_count(), 0);
  for (State q = 0; q < t.state_count(); ++q) on_cycle[q] = s.non_trivial[s.component[q]] ? 1 : 0;
  const std::vector<char> reaches = backward_closure(predecessors(t), std::move(on_cycle));
  std::vector<State> out;
  for (State q = 0; q < a.state_count(); ++q) {
    if (old_to_new[q] >= 0 && reaches[static_cast<State>(old_to_new[q])]) out.push_back(q);
  }
  return out;
}

// Canonical numbering and rendering -----------------------------------------

Dfa canonical_form(const Dfa& a) {
  const std::uint32_t k = a.alphabet_size();
  std::vector<std::int64_t> order(a.state_count(), -1);
  std::vector<State> queue{a.initial()};
  order[a.initial()] = 0;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (Digit d = 0; d < k; ++d) {
      const std::int32_t t = a.raw_next(queue[i], d);
      if (t >= 0 && order[static_cast<State>(t)] < 0) {
        order[static_cast<State>(t)] = static_cast<std::int64_t>(queue.size());
        queue.push_back(static_cast<State>(t));
      }
    }
  }
  Dfa out(queue.size(), k, 0);
  for (State i = 0; i < queue.size(); ++i) {
    const State q = queue[i];
    out.set_final(i, a.is_final(q));
    for (Digit d = 0; d < k; ++d) {
      const std::int32_t t = a.raw_next(q, d);
      if (t >= 0) out.set_transition(i, d, static_cast<State>(order[static_cast<State>(t)]));
    }
  }
  return out;
}

std::string to_dot(const Dfa& input) {
  const Dfa a = canonical_form(input);
  std::ostringstream os;
  os << "digraph automaton {\n"
     << "  rankdir=LR;\n"
     << "  node [shape=circle];\n"
     << "  init [shape=point, style=invis];\n"
     << "  init -> q0;\n";
  for (State q = 0; q < a.state_count(); ++q) {
    if (a.is_final(q)) os << "  q" << q << " [shape=doublecircle];\n";
  }
  for (State q = 0; q < a.state_count(); ++q) {
    std::map<State, std::vector<Digit>> by_target;
    for (Digit d = 0; d < a.alphabet_size(); ++d) {
      if (const auto t = a.next(q, d)) by_target[*t].push_back(d);
    }
    for (const auto& [t, digits] : by_target) {
      os << "  q" << q << " -> q" << t << " [label=\"";
      for (std::size_t i = 0; i < digits.size(); ++i) {
        if (i) os << ',';
        os << digits[i];
      }
      os << "\"];\n";
    }
  }
  os << "}\n";
  return os.str();
}

std::string to_table(const Dfa& input) {
  const Dfa a = canonical_form(input);
  std::ostringstream os;
  os << "state final";
  for (Digit d = 0; d < a.alphabet_size(); ++d) os << ' ' << d;
  os << '\n';
  for (State q = 0; q < a.state_count(); ++q) {
    os << 'r' << q << ' ' << (a.is_final(q) ? 1 : 0);
    for (Digit d = 0; d < a.alphabet_size(); ++d) {
      if (const auto t = a.next(q, d)) {
        os << " r" << *t;
      } else {
        os << " -";
      }
    }
    os << '\n';
  }
  return os.str();
}

// Enumeration ---------------------------------------------------------------

std::vector<Word> enumerate_accepted(const Dfa& input, std::size_t max_length) {
  const Dfa a = trim(input);
  const std::uint32_t k = a.alphabet_size();
  const std::size_t n = a.state_count();
  // live[r][q]: some word of length exactly r is accepted from q.
  std::vector<std::vector<char>> live(max_length + 1, std::vector<char>(n, 0));
  for (State q = 0; q < n; ++q) live[0][q] = a.is_final(q) ? 1 : 0;
  for (std::size_t r = 1; r <= max_length; ++r) {
    for (State q = 0; q < n; ++q) {
      for (Digit d = 0; d < k && !live[r][q]; ++d) {
        const std::int32_t t = a.raw_next(q, d);
        live[r][q] = t >= 0 && live[r - 1][static_cast<State>(t)];
      }
    }
  }

  std::vector<Word> out;
  Word prefix;
  auto dfs = [&](auto&& self, State q, std::size_t remaining) -> void {
    if (remaining == 0) {
      out.push_back(prefix);
      return;
    }
    for (Digit d = 0; d < k; ++d) {
      const std::int32_t t = a.raw_next(q, d);
      if (t < 0 || !live[remaining - 1][static_cast<State>(t)]) continue;
      prefix.digits.push_back(d);
      self(self, static_cast<State>(t), remaining - 1);
      prefix.digits.pop_back();
    }
  };
  for (std::size_t len = 0; len <= max_length; ++len) {
    if (live[len][a.initial()]) dfs(dfs, a.initial(), len);
  }
  return out;
}

std::vector<BigInt> count_accepted_by_length(const Dfa& a, std::size_t max_length) {
  std::vector<BigInt> paths(a.state_count(), 0);
  paths[a.initial()] = 1;
  std::vector<BigInt> out;
  out.reserve(max_length + 1);
  for (std::size_t len = 0;; ++len) {
    BigInt accepted = 0;
    for (State q = 0; q < a.state_count(); ++q) {
      if (a.is_final(q)) accepted += paths[q];
    }
    out.push_back(std::move(accepted));
    if (len == max_length) break;
    std::vector<BigInt> next(a.state_count(), 0);
    for (State q = 0; q < a.state_count(); ++q) {
      if (paths[q] == 0) continue;
      for (Digit d = 0; d < a.alphabet_size(); ++d) {
        const std::int32_t t = a.raw_next(q, d);
        if (t >= 0) next[static_cast<State>(t)] += paths[q];
      }
    }
    paths = std::move(next);
  }
  return out;
}

}  // namespace numera
