#include "numera/divisibility.hpp"

#include <algorithm>
#include <unordered_map>

#include "numera/error.hpp"

namespace numera {

namespace {

struct KeyHash {
  std::size_t operator()(const std::vector<std::uint32_t>& v) const noexcept {
    std::size_t h = v.size() * 0x9e3779b97f4a7c15ULL;
    for (std::uint32_t s : v) h ^= s + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

void require_inputs(const Dfa& a_u, const NumerationSystem& system, std::uint64_t m) {
  if (m < 2) throw InputError("modulus must be at least 2");
  if (m > (1ULL << 32)) throw InputError("modulus above 2^32 is not supported");
  if (a_u.alphabet_size() != system.alphabet_bound()) {
    throw AlphabetMismatch("numeration automaton alphabet " + std::to_string(a_u.alphabet_size()) +
                           " differs from system alphabet " + std::to_string(system.alphabet_bound()));
  }
}

}  // namespace

DivisibilityProduct build_divisibility_product(const Dfa& a_u, const NumerationSystem& system,
                                               std::uint64_t m, ResidueWidth width) {
  require_inputs(a_u, system, m);
  std::vector<std::uint64_t> wrap;
  bool used_mod = false;
  if (width == ResidueWidth::ModRecurrence) {
    if (auto c = mod_recurrence_coeffs(system, m)) {
      wrap = std::move(*c);
      used_mod = true;
    }
  }
  if (!used_mod) {
    for (const BigInt& a : system.coefficients()) wrap.push_back(mod_nonneg(a, m));
  }
  const std::size_t r = wrap.size();
  std::vector<std::uint64_t> u_mod(r);
  for (std::size_t s = 0; s < r; ++s) u_mod[s] = mod_nonneg(system.term(s), m);

  const std::uint32_t k = a_u.alphabet_size();
  std::vector<std::vector<std::uint32_t>> keys;
  std::unordered_map<std::vector<std::uint32_t>, State, KeyHash> ids;
  std::vector<std::vector<std::int32_t>> rows;

  std::vector<std::uint32_t> start(r + 1, 0);
  start[0] = a_u.initial();
  ids.emplace(start, 0);
  keys.push_back(std::move(start));

  for (std::size_t i = 0; i < keys.size(); ++i) {
    std::vector<std::int32_t> row(k, kNoTransition);
    for (Digit d = 0; d < k; ++d) {
      const std::int32_t base = a_u.raw_next(keys[i][0], d);
      if (base < 0) continue;
      const std::vector<std::uint32_t>& cur = keys[i];
      std::vector<std::uint32_t> next(r + 1);
      next[0] = static_cast<std::uint32_t>(base);
      // Reading d: val(wd 0^s) = val(w 0^{s+1}) + d U_s.
      for (std::size_t s = 0; s + 1 < r; ++s) {
        next[s + 1] = static_cast<std::uint32_t>((cur[s + 2] + d * u_mod[s]) % m);
      }
      std::uint64_t acc = 0;
      for (std::size_t s = 0; s < r; ++s) acc = (acc + wrap[s] * cur[s + 1]) % m;
      next[r] = static_cast<std::uint32_t>((acc + d * u_mod[r - 1]) % m);

      auto [it, inserted] = ids.emplace(next, static_cast<State>(keys.size()));
      if (inserted) keys.push_back(std::move(next));
      row[d] = static_cast<std::int32_t>(it->second);
    }
    rows.push_back(std::move(row));
  }

  DivisibilityProduct out{Dfa(keys.size(), k, 0), {}, r, used_mod};
  out.tags.reserve(keys.size());
  for (State q = 0; q < keys.size(); ++q) {
    out.automaton.set_final(q, a_u.is_final(keys[q][0]) && keys[q][1] == 0);
    for (Digit d = 0; d < k; ++d) {
      if (rows[q][d] >= 0) out.automaton.set_transition(q, d, static_cast<State>(rows[q][d]));
    }
    out.tags.push_back({keys[q][0], {keys[q].begin() + 1, keys[q].end()}});
  }
  return out;
}

Dfa build_divisibility_direct(const Dfa& a_u, const NumerationSystem& system, std::uint64_t m,
                              ResidueWidth width) {
  return minimize(build_divisibility_product(a_u, system, m, width).automaton);
}

Dfa build_lsd_divisibility(const NumerationSystem& system, std::uint64_t m) {
  if (m < 2) throw InputError("modulus must be at least 2");
  const ResiduePeriod period = residue_period(system, m);
  const std::size_t phases = period.phases();
  const std::uint32_t k = system.alphabet_bound();
  auto id = [&](std::uint64_t residue, std::size_t phase) {
    return static_cast<State>(residue * phases + phase);
  };
  Dfa lsd(m * phases, k, id(0, 0));
  for (std::uint64_t residue = 0; residue < m; ++residue) {
    for (std::size_t phase = 0; phase < phases; ++phase) {
      lsd.set_final(id(residue, phase), residue == 0);
      const std::size_t next_phase = phase + 1 < phases ? phase + 1 : period.preperiod;
      for (Digit d = 0; d < k; ++d) {
        const std::uint64_t next = (residue + d * period.residues[phase]) % m;
        lsd.set_transition(id(residue, phase), d, id(next, next_phase));
      }
    }
  }
  return lsd;
}

Dfa build_divisibility_lsd(const Dfa& a_u, const NumerationSystem& system, std::uint64_t m) {
  require_inputs(a_u, system, m);
  const Dfa msd = determinize(reverse(build_lsd_divisibility(system, m)));
  return minimize(intersect(msd, a_u));
}

bool equiv_um(const NumerationSystem& system, const Dfa& a_u, std::uint64_t m, const Word& u,
              const Word& v) {
  if (a_u.run(u) != a_u.run(v)) return false;
  const std::size_t k = k_um(system, m);
  Word uz = u;
  Word vz = v;
  for (std::size_t i = 0; i < k; ++i) {
    if (mod_nonneg(val(system, uz), m) != mod_nonneg(val(system, vz), m)) return false;
    uz.append(0);
    vz.append(0);
  }
  return true;
}

std::size_t lower_bound(const NumerationSystem& system, const BigInt& m) {
  if (m < 1) throw InputError("lower bound needs m >= 1");
  return rep(system, m).size();
}

OracleCheck check_divisibility_oracle(const Dfa& a, const NumerationSystem& system, std::uint64_t m,
                                      std::size_t max_length) {
  const auto small = small_terms(system, max_length + 1);
  std::vector<std::uint64_t> u_mod(max_length + 1);
  for (std::size_t i = 0; i <= max_length; ++i) u_mod[i] = mod_nonneg(system.term(i), m);

  auto predicate = [&](const Word& w) {
    const std::size_t len = w.size();
    std::uint64_t residue = 0;
    if (small) {
      std::uint64_t suffix = 0;
      for (std::size_t j = 1; j <= len; ++j) {
        const std::uint64_t d = w.digits[len - j];
        suffix += d * (*small)[j - 1];
        if (suffix >= (*small)[j]) return false;
        residue = (residue + d * u_mod[j - 1]) % m;
      }
      return residue == 0;
    }
    return is_greedy(system, w) && mod_nonneg(val(system, w), m) == 0;
  };

  OracleCheck out;
  for (std::size_t len = 0; len <= max_length && out.ok; ++len) {
    for_each_word(a.alphabet_size(), len, [&](const Word& w) {
      ++out.words_checked;
      if (a.accepts(w) != predicate(w)) {
        out.ok = false;
        out.counterexample = w;
        return false;
      }
      return true;
    });
  }
  return out;
}

VerificationReport verify_theorem(const NumerationSystem& system, const Dfa& a_u, std::uint64_t m,
                                  const VerifyOptions& options) {
  require_inputs(a_u, system, m);
  VerificationReport r;
  r.system_name = system.name();
  r.modulus = m;
  r.hankel = analyze_hankel(system, m);
  r.period = residue_period(system, m);
  r.hypotheses = check_hypotheses(a_u);
  r.purely_periodic = r.period.purely_periodic();
  r.theorem_applicable = r.hypotheses.h1_holds && r.hypotheses.h2_holds && r.purely_periodic;
  r.notes = r.hankel.notes;
  r.notes.insert(r.notes.end(), r.hypotheses.notes.begin(), r.hypotheses.notes.end());
  if (!system.alphabet_bound_stable()) {
    r.notes.push_back("alphabet bound did not stabilise within the horizon");
  }

  r.automaton = build_divisibility_direct(a_u, system, m);
  const Dfa lsd = build_divisibility_lsd(a_u, system, m);
  const EquivalenceResult cross = equivalent(r.automaton, lsd);
  r.cross_construction_equivalent = cross.equivalent;
  r.cross_counterexample = cross.counterexample;
  if (!cross.equivalent) {
    r.violations.push_back("direct and LSD constructions differ on " + cross.counterexample->str());
  }

  if (r.hankel.mod_recurrence && r.hankel.k < system.order()) {
    const Dfa narrow = build_divisibility_direct(a_u, system, m, ResidueWidth::ModRecurrence);
    const EquivalenceResult e = equivalent(r.automaton, narrow);
    r.mod_recurrence_equivalent = e.equivalent;
    if (!e.equivalent) r.violations.push_back("width-k construction differs on " + e.counterexample->str());
  }

  const OracleCheck oracle = check_divisibility_oracle(r.automaton, system, m, options.oracle_length);
  r.oracle_checked_to_length = options.oracle_length;
  r.oracle_agrees = oracle.ok;
  r.oracle_counterexample = oracle.counterexample;
  if (!oracle.ok) r.violations.push_back("oracle disagrees on " + oracle.counterexample->str());

  r.constructed_total_count = r.automaton.state_count();
  r.constructed_infinite_count = states_with_infinite_right_language(r.automaton).size();
  r.constructed_finite_count = r.constructed_total_count - r.constructed_infinite_count;
  r.predicted_infinite_count = BigInt(r.hypotheses.c_u_states.size()) * r.hankel.s_um;
  r.lower_bound = numera::lower_bound(system, BigInt(m));

  if (r.constructed_total_count < r.lower_bound) {
    r.violations.push_back("state count " + std::to_string(r.constructed_total_count) +
                           " is below |rep(m)| = " + std::to_string(r.lower_bound));
  }
  if (r.theorem_applicable) {
    if (r.predicted_infinite_count != r.constructed_infinite_count) {
      r.violations.push_back("predicted " + r.predicted_infinite_count.str() +
                             " infinite states, constructed " +
                             std::to_string(r.constructed_infinite_count));
    }
    if (r.hypotheses.strongly_connected && r.constructed_finite_count != 0) {
      r.violations.push_back("numeration automaton is strongly connected but " +
                             std::to_string(r.constructed_finite_count) +
                             " states accept finitely many words");
    }
  } else {
    r.notes.push_back("hypotheses of the count formula not met; counts reported without assertion");
  }
  return r;
}

}  // namespace numera
