#include <gtest/gtest.h>

#include <map>
#include <random>

#include "numera/divisibility.hpp"
#include "numera/hankel.hpp"
#include "numera/numlang.hpp"
#include "oracles.hpp"

namespace numera {
namespace {

const char* const kPresets[] = {"fibonacci", "lbonacci:3", "lbonacci:4", "sqrt2plus1"};

oracle::Terms preset_terms(std::string_view name, std::size_t count) {
  if (name == "fibonacci") return oracle::fibonacci_terms(count);
  if (name == "sqrt2plus1") return oracle::sqrt2plus1_terms(count);
  return oracle::lbonacci_terms(name.back() - '0', count);
}

struct Case {
  std::string name;
  NumerationSystem system;
  Dfa a_u;
};

Case load(const char* name) { return {name, preset_system(name), build_preset_automaton(name)}; }

TEST(Direct, FibonacciSizes) {
  const auto c = load("fibonacci");
  EXPECT_EQ(build_divisibility_direct(c.a_u, c.system, 2).state_count(), 8u);
  EXPECT_EQ(build_divisibility_direct(c.a_u, c.system, 3).state_count(), 18u);
}

TEST(Direct, SizeMatchesResidualCountOracle) {
  const auto u = oracle::fibonacci_terms(30);
  const auto c = load("fibonacci");
  for (std::int64_t m : {2, 3}) {
    const auto expected = oracle::residual_count(2, 9, 9, [&](const std::vector<Digit>& w) {
      return oracle::greedy(u, w) && oracle::value(u, w) % m == 0;
    });
    EXPECT_EQ(build_divisibility_direct(c.a_u, c.system, static_cast<std::uint64_t>(m)).state_count(), expected)
        << m;
  }
}

TEST(Product, RawProductMinimizesToEighteen) {
  const auto c = load("fibonacci");
  const auto p = build_divisibility_product(c.a_u, c.system, 3);
  EXPECT_EQ(p.width, 2u);
  EXPECT_EQ(p.tags.size(), p.automaton.state_count());
  EXPECT_GE(p.automaton.state_count(), 18u);
  EXPECT_EQ(minimize(p.automaton).state_count(), 18u);
  // The initial tag carries all-zero residues.
  EXPECT_EQ(p.tags[p.automaton.initial()].residues, (std::vector<std::uint32_t>{0, 0}));
}

TEST(Product, ModRecurrenceWidthGivesSameLanguage) {
  for (const char* name : kPresets) {
    const auto c = load(name);
    for (std::uint64_t m = 2; m <= 6; ++m) {
      if (!mod_recurrence_coeffs(c.system, m)) continue;
      const auto narrow = build_divisibility_product(c.a_u, c.system, m, ResidueWidth::ModRecurrence);
      EXPECT_TRUE(equivalent(narrow.automaton, build_divisibility_direct(c.a_u, c.system, m)))
          << name << " m=" << m;
    }
  }
}

TEST(Lsd, StateCounts) {
  EXPECT_EQ(build_lsd_divisibility(fibonacci_system(), 3).state_count(), 24u);
  EXPECT_EQ(build_lsd_divisibility(sqrt2plus1_system(), 2).state_count(), 2u);
}

TEST(Lsd, AcceptsLeastSignificantDigitFirstMultiples) {
  const auto u = oracle::sqrt2plus1_terms(14);
  const Dfa lsd = build_lsd_divisibility(sqrt2plus1_system(), 5);
  for (std::size_t len = 0; len <= 7; ++len) {
    for (const auto& w : oracle::all_words(3, len)) {
      std::vector<Digit> msd(w.rbegin(), w.rend());
      ASSERT_EQ(lsd.accepts(Word(w)), oracle::value(u, msd) % 5 == 0) << Word(w).str();
    }
  }
}

TEST(CrossConstruction, DirectEqualsLsdPipeline) {
  for (const char* name : kPresets) {
    const auto c = load(name);
    for (std::uint64_t m = 2; m <= 6; ++m) {
      const auto r = equivalent(build_divisibility_direct(c.a_u, c.system, m),
                                build_divisibility_lsd(c.a_u, c.system, m));
      EXPECT_TRUE(r.equivalent) << name << " m=" << m << " "
                                << (r.counterexample ? r.counterexample->str() : "");
    }
  }
}

TEST(Oracle, AgreesWithDefinitionOnShortWords) {
  for (const char* name : kPresets) {
    const auto c = load(name);
    const auto u = preset_terms(name, 20);
    for (std::int64_t m = 2; m <= 5; ++m) {
      const Dfa a = build_divisibility_direct(c.a_u, c.system, static_cast<std::uint64_t>(m));
      for (std::size_t len = 0; len <= 8; ++len) {
        for (const auto& w : oracle::all_words(c.system.alphabet_bound(), len)) {
          ASSERT_EQ(a.accepts(Word(w)), oracle::greedy(u, w) && oracle::value(u, w) % m == 0)
              << name << " m=" << m << " w=" << Word(w).str();
        }
      }
      EXPECT_TRUE(check_divisibility_oracle(a, c.system, static_cast<std::uint64_t>(m), 10).ok);
    }
  }
}

TEST(Oracle, DetectsWrongAutomaton) {
  const auto c = load("fibonacci");
  const auto r = check_divisibility_oracle(build_divisibility_direct(c.a_u, c.system, 2), c.system, 3, 6);
  EXPECT_FALSE(r.ok);
  ASSERT_TRUE(r.counterexample.has_value());
}

TEST(EquivUm, Examples) {
  const auto c = load("fibonacci");
  EXPECT_TRUE(equiv_um(c.system, c.a_u, 3, Word::parse("10"), Word::parse("10100")));
  EXPECT_FALSE(equiv_um(c.system, c.a_u, 3, Word::parse("1"), Word::parse("10")));
  EXPECT_TRUE(equiv_um(c.system, c.a_u, 3, Word::parse("101"), Word::parse("101")));
}

// Groups greedy prefixes by (state in A_U, residues of val(u 0^i) for i < k),
// computed with plain arithmetic.
std::map<std::pair<State, std::vector<std::int64_t>>, std::vector<Word>> classes(
    const Case& c, const oracle::Terms& u, std::int64_t m, std::size_t max_len) {
  const std::size_t k = k_um(c.system, static_cast<std::uint64_t>(m));
  std::map<std::pair<State, std::vector<std::int64_t>>, std::vector<Word>> out;
  for (std::size_t len = 0; len <= max_len; ++len) {
    for (const auto& w : oracle::all_words(c.system.alphabet_bound(), len)) {
      const auto q = c.a_u.run(Word(w));
      if (!q) continue;
      std::vector<std::int64_t> key;
      std::vector<Digit> shifted = w;
      for (std::size_t i = 0; i < k; ++i) {
        key.push_back(oracle::value(u, shifted) % m);
        shifted.push_back(0);
      }
      out[{*q, key}].push_back(Word(w));
    }
  }
  return out;
}

TEST(RightCongruence, SampledPairs) {
  std::mt19937 rng(77);
  for (const char* name : kPresets) {
    const auto c = load(name);
    const auto u = preset_terms(name, 30);
    for (std::int64_t m = 2; m <= 5; ++m) {
      for (const auto& [key, words] : classes(c, u, m, 8)) {
        if (words.size() < 2) continue;
        for (int trial = 0; trial < 6; ++trial) {
          const Word& a = words[rng() % words.size()];
          const Word& b = words[rng() % words.size()];
          ASSERT_TRUE(equiv_um(c.system, c.a_u, static_cast<std::uint64_t>(m), a, b));
          const Word x = oracle::random_word(rng, c.system.alphabet_bound(), 6);
          const Word ax = a.concat(x);
          const Word bx = b.concat(x);
          if (!oracle::greedy(u, ax.digits) || !oracle::greedy(u, bx.digits)) continue;
          ASSERT_TRUE(equiv_um(c.system, c.a_u, static_cast<std::uint64_t>(m), ax, bx))
              << name << " " << ax.str() << " " << bx.str();
          ASSERT_EQ(oracle::value(u, ax.digits) % m, oracle::value(u, bx.digits) % m);
        }
      }
    }
  }
}

TEST(StateIdentification, EquivUmMatchesMinimalAutomatonStates) {
  std::mt19937 rng(88);
  for (const char* name : kPresets) {
    const auto c = load(name);
    const auto h = check_hypotheses(c.a_u);
    for (std::uint64_t m = 2; m <= 5; ++m) {
      const Dfa a = build_divisibility_direct(c.a_u, c.system, m);
      std::vector<Word> sample;
      while (sample.size() < 120) {
        const Word w = oracle::random_word(rng, c.system.alphabet_bound(), 10);
        const auto q = c.a_u.run(w);
        if (q && h.in_c_u(*q)) sample.push_back(w);
      }
      for (std::size_t i = 0; i < sample.size(); ++i) {
        for (std::size_t j = i; j < sample.size(); ++j) {
          const bool same_state = a.run(sample[i]) == a.run(sample[j]);
          ASSERT_EQ(equiv_um(c.system, c.a_u, m, sample[i], sample[j]), same_state)
              << name << " m=" << m << " " << sample[i].str() << " " << sample[j].str();
        }
      }
    }
  }
}

TEST(LowerBound, Examples) {
  EXPECT_EQ(lower_bound(fibonacci_system(), 3), 3u);
  EXPECT_EQ(lower_bound(fibonacci_system(), 1), 1u);
  EXPECT_EQ(lower_bound(sqrt2plus1_system(), 7), 3u);
}

TEST(StateCount, InfiniteStatesMatchPrediction) {
  for (const char* name : kPresets) {
    const auto c = load(name);
    for (std::uint64_t m = 2; m <= 6; ++m) {
      const auto r = verify_theorem(c.system, c.a_u, m, {.oracle_length = 8});
      EXPECT_TRUE(r.ok()) << name << " m=" << m;
      EXPECT_TRUE(r.cross_construction_equivalent);
      EXPECT_TRUE(r.oracle_agrees);
      EXPECT_GE(r.constructed_total_count, r.lower_bound);
      if (r.theorem_applicable) {
        EXPECT_EQ(r.predicted_infinite_count, BigInt(r.constructed_infinite_count)) << name << " m=" << m;
      }
      // Strongly connected numeration automata: every state has an infinite right language.
      EXPECT_EQ(r.constructed_finite_count, 0u) << name << " m=" << m;
    }
  }
}

TEST(StateCount, Sqrt2Plus1ModFour) {
  const auto c = load("sqrt2plus1");
  const auto r = verify_theorem(c.system, c.a_u, 4);
  EXPECT_TRUE(r.theorem_applicable);
  EXPECT_EQ(r.hankel.k, 2u);
  EXPECT_EQ(r.hankel.s_um, 8);
  EXPECT_EQ(r.predicted_infinite_count, 16);
  EXPECT_EQ(r.constructed_infinite_count, 16u);
}

TEST(StateCount, LbonacciPowers) {
  for (std::uint32_t l = 2; l <= 4; ++l) {
    const auto sys = lbonacci_system(l);
    const Dfa a_u = build_preset_automaton("lbonacci:" + std::to_string(l));
    for (std::uint64_t m = 2; m <= 4; ++m) {
      std::size_t want = l;
      for (std::uint32_t i = 0; i < l; ++i) want *= m;
      EXPECT_EQ(build_divisibility_direct(a_u, sys, m).state_count(), want) << l << " " << m;
    }
  }
}

}  // namespace
}  // namespace numera
