#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "numera/automata.hpp"
#include "numera/hankel.hpp"
#include "numera/numeration.hpp"
#include "numera/numlang.hpp"

namespace numera {

/// State label of the product construction: the A_U state reached by w and
/// (val(w), val(w0), ..., val(w0^{R-1})) mod m.
struct ConstructionStateTag {
  State base_state = 0;
  std::vector<std::uint32_t> residues;

  friend bool operator==(const ConstructionStateTag&, const ConstructionStateTag&) = default;
};

enum class ResidueWidth {
  /// R = K, wrapping with the integer recurrence coefficients.
  Recurrence,
  /// R = k_{U,m}, wrapping with validated mod-m coefficients; falls back to
  /// Recurrence when none were found.
  ModRecurrence,
};

struct DivisibilityProduct {
  /// Reachable, untrimmed, unminimized product.
  Dfa automaton;
  std::vector<ConstructionStateTag> tags;
  std::size_t width = 0;
  bool used_mod_recurrence = false;
};

DivisibilityProduct build_divisibility_product(const Dfa& a_u, const NumerationSystem& system,
                                               std::uint64_t m,
                                               ResidueWidth width = ResidueWidth::Recurrence);

/// Trim minimal automaton of 0* rep_U(mN) from the residue-tuple product.
Dfa build_divisibility_direct(const Dfa& a_u, const NumerationSystem& system, std::uint64_t m,
                              ResidueWidth width = ResidueWidth::Recurrence);

/// Least-significant-digit-first recognizer of words with value divisible by
/// m: states (residue, phase of U_n mod m), m * (preperiod + period) of them.
Dfa build_lsd_divisibility(const NumerationSystem& system, std::uint64_t m);

/// Reverse the LSD recognizer, determinize, intersect with a_u, minimize.
Dfa build_divisibility_lsd(const Dfa& a_u, const NumerationSystem& system, std::uint64_t m);

/// u and v reach the same A_U state (or both die) and val(u0^i) = val(v0^i)
/// mod m for every i < k_{U,m}.
bool equiv_um(const NumerationSystem& system, const Dfa& a_u, std::uint64_t m, const Word& u,
              const Word& v);

/// |rep_U(m)|.
std::size_t lower_bound(const NumerationSystem& system, const BigInt& m);

struct OracleCheck {
  bool ok = true;
  std::optional<Word> counterexample;
  std::size_t words_checked = 0;
};

/// Compares acceptance with (greedy and m | val) on every word of length <= max_length.
OracleCheck check_divisibility_oracle(const Dfa& a, const NumerationSystem& system, std::uint64_t m,
                                      std::size_t max_length);

struct VerificationReport {
  std::string system_name;
  std::uint64_t modulus = 0;
  HankelAnalysis hankel;
  ResiduePeriod period;
  HypothesisReport hypotheses;

  BigInt predicted_infinite_count = 0;
  std::size_t constructed_total_count = 0;
  std::size_t constructed_infinite_count = 0;
  std::size_t constructed_finite_count = 0;
  std::size_t lower_bound = 0;

  bool purely_periodic = false;
  /// h1, h2 and pure periodicity all hold, so the count formula is asserted.
  bool theorem_applicable = false;

  bool cross_construction_equivalent = false;
  std::optional<Word> cross_counterexample;
  /// Residue width k agrees with width K; absent when k == K or no coefficients were found.
  std::optional<bool> mod_recurrence_equivalent;

  std::size_t oracle_checked_to_length = 0;
  bool oracle_agrees = false;
  std::optional<Word> oracle_counterexample;

  /// Canonical minimal automaton from the direct construction.
  Dfa automaton;

  std::vector<std::string> violations;
  std::vector<std::string> notes;

  [[nodiscard]] bool ok() const noexcept { return violations.empty(); }
};

struct VerifyOptions {
  std::size_t oracle_length = 12;
};

VerificationReport verify_theorem(const NumerationSystem& system, const Dfa& a_u, std::uint64_t m,
                                  const VerifyOptions& options = {});

}  // namespace numera
