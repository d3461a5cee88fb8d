#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "numera/divisibility.hpp"
#include "numera/numlang.hpp"

namespace numera {

/// Report as pretty-printed JSON. Keys, in order: system, m, k, smith, S,
/// period {preperiod, period}, predicted_infinite, total_states,
/// infinite_states, finite_states, lower_bound, h1, h2, purely_periodic,
/// cross_equivalent, oracle_length, oracle_agrees, det_profile,
/// mod_recurrence, theorem_applicable, violations, notes.
std::string report_to_json(const VerificationReport& report);

/// {"h1", "h2", "witnesses", "one_step_in_cu", ...}; witnesses map "p,q" to a digit string.
std::string hypotheses_to_json(const HypothesisReport& report);

/// Header line (with trailing newline) for sweep output.
std::string csv_header();
std::string report_to_csv_row(const VerificationReport& report);
std::string error_csv_row(std::string_view system, std::uint64_t m, std::string_view message);

}  // namespace numera
