#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "numera/automata.hpp"
#include "numera/numeration.hpp"
#include "numera/numlang.hpp"

namespace numera {

/// Contents of a system definition file:
///
///   {
///     "name": "pell",                       (optional)
///     "coefficients": [1, 2],               (a_0 first)
///     "initial_terms": [1, 3],
///     "alphabet_bound": 3,                  (optional)
///     "bertrand_directive": {"preperiod": [2, 1], "period": []}   (optional)
///   }
///
/// Integers may also be given as decimal strings.
struct SystemDefinition {
  NumerationSystem system;
  std::optional<BertrandDirective> directive;
};

SystemDefinition parse_system_definition(std::string_view json_text);
SystemDefinition load_system_definition(const std::filesystem::path& path);

/// A system together with its verified numeration automaton.
struct LoadedSystem {
  NumerationSystem system;
  Dfa automaton;
};

/// Resolves a preset name or a path to a definition file. The automaton comes
/// from the Bertrand directive, or from the preset of the same name, and is
/// checked against the greedy predicate up to `verify_length`. Throws InputError.
LoadedSystem resolve_system(std::string_view ref, std::size_t verify_length = 12);

}  // namespace numera
