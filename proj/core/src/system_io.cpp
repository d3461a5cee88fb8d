#include "numera/system_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

#include "numera/error.hpp"

namespace numera {

namespace {

using nlohmann::json;

BigInt to_big(const json& v, const char* field) {
  if (v.is_number_integer()) return BigInt(v.get<long long>());
  if (v.is_string()) {
    const auto& s = v.get_ref<const std::string&>();
    const bool ok = !s.empty() && s.find_first_not_of("-0123456789") == std::string::npos;
    if (ok) return BigInt(s);
  }
  throw InputError(std::string("field '") + field + "' must hold integers");
}

std::vector<BigInt> big_array(const json& doc, const char* field) {
  if (!doc.contains(field) || !doc[field].is_array()) {
    throw InputError(std::string("missing integer array '") + field + "'");
  }
  std::vector<BigInt> out;
  for (const json& v : doc[field]) out.push_back(to_big(v, field));
  return out;
}

std::vector<Digit> digit_array(const json& obj, const char* field) {
  std::vector<Digit> out;
  if (!obj.contains(field)) return out;
  if (!obj[field].is_array()) throw InputError(std::string("'") + field + "' must be an array");
  for (const json& v : obj[field]) {
    if (!v.is_number_unsigned()) throw InputError(std::string("'") + field + "' must hold non-negative digits");
    out.push_back(v.get<Digit>());
  }
  return out;
}

}  // namespace

SystemDefinition parse_system_definition(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("invalid system JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InputError("system definition must be a JSON object");

  std::optional<std::uint32_t> alphabet;
  if (doc.contains("alphabet_bound")) {
    if (!doc["alphabet_bound"].is_number_unsigned() || doc["alphabet_bound"].get<std::uint64_t>() == 0) {
      throw InputError("'alphabet_bound' must be a positive integer");
    }
    alphabet = doc["alphabet_bound"].get<std::uint32_t>();
  }
  std::string name = doc.value("name", std::string{});

  std::optional<BertrandDirective> directive;
  if (doc.contains("bertrand_directive")) {
    const json& d = doc["bertrand_directive"];
    if (!d.is_object()) throw InputError("'bertrand_directive' must be an object");
    directive = BertrandDirective{digit_array(d, "preperiod"), digit_array(d, "period")};
  }

  try {
    return {NumerationSystem(big_array(doc, "coefficients"), big_array(doc, "initial_terms"), alphabet,
                             std::move(name)),
            std::move(directive)};
  } catch (const InvalidSystem& e) {
    throw InputError(std::string("invalid numeration system: ") + e.what());
  }
}

SystemDefinition load_system_definition(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read system file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  SystemDefinition def = parse_system_definition(buf.str());
  if (def.system.name().empty()) {
    def.system = NumerationSystem(def.system.coefficients(),
                                  {def.system.initial_terms().begin(), def.system.initial_terms().end()},
                                  def.system.alphabet_bound(), path.stem().string());
  }
  return def;
}

LoadedSystem resolve_system(std::string_view ref, std::size_t verify_length) {
  if (is_preset(ref)) return {preset_system(ref), build_preset_automaton(ref)};

  SystemDefinition def = load_system_definition(std::filesystem::path(std::string(ref)));
  Dfa automaton;
  if (def.directive) {
    automaton = build_bertrand_automaton(*def.directive);
  } else if (is_preset(def.system.name())) {
    automaton = build_preset_automaton(def.system.name());
  } else {
    throw InputError("system '" + def.system.name() +
                     "' has no numeration automaton; add a bertrand_directive");
  }
  if (automaton.alphabet_size() != def.system.alphabet_bound()) {
    throw InputError("numeration automaton alphabet " + std::to_string(automaton.alphabet_size()) +
                     " differs from the system alphabet " + std::to_string(def.system.alphabet_bound()));
  }
  const NumerationCheck check = verify_numeration_automaton(automaton, def.system, verify_length);
  if (!check.ok) {
    throw InputError("numeration automaton disagrees with greedy representations on '" +
                     check.counterexample->str() + "'");
  }
  return {std::move(def.system), std::move(automaton)};
}

}  // namespace numera
