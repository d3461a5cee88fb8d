// numera: build and check automata for multiples of m in linear numeration systems.
//
//   numera analyze <system> <m> [--oracle-length N]
//   numera dot <system> <m|numlang> [--out PATH]
//   numera table <system> <m|numlang>
//   numera hypotheses <system>
//   numera sweep --systems A,B --m-min 2 --m-max 10 [--oracle-length N] [--out PATH] [--jobs N]
//
// Exit codes: 0 success, 1 input error, 2 a checked invariant failed.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "numera/divisibility.hpp"
#include "numera/error.hpp"
#include "numera/report_io.hpp"
#include "numera/system_io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitViolation = 2;

std::size_t default_oracle_length() {
  if (const char* env = std::getenv("NUMERA_ORACLE_LEN")) {
    try {
      return static_cast<std::size_t>(std::stoul(env));
    } catch (const std::exception&) {
      std::cerr << "numera: ignoring invalid NUMERA_ORACLE_LEN='" << env << "'\n";
    }
  }
  return 12;
}

std::uint64_t parse_modulus(const std::string& text) {
  std::size_t used = 0;
  unsigned long long m = 0;
  try {
    m = std::stoull(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || m < 2) {
    throw numera::InputError("modulus must be an integer >= 2, got '" + text + "'");
  }
  return m;
}

bool write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return true;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "numera: cannot write '" << path << "'\n";
    return false;
  }
  out << text;
  return true;
}

numera::Dfa automaton_for(const numera::LoadedSystem& loaded, const std::string& target) {
  if (target == "numlang") return loaded.automaton;
  return numera::build_divisibility_direct(loaded.automaton, loaded.system, parse_modulus(target));
}

int cmd_analyze(const std::string& system_ref, const std::string& m_text, std::size_t oracle_length) {
  const std::uint64_t m = parse_modulus(m_text);
  const numera::LoadedSystem loaded = numera::resolve_system(system_ref);
  const numera::VerificationReport report =
      numera::verify_theorem(loaded.system, loaded.automaton, m, {oracle_length});
  std::cout << numera::report_to_json(report);
  return report.ok() ? kExitOk : kExitViolation;
}

int cmd_render(const std::string& system_ref, const std::string& target, const std::string& out,
               bool table) {
  const numera::LoadedSystem loaded = numera::resolve_system(system_ref);
  const numera::Dfa a = automaton_for(loaded, target);
  return write_output(table ? numera::to_table(a) : numera::to_dot(a), out) ? kExitOk : kExitInput;
}

int cmd_hypotheses(const std::string& system_ref) {
  const numera::LoadedSystem loaded = numera::resolve_system(system_ref);
  std::cout << numera::hypotheses_to_json(numera::check_hypotheses(loaded.automaton));
  return kExitOk;
}

int cmd_sweep(const std::vector<std::string>& systems, std::uint64_t m_min, std::uint64_t m_max,
              std::size_t oracle_length, const std::string& out, unsigned jobs) {
  if (m_min < 2) throw numera::InputError("--m-min must be at least 2");

  struct Cell {
    std::string system;
    std::uint64_t m;
  };
  std::vector<Cell> cells;
  for (const std::string& s : systems) {
    for (std::uint64_t m = m_min; m <= m_max; ++m) cells.push_back({s, m});
  }

  // Resolve each system once; a failure turns all of its cells into error rows.
  std::vector<std::optional<numera::LoadedSystem>> loaded(systems.size());
  std::vector<std::string> load_errors(systems.size());
  for (std::size_t i = 0; i < systems.size(); ++i) {
    try {
      loaded[i] = numera::resolve_system(systems[i]);
    } catch (const numera::Error& e) {
      load_errors[i] = e.what();
    }
  }
  auto system_index = [&](const std::string& s) {
    return static_cast<std::size_t>(std::find(systems.begin(), systems.end(), s) - systems.begin());
  };

  struct Row {
    std::string text;
    bool failed = false;
  };
  auto run_cell = [&](const Cell& c) -> Row {
    const std::size_t i = system_index(c.system);
    if (!loaded[i]) return {numera::error_csv_row(c.system, c.m, load_errors[i]), true};
    try {
      const auto report = numera::verify_theorem(loaded[i]->system, loaded[i]->automaton, c.m, {oracle_length});
      return {numera::report_to_csv_row(report), !report.ok()};
    } catch (const std::exception& e) {
      return {numera::error_csv_row(c.system, c.m, e.what()), true};
    }
  };

  std::vector<Row> rows(cells.size());
  jobs = std::max(1U, jobs);
  for (std::size_t begin = 0; begin < cells.size(); begin += jobs) {
    const std::size_t end = std::min(cells.size(), begin + jobs);
    std::vector<std::future<Row>> batch;
    for (std::size_t i = begin; i < end; ++i) {
      batch.push_back(std::async(std::launch::async, run_cell, std::cref(cells[i])));
    }
    for (std::size_t i = begin; i < end; ++i) rows[i] = batch[i - begin].get();
  }

  std::string csv = numera::csv_header();
  bool failed = false;
  for (const Row& r : rows) {
    csv += r.text;
    failed = failed || r.failed;
  }
  if (!write_output(csv, out)) return kExitInput;
  return failed ? kExitViolation : kExitOk;
}

std::vector<std::string> split_systems(const std::vector<std::string>& raw) {
  std::vector<std::string> out;
  for (const std::string& item : raw) {
    std::stringstream ss(item);
    std::string part;
    while (std::getline(ss, part, ',')) {
      if (!part.empty()) out.push_back(part);
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Automata for multiples of m in linear numeration systems"};
  app.require_subcommand(1);
  const std::size_t default_oracle = default_oracle_length();

  std::string system_ref;
  std::string target;
  std::string out_path;
  std::size_t oracle_length = default_oracle;

  auto* analyze = app.add_subcommand("analyze", "Print the verification report for one modulus as JSON");
  analyze->add_option("system", system_ref, "Preset name or system definition file")->required();
  analyze->add_option("m", target, "Modulus (>= 2)")->required();
  analyze->add_option("--oracle-length", oracle_length, "Check all words up to this length");

  auto* dot = app.add_subcommand("dot", "Emit the canonical automaton in Graphviz DOT");
  dot->add_option("system", system_ref, "Preset name or system definition file")->required();
  dot->add_option("target", target, "Modulus, or 'numlang' for the numeration automaton")->required();
  dot->add_option("--out", out_path, "Write to a file instead of standard output");

  auto* table = app.add_subcommand("table", "Emit the canonical transition table");
  table->add_option("system", system_ref, "Preset name or system definition file")->required();
  table->add_option("target", target, "Modulus, or 'numlang' for the numeration automaton")->required();
  table->add_option("--out", out_path, "Write to a file instead of standard output");

  auto* hyp = app.add_subcommand("hypotheses", "Check the structural hypotheses on the numeration automaton");
  hyp->add_option("system", system_ref, "Preset name or system definition file")->required();

  std::vector<std::string> systems_raw;
  std::uint64_t m_min = 2;
  std::uint64_t m_max = 10;
  unsigned jobs = std::max(1U, std::thread::hardware_concurrency());
  auto* sweep = app.add_subcommand("sweep", "Write one CSV row per (system, m)");
  sweep->add_option("--systems", systems_raw, "Comma-separated presets or files")->required();
  sweep->add_option("--m-min", m_min, "Smallest modulus")->required();
  sweep->add_option("--m-max", m_max, "Largest modulus")->required();
  sweep->add_option("--oracle-length", oracle_length, "Check all words up to this length");
  sweep->add_option("--out", out_path, "Write CSV to a file instead of standard output");
  sweep->add_option("--jobs", jobs, "Cells evaluated concurrently");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*analyze) return cmd_analyze(system_ref, target, oracle_length);
    if (*dot) return cmd_render(system_ref, target, out_path, false);
    if (*table) return cmd_render(system_ref, target, out_path, true);
    if (*hyp) return cmd_hypotheses(system_ref);
    if (*sweep) return cmd_sweep(split_systems(systems_raw), m_min, m_max, oracle_length, out_path, jobs);
  } catch (const numera::InputError& e) {
    std::cerr << "numera: " << e.what() << '\n';
    return kExitInput;
  } catch (const numera::Error& e) {
    std::cerr << "numera: " << e.what() << '\n';
    return kExitViolation;
  }
  return kExitInput;
}
