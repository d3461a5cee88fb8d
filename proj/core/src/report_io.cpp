#include "numera/report_io.hpp"

#include <limits>
#include <sstream>

#include "json.hpp"

namespace numera {

namespace {

using ordered = nlohmann::ordered_json;

ordered big_value(const BigInt& v) {
  if (v >= 0 && v <= std::numeric_limits<std::uint64_t>::max()) return v.convert_to<std::uint64_t>();
  if (v < 0 && v >= std::numeric_limits<std::int64_t>::min()) return v.convert_to<std::int64_t>();
  return v.str();
}

ordered hypotheses_json(const HypothesisReport& h) {
  ordered out;
  out["h1"] = h.h1_holds;
  out["h2"] = h.h2_holds;
  ordered witnesses = ordered::object();
  for (const H2Witness& w : h.h2_witnesses) {
    witnesses[std::to_string(w.p) + "," + std::to_string(w.q)] = w.word.str();
  }
  out["witnesses"] = std::move(witnesses);
  out["one_step_in_cu"] = h.one_step_in_cu;
  out["strongly_connected"] = h.strongly_connected;
  out["c_u_states"] = h.c_u_states;
  ordered zero = ordered::object();
  for (const ZeroReturn& z : h.zero_return_bounds) {
    zero[std::to_string(z.state)] = z.bound ? ordered(*z.bound) : ordered(nullptr);
  }
  out["zero_return_bounds"] = std::move(zero);
  out["other_components_zero_cycles"] = h.other_components_zero_cycles;
  out["notes"] = h.notes;
  return out;
}

std::string csv_escape(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string report_to_json(const VerificationReport& r) {
  ordered out;
  out["system"] = r.system_name;
  out["m"] = r.modulus;
  out["k"] = r.hankel.k;
  ordered smith = ordered::array();
  for (const BigInt& d : r.hankel.smith_invariants) smith.push_back(big_value(d));
  out["smith"] = std::move(smith);
  out["S"] = big_value(r.hankel.s_um);
  out["period"] = ordered{{"preperiod", r.period.preperiod}, {"period", r.period.period}};
  out["predicted_infinite"] = big_value(r.predicted_infinite_count);
  out["total_states"] = r.constructed_total_count;
  out["infinite_states"] = r.constructed_infinite_count;
  out["finite_states"] = r.constructed_finite_count;
  out["lower_bound"] = r.lower_bound;
  out["h1"] = r.hypotheses.h1_holds;
  out["h2"] = r.hypotheses.h2_holds;
  out["purely_periodic"] = r.purely_periodic;
  out["cross_equivalent"] = r.cross_construction_equivalent;
  out["oracle_length"] = r.oracle_checked_to_length;
  out["oracle_agrees"] = r.oracle_agrees;
  ordered dets = ordered::array();
  for (const BigInt& d : r.hankel.det_profile) dets.push_back(big_value(d));
  out["det_profile"] = std::move(dets);
  out["mod_recurrence"] = r.hankel.mod_recurrence ? ordered(*r.hankel.mod_recurrence) : ordered(nullptr);
  out["theorem_applicable"] = r.theorem_applicable;
  out["violations"] = r.violations;
  out["notes"] = r.notes;
  return out.dump(2) + "\n";
}

std::string hypotheses_to_json(const HypothesisReport& report) {
  return hypotheses_json(report).dump(2) + "\n";
}

std::string csv_header() {
  return "system,m,k,smith,S,preperiod,period,predicted_infinite,total_states,infinite_states,"
         "finite_states,lower_bound,h1,h2,purely_periodic,cross_equivalent,oracle_length,error\n";
}

std::string report_to_csv_row(const VerificationReport& r) {
  std::ostringstream os;
  os << csv_escape(r.system_name) << ',' << r.modulus << ',' << r.hankel.k << ',';
  for (std::size_t i = 0; i < r.hankel.smith_invariants.size(); ++i) {
    if (i) os << ';';
    os << r.hankel.smith_invariants[i];
  }
  auto flag = [](bool b) { return b ? "true" : "false"; };
  os << ',' << r.hankel.s_um << ',' << r.period.preperiod << ',' << r.period.period << ','
     << r.predicted_infinite_count << ',' << r.constructed_total_count << ','
     << r.constructed_infinite_count << ',' << r.constructed_finite_count << ',' << r.lower_bound << ','
     << flag(r.hypotheses.h1_holds) << ',' << flag(r.hypotheses.h2_holds) << ','
     << flag(r.purely_periodic) << ',' << flag(r.cross_construction_equivalent) << ','
     << r.oracle_checked_to_length << ',';
  std::string error;
  for (const std::string& v : r.violations) error += (error.empty() ? "" : "; ") + v;
  os << csv_escape(error) << '\n';
  return os.str();
}

std::string error_csv_row(std::string_view system, std::uint64_t m, std::string_view message) {
  std::ostringstream os;
  os << csv_escape(system) << ',' << m << std::string(16, ',') << csv_escape(message) << '\n';
  return os.str();
}

}  // namespace numera
