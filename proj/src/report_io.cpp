#include "ccsim/report_io.hpp"

#include <cstdio>
#include <sstream>

#include "ccsim/errors.hpp"

namespace ccsim {

namespace {

std::string stat_key(const std::string& type, int phase) {
  return type + "," + std::to_string(phase);
}

// Locale-independent numeric formatting for CSV cells.
std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", value);
  return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

}  // namespace

nlohmann::json phase_report_json(const PhaseStats& stats, bool with_holes) {
  nlohmann::json j;
  j["i_end"] = stats.last_complete;
  j["total_phases"] = stats.total_phases;
  j["D"] = stats.issued;
  j["P"] = stats.associated;
  j["types_per_phase"] = stats.types;
  nlohmann::json g = nlohmann::json::object();
  nlohmann::json ell = nlohmann::json::object();
  for (const auto& [key, value] : stats.new_items) g[stat_key(key.first, key.second)] = value;
  for (const auto& [key, value] : stats.stale_excess) {
    ell[stat_key(key.first, key.second)] = value;
  }
  j["g"] = g;
  j["ell"] = ell;
  nlohmann::json h = nlohmann::json::object();
  if (with_holes) {
    for (int p = 1; p <= stats.total_phases; ++p) h[std::to_string(p)] = stats.h(p);
  }
  j["h"] = h;
  return j;
}

nlohmann::json sim_report_json(const SimReport& report) {
  nlohmann::json j;
  j["policy"] = report.policy;
  j["n"] = report.params.companion_slots;
  j["k"] = report.params.type_slots;
  j["seeds"] = report.seeds;
  if (report.seeds.size() == 1) {
    j["faults"] = report.faults;
  } else {
    j["faults"] = {{"mean", report.faults_mean}, {"stderr", report.faults_stderr}};
  }
  j["complete_phases"] = report.complete_phases;
  nlohmann::json per_phase = nlohmann::json::object();
  for (const auto& [p, count] : report.per_phase_faults) per_phase[std::to_string(p)] = count;
  j["per_phase_faults"] = per_phase;
  j["phases"] = phase_report_json(report.stats, report.seeds.size() == 1);
  if (report.seeds.size() > 1) {
    nlohmann::json h_mean = nlohmann::json::object();
    for (const auto& [p, h] : report.holes_mean) h_mean[std::to_string(p)] = h;
    j["h_mean"] = h_mean;
  }
  if (report.opt_cost) j["opt_cost"] = *report.opt_cost;
  if (report.ratio_vs_opt) j["ratio_vs_opt"] = *report.ratio_vs_opt;
  j["ratio_vs_phase_bound"] = report.ratio_vs_phase_bound;
  return j;
}

std::string compare_csv(const std::vector<SimReport>& rows) {
  std::ostringstream out;
  out << "policy,n,k,seeds,faults_mean,faults_stderr,complete_phases,"
         "ratio_vs_phase_bound,opt_cost,ratio_vs_opt\n";
  for (const SimReport& row : rows) {
    out << row.policy << ',' << row.params.companion_slots << ',' << row.params.type_slots
        << ',' << row.seeds.size() << ',' << format_double(row.faults_mean) << ','
        << format_double(row.faults_stderr) << ',' << row.complete_phases << ','
        << format_double(row.ratio_vs_phase_bound) << ',';
    if (row.opt_cost) out << *row.opt_cost;
    out << ',';
    if (row.ratio_vs_opt) out << format_double(*row.ratio_vs_opt);
    out << '\n';
  }
  return out.str();
}

std::vector<SimReport> parse_compare_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw UsageError("compare CSV: missing header");
  std::vector<SimReport> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    lineno += 1;
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 10) {
      throw UsageError("compare CSV line " + std::to_string(lineno) + ": expected 10 fields");
    }
    SimReport row;
    row.policy = fields[0];
    row.params.companion_slots = std::stoi(fields[1]);
    row.params.type_slots = std::stoi(fields[2]);
    row.seeds.resize(std::stoul(fields[3]));
    row.faults_mean = std::stod(fields[4]);
    row.faults_stderr = std::stod(fields[5]);
    row.complete_phases = std::stoi(fields[6]);
    row.ratio_vs_phase_bound = std::stod(fields[7]);
    if (!fields[8].empty()) row.opt_cost = std::stoll(fields[8]);
    if (!fields[9].empty()) row.ratio_vs_opt = std::stod(fields[9]);
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::json compare_json(const std::vector<SimReport>& rows) {
  nlohmann::json j = nlohmann::json::array();
  for (const SimReport& row : rows) j.push_back(sim_report_json(row));
  return j;
}

nlohmann::json opt_result_json(const OptResult& result, bool with_witness) {
  nlohmann::json j;
  j["cost"] = result.cost;
  j["states_explored"] = result.states_explored;
  if (with_witness) {
    nlohmann::json witness = nlohmann::json::array();
    for (const WitnessStep& step : result.witness) {
      witness.push_back({{"index", step.index},
                         {"victim_type", step.victim.type},
                         {"victim_id", step.victim.id}});
    }
    j["witness"] = witness;
  }
  return j;
}

nlohmann::json cruel_result_json(const CruelResult& result) {
  nlohmann::json j;
  j["mode"] = "cruel";
  j["sigma_length"] = result.sigma.size();
  j["alg_cost"] = result.alg_cost;
  j["opt_cost"] = result.opt_cost;
  j["opt_exact"] = result.opt_exact;
  j["ratio"] = result.ratio;
  return j;
}

nlohmann::json tp_adversary_json(const TpAdversaryResult& result) {
  nlohmann::json j;
  j["mode"] = "tp";
  j["sigma_length"] = result.sigma.size();
  j["phases"] = result.phases_measured;
  j["clones"] = result.clone_count;
  j["mean_cost_per_phase"] = result.mean_cost_per_phase;
  j["mean_cost_per_phase_stderr"] = result.mean_cost_per_phase_stderr;
  j["per_phase_mean"] = result.per_phase_mean;
  return j;
}

}  // namespace ccsim
