#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "ccsim/adversary.hpp"
#include "ccsim/harness.hpp"
#include "ccsim/oracle.hpp"
#include "ccsim/phases.hpp"

namespace ccsim {

// Phase report: arrays "D", "P" (1-based request index lists per phase),
// "types_per_phase", and maps "g"/"ell" keyed by "<type>,<phase>" plus "h"
// keyed by "<phase>". "h" is empty when the partition ran without a policy.
nlohmann::json phase_report_json(const PhaseStats& stats, bool with_holes);

nlohmann::json sim_report_json(const SimReport& report);

// CSV schema (one row per policy):
//   policy,n,k,seeds,faults_mean,faults_stderr,complete_phases,
//   ratio_vs_phase_bound,opt_cost,ratio_vs_opt
// The two optimum columns are empty when the optimum was not computed.
std::string compare_csv(const std::vector<SimReport>& rows);
std::vector<SimReport> parse_compare_csv(const std::string& text);

nlohmann::json compare_json(const std::vector<SimReport>& rows);
nlohmann::json opt_result_json(const OptResult& result, bool with_witness);
nlohmann::json cruel_result_json(const CruelResult& result);
nlohmann::json tp_adversary_json(const TpAdversaryResult& result);

}  // namespace ccsim
