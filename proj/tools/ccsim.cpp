// Command-line front end for the companion-cache simulation lab.
//
// Exit codes: 0 success, 1 invariant violation during a simulation,
// 2 usage or parse error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ccsim/adversary.hpp"
#include "ccsim/errors.hpp"
#include "ccsim/harness.hpp"
#include "ccsim/oracle.hpp"
#include "ccsim/report_io.hpp"
#include "ccsim/rng.hpp"
#include "ccsim/trace.hpp"

namespace {

using namespace ccsim;

struct CommonOpts {
  int n = 1;
  int k = 1;
  std::optional<int> m;
  std::string trace;
  std::string policy = "det-marking";
  std::uint64_t seed = 0;
  int seeds = 1;
  std::string format = "json";
  std::string out;
};

ProblemParams params_of(const CommonOpts& opts) {
  ProblemParams params{opts.n, opts.k, opts.m};
  params.validate();
  const std::string warning = params.warning();
  if (!warning.empty()) std::cerr << "warning: " << warning << '\n';
  return params;
}

std::vector<std::uint64_t> seed_schedule(std::uint64_t master, int count) {
  if (count < 1) throw UsageError("--seeds must be >= 1");
  std::vector<std::uint64_t> seeds;
  seeds.reserve(count);
  for (int i = 0; i < count; ++i) seeds.push_back(derive_seed(master, i));
  return seeds;
}

void write_output(const std::string& out_path, const std::string& payload) {
  if (out_path.empty()) {
    std::cout << payload;
    if (payload.empty() || payload.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw UsageError("cannot open output file: " + out_path);
  out << payload;
}

void emit_report_rows(const CommonOpts& opts, const std::vector<SimReport>& rows) {
  if (opts.format == "csv") {
    write_output(opts.out, compare_csv(rows));
  } else if (opts.format == "json") {
    const auto j = rows.size() == 1 ? sim_report_json(rows.front()) : compare_json(rows);
    write_output(opts.out, j.dump(2));
  } else {
    throw UsageError("unknown format: " + opts.format + " (expected json|csv)");
  }
}

void add_cache_flags(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--n", opts.n, "companion cache size")->required();
  cmd->add_option("--k", opts.k, "per-type main cache size")->required();
  cmd->add_option("--m", opts.m, "number of types (informational)");
}

int dispatch(int argc, char** argv) {
  CLI::App app{"companion-cache simulation lab"};
  app.require_subcommand(1);

  CommonOpts opts;
  bool with_opt = false;
  bool with_witness = false;
  std::string policies_csv;
  std::string mode = "cruel";
  int steps = 100;
  int clones = 1000;
  std::string emit_trace;
  int gen_types = 2;
  int gen_items = 2;
  int gen_length = 100;
  std::string gen_mode = "uniform";

  auto* cmd_run = app.add_subcommand("run", "replay a trace under one policy and seed");
  add_cache_flags(cmd_run, opts);
  cmd_run->add_option("--policy", opts.policy, "det-marking|tp1|tp2|tp|cw|lru|rand");
  cmd_run->add_option("--trace", opts.trace, "trace file")->required();
  cmd_run->add_option("--seed", opts.seed, "policy RNG seed");
  cmd_run->add_flag("--opt", with_opt, "join the exact optimum (desk scale only)");
  cmd_run->add_option("--format", opts.format, "json|csv");
  cmd_run->add_option("--out", opts.out, "output file (default stdout)");

  auto* cmd_expect = app.add_subcommand("expect", "mean/stderr of faults over derived seeds");
  add_cache_flags(cmd_expect, opts);
  cmd_expect->add_option("--policy", opts.policy);
  cmd_expect->add_option("--trace", opts.trace)->required();
  cmd_expect->add_option("--seed", opts.seed, "master seed of the schedule");
  cmd_expect->add_option("--seeds", opts.seeds, "number of derived seeds")->required();
  cmd_expect->add_flag("--opt", with_opt);
  cmd_expect->add_option("--format", opts.format);
  cmd_expect->add_option("--out", opts.out);

  auto* cmd_compare = app.add_subcommand("compare", "run several policies on one trace");
  add_cache_flags(cmd_compare, opts);
  cmd_compare->add_option("--policies", policies_csv, "comma-separated policy tokens")->required();
  cmd_compare->add_option("--trace", opts.trace)->required();
  cmd_compare->add_option("--seed", opts.seed, "master seed of the schedule");
  cmd_compare->add_option("--seeds", opts.seeds, "number of derived seeds");
  cmd_compare->add_flag("--opt", with_opt);
  cmd_compare->add_option("--format", opts.format);
  cmd_compare->add_option("--out", opts.out);

  auto* cmd_opt = app.add_subcommand("opt", "exact offline optimum of a trace");
  add_cache_flags(cmd_opt, opts);
  cmd_opt->add_option("--trace", opts.trace)->required();
  cmd_opt->add_flag("--witness", with_witness, "include one optimal victim schedule");
  cmd_opt->add_option("--out", opts.out);

  auto* cmd_phases = app.add_subcommand("phases", "phase partition of a trace");
  add_cache_flags(cmd_phases, opts);
  cmd_phases->add_option("--trace", opts.trace)->required();
  cmd_phases->add_option("--out", opts.out);

  auto* cmd_adv = app.add_subcommand("adversary", "generate an adversarial workload");
  add_cache_flags(cmd_adv, opts);
  cmd_adv->add_option("--mode", mode, "cruel|tp")->required();
  cmd_adv->add_option("--policy", opts.policy, "target policy");
  cmd_adv->add_option("--steps", steps, "cruel: post-warmup requests; tp: phases");
  cmd_adv->add_option("--clones", clones, "tp: replica count (>= 100)");
  cmd_adv->add_option("--seed", opts.seed);
  cmd_adv->add_option("--emit-trace", emit_trace, "write the generated trace here");
  cmd_adv->add_option("--out", opts.out);

  auto* cmd_gen = app.add_subcommand("gen", "generate a synthetic trace");
  cmd_gen->add_option("--mode", gen_mode, "uniform|zipf");
  cmd_gen->add_option("--types", gen_types, "number of types")->required();
  cmd_gen->add_option("--items-per-type", gen_items, "items per type")->required();
  cmd_gen->add_option("--length", gen_length, "requests to draw")->required();
  cmd_gen->add_option("--seed", opts.seed);
  cmd_gen->add_option("--out", opts.out, "trace output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // help/version exit cleanly, misuse maps to 2
  }

  if (cmd_run->parsed()) {
    const ProblemParams params = params_of(opts);
    const RequestSequence seq = parse_trace_file(opts.trace);
    SimReport report = run(seq, params, parse_policy(opts.policy), opts.seed);
    if (with_opt) {
      report.opt_cost = opt_cost(seq, params).cost;
      report.ratio_vs_opt = *report.opt_cost > 0
                                ? report.faults_mean / static_cast<double>(*report.opt_cost)
                                : report.faults_mean;
    }
    emit_report_rows(opts, {report});
  } else if (cmd_expect->parsed()) {
    const ProblemParams params = params_of(opts);
    const RequestSequence seq = parse_trace_file(opts.trace);
    SimReport report =
        expect(seq, params, parse_policy(opts.policy), seed_schedule(opts.seed, opts.seeds));
    if (with_opt) {
      report.opt_cost = opt_cost(seq, params).cost;
      report.ratio_vs_opt = *report.opt_cost > 0
                                ? report.faults_mean / static_cast<double>(*report.opt_cost)
                                : report.faults_mean;
    }
    emit_report_rows(opts, {report});
  } else if (cmd_compare->parsed()) {
    const ProblemParams params = params_of(opts);
    const RequestSequence seq = parse_trace_file(opts.trace);
    std::vector<PolicyKind> kinds;
    std::istringstream in(policies_csv);
    std::string token;
    while (std::getline(in, token, ',')) {
      if (!token.empty()) kinds.push_back(parse_policy(token));
    }
    if (kinds.empty()) throw UsageError("--policies: no policy tokens given");
    const auto rows = compare(seq, params, kinds, seed_schedule(opts.seed, opts.seeds), with_opt);
    emit_report_rows(opts, rows);
  } else if (cmd_opt->parsed()) {
    const ProblemParams params = params_of(opts);
    const RequestSequence seq = parse_trace_file(opts.trace);
    const OptResult result = opt_cost(seq, params);
    write_output(opts.out, opt_result_json(result, with_witness).dump(2));
  } else if (cmd_phases->parsed()) {
    const ProblemParams params = params_of(opts);
    const RequestSequence seq = parse_trace_file(opts.trace);
    PhaseTracker tracker(params);
    std::uint32_t index = 0;
    for (const Item& item : seq.requests) tracker.observe(++index, item);
    write_output(opts.out, phase_report_json(tracker.finalize(), false).dump(2));
  } else if (cmd_adv->parsed()) {
    AdversaryConfig cfg;
    cfg.params = params_of(opts);
    cfg.seed = opts.seed;
    cfg.steps = steps;
    cfg.clone_count = clones;
    const PolicyKind kind = parse_policy(opts.policy);
    if (mode == "cruel") {
      const CruelResult result = cruel_paging_adversary(kind, cfg);
      if (!emit_trace.empty()) write_trace_file(emit_trace, result.sigma);
      write_output(opts.out, cruel_result_json(result).dump(2));
    } else if (mode == "tp") {
      const TpAdversaryResult result = tp_distributional_adversary(kind, cfg);
      if (!emit_trace.empty()) write_trace_file(emit_trace, result.sigma);
      write_output(opts.out, tp_adversary_json(result).dump(2));
    } else {
      throw UsageError("unknown adversary mode: " + mode + " (expected cruel|tp)");
    }
  } else if (cmd_gen->parsed()) {
    RequestSequence seq;
    if (gen_mode == "uniform") {
      seq = gen_uniform(gen_types, gen_items, gen_length, opts.seed);
    } else if (gen_mode == "zipf") {
      seq = gen_zipf(gen_types, gen_items, gen_length, opts.seed);
    } else {
      throw UsageError("unknown gen mode: " + gen_mode + " (expected uniform|zipf)");
    }
    if (opts.out.empty()) {
      write_trace(std::cout, seq);
    } else {
      write_trace_file(opts.out, seq);
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << '\n';
    return 1;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
