#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ccsim/model.hpp"
#include "ccsim/phases.hpp"
#include "ccsim/policies.hpp"

namespace ccsim {

struct StepResult {
  bool fault = false;
  bool phase_ended = false;
  std::optional<Item> victim;
};

// One policy replay over one request stream. Each step runs, in order:
// phase update, hole instrumentation, hit/insert/evict, then the runtime
// invariant checks. Violations throw InvariantViolation.
//
// Checked while stepping, per policy family:
//  - feasibility of the cached set (every policy);
//  - marked items are never evicted (marking family);
//  - represented types stay within T(P_{i-1}) u T(P_i), verified per phase
//    once T(P_i) is known (marking family);
//  - the sets of active types and active items only shrink within a phase
//    (type-preference policies).
class SimSession {
 public:
  SimSession(ProblemParams params, PolicyKind kind, std::uint64_t seed);

  StepResult step(const Item& e);

  const CacheState& cache() const { return cache_; }
  const PhaseTracker& tracker() const { return tracker_; }
  PolicyKind effective_policy() const { return engine_.effective_kind(); }

  std::uint64_t faults() const { return fault_indices_.size(); }
  const std::vector<std::uint32_t>& fault_indices() const { return fault_indices_; }

  // Runs the end-of-sequence checks and returns the finished statistics.
  PhaseStats finish();

 private:
  void check_represented_closure(int closed_phase);
  void recompute_active_sets();

  ProblemParams params_;
  PolicyEngine engine_;
  CacheState cache_;
  PhaseTracker tracker_;
  std::map<Item, std::uint32_t> last_requested_;
  std::vector<std::uint32_t> fault_indices_;
  std::uint32_t next_index_ = 1;

  bool check_marking_ = false;
  bool check_represented_ = false;
  bool check_active_monotone_ = false;

  std::set<std::string> represented_seen_;  // union over the current phase
  std::set<std::string> active_types_;
  std::set<Item> active_items_;
  int active_phase_ = 0;
};

// Per-run (or per-seed-ensemble) accounting.
struct SimReport {
  std::string policy;
  ProblemParams params;
  std::vector<std::uint64_t> seeds;

  double faults_mean = 0.0;
  double faults_stderr = 0.0;
  std::uint64_t faults = 0;  // exact when seeds.size() == 1

  int complete_phases = 0;
  std::map<int, double> per_phase_faults;  // faults on P_i indices, mean over seeds
  std::map<int, double> holes_mean;        // h_i mean over seeds
  PhaseStats stats;                        // partition and g/ell of the sequence

  std::optional<std::int64_t> opt_cost;
  std::optional<double> ratio_vs_opt;
  double ratio_vs_phase_bound = 0.0;  // faults_mean / max(1, complete_phases)
};

SimReport run(const RequestSequence& seq, ProblemParams params, PolicyKind kind,
              std::uint64_t seed);

// Mean and standard error over independent seeded runs.
SimReport expect(const RequestSequence& seq, ProblemParams params, PolicyKind kind,
                 const std::vector<std::uint64_t>& seeds);

// One expect() row per policy, optionally joined with the exact optimum and
// always with the phase-count lower bound.
std::vector<SimReport> compare(const RequestSequence& seq, ProblemParams params,
                               const std::vector<PolicyKind>& kinds,
                               const std::vector<std::uint64_t>& seeds, bool with_opt);

}  // namespace ccsim
