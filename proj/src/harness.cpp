#include "ccsim/harness.hpp"

#include <algorithm>
#include <cmath>

#include "ccsim/errors.hpp"
#include "ccsim/oracle.hpp"

namespace ccsim {

SimSession::SimSession(ProblemParams params, PolicyKind kind, std::uint64_t seed)
    : params_(params),
      engine_(kind, params, seed),
      cache_(params),
      tracker_(params) {
  check_marking_ = is_marking_family(kind);
  check_represented_ = is_marking_family(kind);
  check_active_monotone_ = is_type_preference(kind);
}

StepResult SimSession::step(const Item& e) {
  const std::uint32_t index = next_index_++;
  StepResult result;

  const PhaseEvent event = tracker_.observe(index, e);
  result.phase_ended = event.phase_ended;
  if (event.phase_ended && check_represented_) {
    check_represented_closure(tracker_.phase() - 1);
  }
  tracker_.record_holes(cache_.items());

  if (!cache_.contains(e)) {
    result.fault = true;
    fault_indices_.push_back(index);
    if (cache_.needs_eviction(e)) {
      PolicyContext ctx{cache_, tracker_, engine_.rng(), e, last_requested_};
      const Item victim = engine_.select_victim(ctx);
      if (check_marking_ && tracker_.is_marked(victim)) {
        throw InvariantViolation("marking policy evicted marked item " + to_string(victim) +
                                 " at index " + std::to_string(index));
      }
      cache_.apply_request(e, victim);
      result.victim = victim;
    } else {
      cache_.apply_request(e);
    }
  }
  last_requested_[e] = index;

  if (check_represented_) {
    for (const std::string& type : cache_.represented_types()) {
      represented_seen_.insert(type);
    }
  }
  if (check_active_monotone_) recompute_active_sets();
  return result;
}

void SimSession::check_represented_closure(int closed_phase) {
  // Every type that was represented at any time while phase `closed_phase`
  // was current must lie in T(P_{closed-1}) u T(P_closed).
  for (const std::string& type : represented_seen_) {
    const bool in_closed = [&] {
      const auto& ts = tracker_.phase_types(closed_phase);
      return std::binary_search(ts.begin(), ts.end(), type);
    }();
    bool in_before = false;
    if (closed_phase >= 2) {
      const auto& ts = tracker_.phase_types(closed_phase - 1);
      in_before = std::binary_search(ts.begin(), ts.end(), type);
    }
    if (!in_closed && !in_before) {
      throw InvariantViolation("type " + type + " was represented during phase " +
                               std::to_string(closed_phase) +
                               " but closed outside T(P_{i-1}) u T(P_i)");
    }
  }
  represented_seen_.clear();
}

void SimSession::recompute_active_sets() {
  // Active type: in T(P_{i-1}), represented, and with an unmarked cached
  // item. Active item: unmarked, in I(P_{i-1}), of an active type. Both
  // sets may only shrink while the phase index stays put.
  std::set<std::string> types_now;
  for (const std::string& type : tracker_.prev_types()) {
    if (!cache_.is_represented(type)) continue;
    bool has_unmarked = false;
    for (const Item& item : cache_.items()) {
      if (item.type == type && !tracker_.is_marked(item)) {
        has_unmarked = true;
        break;
      }
    }
    if (has_unmarked) types_now.insert(type);
  }
  std::set<Item> items_now;
  for (const Item& item : tracker_.prev_items()) {
    if (types_now.count(item.type) && !tracker_.is_marked(item)) items_now.insert(item);
  }

  if (tracker_.phase() == active_phase_) {
    if (!std::includes(active_types_.begin(), active_types_.end(),
                       types_now.begin(), types_now.end())) {
      throw InvariantViolation("active type set grew within a phase");
    }
    if (!std::includes(active_items_.begin(), active_items_.end(),
                       items_now.begin(), items_now.end())) {
      throw InvariantViolation("active item set grew within a phase");
    }
  }
  active_phase_ = tracker_.phase();
  active_types_ = std::move(types_now);
  active_items_ = std::move(items_now);
}

PhaseStats SimSession::finish() {
  PhaseStats stats = tracker_.finalize();
  if (check_represented_ && !represented_seen_.empty() && stats.total_phases >= 1) {
    // Residual phase: check against the materialized trailing association.
    const int f = stats.total_phases;
    for (const std::string& type : represented_seen_) {
      const bool in_last = stats.phase_has_type(f, type);
      const bool in_before = f >= 2 && stats.phase_has_type(f - 1, type);
      if (!in_last && !in_before) {
        throw InvariantViolation("type " + type +
                                 " was represented during the final phase but is outside "
                                 "T(P_{f-1}) u T(P_f)");
      }
    }
  }
  if (check_marking_) {
    // Fault ceiling per associated phase, and the aggregate marking bound.
    std::map<std::uint32_t, int> phase_of;
    for (int p = 1; p <= stats.total_phases; ++p) {
      for (std::uint32_t idx : stats.associated[p - 1]) phase_of[idx] = p;
    }
    std::map<int, std::uint64_t> per_phase;
    for (std::uint32_t idx : fault_indices_) per_phase[phase_of.at(idx)] += 1;
    const int bound = params_.competitive_bound();
    std::uint64_t residual_allowance = 0;
    for (const auto& [p, count] : per_phase) {
      if (p <= stats.last_complete) {
        if (count > static_cast<std::uint64_t>(bound)) {
          throw InvariantViolation("phase " + std::to_string(p) + ": " +
                                   std::to_string(count) +
                                   " faults exceed the per-phase marking bound " +
                                   std::to_string(bound));
        }
      } else {
        residual_allowance = stats.items[p - 1].size();
      }
    }
    if (faults() > static_cast<std::uint64_t>(bound) * stats.last_complete + residual_allowance) {
      throw InvariantViolation("total faults exceed the marking bound");
    }
  }
  return stats;
}

namespace {

std::map<int, double> attribute_faults(const PhaseStats& stats,
                                       const std::vector<std::uint32_t>& fault_indices) {
  std::map<std::uint32_t, int> phase_of;
  for (int p = 1; p <= stats.total_phases; ++p) {
    for (std::uint32_t idx : stats.associated[p - 1]) phase_of[idx] = p;
  }
  std::map<int, double> out;
  for (std::uint32_t idx : fault_indices) out[phase_of.at(idx)] += 1.0;
  return out;
}

}  // namespace

SimReport run(const RequestSequence& seq, ProblemParams params, PolicyKind kind,
              std::uint64_t seed) {
  SimSession session(params, kind, seed);
  for (const Item& item : seq.requests) session.step(item);
  PhaseStats stats = session.finish();

  SimReport report;
  report.policy = policy_token(kind);
  report.params = params;
  report.seeds = {seed};
  report.faults = session.faults();
  report.faults_mean = static_cast<double>(session.faults());
  report.faults_stderr = 0.0;
  report.complete_phases = stats.last_complete;
  report.per_phase_faults = attribute_faults(stats, session.fault_indices());
  for (int p = 1; p <= stats.total_phases; ++p) report.holes_mean[p] = stats.h(p);
  report.stats = std::move(stats);
  report.ratio_vs_phase_bound =
      report.faults_mean / std::max(1, report.complete_phases);
  return report;
}

SimReport expect(const RequestSequence& seq, ProblemParams params, PolicyKind kind,
                 const std::vector<std::uint64_t>& seeds) {
  if (seeds.empty()) throw UsageError("expect: at least one seed required");
  SimReport report;
  std::vector<double> fault_counts;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    SimReport one = run(seq, params, kind, seeds[i]);
    fault_counts.push_back(one.faults_mean);
    for (const auto& [p, count] : one.per_phase_faults) report.per_phase_faults[p] += count;
    for (const auto& [p, h] : one.holes_mean) report.holes_mean[p] += h;
    if (i == 0) {
      report.policy = one.policy;
      report.params = one.params;
      report.complete_phases = one.complete_phases;
      report.stats = std::move(one.stats);
    }
  }
  report.seeds = seeds;
  const double s = static_cast<double>(seeds.size());
  double mean = 0.0;
  for (double f : fault_counts) mean += f;
  mean /= s;
  double var = 0.0;
  for (double f : fault_counts) var += (f - mean) * (f - mean);
  report.faults_mean = mean;
  report.faults = static_cast<std::uint64_t>(mean + 0.5);
  report.faults_stderr = seeds.size() > 1 ? std::sqrt(var / (s - 1)) / std::sqrt(s) : 0.0;
  for (auto& [p, count] : report.per_phase_faults) count /= s;
  for (auto& [p, h] : report.holes_mean) h /= s;
  report.ratio_vs_phase_bound = report.faults_mean / std::max(1, report.complete_phases);
  return report;
}

std::vector<SimReport> compare(const RequestSequence& seq, ProblemParams params,
                               const std::vector<PolicyKind>& kinds,
                               const std::vector<std::uint64_t>& seeds, bool with_opt) {
  std::optional<std::int64_t> opt;
  if (with_opt) opt = opt_cost(seq, params).cost;
  std::vector<SimReport> rows;
  for (PolicyKind kind : kinds) {
    SimReport row = expect(seq, params, kind, seeds);
    if (opt) {
      row.opt_cost = opt;
      row.ratio_vs_opt = *opt > 0 ? row.faults_mean / static_cast<double>(*opt)
                                  : row.faults_mean;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace ccsim
