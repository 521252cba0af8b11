#include "ccsim/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>

#include "ccsim/errors.hpp"
#include "ccsim/harness.hpp"
#include "ccsim/oracle.hpp"
#include "ccsim/rng.hpp"

namespace ccsim {

namespace {

std::string padded_token(char prefix, int value, int count) {
  int width = 1;
  for (int v = count - 1; v >= 10; v /= 10) width += 1;
  std::string digits = std::to_string(value);
  return prefix + std::string(width - digits.size(), '0') + digits;
}

std::vector<Item> make_universe(int types, int items_per_type) {
  std::vector<Item> universe;
  for (int t = 0; t < types; ++t) {
    for (int i = 0; i < items_per_type; ++i) {
      universe.push_back(Item{padded_token('t', t, types), padded_token('i', i, items_per_type)});
    }
  }
  return universe;
}

// Lockstep ensemble of policy replicas sharing one request stream. Once the
// cache is warm every replica misses exactly one universe item (its "hole");
// holes move to the eviction victim on each fault, so they can be tracked
// incrementally. The fraction of replicas whose hole matches an item or a
// type is the adversary's empirical distribution.
class CloneEnsemble {
 public:
  CloneEnsemble(const ProblemParams& params, PolicyKind kind, std::uint64_t master_seed,
                int clones) {
    sessions_.reserve(clones);
    for (int c = 0; c < clones; ++c) {
      sessions_.emplace_back(params, kind, derive_seed(master_seed, c));
    }
    fault_counts_.assign(clones, 0);
  }

  void emit(const Item& e, RequestSequence& sigma) {
    sigma.requests.push_back(e);
    for (std::size_t c = 0; c < sessions_.size(); ++c) {
      const StepResult res = sessions_[c].step(e);
      if (res.fault) {
        fault_counts_[c] += 1;
        if (!holes_.empty()) {
          if (!res.victim) {
            throw InvariantViolation("tp adversary: warm replica faulted without eviction");
          }
          holes_[c] = *res.victim;
        }
      }
    }
    const int expect_phase = sessions_.front().tracker().phase();
    for (const SimSession& session : sessions_) {
      if (session.tracker().phase() != expect_phase) {
        throw InvariantViolation("clone ensemble diverged in phase structure");
      }
    }
  }

  void init_holes(const std::vector<Item>& universe) {
    holes_.clear();
    for (const SimSession& session : sessions_) {
      std::optional<Item> hole;
      for (const Item& item : universe) {
        if (!session.cache().contains(item)) {
          if (hole) throw InvariantViolation("tp adversary: replica has multiple holes");
          hole = item;
        }
      }
      if (!hole) throw InvariantViolation("tp adversary: replica has no hole after warmup");
      holes_.push_back(*hole);
    }
  }

  double type_hole_fraction(const std::string& type) const {
    int holding = 0;
    for (const Item& hole : holes_) {
      if (hole.type == type) holding += 1;
    }
    return static_cast<double>(holding) / static_cast<double>(holes_.size());
  }

  double item_hole_fraction(const Item& item) const {
    int missing = 0;
    for (const Item& hole : holes_) {
      if (hole == item) missing += 1;
    }
    return static_cast<double>(missing) / static_cast<double>(holes_.size());
  }

  int phase() const { return sessions_.front().tracker().phase(); }
  std::uint64_t faults_of(std::size_t clone) const { return fault_counts_[clone]; }
  std::size_t size() const { return sessions_.size(); }

  void finish() {
    for (SimSession& session : sessions_) session.finish();
  }

 private:
  std::vector<SimSession> sessions_;
  std::vector<std::uint64_t> fault_counts_;
  std::vector<Item> holes_;  // empty until init_holes
};

}  // namespace

std::vector<Item> adversary_universe(const ProblemParams& params) {
  return make_universe(params.companion_slots + 1, params.type_slots + 1);
}

CruelResult cruel_paging_adversary(PolicyKind kind, const AdversaryConfig& cfg) {
  cfg.params.validate();
  if (!is_deterministic(kind)) {
    throw UsageError("cruel adversary requires a deterministic policy (det-marking or lru)");
  }
  const std::vector<Item> universe = adversary_universe(cfg.params);
  const int capacity = cfg.params.competitive_bound();  // (n+1)(k+1)-1

  SimSession session(cfg.params, kind, cfg.seed);
  CruelResult result;
  auto emit = [&](const Item& e) {
    session.step(e);
    result.sigma.requests.push_back(e);
  };

  for (const Item& item : universe) emit(item);
  if (session.cache().size() != capacity) {
    throw InvariantViolation("cruel adversary: cache not full after warmup");
  }

  for (int s = 0; s < cfg.steps; ++s) {
    const Item* hole = nullptr;
    for (const Item& item : universe) {
      if (!session.cache().contains(item)) {
        if (hole != nullptr) throw InvariantViolation("cruel adversary: multiple holes");
        hole = &item;
      }
    }
    if (hole == nullptr) throw InvariantViolation("cruel adversary: no hole after warmup");
    emit(*hole);
  }

  session.finish();
  result.alg_cost = session.faults();

  const int distinct = static_cast<int>(universe.size());
  if (distinct <= kMaxOptDistinctItems) {
    result.opt_cost = opt_cost(result.sigma, cfg.params).cost;
    result.opt_exact = true;
  } else {
    // Any offline schedule faults on the warmup and then at most once per
    // `capacity` requests; use that ceiling as a conservative denominator.
    const std::int64_t post = static_cast<std::int64_t>(result.sigma.size()) - distinct;
    result.opt_cost = distinct + (post > 0 ? 1 + (post - 1) / capacity : 0);
    result.opt_exact = false;
  }
  result.ratio = result.opt_cost > 0
                     ? static_cast<double>(result.alg_cost) / static_cast<double>(result.opt_cost)
                     : static_cast<double>(result.alg_cost);
  return result;
}

TpAdversaryResult tp_distributional_adversary(PolicyKind kind, const AdversaryConfig& cfg) {
  cfg.params.validate();
  if (cfg.clone_count < 100) {
    throw UsageError("distributional adversary requires clone_count >= 100");
  }
  const int k = cfg.params.type_slots;
  const std::vector<Item> universe = adversary_universe(cfg.params);
  std::vector<std::string> type_tokens;
  for (const Item& item : universe) {
    if (type_tokens.empty() || type_tokens.back() != item.type) type_tokens.push_back(item.type);
  }
  std::map<std::string, std::vector<Item>> items_of_type;
  for (const Item& item : universe) items_of_type[item.type].push_back(item);

  TpAdversaryResult result;
  result.clone_count = cfg.clone_count;
  CloneEnsemble clones(cfg.params, kind, cfg.seed, cfg.clone_count);

  // Warmup sweeps every type once; the partition's first phase ends exactly
  // on the last warmup request.
  for (const Item& item : universe) clones.emit(item, result.sigma);
  if (clones.phase() != 2) {
    throw InvariantViolation("tp adversary: warmup did not close exactly one phase");
  }
  clones.init_holes(universe);

  // Requests one type's items, most-likely-hole first (re-estimated before
  // every request; ties break canonically). The designated new item of a
  // phase is requested first regardless of its estimate.
  auto sweep = [&](const std::string& type, const Item* new_item) {
    std::vector<Item> pending;
    for (const Item& item : items_of_type.at(type)) {
      if (new_item != nullptr && item == *new_item) continue;
      pending.push_back(item);
    }
    if (new_item != nullptr) clones.emit(*new_item, result.sigma);
    while (!pending.empty()) {
      std::size_t best = 0;
      double best_frac = -1.0;
      for (std::size_t i = 0; i < pending.size(); ++i) {
        const double frac = clones.item_hole_fraction(pending[i]);
        if (frac > best_frac) {
          best_frac = frac;
          best = i;
        }
      }
      clones.emit(pending[best], result.sigma);
      pending.erase(pending.begin() + best);
    }
  };

  std::vector<std::uint64_t> phase_start_faults(cfg.clone_count);
  std::vector<int> reserve(type_tokens.size(), 0);
  result.per_phase_mean.resize(cfg.steps, 0.0);
  std::vector<double> per_clone_total(cfg.clone_count, 0.0);

  for (int p = 0; p < cfg.steps; ++p) {
    for (int c = 0; c < cfg.clone_count; ++c) phase_start_faults[c] = clones.faults_of(c);
    const int phase_before = clones.phase();

    // One new item per phase: cycle the designated types round-robin and the
    // reserve slot within each type, so the sweep leads with an item absent
    // from the type's previous association.
    const int new_type_index = p % static_cast<int>(type_tokens.size());
    const std::string& new_type = type_tokens[new_type_index];
    const Item new_item = items_of_type.at(new_type)[reserve[new_type_index]];
    reserve[new_type_index] = (reserve[new_type_index] + 1) % (k + 1);
    sweep(new_type, &new_item);

    // Chase the hole through the remaining types, most likely first.
    std::vector<std::string> remaining;
    for (const std::string& type : type_tokens) {
      if (type != new_type) remaining.push_back(type);
    }
    while (!remaining.empty()) {
      std::size_t best = 0;
      double best_frac = -1.0;
      for (std::size_t i = 0; i < remaining.size(); ++i) {
        const double frac = clones.type_hole_fraction(remaining[i]);
        if (frac > best_frac) {
          best_frac = frac;
          best = i;
        }
      }
      sweep(remaining[best], nullptr);
      remaining.erase(remaining.begin() + best);
    }

    if (clones.phase() != phase_before + 1) {
      throw InvariantViolation("tp adversary: phase boundary misaligned with sweep schedule");
    }
    double mean = 0.0;
    for (int c = 0; c < cfg.clone_count; ++c) {
      const double faults = static_cast<double>(clones.faults_of(c) - phase_start_faults[c]);
      mean += faults;
      per_clone_total[c] += faults;
    }
    result.per_phase_mean[p] = mean / cfg.clone_count;
  }

  clones.finish();
  result.phases_measured = cfg.steps;
  if (cfg.steps > 0) {
    double total = 0.0;
    for (double m : result.per_phase_mean) total += m;
    result.mean_cost_per_phase = total / cfg.steps;

    double mean_clone = 0.0;
    for (double t : per_clone_total) mean_clone += t / cfg.steps;
    mean_clone /= cfg.clone_count;
    double var = 0.0;
    for (double t : per_clone_total) {
      const double x = t / cfg.steps - mean_clone;
      var += x * x;
    }
    result.mean_cost_per_phase_stderr =
        cfg.clone_count > 1 ? std::sqrt(var / (cfg.clone_count - 1)) / std::sqrt(cfg.clone_count)
                            : 0.0;
  }
  return result;
}

RequestSequence gen_uniform(int types, int items_per_type, int length, std::uint64_t seed) {
  if (types < 1 || items_per_type < 1) throw UsageError("gen: empty item universe");
  const std::vector<Item> universe = make_universe(types, items_per_type);
  Rng rng(seed);
  RequestSequence seq;
  for (int i = 0; i < length; ++i) {
    seq.requests.push_back(universe[rng.uniform_below(universe.size())]);
  }
  return seq;
}

RequestSequence gen_zipf(int types, int items_per_type, int length, std::uint64_t seed) {
  if (types < 1 || items_per_type < 1) throw UsageError("gen: empty item universe");
  const std::vector<Item> universe = make_universe(types, items_per_type);
  std::vector<double> cumulative(universe.size());
  double total = 0.0;
  for (std::size_t r = 0; r < universe.size(); ++r) {
    total += 1.0 / static_cast<double>(r + 1);  // Zipf with exponent 1
    cumulative[r] = total;
  }
  Rng rng(seed);
  RequestSequence seq;
  for (int i = 0; i < length; ++i) {
    const double u = rng.uniform01() * total;
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    const std::size_t rank = std::min<std::size_t>(it - cumulative.begin(), universe.size() - 1);
    seq.requests.push_back(universe[rank]);
  }
  return seq;
}

}  // namespace ccsim
