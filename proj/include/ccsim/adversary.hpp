#pragma once

#include <cstdint>
#include <vector>

#include "ccsim/model.hpp"
#include "ccsim/policies.hpp"

namespace ccsim {

struct AdversaryConfig {
  ProblemParams params;
  std::uint64_t seed = 0;
  // cruel mode: number of post-warmup requests. tp mode: number of phases.
  int steps = 0;
  int clone_count = 1000;  // distributional mode only, must be >= 100
};

// Canonical adversary universe: n+1 types with k+1 items each, named with
// zero-padded tokens so lexicographic and numeric orders agree.
std::vector<Item> adversary_universe(const ProblemParams& params);

struct CruelResult {
  RequestSequence sigma;
  std::uint64_t alg_cost = 0;
  std::int64_t opt_cost = 0;
  bool opt_exact = false;  // false when the paging upper bound was used
  double ratio = 0.0;
};

// The paging-equivalence construction: (n+1)(k+1) items leave exactly one
// item uncached once the cache is warm, so after the canonical warmup every
// request to the unique uncached item is a guaranteed fault for the given
// deterministic policy. The optimum is computed exactly when the universe is
// within desk scale, otherwise bounded by one fault per (n+1)(k+1)-1
// requests after warmup.
CruelResult cruel_paging_adversary(PolicyKind kind, const AdversaryConfig& cfg);

struct TpAdversaryResult {
  RequestSequence sigma;
  int phases_measured = 0;
  int clone_count = 0;
  std::vector<double> per_phase_mean;   // mean faults per adversary phase, over clones
  double mean_cost_per_phase = 0.0;
  double mean_cost_per_phase_stderr = 0.0;  // Monte Carlo error over clones
};

// The distributional adversary against randomized type-preference policies.
// clone_count independent seeded replicas of the policy run in lockstep on
// the same emitted sequence; the replica ensemble provides the empirical
// "hole" distribution (each replica's cache misses exactly one universe item
// once warm). Per phase, the adversary sweeps the designated new item's type
// and then chases the hole through the remaining types in order of maximum
// estimated hole probability, requesting items in descending hole
// probability. Deterministic policies are accepted; their hole estimates
// degenerate to {0,1}.
TpAdversaryResult tp_distributional_adversary(PolicyKind kind, const AdversaryConfig& cfg);

// Synthetic workloads over a types x items_per_type universe; seeded and
// reproducible.
RequestSequence gen_uniform(int types, int items_per_type, int length, std::uint64_t seed);
RequestSequence gen_zipf(int types, int items_per_type, int length, std::uint64_t seed);

}  // namespace ccsim
