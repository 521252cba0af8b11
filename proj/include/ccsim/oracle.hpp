#pragma once

#include <cstdint>
#include <vector>

#include "ccsim/model.hpp"
#include "ccsim/phases.hpp"

namespace ccsim {

// Hard ceiling on distinct items accepted by the exact optimum.
inline constexpr int kMaxOptDistinctItems = 14;

struct WitnessStep {
  std::uint32_t index;  // request index that required the eviction
  Item victim;
};

struct OptResult {
  std::int64_t cost = 0;
  std::vector<WitnessStep> witness;  // one optimal schedule, eviction steps only
  std::uint64_t states_explored = 0;
};

// Exact minimum fault count over all lazy schedules, by memoized search on
// (request index, cached set). Lazy is without loss of generality, the
// companion analogue of the classical paging fact. On a fault that requires
// an eviction the search branches over all eviction candidates. The witness
// reports the lexicographically first victim sequence among optimal ones.
// Throws InstanceTooLargeError beyond kMaxOptDistinctItems distinct items.
OptResult opt_cost(const RequestSequence& seq, const ProblemParams& params);

// Number of complete phases of the sequence; a per-sequence fault lower
// bound that applies to every caching algorithm, online or offline.
int phase_lower_bound(const RequestSequence& seq, const ProblemParams& params);

// The amortized offline lower bound
//   (1/4) * sum_{i <= last_complete} sum_{t in T(P_i)} (g[t,i] + ell[t, i^-t]).
// Kept as an exact rational (denominator 4); diagnostic only.
struct OptLowerBoundEstimate {
  std::int64_t numerator = 0;  // sum of g + ell terms
  double value() const { return static_cast<double>(numerator) / 4.0; }
};

OptLowerBoundEstimate opt_lb_estimate(const PhaseStats& stats);

}  // namespace ccsim
