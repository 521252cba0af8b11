#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ccsim/model.hpp"
#include "ccsim/phases.hpp"
#include "ccsim/rng.hpp"

namespace ccsim {

enum class PolicyKind {
  DetMarking,  // deterministic marking, LRU tie-break among unmarked
  TP1,
  TP2,
  TP,          // TP1 when k < n, otherwise TP2
  CW,
  LRU,         // ignores marks
  RandomEvict, // ignores marks
};

PolicyKind parse_policy(const std::string& token);  // det-marking|tp1|tp2|tp|cw|lru|rand
std::string policy_token(PolicyKind kind);

bool is_marking_family(PolicyKind kind);    // never evicts marked items
bool is_type_preference(PolicyKind kind);   // DetMarking, TP1, TP2 (and TP)
bool is_deterministic(PolicyKind kind);

// Everything a victim selection may look at. Supplied only on faults that
// require an eviction, after the phase update for the request has run.
struct PolicyContext {
  const CacheState& state;
  const PhaseTracker& tracker;
  Rng& rng;
  Item requested;
  // last request index per item, for the recency-based policies
  const std::map<Item, std::uint32_t>& last_requested;
};

// The three randomized eviction strategies. Candidates are drawn uniformly
// from canonically ordered lists; all three consider unmarked items only.
Item type_eviction(const PolicyContext& ctx);
Item cache_wide_eviction(const PolicyContext& ctx);
Item skewed_cache_wide_eviction(const PolicyContext& ctx);

// A policy instance: owns its random stream, resolves TP at construction.
class PolicyEngine {
 public:
  PolicyEngine(PolicyKind kind, const ProblemParams& params, std::uint64_t seed);

  PolicyKind requested_kind() const { return requested_; }
  PolicyKind effective_kind() const { return effective_; }
  Rng& rng() { return rng_; }

  Item select_victim(const PolicyContext& ctx);

 private:
  PolicyKind requested_;
  PolicyKind effective_;
  Rng rng_;
};

}  // namespace ccsim
