#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ccsim/model.hpp"

namespace ccsim {

struct PhaseEvent {
  bool phase_ended = false;
  std::vector<std::string> types_closed;  // marks of these types were erased
};

// Statistics of a finished partition. Phase p lives at array index p-1.
// The last phase is incomplete (its association set is materialized from the
// residual pending indices); complete phases are 1..last_complete.
struct PhaseStats {
  using Key = std::pair<std::string, int>;  // (type, phase)

  static constexpr int kNoNextPhase = std::numeric_limits<int>::max();

  int last_complete = 0;  // number of completed phases
  int total_phases = 0;   // includes the trailing incomplete phase if nonempty

  std::vector<std::vector<std::uint32_t>> issued;        // D_i
  std::vector<std::vector<std::uint32_t>> associated;    // P_i
  std::vector<std::vector<std::string>> types;           // T(P_i), sorted
  std::vector<std::set<Item>> items;                     // I(P_i)

  std::map<Key, int> new_items;             // g[t,i]
  std::map<Key, std::set<Item>> stale;      // L[t,i]
  std::map<Key, int> stale_excess;          // ell[t,i]
  std::map<Key, int> prev_phase;            // i^{-t}, 0 when none
  std::map<Key, int> next_phase;            // i^{+t}, kNoNextPhase when none
  std::vector<int> holes;                   // h_i, filled by instrumentation

  int g(const std::string& type, int phase) const;
  int ell(const std::string& type, int phase) const;
  int i_minus(const std::string& type, int phase) const;
  int h(int phase) const;
  bool phase_has_type(int phase, const std::string& type) const;
};

// Online phase partitioner. Consumes the request sequence one index at a
// time and maintains, per type, the pending request indices N(t) and pending
// item set M(t); an item is "marked" while it sits in some M(t). A phase
// ends when the pending per-type overflow sum would exceed the companion
// size; the types responsible are closed into P_i and their marks erased.
//
// The tracker is a pure function of the request sequence: it never looks at
// any policy's cache, so every policy run over the same sequence shares the
// same partition and the same marks.
class PhaseTracker {
 public:
  explicit PhaseTracker(ProblemParams params);

  // Processes request `index` (1-based, strictly sequential) for item e.
  PhaseEvent observe(std::uint32_t index, const Item& e);

  bool is_marked(const Item& e) const;

  int phase() const { return phase_; }               // current phase, >= 1
  int completed_phases() const { return phase_ - 1; }
  std::uint32_t processed() const { return processed_; }

  // sum_t max(0, |M(t)|-k); the cache can always accommodate all marks.
  int marked_overflow() const { return marked_overflow_; }

  // Views of the most recently completed phase: T(P_{i-1}) and I(P_{i-1}).
  // Empty during phase 1 (P_0 is the empty set).
  const std::vector<std::string>& prev_types() const;
  const std::set<Item>& prev_items() const;
  bool in_prev_items(const Item& e) const { return prev_items().count(e) > 0; }

  // Accessors for already-closed phases (1-based phase index).
  const std::vector<std::uint32_t>& associated(int p) const { return associated_[p - 1]; }
  const std::vector<std::string>& phase_types(int p) const { return types_[p - 1]; }
  const std::set<Item>& phase_items(int p) const { return items_[p - 1]; }
  const std::vector<std::vector<std::uint32_t>>& issued() const { return issued_; }

  // Hole instrumentation: call once per request, after observe() and before
  // the policy acts, with the cache contents at issue time. Updates the
  // running maximum h_i of |I(P_{i-1}) \ cached| for the current phase.
  void record_holes(const std::set<Item>& cached);

  // Materializes the trailing incomplete phase from the residual pending
  // indices and computes the per-phase/type statistics. Also validates the
  // partition bounds that hold for every complete phase.
  PhaseStats finalize() const;

 private:
  ProblemParams params_;
  int phase_ = 1;
  std::uint32_t processed_ = 0;
  int marked_overflow_ = 0;

  std::map<std::string, std::set<Item>> pending_items_;            // M(t)
  std::map<std::string, std::vector<std::uint32_t>> pending_idx_;  // N(t)

  std::vector<std::vector<std::uint32_t>> issued_;      // D, per phase
  std::vector<std::vector<std::uint32_t>> associated_;  // P, closed phases
  std::vector<std::vector<std::string>> types_;         // T(P_i)
  std::vector<std::set<Item>> items_;                   // I(P_i)
  std::vector<int> holes_;                              // h, per phase
};

}  // namespace ccsim
