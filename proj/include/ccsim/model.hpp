#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace ccsim {

// A memory item identified by (type token, item token). Ordering is
// lexicographic on (type, id); every "choose among a set" in the simulator
// runs over this canonical order so runs are reproducible.
struct Item {
  std::string type;
  std::string id;

  auto operator<=>(const Item&) const = default;
};

std::string to_string(const Item& item);

// Cache geometry: a k-slot main cache per type plus one fully associative
// companion cache of n slots shared by all types.
struct ProblemParams {
  int companion_slots = 1;              // n
  int type_slots = 1;                   // k
  std::optional<int> num_types;         // m, informational

  ProblemParams() = default;
  ProblemParams(int n, int k, std::optional<int> m = std::nullopt)
      : companion_slots(n), type_slots(k), num_types(m) {}

  // Throws UsageError unless n >= 1 and k >= 1.
  void validate() const;

  // Nonempty when the degenerate m <= n configuration is in use.
  std::string warning() const;

  // (n+1)(k+1)-1: the deterministic competitive ratio of the problem, and
  // the per-phase fault ceiling of marking policies.
  int competitive_bound() const {
    return (companion_slots + 1) * (type_slots + 1) - 1;
  }
};

// An ordered request sequence; indices are 1-based throughout.
struct RequestSequence {
  std::vector<Item> requests;

  std::uint32_t size() const { return static_cast<std::uint32_t>(requests.size()); }
  const Item& at(std::uint32_t index_1based) const { return requests[index_1based - 1]; }

  std::set<Item> distinct() const;
};

// The set of cached items under the feasibility constraint
//   sum_t max(0, count_t - k) <= n.
// Slot placement is not modeled: same-type items move between main and
// companion caches for free, so only the set matters.
class CacheState {
 public:
  explicit CacheState(ProblemParams params);

  const ProblemParams& params() const { return params_; }
  const std::set<Item>& items() const { return cached_; }
  bool contains(const Item& e) const { return cached_.count(e) > 0; }
  int size() const { return static_cast<int>(cached_.size()); }

  int type_count(const std::string& type) const;

  // sum_t max(0, count_t - k); always <= n.
  int overflow() const { return overflow_; }

  // A type with more than k cached items occupies companion slots.
  bool is_represented(const std::string& type) const;
  std::vector<std::string> represented_types() const;  // sorted

  // True iff inserting e would break feasibility. Throws if e is cached.
  bool needs_eviction(const Item& e) const;

  // All cached items whose removal makes room for an item of `type`:
  // items of `type` itself plus items of represented types. Sorted.
  std::vector<Item> eviction_candidates(const std::string& type) const;

  // Serves a request for e. Returns true on a fault. The victim must be
  // present exactly when needs_eviction(e) holds and must be a candidate.
  bool apply_request(const Item& e, const std::optional<Item>& victim = std::nullopt);

 private:
  void insert(const Item& e);
  void remove(const Item& e);

  ProblemParams params_;
  std::set<Item> cached_;
  std::map<std::string, int> counts_;
  int overflow_ = 0;
};

}  // namespace ccsim
