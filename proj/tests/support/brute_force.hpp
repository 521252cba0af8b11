#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ccsim/model.hpp"

// Test-only oracle: minimum fault count over ALL schedules, including
// non-lazy ones that evict voluntarily. Enumerates every eviction subset
// before each request; only usable on tiny instances. Independent of the
// lazy DP in ccsim::opt_cost, which it cross-validates.
namespace ccsim::testing {

class BruteForceOpt {
 public:
  BruteForceOpt(const RequestSequence& seq, const ProblemParams& params)
      : params_(params) {
    std::map<Item, int> ids;
    for (const Item& item : seq.requests) {
      auto [it, inserted] = ids.try_emplace(item, static_cast<int>(items_.size()));
      if (inserted) items_.push_back(item);
      request_ids_.push_back(it->second);
    }
    for (std::size_t id = 0; id < items_.size(); ++id) {
      int t = -1;
      for (std::size_t i = 0; i < type_names_.size(); ++i) {
        if (type_names_[i] == items_[id].type) t = static_cast<int>(i);
      }
      if (t < 0) {
        t = static_cast<int>(type_names_.size());
        type_names_.push_back(items_[id].type);
        type_masks_.push_back(0);
      }
      type_masks_[t] |= 1u << id;
    }
  }

  std::int64_t cost() { return solve(0, 0); }

 private:
  bool feasible(std::uint32_t mask) const {
    int total = 0;
    for (std::uint32_t tm : type_masks_) {
      total += std::max(0, __builtin_popcount(mask & tm) - params_.type_slots);
    }
    return total <= params_.companion_slots;
  }

  std::int64_t solve(std::size_t j, std::uint32_t mask) {
    if (j == request_ids_.size()) return 0;
    const auto key = std::make_pair(j, mask);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;

    const std::uint32_t bit = 1u << request_ids_[j];
    std::int64_t best = -1;
    // Enumerate every subset of the current cache as a voluntary eviction.
    for (std::uint32_t sub = mask;; sub = (sub - 1) & mask) {
      const std::uint32_t survivors = mask & ~sub;
      const std::uint32_t next = survivors | bit;
      if (feasible(next)) {
        const std::int64_t fault = (survivors & bit) ? 0 : 1;
        const std::int64_t total = fault + solve(j + 1, next);
        if (best < 0 || total < best) best = total;
      }
      if (sub == 0) break;
    }
    memo_[key] = best;
    return best;
  }

  ProblemParams params_;
  std::vector<Item> items_;
  std::vector<std::string> type_names_;
  std::vector<std::uint32_t> type_masks_;
  std::vector<int> request_ids_;
  std::map<std::pair<std::size_t, std::uint32_t>, std::int64_t> memo_;
};

}  // namespace ccsim::testing
