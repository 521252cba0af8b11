#include "ccsim/oracle.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <string>

#include "ccsim/errors.hpp"

namespace ccsim {

namespace {

using Mask = std::uint32_t;

// The request sequence mapped onto dense item ids (first-appearance order)
// with per-type membership masks.
struct Universe {
  std::vector<Item> items;            // id -> item
  std::vector<int> item_type;         // id -> type index
  std::vector<Mask> type_mask;        // type index -> members
  std::vector<int> request_ids;       // per request position (0-based)
};

Universe index_requests(const RequestSequence& seq) {
  Universe u;
  std::map<Item, int> ids;
  std::map<std::string, int> type_ids;
  for (const Item& item : seq.requests) {
    auto [it, inserted] = ids.try_emplace(item, static_cast<int>(u.items.size()));
    if (inserted) {
      u.items.push_back(item);
      auto [tit, t_inserted] =
          type_ids.try_emplace(item.type, static_cast<int>(u.type_mask.size()));
      if (t_inserted) u.type_mask.push_back(0);
      u.item_type.push_back(tit->second);
      u.type_mask[tit->second] |= Mask{1} << it->second;
    }
    u.request_ids.push_back(it->second);
  }
  if (static_cast<int>(u.items.size()) > kMaxOptDistinctItems) {
    throw InstanceTooLargeError(
        "opt_cost: " + std::to_string(u.items.size()) + " distinct items exceeds the limit of " +
        std::to_string(kMaxOptDistinctItems));
  }
  return u;
}

int overflow_of(Mask mask, const Universe& u, int k) {
  int total = 0;
  for (Mask tm : u.type_mask) {
    total += std::max(0, std::popcount(mask & tm) - k);
  }
  return total;
}

// Candidate victims for caching item `id` into `mask`: cached items of the
// same type plus cached items of represented types.
std::vector<int> candidate_ids(Mask mask, int id, const Universe& u, int k) {
  std::vector<int> out;
  const int type = u.item_type[id];
  for (int v = 0; v < static_cast<int>(u.items.size()); ++v) {
    if ((mask & (Mask{1} << v)) == 0) continue;
    const int vt = u.item_type[v];
    if (vt == type || std::popcount(mask & u.type_mask[vt]) > k) out.push_back(v);
  }
  return out;
}

}  // namespace

OptResult opt_cost(const RequestSequence& seq, const ProblemParams& params) {
  params.validate();
  const Universe u = index_requests(seq);
  const int n = params.companion_slots;
  const int k = params.type_slots;
  const std::size_t len = seq.requests.size();

  OptResult result;
  if (len == 0) return result;

  // Forward pass: the set of cached-set states reachable before each request
  // under lazy schedules. Hits and feasible inserts have one successor; an
  // eviction branches over all candidates.
  std::vector<std::map<Mask, std::int64_t>> level(len + 1);
  level[0][0] = 0;
  for (std::size_t j = 0; j < len; ++j) {
    const int id = u.request_ids[j];
    const Mask bit = Mask{1} << id;
    for (const auto& [mask, unused] : level[j]) {
      (void)unused;
      if (mask & bit) {
        level[j + 1][mask];
        continue;
      }
      const int type = u.item_type[id];
      const bool fits = std::popcount(mask & u.type_mask[type]) < k ||
                        overflow_of(mask, u, k) < n;
      if (fits) {
        level[j + 1][mask | bit];
        continue;
      }
      for (int v : candidate_ids(mask, id, u, k)) {
        level[j + 1][(mask & ~(Mask{1} << v)) | bit];
      }
    }
  }

  // Backward pass: minimum faults from each reachable state to the end.
  for (auto& [mask, cost] : level[len]) cost = 0;
  for (std::size_t j = len; j-- > 0;) {
    const int id = u.request_ids[j];
    const Mask bit = Mask{1} << id;
    for (auto& [mask, cost] : level[j]) {
      if (mask & bit) {
        cost = level[j + 1].at(mask);
        continue;
      }
      const int type = u.item_type[id];
      const bool fits = std::popcount(mask & u.type_mask[type]) < k ||
                        overflow_of(mask, u, k) < n;
      if (fits) {
        cost = 1 + level[j + 1].at(mask | bit);
        continue;
      }
      std::int64_t best = -1;
      for (int v : candidate_ids(mask, id, u, k)) {
        const std::int64_t c = 1 + level[j + 1].at((mask & ~(Mask{1} << v)) | bit);
        if (best < 0 || c < best) best = c;
      }
      cost = best;
    }
    result.states_explored += level[j].size();
  }
  result.cost = level[0].at(0);

  // Witness walk: follow one optimal schedule, breaking eviction ties by the
  // lexicographically smallest victim item.
  Mask mask = 0;
  for (std::size_t j = 0; j < len; ++j) {
    const int id = u.request_ids[j];
    const Mask bit = Mask{1} << id;
    if (mask & bit) continue;
    const int type = u.item_type[id];
    const bool fits = std::popcount(mask & u.type_mask[type]) < k ||
                      overflow_of(mask, u, k) < n;
    if (fits) {
      mask |= bit;
      continue;
    }
    std::vector<int> cands = candidate_ids(mask, id, u, k);
    std::sort(cands.begin(), cands.end(),
              [&](int a, int b) { return u.items[a] < u.items[b]; });
    const std::int64_t here = level[j].at(mask);
    for (int v : cands) {
      const Mask next = (mask & ~(Mask{1} << v)) | bit;
      if (1 + level[j + 1].at(next) == here) {
        result.witness.push_back({static_cast<std::uint32_t>(j + 1), u.items[v]});
        mask = next;
        break;
      }
    }
  }
  return result;
}

int phase_lower_bound(const RequestSequence& seq, const ProblemParams& params) {
  PhaseTracker tracker(params);
  std::uint32_t index = 0;
  for (const Item& item : seq.requests) {
    tracker.observe(++index, item);
  }
  return tracker.completed_phases();
}

OptLowerBoundEstimate opt_lb_estimate(const PhaseStats& stats) {
  OptLowerBoundEstimate estimate;
  for (int p = 1; p <= stats.last_complete; ++p) {
    for (const std::string& type : stats.types[p - 1]) {
      estimate.numerator += stats.g(type, p);
      const int prev = stats.i_minus(type, p);
      if (prev > 0) estimate.numerator += stats.ell(type, prev);
    }
  }
  return estimate;
}

}  // namespace ccsim
