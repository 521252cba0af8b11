#include "ccsim/policies.hpp"

#include <algorithm>
#include <set>

#include "ccsim/errors.hpp"

namespace ccsim {

namespace {

std::vector<Item> unmarked_of_type(const PolicyContext& ctx, const std::string& type) {
  std::vector<Item> out;
  for (const Item& item : ctx.state.items()) {
    if (item.type == type && !ctx.tracker.is_marked(item)) out.push_back(item);
  }
  return out;
}

// Unmarked cached items whose type is represented in the companion cache or
// equals the requested type; the candidate pool of cache-wide eviction.
std::vector<Item> unmarked_cache_wide(const PolicyContext& ctx) {
  std::vector<Item> out;
  for (const Item& item : ctx.state.items()) {
    if (ctx.tracker.is_marked(item)) continue;
    if (item.type == ctx.requested.type || ctx.state.is_represented(item.type)) {
      out.push_back(item);
    }
  }
  return out;
}

Item least_recently_requested(const PolicyContext& ctx, const std::vector<Item>& pool) {
  const Item* best = nullptr;
  std::uint32_t best_index = 0;
  for (const Item& item : pool) {
    auto it = ctx.last_requested.find(item);
    const std::uint32_t idx = it == ctx.last_requested.end() ? 0 : it->second;
    if (best == nullptr || idx < best_index) {
      best = &item;
      best_index = idx;
    }
  }
  if (best == nullptr) throw NoCandidateError("recency eviction: empty candidate pool");
  return *best;
}

Item uniform_pick(Rng& rng, const std::vector<Item>& pool, const char* what) {
  if (pool.empty()) throw NoCandidateError(std::string(what) + ": empty candidate pool");
  return pool[rng.uniform_below(pool.size())];
}

}  // namespace

PolicyKind parse_policy(const std::string& token) {
  if (token == "det-marking") return PolicyKind::DetMarking;
  if (token == "tp1") return PolicyKind::TP1;
  if (token == "tp2") return PolicyKind::TP2;
  if (token == "tp") return PolicyKind::TP;
  if (token == "cw") return PolicyKind::CW;
  if (token == "lru") return PolicyKind::LRU;
  if (token == "rand") return PolicyKind::RandomEvict;
  throw UsageError("unknown policy: " + token +
                   " (expected det-marking|tp1|tp2|tp|cw|lru|rand)");
}

std::string policy_token(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::DetMarking: return "det-marking";
    case PolicyKind::TP1: return "tp1";
    case PolicyKind::TP2: return "tp2";
    case PolicyKind::TP: return "tp";
    case PolicyKind::CW: return "cw";
    case PolicyKind::LRU: return "lru";
    case PolicyKind::RandomEvict: return "rand";
  }
  throw UsageError("unknown policy kind");
}

bool is_marking_family(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::DetMarking:
    case PolicyKind::TP1:
    case PolicyKind::TP2:
    case PolicyKind::TP:
    case PolicyKind::CW:
      return true;
    default:
      return false;
  }
}

bool is_type_preference(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::DetMarking:
    case PolicyKind::TP1:
    case PolicyKind::TP2:
    case PolicyKind::TP:
      return true;
    default:
      return false;
  }
}

bool is_deterministic(PolicyKind kind) {
  return kind == PolicyKind::DetMarking || kind == PolicyKind::LRU;
}

Item type_eviction(const PolicyContext& ctx) {
  return uniform_pick(ctx.rng, unmarked_of_type(ctx, ctx.requested.type), "type eviction");
}

Item cache_wide_eviction(const PolicyContext& ctx) {
  return uniform_pick(ctx.rng, unmarked_cache_wide(ctx), "cache-wide eviction");
}

Item skewed_cache_wide_eviction(const PolicyContext& ctx) {
  // Stage one: a type drawn uniformly among those in T u {t} that still have
  // an unmarked cached item. Stage two: uniform among that type's unmarked.
  std::set<std::string> eligible;
  for (const Item& item : ctx.state.items()) {
    if (ctx.tracker.is_marked(item)) continue;
    if (item.type == ctx.requested.type || ctx.state.is_represented(item.type)) {
      eligible.insert(item.type);
    }
  }
  if (eligible.empty()) throw NoCandidateError("skewed cache-wide eviction: no eligible type");
  std::vector<std::string> types(eligible.begin(), eligible.end());
  const std::string& chosen = types[ctx.rng.uniform_below(types.size())];
  return uniform_pick(ctx.rng, unmarked_of_type(ctx, chosen), "skewed cache-wide eviction");
}

PolicyEngine::PolicyEngine(PolicyKind kind, const ProblemParams& params, std::uint64_t seed)
    : requested_(kind), effective_(kind), rng_(seed) {
  if (kind == PolicyKind::TP) {
    effective_ = params.type_slots < params.companion_slots ? PolicyKind::TP1 : PolicyKind::TP2;
  }
}

Item PolicyEngine::select_victim(const PolicyContext& ctx) {
  const std::string& t = ctx.requested.type;
  const bool represented = ctx.state.is_represented(t);
  switch (effective_) {
    case PolicyKind::TP1: {
      if (!represented && !unmarked_of_type(ctx, t).empty()) return type_eviction(ctx);
      return cache_wide_eviction(ctx);
    }
    case PolicyKind::TP2: {
      const bool has_unmarked = !unmarked_of_type(ctx, t).empty();
      if (!represented && has_unmarked) return type_eviction(ctx);
      if (represented && has_unmarked && ctx.tracker.in_prev_items(ctx.requested)) {
        return type_eviction(ctx);
      }
      return skewed_cache_wide_eviction(ctx);
    }
    case PolicyKind::CW: {
      const auto& prev = ctx.tracker.prev_types();
      const bool in_prev = std::binary_search(prev.begin(), prev.end(), t);
      if (!in_prev && !unmarked_of_type(ctx, t).empty()) return type_eviction(ctx);
      return cache_wide_eviction(ctx);
    }
    case PolicyKind::DetMarking: {
      auto same_type = unmarked_of_type(ctx, t);
      if (!same_type.empty()) return least_recently_requested(ctx, same_type);
      return least_recently_requested(ctx, unmarked_cache_wide(ctx));
    }
    case PolicyKind::LRU:
      return least_recently_requested(ctx, ctx.state.eviction_candidates(t));
    case PolicyKind::RandomEvict:
      return uniform_pick(ctx.rng, ctx.state.eviction_candidates(t), "random eviction");
    case PolicyKind::TP:
      break;  // resolved at construction
  }
  throw UsageError("select_victim: unresolved policy kind");
}

}  // namespace ccsim
