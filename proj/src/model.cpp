#include "ccsim/model.hpp"

#include <algorithm>

#include "ccsim/errors.hpp"

namespace ccsim {

std::string to_string(const Item& item) {
  return item.type + " " + item.id;
}

void ProblemParams::validate() const {
  if (companion_slots < 1) throw UsageError("companion cache size n must be >= 1");
  if (type_slots < 1) throw UsageError("per-type cache size k must be >= 1");
}

std::string ProblemParams::warning() const {
  if (num_types && *num_types <= companion_slots) {
    return "m=" + std::to_string(*num_types) +
           " types does not exceed companion size n=" + std::to_string(companion_slots) +
           "; the model assumes m > n but the simulation is still well-defined";
  }
  return {};
}

std::set<Item> RequestSequence::distinct() const {
  return {requests.begin(), requests.end()};
}

CacheState::CacheState(ProblemParams params) : params_(params) {
  params_.validate();
}

int CacheState::type_count(const std::string& type) const {
  auto it = counts_.find(type);
  return it == counts_.end() ? 0 : it->second;
}

bool CacheState::is_represented(const std::string& type) const {
  return type_count(type) > params_.type_slots;
}

std::vector<std::string> CacheState::represented_types() const {
  std::vector<std::string> out;
  for (const auto& [type, count] : counts_) {
    if (count > params_.type_slots) out.push_back(type);
  }
  return out;
}

bool CacheState::needs_eviction(const Item& e) const {
  if (contains(e)) throw UsageError("needs_eviction: item already cached: " + to_string(e));
  return type_count(e.type) >= params_.type_slots && overflow_ == params_.companion_slots;
}

std::vector<Item> CacheState::eviction_candidates(const std::string& type) const {
  std::vector<Item> out;
  for (const Item& item : cached_) {
    if (item.type == type || is_represented(item.type)) out.push_back(item);
  }
  return out;  // set iteration order is already canonical
}

bool CacheState::apply_request(const Item& e, const std::optional<Item>& victim) {
  if (contains(e)) {
    if (victim) throw UsageError("apply_request: victim given on a hit");
    return false;
  }
  if (needs_eviction(e)) {
    if (!victim) throw UsageError("apply_request: eviction required but no victim given");
    if (*victim == e) throw UsageError("apply_request: victim equals requested item");
    if (!contains(*victim)) throw UsageError("apply_request: victim not cached: " + to_string(*victim));
    if (victim->type != e.type && !is_represented(victim->type)) {
      throw UsageError("apply_request: victim is not an eviction candidate: " + to_string(*victim));
    }
    remove(*victim);
  } else if (victim) {
    throw UsageError("apply_request: victim given but no eviction required");
  }
  insert(e);
  if (overflow_ > params_.companion_slots) {
    throw InvariantViolation("cache feasibility violated after inserting " + to_string(e));
  }
  if (params_.num_types) {
    const int capacity = *params_.num_types * params_.type_slots + params_.companion_slots;
    if (size() > capacity) {
      throw InvariantViolation("cache exceeds m*k+n capacity after inserting " + to_string(e));
    }
  }
  return true;
}

void CacheState::insert(const Item& e) {
  cached_.insert(e);
  int& count = counts_[e.type];
  count += 1;
  if (count > params_.type_slots) overflow_ += 1;
}

void CacheState::remove(const Item& e) {
  cached_.erase(e);
  int& count = counts_[e.type];
  if (count > params_.type_slots) overflow_ -= 1;
  count -= 1;
  if (count == 0) counts_.erase(e.type);
}

}  // namespace ccsim
