#include "ccsim/phases.hpp"

#include <algorithm>

#include "ccsim/errors.hpp"

namespace ccsim {

namespace {
const std::vector<std::string> kNoTypes;
const std::set<Item> kNoItems;

int pending_overflow(std::size_t pending_size, int k) {
  return std::max(0, static_cast<int>(pending_size) - k);
}
}  // namespace

int PhaseStats::g(const std::string& type, int phase) const {
  auto it = new_items.find({type, phase});
  return it == new_items.end() ? 0 : it->second;
}

int PhaseStats::ell(const std::string& type, int phase) const {
  auto it = stale_excess.find({type, phase});
  return it == stale_excess.end() ? 0 : it->second;
}

int PhaseStats::i_minus(const std::string& type, int phase) const {
  auto it = prev_phase.find({type, phase});
  return it == prev_phase.end() ? 0 : it->second;
}

int PhaseStats::h(int phase) const {
  if (phase < 1 || phase > static_cast<int>(holes.size())) return 0;
  return holes[phase - 1];
}

bool PhaseStats::phase_has_type(int phase, const std::string& type) const {
  if (phase < 1 || phase > total_phases) return false;
  const auto& ts = types[phase - 1];
  return std::binary_search(ts.begin(), ts.end(), type);
}

PhaseTracker::PhaseTracker(ProblemParams params) : params_(params) {
  params_.validate();
  issued_.emplace_back();
  holes_.push_back(0);
}

PhaseEvent PhaseTracker::observe(std::uint32_t index, const Item& e) {
  if (index != processed_ + 1) {
    throw UsageError("observe: expected index " + std::to_string(processed_ + 1) +
                     ", got " + std::to_string(index));
  }
  processed_ = index;

  const int k = params_.type_slots;
  auto& requested_pending = pending_items_[e.type];
  const int old_m = pending_overflow(requested_pending.size(), k);
  const std::size_t with_e = requested_pending.size() + (requested_pending.count(e) ? 0 : 1);
  const int new_m = pending_overflow(with_e, k);

  PhaseEvent event;
  if (marked_overflow_ - old_m + new_m > params_.companion_slots) {
    // End of phase: close every type with positive pending overflow. The
    // requested type's overflow is evaluated with e included.
    std::vector<std::uint32_t> assoc;
    std::set<Item> assoc_items;
    for (const auto& [type, items] : pending_items_) {
      const int m_t = (type == e.type) ? new_m : pending_overflow(items.size(), k);
      if (m_t > 0) event.types_closed.push_back(type);
    }
    for (const std::string& type : event.types_closed) {
      const auto& idx = pending_idx_[type];
      assoc.insert(assoc.end(), idx.begin(), idx.end());
      assoc_items.insert(pending_items_[type].begin(), pending_items_[type].end());
      pending_items_.erase(type);
      pending_idx_.erase(type);
    }
    std::sort(assoc.begin(), assoc.end());
    associated_.push_back(std::move(assoc));
    types_.push_back(event.types_closed);  // map order is already sorted
    items_.push_back(std::move(assoc_items));

    // Types that survive a phase end all have pending overflow zero.
    marked_overflow_ = 0;
    phase_ += 1;
    issued_.emplace_back();
    holes_.push_back(0);
    event.phase_ended = true;
  }

  issued_.back().push_back(index);
  pending_idx_[e.type].push_back(index);
  auto& pending = pending_items_[e.type];
  const int before = pending_overflow(pending.size(), k);
  pending.insert(e);
  marked_overflow_ += pending_overflow(pending.size(), k) - before;
  if (marked_overflow_ > params_.companion_slots) {
    throw InvariantViolation("marked overflow exceeds companion size after index " +
                             std::to_string(index));
  }
  return event;
}

bool PhaseTracker::is_marked(const Item& e) const {
  auto it = pending_items_.find(e.type);
  return it != pending_items_.end() && it->second.count(e) > 0;
}

const std::vector<std::string>& PhaseTracker::prev_types() const {
  return phase_ >= 2 ? types_[phase_ - 2] : kNoTypes;
}

const std::set<Item>& PhaseTracker::prev_items() const {
  return phase_ >= 2 ? items_[phase_ - 2] : kNoItems;
}

void PhaseTracker::record_holes(const std::set<Item>& cached) {
  if (phase_ == 1) return;  // P_0 is empty, so h_1 = 0
  int missing = 0;
  for (const Item& item : prev_items()) {
    if (cached.count(item) == 0) missing += 1;
  }
  holes_[phase_ - 1] = std::max(holes_[phase_ - 1], missing);
}

PhaseStats PhaseTracker::finalize() const {
  PhaseStats stats;
  stats.last_complete = phase_ - 1;
  stats.issued = issued_;
  stats.associated = associated_;
  stats.types = types_;
  stats.items = items_;
  stats.holes = holes_;

  // Residual phase: whatever is still pending when the sequence ends. The
  // partition rules never assign these indices to a phase, so they are
  // exposed as one trailing incomplete phase.
  std::vector<std::uint32_t> residual;
  std::vector<std::string> residual_types;
  std::set<Item> residual_items;
  for (const auto& [type, idx] : pending_idx_) {
    if (idx.empty()) continue;
    residual_types.push_back(type);
    residual.insert(residual.end(), idx.begin(), idx.end());
    const auto& items = pending_items_.at(type);
    residual_items.insert(items.begin(), items.end());
  }
  if (!residual.empty()) {
    std::sort(residual.begin(), residual.end());
    stats.associated.push_back(std::move(residual));
    stats.types.push_back(std::move(residual_types));
    stats.items.push_back(std::move(residual_items));
    stats.total_phases = phase_;
  } else {
    stats.total_phases = phase_ - 1;
    stats.issued.resize(stats.total_phases);
    stats.holes.resize(stats.total_phases);
  }

  const int n = params_.companion_slots;
  const int k = params_.type_slots;
  for (int p = 1; p <= stats.last_complete; ++p) {
    if (static_cast<int>(stats.types[p - 1].size()) > n + 1) {
      throw InvariantViolation("phase " + std::to_string(p) + ": more than n+1 types closed");
    }
    if (static_cast<int>(stats.items[p - 1].size()) > (n + 1) * k + n) {
      throw InvariantViolation("phase " + std::to_string(p) + ": |I(P_i)| exceeds (n+1)k+n");
    }
  }

  // Per-(type, phase) statistics in one forward and one backward sweep.
  std::map<std::string, int> last_seen;
  for (int p = 1; p <= stats.total_phases; ++p) {
    for (const std::string& type : stats.types[p - 1]) {
      std::set<Item> of_type;
      for (const Item& item : stats.items[p - 1]) {
        if (item.type == type) of_type.insert(item);
      }
      if (p <= stats.last_complete && static_cast<int>(of_type.size()) < k) {
        throw InvariantViolation("phase " + std::to_string(p) + ", type " + type +
                                 ": |L| below k in a complete phase");
      }
      const PhaseStats::Key key{type, p};
      const int prev = last_seen.count(type) ? last_seen[type] : 0;
      stats.prev_phase[key] = prev;

      int fresh = 0;
      if (prev == 0) {
        fresh = static_cast<int>(of_type.size());
      } else {
        const auto& prev_stale = stats.stale.at({type, prev});
        for (const Item& item : of_type) {
          if (prev_stale.count(item) == 0) fresh += 1;
        }
      }
      stats.new_items[key] = fresh;
      stats.stale[key] = std::move(of_type);
      last_seen[type] = p;
    }
  }
  std::map<std::string, int> next_seen;
  for (int p = stats.total_phases; p >= 1; --p) {
    for (const std::string& type : stats.types[p - 1]) {
      stats.next_phase[{type, p}] =
          next_seen.count(type) ? next_seen[type] : PhaseStats::kNoNextPhase;
      next_seen[type] = p;
    }
  }
  // ell[t,i] is nonzero only when phase i completes, phase i+1 exists as a
  // complete phase boundary (i < last_complete) and type t leaves the
  // partition structure at i+1.
  for (const auto& [key, stale_set] : stats.stale) {
    const auto& [type, p] = key;
    int excess = 0;
    if (p < stats.last_complete && !stats.phase_has_type(p + 1, type)) {
      excess = static_cast<int>(stale_set.size()) - k;
    }
    stats.stale_excess[key] = excess;
  }
  return stats;
}

}  // namespace ccsim
