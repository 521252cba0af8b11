#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "ccsim/errors.hpp"
#include "ccsim/harness.hpp"
#include "ccsim/model.hpp"
#include "ccsim/rng.hpp"
#include "support/fixtures.hpp"

using namespace ccsim;

namespace {

CacheState state_with(ProblemParams params, const std::vector<Item>& items) {
  CacheState state(params);
  for (const Item& item : items) state.apply_request(item);
  return state;
}

const Item a1{"a", "1"}, a2{"a", "2"}, a3{"a", "3"}, a4{"a", "4"};
const Item b1{"b", "1"}, b2{"b", "2"}, b3{"b", "3"};
const Item c1{"c", "1"};

}  // namespace

TEST_CASE("params validation") {
  CHECK_THROWS_AS((ProblemParams{0, 1}).validate(), UsageError);
  CHECK_THROWS_AS((ProblemParams{1, 0}).validate(), UsageError);
  CHECK((ProblemParams{1, 1}).warning().empty());
  CHECK_FALSE((ProblemParams{2, 1, 2}).warning().empty());  // m <= n accepted with warning
  CHECK((ProblemParams{1, 1}).competitive_bound() == 3);
  CHECK((ProblemParams{3, 2}).competitive_bound() == 11);
}

TEST_CASE("overflow") {
  CHECK(CacheState(ProblemParams{3, 2}).overflow() == 0);  // empty cache
  CHECK(state_with(ProblemParams{3, 2}, {a1, a2, a3, a4, b1, b2, b3}).overflow() == 3);
  CHECK(state_with(ProblemParams{1, 1}, {a1, a2, b1}).overflow() == 1);
}

TEST_CASE("is_represented") {
  CacheState empty(ProblemParams{2, 2});
  CHECK_FALSE(empty.is_represented("a"));
  CHECK(state_with(ProblemParams{3, 2}, {a1, a2, a3}).is_represented("a"));
  CHECK_FALSE(state_with(ProblemParams{3, 2}, {a1, a2}).is_represented("a"));  // boundary
}

TEST_CASE("needs_eviction") {
  CacheState empty(ProblemParams{1, 1});
  CHECK_FALSE(empty.needs_eviction(a1));
  auto full = state_with(ProblemParams{1, 1}, {a1, a2, b1});
  CHECK(full.needs_eviction(b2));
  CHECK_FALSE(state_with(ProblemParams{1, 1}, {a1, a2}).needs_eviction(b1));
  CHECK_THROWS_AS(full.needs_eviction(a1), UsageError);  // already cached
}

TEST_CASE("eviction_candidates") {
  auto full = state_with(ProblemParams{1, 1}, {a1, a2, b1});
  CHECK(full.eviction_candidates("b") == std::vector<Item>{a1, a2, b1});
  CHECK(full.eviction_candidates("c") == std::vector<Item>{a1, a2});
  auto no_overflow = state_with(ProblemParams{3, 2}, {a1, a2, b1});
  CHECK(no_overflow.eviction_candidates("b") == std::vector<Item>{b1});
}

TEST_CASE("apply_request") {
  auto state = state_with(ProblemParams{1, 1}, {a1, a2, b1});
  SUBCASE("hit leaves the state alone") {
    CHECK_FALSE(state.apply_request(a1));
    CHECK(state.items() == std::set<Item>{a1, a2, b1});
  }
  SUBCASE("compulsory miss into spare capacity") {
    auto small = state_with(ProblemParams{1, 1}, {a1});
    CHECK(small.apply_request(a2));
    CHECK(small.contains(a2));
  }
  SUBCASE("eviction keeps feasibility") {
    CHECK(state.apply_request(b2, a2));
    CHECK(state.items() == std::set<Item>{a1, b1, b2});
    CHECK(state.overflow() == 1);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(state.apply_request(b2), UsageError);          // victim missing
    CHECK_THROWS_AS(state.apply_request(b2, b2), UsageError);      // victim = requested
    CHECK_THROWS_AS(state.apply_request(b2, b3), UsageError);      // victim not cached
    CHECK_THROWS_AS(state.apply_request(a1, a2), UsageError);      // victim on a hit
    CHECK_THROWS_AS(state.apply_request(c1, b1), UsageError);      // no eviction required
    auto deep = state_with(ProblemParams{1, 2}, {a1, a2, a3, b1});
    CHECK_THROWS_AS(deep.apply_request(a4, b1), UsageError);       // b1 not a candidate
  }
}

// Candidate set characterization, checked exhaustively at small scale:
// removing a candidate always restores feasibility, removing a non-candidate
// never does.
TEST_CASE("eviction candidates are exactly the feasibility-restoring items") {
  const ProblemParams params{1, 1};
  const std::vector<Item> universe = {a1, a2, a3, b1, b2, c1};
  for (std::uint32_t mask = 0; mask < (1u << universe.size()); ++mask) {
    std::vector<Item> chosen;
    for (std::size_t i = 0; i < universe.size(); ++i) {
      if (mask & (1u << i)) chosen.push_back(universe[i]);
    }
    std::map<std::string, int> counts;
    int over = 0;
    for (const Item& item : chosen) counts[item.type] += 1;
    for (const auto& [t, c] : counts) over += std::max(0, c - params.type_slots);
    if (over > params.companion_slots) continue;

    CacheState probe(params);
    for (const Item& item : chosen) probe.apply_request(item);

    for (const Item& e : universe) {
      if (probe.contains(e)) continue;
      if (!probe.needs_eviction(e)) continue;
      const auto candidates = probe.eviction_candidates(e.type);
      for (const Item& victim : probe.items()) {
        CacheState copy = probe;
        const bool is_candidate =
            std::find(candidates.begin(), candidates.end(), victim) != candidates.end();
        if (is_candidate) {
          CHECK_NOTHROW(copy.apply_request(e, victim));
        } else {
          CHECK_THROWS_AS(copy.apply_request(e, victim), UsageError);
        }
      }
    }
  }
}

TEST_CASE("feasibility holds after every request in random simulations") {
  Rng rng(42);
  for (int round = 0; round < 50; ++round) {
    const auto seq = testing::random_sequence(rng, 3, 3, 40);
    const ProblemParams params{2, 1, 3};
    SimSession session(params, PolicyKind::RandomEvict, rng.next());
    for (const Item& item : seq.requests) {
      session.step(item);
      CHECK(session.cache().overflow() <= params.companion_slots);
    }
    session.finish();
  }
}

TEST_CASE("distinct items all fault once when the universe fits") {
  Rng rng(7);
  const auto seq = testing::random_sequence(rng, 2, 2, 60);
  const ProblemParams params{2, 2, 2};  // capacity 6 >= 4 distinct
  SimSession session(params, PolicyKind::DetMarking, 0);
  for (const Item& item : seq.requests) session.step(item);
  session.finish();
  CHECK(session.faults() == seq.distinct().size());
}
