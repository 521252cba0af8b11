#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ccsim/model.hpp"
#include "ccsim/rng.hpp"

namespace ccsim::testing {

// The worked (3,2) partition example: 24 requests over types a..d.
inline RequestSequence table2_sequence() {
  const std::vector<std::pair<const char*, const char*>> raw = {
      {"a", "1"}, {"b", "1"}, {"d", "1"}, {"c", "1"}, {"a", "2"}, {"a", "3"},
      {"b", "2"}, {"a", "4"}, {"b", "3"}, {"c", "2"}, {"b", "4"}, {"a", "5"},
      {"c", "3"}, {"d", "2"}, {"b", "1"}, {"c", "4"}, {"a", "3"}, {"a", "2"},
      {"a", "1"}, {"a", "3"}, {"b", "2"}, {"b", "3"}, {"b", "5"}, {"d", "3"},
  };
  RequestSequence seq;
  for (const auto& [type, id] : raw) seq.requests.push_back(Item{type, id});
  return seq;
}

inline ProblemParams table2_params() { return ProblemParams{3, 2, 4}; }

// Random sequence over `types` x `items_per_type`, uniform item draws.
inline RequestSequence random_sequence(Rng& rng, int types, int items_per_type, int length) {
  RequestSequence seq;
  for (int i = 0; i < length; ++i) {
    const int t = static_cast<int>(rng.uniform_below(types));
    const int id = static_cast<int>(rng.uniform_below(items_per_type));
    seq.requests.push_back(Item{std::string(1, static_cast<char>('a' + t)),
                                std::to_string(id + 1)});
  }
  return seq;
}

}  // namespace ccsim::testing
