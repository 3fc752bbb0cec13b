#pragma once

#include <algorithm>
#include <vector>

#include "tangleforge/harness.hpp"

namespace tangleforge::support {

inline Separation sep(std::initializer_list<int> a, std::initializer_list<int> b) { return {VertexSet(a), VertexSet(b)}; }

inline const Graph& fixture_graph(const char* name) { return fixture(name).graph; }

inline std::vector<Profile> profiles_of(const char* name) { return harness::fixture_profiles(fixture(name)); }

inline std::vector<Profile> regular_robust_up_to(const Fixture& f, int kmax) {
  std::vector<Profile> out;
  for (int k = 1; k <= kmax; ++k)
    for (auto& p : regular_robust_profiles(f.graph, k, f.caps)) out.push_back(std::move(p));
  return out;
}

inline std::set<std::pair<std::uint64_t, std::uint64_t>> keys_of(const std::vector<UnorientedSeparation>& us) {
  std::set<std::pair<std::uint64_t, std::uint64_t>> out;
  for (const auto& u : us) {
    const auto& c = u.canonical();
    out.insert(std::min(std::pair{c.a.bits(), c.b.bits()}, std::pair{c.b.bits(), c.a.bits()}));
  }
  return out;
}

}  // namespace tangleforge::support
