#pragma once

#include <array>
#include <string>
#include <vector>

#include "tangleforge/config.hpp"
#include "tangleforge/graph.hpp"

namespace tangleforge {

struct Fixture {
  std::string name;
  Graph graph;
  int profile_k;  // largest order used for the regular robust profile set
  Caps caps;
  // Per k = 1..profile_k: k-profiles, regular, regular robust, regular robust principal.
  std::vector<std::array<int, 4>> census;
};

inline Graph grid_graph(int rows, int cols) {
  Graph g(rows * cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) g.add_edge(r * cols + c, r * cols + c + 1);
      if (r + 1 < rows) g.add_edge(r * cols + c, (r + 1) * cols + c);
    }
  return g;
}

inline std::vector<Fixture> fixtures() {
  Caps wide;
  wide.max_separations = 64;
  Graph two_k4(8);
  for (int base : {0, 4})
    for (int u = 0; u < 4; ++u)
      for (int v = u + 1; v < 4; ++v) two_k4.add_edge(base + u, base + v);
  two_k4.add_edge(3, 4);
  return {
      {"P4", Graph(4, {{0, 1}, {1, 2}, {2, 3}}), 2, {}, {{{2, 1, 1, 1}}, {{5, 3, 3, 3}}}},
      {"C4", Graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}), 2, {}, {{{2, 1, 1, 1}}, {{5, 1, 1, 1}}}},
      {"2K4", two_k4, 2, {}, {{{2, 1, 1, 1}}, {{9, 3, 3, 3}}}},
      {"GRID33", grid_graph(3, 3), 3, wide, {{{2, 1, 1, 1}}, {{10, 1, 1, 1}}, {{5, 5, 5, 5}}}},
      {"2K2", Graph(4, {{0, 1}, {2, 3}}), 2, {}, {{{2, 2, 2, 2}}, {{2, 2, 2, 2}}}},
      {"HUB6", Graph(6, {{0, 4}, {1, 2}, {1, 4}, {2, 4}, {2, 5}, {3, 4}, {4, 5}}), 3, {}, {{{2, 1, 1, 1}}, {{8, 3, 3, 3}}, {{2, 2, 2, 2}}}},
  };
}

// The five reference fixtures, without HUB6.
inline std::vector<Fixture> reference_fixtures() {
  auto all = fixtures();
  all.pop_back();
  return all;
}

inline const Fixture& fixture(const std::string& name) {
  static const std::vector<Fixture> all = fixtures();
  for (const auto& f : all)
    if (f.name == name || "FIX_" + f.name == name) return f;
  throw PreconditionError("unknown fixture '" + name + "'");
}

}  // namespace tangleforge
