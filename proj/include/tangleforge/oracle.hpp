#pragma once

// Brute-force reference implementations for tests and the verification harness.
// Nothing in the engine headers includes this file.

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "tangleforge/errors.hpp"
#include "tangleforge/graph.hpp"
#include "tangleforge/separation.hpp"

namespace tangleforge::oracle {

// Every pair (A,B) with A∪B = V and no edge between A∖B and B∖A, by assigning each vertex to A only, B only, or both.
inline std::vector<Separation> separations_by_pairs(const Graph& g, int max_order) {
  const std::vector<int> vs = g.vertices().to_vector();
  const int n = static_cast<int>(vs.size());
  std::vector<Separation> out;
  std::vector<int> state(n, 0);
  while (true) {
    Separation s;
    for (int i = 0; i < n; ++i) {
      if (state[i] != 1) s.a.insert(vs[i]);
      if (state[i] != 0) s.b.insert(vs[i]);
    }
    bool ok = s.order() <= max_order;
    for (auto [u, v] : g.edges()) {
      if (!ok) break;
      const bool ua = s.a.contains(u) && !s.b.contains(u), ub = s.b.contains(u) && !s.a.contains(u);
      const bool va = s.a.contains(v) && !s.b.contains(v), vb = s.b.contains(v) && !s.a.contains(v);
      if ((ua && vb) || (ub && va)) ok = false;
    }
    if (ok) out.push_back(s);
    int i = 0;
    while (i < n && state[i] == 2) state[i++] = 0;
    if (i == n) break;
    ++state[i];
  }
  return out;
}

inline std::set<std::pair<std::uint64_t, std::uint64_t>> unoriented_keys(const std::vector<Separation>& seps) {
  std::set<std::pair<std::uint64_t, std::uint64_t>> out;
  for (const auto& s : seps) {
    auto x = std::pair{s.a.bits(), s.b.bits()}, y = std::pair{s.b.bits(), s.a.bits()};
    out.insert(std::min(x, y));
  }
  return out;
}

// Consistency and the profile property, checked directly on an orientation given as a list.
inline bool is_profile(int k, const std::vector<Separation>& o) {
  std::set<std::pair<std::uint64_t, std::uint64_t>> in;
  for (const auto& s : o) in.insert({s.a.bits(), s.b.bits()});
  auto has = [&](const Separation& s) { return in.count({s.a.bits(), s.b.bits()}) > 0; };
  auto le = [](const Separation& x, const Separation& y) { return (x.a.bits() & ~y.a.bits()) == 0 && (y.b.bits() & ~x.b.bits()) == 0; };
  for (const auto& r : o)
    for (const auto& s : o) {
      const bool same = (r.a == s.a && r.b == s.b) || (r.a == s.b && r.b == s.a);
      if (!same && le({r.b, r.a}, s)) return false;
      const Separation j{r.a | s.a, r.b & s.b};
      if ((j.a & j.b).size() < k && !has(j)) return false;
    }
  return true;
}

// Every orientation of S_k, scanned without pruning. Consistency and (P) are tabulated per pair of
// orientations and each of the 2^|S_k| orientations is checked against the table.
inline std::set<std::vector<std::pair<std::uint64_t, std::uint64_t>>> profiles_unpruned(const Graph& g, int k) {
  auto keys = unoriented_keys(separations_by_pairs(g, k - 1));
  std::vector<std::pair<std::uint64_t, std::uint64_t>> base(keys.begin(), keys.end());
  const std::size_t m = base.size();
  if (m > 26) throw SizeLimitError("unpruned scan limited to 26 separations");
  std::map<std::pair<std::uint64_t, std::uint64_t>, int> slot;  // oriented key -> 2*index + flipped
  for (std::size_t i = 0; i < m; ++i) {
    slot[base[i]] = static_cast<int>(2 * i);
    if (base[i].first != base[i].second) slot[{base[i].second, base[i].first}] = static_cast<int>(2 * i + 1);
  }
  auto oriented = [&](std::size_t i, int flip) {
    auto [a, b] = base[i];
    if (flip) std::swap(a, b);
    return Separation{VertexSet(a), VertexSet(b)};
  };
  constexpr int ok = -1, bad = -2;
  // rule[(i*m+j)*4 + fi*2 + fj]: ok, bad, or the oriented slot that must be chosen
  std::vector<int> rule(m * m * 4, ok);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (int fi = 0; fi < 2; ++fi)
        for (int fj = 0; fj < 2; ++fj) {
          const Separation r = oriented(i, fi), s = oriented(j, fj);
          int& out = rule[(i * m + j) * 4 + fi * 2 + fj];
          const bool le = (r.b.bits() & ~s.a.bits()) == 0 && (s.b.bits() & ~r.a.bits()) == 0;  // r* <= s
          if (i != j && le) {
            out = bad;
            continue;
          }
          const Separation jn{r.a | s.a, r.b & s.b};
          if ((jn.a & jn.b).size() >= k) continue;
          auto it = slot.find({jn.a.bits(), jn.b.bits()});
          out = it == slot.end() ? bad : it->second;
        }
  std::set<std::vector<std::pair<std::uint64_t, std::uint64_t>>> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    bool good = true;
    for (std::size_t i = 0; i < m && good; ++i) {
      if (base[i].first == base[i].second && ((mask >> i) & 1u)) good = false;
      for (std::size_t j = 0; j <= i && good; ++j) {
        const int fi = (mask >> i) & 1u, fj = (mask >> j) & 1u;
        for (int r : {rule[(i * m + j) * 4 + fi * 2 + fj], rule[(j * m + i) * 4 + fj * 2 + fi]}) {
          if (r == bad) good = false;
          else if (r >= 0 && static_cast<std::uint64_t>(r & 1) != ((mask >> (r >> 1)) & 1u)) good = false;
        }
      }
    }
    if (!good) continue;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> key;
    for (std::size_t i = 0; i < m; ++i) {
      auto [a, b] = base[i];
      if ((mask >> i) & 1u) std::swap(a, b);
      key.emplace_back(a, b);
    }
    std::sort(key.begin(), key.end());
    out.insert(key);
  }
  return out;
}

// Smallest order of a separation with one orientation in p and the other in q, over all pairs.
template <class P>
int min_distinguishing_order(const Graph& g, const P& p, const P& q) {
  int best = -1;
  for (const auto& s : separations_by_pairs(g, g.order()))
    if (p.contains(s) && q.contains(s.inverse()) && !(s == s.inverse()))
      if (best < 0 || s.order() < best) best = s.order();
  return best;
}

inline bool separates(const Graph& g, VertexSet x, int u, int v) {
  for (VertexSet c : g.components(x))
    if (c.contains(u)) return !c.contains(v);
  return true;
}

// Minimal u-v separators: separating sets none of whose one-smaller subsets separate.
inline std::vector<VertexSet> minimal_separators_by_subsets(const Graph& g, int u, int v, int k) {
  std::vector<VertexSet> out;
  if (g.adjacent(u, v)) return out;
  const std::vector<int> rest = (g.vertices() - VertexSet{u, v}).to_vector();
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << rest.size()); ++m) {
    VertexSet x;
    for (std::size_t i = 0; i < rest.size(); ++i)
      if ((m >> i) & 1u) x.insert(rest[i]);
    if (x.size() > k || !separates(g, x, u, v)) continue;
    bool minimal = true;
    for (int w : x)
      if (separates(g, x - VertexSet::singleton(w), u, v)) minimal = false;
    if (minimal) out.push_back(x);
  }
  std::sort(out.begin(), out.end(), [](VertexSet a, VertexSet b) { return lex_compare(a, b) < 0; });
  return out;
}

// Whether some choice of one element per family is pairwise nested, by exhaustive product search.
template <class E, class Nested>
bool nested_transversal_exists(const std::vector<std::vector<E>>& families, Nested nested) {
  std::vector<E> pick;
  auto rec = [&](auto&& self, std::size_t i) -> bool {
    if (i == families.size()) return true;
    for (const auto& x : families[i]) {
      if (!std::all_of(pick.begin(), pick.end(), [&](const E& y) { return nested(x, y); })) continue;
      pick.push_back(x);
      if (self(self, i + 1)) return true;
      pick.pop_back();
    }
    return false;
  };
  return rec(rec, 0);
}

// (v,w) <= (x,y) in a tree iff the side of v after deleting vw lies inside the side of x after deleting xy.
inline bool edge_leq_by_sides(const std::vector<std::vector<int>>& adj, std::pair<int, int> e, std::pair<int, int> f) {
  auto side = [&](int from, int to) {
    std::set<int> seen{from};
    std::vector<int> st{from};
    while (!st.empty()) {
      int x = st.back();
      st.pop_back();
      for (int y : adj[x])
        if (!(x == from && y == to) && seen.insert(y).second) st.push_back(y);
    }
    return seen;
  };
  const auto se = side(e.first, e.second), sf = side(f.first, f.second);
  return std::includes(sf.begin(), sf.end(), se.begin(), se.end());
}

// (T3) as: the nodes whose bags contain v induce a connected subtree.
inline bool bags_connected_per_vertex(const std::vector<VertexSet>& bags, const std::vector<std::pair<int, int>>& edges, VertexSet vertices) {
  for (int v : vertices) {
    std::vector<int> holding;
    for (int t = 0; t < static_cast<int>(bags.size()); ++t)
      if (bags[t].contains(v)) holding.push_back(t);
    if (holding.empty()) return false;
    std::set<int> seen{holding.front()};
    std::vector<int> st{holding.front()};
    while (!st.empty()) {
      int x = st.back();
      st.pop_back();
      for (auto [a, b] : edges)
        for (auto [p, q] : {std::pair{a, b}, std::pair{b, a}})
          if (p == x && bags[q].contains(v) && seen.insert(q).second) st.push_back(q);
    }
    if (seen.size() != holding.size()) return false;
  }
  return true;
}

// Automorphisms by trying every permutation of the vertex list.
inline std::vector<std::vector<int>> automorphisms_by_permutation(const Graph& g) {
  const std::vector<int> vs = g.vertices().to_vector();
  std::vector<int> img = vs;
  std::vector<std::vector<int>> out;
  do {
    std::vector<int> perm(g.id_bound());
    std::iota(perm.begin(), perm.end(), 0);
    for (std::size_t i = 0; i < vs.size(); ++i) perm[vs[i]] = img[i];
    bool ok = true;
    for (auto [u, v] : g.edges())
      if (!g.adjacent(perm[u], perm[v])) {
        ok = false;
        break;
      }
    if (ok) out.push_back(perm);
  } while (std::next_permutation(img.begin(), img.end()));
  return out;
}

}  // namespace tangleforge::oracle
