#pragma once

#include <algorithm>
#include <queue>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tangleforge/separators.hpp"

namespace tangleforge {

struct TreeDecomposition {
  std::vector<VertexSet> bags;
  std::vector<std::pair<int, int>> edges;

  std::vector<std::vector<int>> adjacency() const {
    std::vector<std::vector<int>> adj(bags.size());
    for (auto [u, v] : edges) {
      adj[u].push_back(v);
      adj[v].push_back(u);
    }
    return adj;
  }
};

namespace detail {

inline bool is_tree(int n, const std::vector<std::pair<int, int>>& edges) {
  if (n == 0 || static_cast<int>(edges.size()) != n - 1) return false;
  std::vector<std::vector<int>> adj(n);
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n || u == v) return false;
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<bool> seen(n, false);
  std::vector<int> stack{0};
  seen[0] = true;
  int count = 1;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (int y : adj[x])
      if (!seen[y]) {
        seen[y] = true;
        ++count;
        stack.push_back(y);
      }
  }
  return count == n;
}

// Vertices of the tree path from s to t.
inline std::vector<int> tree_path(const std::vector<std::vector<int>>& adj, int s, int t) {
  std::vector<int> parent(adj.size(), -1);
  std::vector<bool> seen(adj.size(), false);
  std::queue<int> q;
  q.push(s);
  seen[s] = true;
  while (!q.empty()) {
    int x = q.front();
    q.pop();
    for (int y : adj[x])
      if (!seen[y]) {
        seen[y] = true;
        parent[y] = x;
        q.push(y);
      }
  }
  std::vector<int> path;
  for (int x = t; x != -1; x = parent[x]) path.push_back(x);
  std::reverse(path.begin(), path.end());
  return path;
}

// Nodes on the side of `from` after deleting tree edge from-to.
inline std::vector<int> tree_side(const std::vector<std::vector<int>>& adj, int from, int to) {
  std::vector<int> out{from};
  std::vector<bool> seen(adj.size(), false);
  seen[from] = seen[to] = true;
  for (std::size_t i = 0; i < out.size(); ++i)
    for (int y : adj[out[i]])
      if (!seen[y]) {
        seen[y] = true;
        out.push_back(y);
      }
  return out;
}

}  // namespace detail

// Oriented edges of a tree with (v,w) <= (x,y) iff the tree path from v to y contains w and x.
struct EdgeTreeSet {
  std::vector<std::vector<int>> adj;
  std::vector<std::pair<int, int>> oriented;

  bool leq(std::pair<int, int> e, std::pair<int, int> f) const {
    const auto path = detail::tree_path(adj, e.first, f.second);
    const bool w = std::find(path.begin(), path.end(), e.second) != path.end();
    const bool x = std::find(path.begin(), path.end(), f.first) != path.end();
    return w && x;
  }
};

inline EdgeTreeSet edge_tree_set(int nodes, const std::vector<std::pair<int, int>>& edges) {
  if (!detail::is_tree(nodes, edges)) throw PreconditionError("edges do not form a tree");
  EdgeTreeSet out;
  out.adj.assign(nodes, {});
  for (auto [u, v] : edges) {
    out.adj[u].push_back(v);
    out.adj[v].push_back(u);
    out.oriented.emplace_back(u, v);
    out.oriented.emplace_back(v, u);
  }
  return out;
}

struct TreeDecompositionReport {
  bool tree = false;
  bool covers_vertices = false;  // (T1)
  bool covers_edges = false;     // (T2)
  bool path_condition = false;   // (T3)
  bool ok() const { return tree && covers_vertices && covers_edges && path_condition; }
};

inline TreeDecompositionReport verify_treedecomposition(const Graph& g, const TreeDecomposition& td) {
  TreeDecompositionReport rep;
  const int n = static_cast<int>(td.bags.size());
  rep.tree = detail::is_tree(n, td.edges);
  if (!rep.tree) return rep;
  VertexSet all;
  for (auto b : td.bags) all |= b;
  rep.covers_vertices = all == g.vertices();
  rep.covers_edges = true;
  for (auto [u, v] : g.edges())
    if (std::none_of(td.bags.begin(), td.bags.end(), [&](VertexSet b) { return b.contains(u) && b.contains(v); }))
      rep.covers_edges = false;
  rep.path_condition = true;
  const auto adj = td.adjacency();
  for (int s = 0; s < n; ++s)
    for (int t = s + 1; t < n; ++t) {
      const VertexSet common = td.bags[s] & td.bags[t];
      for (int x : detail::tree_path(adj, s, t))
        if (!common.subset_of(td.bags[x])) rep.path_condition = false;
    }
  return rep;
}

// For each tree edge (t,t') in both directions: (union of bags on t's side, union on t''s side).
inline std::vector<Separation> induced_separations(const TreeDecomposition& td) {
  const auto adj = td.adjacency();
  std::vector<Separation> out;
  for (auto [u, v] : td.edges)
    for (auto [x, y] : {std::pair{u, v}, std::pair{v, u}}) {
      Separation s;
      for (int t : detail::tree_side(adj, x, y)) s.a |= td.bags[t];
      for (int t : detail::tree_side(adj, y, x)) s.b |= td.bags[t];
      out.push_back(s);
    }
  return out;
}

inline std::vector<UnorientedSeparation> induced_unoriented(const TreeDecomposition& td) {
  std::vector<UnorientedSeparation> out;
  for (const auto& s : induced_separations(td)) out.emplace_back(s);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Tree-decomposition whose nodes are the consistent orientations of a regular tree set.
inline TreeDecomposition treeset_to_treedecomposition(const Graph& g, std::vector<UnorientedSeparation> n) {
  std::sort(n.begin(), n.end());
  n.erase(std::unique(n.begin(), n.end()), n.end());
  for (const auto& s : n) {
    const Separation& c = s.canonical();
    if (!is_separation(g, c)) throw PreconditionError("not a separation of the graph");
    if (leq(c, c.inverse()) || leq(c.inverse(), c)) throw PreconditionError("tree set contains a small separation");
  }
  for (const auto& s : n)
    for (const auto& t : n)
      if (!is_nested(s, t)) throw PreconditionError("separations are not nested");
  TreeDecomposition td;
  if (n.empty()) {
    td.bags.push_back(g.vertices());
    return td;
  }
  const std::size_t m = n.size();
  auto pick = [&](std::size_t i, bool flip) { return flip ? n[i].canonical().inverse() : n[i].canonical(); };
  std::vector<std::vector<bool>> orientations;
  std::vector<bool> cur(m);
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == m) {
      orientations.push_back(cur);
      return;
    }
    for (bool flip : {false, true}) {
      const Separation o = pick(i, flip);
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) {
        const Separation r = pick(j, cur[j]);
        ok = !leq(r.inverse(), o) && !leq(o.inverse(), r);
      }
      if (!ok) continue;
      cur[i] = flip;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  if (orientations.size() != m + 1)
    throw CertificationError("tree set has " + std::to_string(orientations.size()) + " consistent orientations, expected " + std::to_string(m + 1));
  for (const auto& o : orientations) {
    VertexSet bag = g.vertices();
    for (std::size_t i = 0; i < m; ++i) bag &= pick(i, o[i]).b;
    td.bags.push_back(bag);
  }
  for (std::size_t x = 0; x < orientations.size(); ++x)
    for (std::size_t y = x + 1; y < orientations.size(); ++y) {
      std::size_t diff = 0;
      for (std::size_t i = 0; i < m; ++i) diff += orientations[x][i] != orientations[y][i];
      if (diff == 1) td.edges.emplace_back(static_cast<int>(x), static_cast<int>(y));
    }
  if (!verify_treedecomposition(g, td).ok()) throw CertificationError("constructed tree-decomposition is invalid");
  if (induced_unoriented(td) != n) throw CertificationError("tree-decomposition does not induce the given tree set");
  return td;
}

// Bag-induced subgraph plus a clique on each adhesion set.
inline Graph torso(const Graph& g, const TreeDecomposition& td, int node) {
  Graph h = g.induced(td.bags[node]);
  for (auto [u, v] : td.edges) {
    if (u == node) h.make_clique(td.bags[u] & td.bags[v]);
    if (v == node) h.make_clique(td.bags[u] & td.bags[v]);
  }
  return h;
}

struct ToTDNode {
  int parent = -1;
  int depth = 0;
  int torso_of = -1;  // bag index in the parent's decomposition
  Graph graph;
  TreeDecomposition td;
  std::vector<int> children;
};

struct TreeOfTreeDecompositions {
  std::vector<ToTDNode> nodes;  // nodes[0] is the root
  std::vector<VertexSet> separators;
  std::vector<VertexSet> closure;  // non-empty subsets of separators
};

// Non-empty subsets of members of a separator set, sorted by size then key.
inline std::vector<VertexSet> subset_closure(const std::vector<VertexSet>& seps) {
  std::set<std::uint64_t> seen;
  std::vector<VertexSet> out;
  for (VertexSet x : seps) {
    const std::vector<int> vs = x.to_vector();
    for (std::uint64_t m = 1; m < (std::uint64_t{1} << vs.size()); ++m) {
      VertexSet z;
      for (std::size_t i = 0; i < vs.size(); ++i)
        if ((m >> i) & 1u) z.insert(vs[i]);
      if (seen.insert(z.bits()).second) out.push_back(z);
    }
  }
  std::sort(out.begin(), out.end(), [](VertexSet x, VertexSet y) {
    if (x.size() != y.size()) return x.size() < y.size();
    return separator_less(x, y);
  });
  return out;
}

// Separations (C∪X, V(H)∖C) for X of the given size inside H and each component C of H-X, unless it is the only one.
inline std::vector<UnorientedSeparation> level_separations(const Graph& h, const std::vector<VertexSet>& closure, int size) {
  std::vector<UnorientedSeparation> out;
  for (VertexSet x : closure) {
    if (x.size() != size || !x.subset_of(h.vertices())) continue;
    const auto comps = h.components(x);
    if (comps.size() < 2) continue;
    for (VertexSet c : comps) out.emplace_back(Separation{c | x, h.vertices() - c});
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline TreeOfTreeDecompositions build_totd_from_separators(const Graph& g, const std::vector<VertexSet>& seps) {
  if (!g.connected()) throw PreconditionError("graph must be connected");
  TreeOfTreeDecompositions out;
  out.separators = seps;
  out.closure = subset_closure(seps);
  int max_size = 0;
  for (auto x : out.closure) max_size = std::max(max_size, x.size());
  ToTDNode root;
  root.graph = g;
  out.nodes.push_back(std::move(root));
  for (std::size_t i = 0; i < out.nodes.size(); ++i) {
    const int d = out.nodes[i].depth;
    out.nodes[i].td = treeset_to_treedecomposition(out.nodes[i].graph, level_separations(out.nodes[i].graph, out.closure, d + 1));
    if (d >= max_size) continue;
    for (int b = 0; b < static_cast<int>(out.nodes[i].td.bags.size()); ++b) {
      ToTDNode child;
      child.parent = static_cast<int>(i);
      child.depth = d + 1;
      child.torso_of = b;
      child.graph = torso(out.nodes[i].graph, out.nodes[i].td, b);
      out.nodes[i].children.push_back(static_cast<int>(out.nodes.size()));
      out.nodes.push_back(std::move(child));
    }
  }
  return out;
}

// Tree of tree-decompositions for principal robust profiles of a connected graph.
inline TreeOfTreeDecompositions build_totd(const Graph& g, const std::vector<Profile>& profiles, const Caps& caps = {}) {
  for (std::size_t i = 0; i < profiles.size(); ++i)
    if (!is_principal(g, profiles[i])) throw PreconditionError("profile " + std::to_string(i) + " is not principal");
  const auto cs = canonical_nested_separators(g, profiles, caps);
  return build_totd_from_separators(g, cs.separators);
}

struct ToTDReport {
  bool orders = true;            // level-d decompositions induce separations of order d+1
  bool large_separators = true;  // separators of size >= d+2 lie in exactly one torso
  bool small_separators = true;  // each torso meets at most one component of G-X for |X| <= d+1
  bool distinguishes = true;     // every pair is distinguished by a restricted efficient distinguisher
  bool children = true;          // one child per bag, each the torso of that bag
  bool decompositions = true;    // every node carries a valid tree-decomposition
  std::vector<std::string> failures;
  bool ok() const { return orders && large_separators && small_separators && distinguishes && children && decompositions; }
};

inline ToTDReport certify_totd(const Graph& g, const TreeOfTreeDecompositions& t, const std::vector<Profile>& profiles,
                               int small_bound_offset = 1) {
  ToTDReport rep;
  auto fail = [&](bool& flag, const std::string& what) {
    flag = false;
    rep.failures.push_back(what);
  };
  int max_size = 0;
  for (auto x : t.closure) max_size = std::max(max_size, x.size());
  for (std::size_t i = 0; i < t.nodes.size(); ++i) {
    const auto& nd = t.nodes[i];
    const std::string at = "node " + std::to_string(i);
    if (!verify_treedecomposition(nd.graph, nd.td).ok()) fail(rep.decompositions, at + ": invalid decomposition");
    for (const auto& s : induced_separations(nd.td))
      if (s.order() != nd.depth + 1) fail(rep.orders, at + ": separation of wrong order");
    for (VertexSet x : t.closure) {
      if (!x.subset_of(nd.graph.vertices())) continue;
      if (x.size() >= nd.depth + 2) {
        const auto hits = std::count_if(nd.td.bags.begin(), nd.td.bags.end(), [&](VertexSet b) { return x.subset_of(b); });
        if (hits != 1) fail(rep.large_separators, at + ": separator in " + std::to_string(hits) + " torsos");
      }
      if (x.size() <= nd.depth + small_bound_offset) {
        const auto comps = g.components(x);
        for (VertexSet b : nd.td.bags) {
          const auto met = std::count_if(comps.begin(), comps.end(), [&](VertexSet c) { return c.intersects(b); });
          if (met > 1) fail(rep.small_separators, at + ": torso meets several components");
        }
      }
    }
    if (nd.depth < max_size) {
      if (nd.children.size() != nd.td.bags.size()) fail(rep.children, at + ": wrong number of children");
      for (int c : nd.children) {
        const auto& ch = t.nodes[c];
        if (ch.parent != static_cast<int>(i) || ch.depth != nd.depth + 1 || !(ch.graph == torso(nd.graph, nd.td, ch.torso_of)))
          fail(rep.children, at + ": child is not the torso of its bag");
      }
    } else if (!nd.children.empty()) {
      fail(rep.children, at + ": leaf level has children");
    }
  }
  std::vector<std::vector<Separation>> restricted(t.nodes.size());
  for (std::size_t i = 0; i < t.nodes.size(); ++i) restricted[i] = induced_separations(t.nodes[i].td);
  for (std::size_t p = 0; p < profiles.size(); ++p)
    for (std::size_t q = p + 1; q < profiles.size(); ++q) {
      const auto d = efficient_distinguishers(profiles[p], profiles[q]);
      bool found = false;
      for (std::size_t i = 0; i < t.nodes.size() && !found; ++i) {
        const VertexSet z = t.nodes[i].graph.vertices();
        for (const auto& u : d.separations) {
          for (const Separation& s : {u.canonical(), u.canonical().inverse()})
            for (const auto& r : restricted[i])
              if ((s.a & z) == r.a && (s.b & z) == r.b) found = true;
        }
      }
      if (!found) fail(rep.distinguishes, "profiles " + std::to_string(p) + "," + std::to_string(q) + " not distinguished");
    }
  return rep;
}

}  // namespace tangleforge
