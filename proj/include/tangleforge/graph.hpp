#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "tangleforge/errors.hpp"
#include "tangleforge/vertex_set.hpp"

namespace tangleforge {

// Simple undirected graph. Vertex ids live in [0, id_bound()); vertices() may be a
// proper subset so that induced subgraphs and torsos keep the ids of the host.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n) : vertices_(VertexSet::range(check_bound(n))), adj_(n) {}
  Graph(int n, const std::vector<std::pair<int, int>>& edges) : Graph(n) {
    for (auto [u, v] : edges) add_edge(u, v);
  }

  int id_bound() const { return static_cast<int>(adj_.size()); }
  VertexSet vertices() const { return vertices_; }
  int order() const { return vertices_.size(); }

  void add_edge(int u, int v) {
    if (!vertices_.contains(u) || !vertices_.contains(v) || u >= id_bound() || v >= id_bound())
      throw PreconditionError("edge " + std::to_string(u) + "-" + std::to_string(v) + " has an endpoint outside the graph");
    if (u == v) throw PreconditionError("self-loop at vertex " + std::to_string(u));
    adj_[u].insert(v);
    adj_[v].insert(u);
  }

  bool adjacent(int u, int v) const { return adj_[u].contains(v); }
  VertexSet neighbors(int v) const { return adj_[v]; }

  // Vertices outside s adjacent to s.
  VertexSet neighborhood(VertexSet s) const {
    VertexSet out;
    for (int v : s) out |= adj_[v];
    return out - s;
  }

  // Vertex sets of the components of G - removed, sorted by lex order.
  std::vector<VertexSet> components(VertexSet removed = {}) const {
    std::vector<VertexSet> out;
    VertexSet rest = vertices_ - removed;
    while (!rest.empty()) {
      VertexSet comp = VertexSet::singleton(rest.first());
      VertexSet frontier = comp;
      while (!frontier.empty()) {
        VertexSet next;
        for (int v : frontier) next |= adj_[v];
        next = (next & rest) - comp;
        comp |= next;
        frontier = next;
      }
      out.push_back(comp);
      rest -= comp;
    }
    std::sort(out.begin(), out.end(), [](VertexSet a, VertexSet b) { return lex_compare(a, b) < 0; });
    return out;
  }

  bool connected() const { return components().size() <= 1; }

  // True if some edge joins x and y.
  bool has_edge_between(VertexSet x, VertexSet y) const {
    for (int v : x)
      if (adj_[v].intersects(y)) return true;
    return false;
  }

  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> out;
    for (int u : vertices_)
      for (int v : adj_[u])
        if (u < v) out.emplace_back(u, v);
    return out;
  }

  std::size_t edge_count() const { return edges().size(); }

  Graph induced(VertexSet z) const {
    Graph h = *this;
    h.vertices_ = vertices_ & z;
    for (int v = 0; v < id_bound(); ++v) h.adj_[v] = h.vertices_.contains(v) ? (adj_[v] & h.vertices_) : VertexSet{};
    return h;
  }

  void make_clique(VertexSet s) {
    for (int u : s)
      for (int v : s)
        if (u != v) adj_[u].insert(v);
  }

  // Image under a vertex map defined on [0, id_bound()).
  Graph relabel(const std::vector<int>& perm) const {
    Graph h(id_bound());
    h.vertices_ = map_set(vertices_, perm);
    for (auto [u, v] : edges()) h.add_edge(perm[u], perm[v]);
    return h;
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.vertices_ == b.vertices_ && a.adj_ == b.adj_;
  }

  static VertexSet map_set(VertexSet s, const std::vector<int>& perm) {
    VertexSet out;
    for (int v : s) out.insert(perm[v]);
    return out;
  }

 private:
  static int check_bound(int n) {
    if (n < 0 || n > VertexSet::capacity) throw PreconditionError("vertex count must be in [0, 64]");
    return n;
  }

  VertexSet vertices_;
  std::vector<VertexSet> adj_;
};

// All automorphisms by backtracking over vertex images; ids outside vertices() are fixed.
inline std::vector<std::vector<int>> automorphisms(const Graph& g) {
  const int n = g.id_bound();
  const std::vector<int> vs = g.vertices().to_vector();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<int>> out;
  VertexSet used;
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == vs.size()) {
      out.push_back(perm);
      return;
    }
    const int v = vs[i];
    for (int w : g.vertices() - used) {
      if (g.neighbors(v).size() != g.neighbors(w).size()) continue;
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) ok = g.adjacent(v, vs[j]) == g.adjacent(w, perm[vs[j]]);
      if (!ok) continue;
      perm[v] = w;
      used.insert(w);
      self(self, i + 1);
      used.erase(w);
    }
    perm[v] = v;
  };
  rec(rec, 0);
  return out;
}

}  // namespace tangleforge
