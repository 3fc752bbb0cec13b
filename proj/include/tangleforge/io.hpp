#pragma once

#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "tangleforge/profinite.hpp"
#include "tangleforge/treedec.hpp"

namespace tangleforge::io {

using json = nlohmann::json;

// Edge list: one "u v" pair per line, 0-based; a line with a single id declares an isolated vertex.
// '#' starts a comment.
inline Graph parse_edge_list(std::istream& in) {
  std::vector<std::pair<int, int>> edges;
  int n = 0;
  std::string line;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<long> ids;
    std::string tok;
    while (ls >> tok) {
      try {
        std::size_t used = 0;
        long v = std::stol(tok, &used);
        if (used != tok.size() || v < 0) throw std::invalid_argument(tok);
        ids.push_back(v);
      } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(lineno) + ": expected a vertex id, got '" + tok + "'");
      }
    }
    if (ids.empty()) continue;
    if (ids.size() > 2) throw ParseError("line " + std::to_string(lineno) + ": expected 'u v'");
    for (long v : ids) {
      if (v >= VertexSet::capacity) throw ParseError("line " + std::to_string(lineno) + ": vertex id out of range");
      n = std::max<int>(n, static_cast<int>(v) + 1);
    }
    if (ids.size() == 2) {
      if (ids[0] == ids[1]) throw ParseError("line " + std::to_string(lineno) + ": self-loop");
      edges.emplace_back(static_cast<int>(ids[0]), static_cast<int>(ids[1]));
    }
  }
  return Graph(n, edges);
}

inline Graph graph_from_json(const json& j) {
  try {
    const int n = j.at("n").get<int>();
    if (n < 0 || n > VertexSet::capacity) throw ParseError("graph: n out of range");
    Graph g(n);
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw ParseError("graph: each edge must be a pair");
      const int u = e[0].get<int>(), v = e[1].get<int>();
      if (u < 0 || v < 0 || u >= n || v >= n) throw ParseError("graph: edge endpoint out of range");
      if (u == v) throw ParseError("graph: self-loop");
      g.add_edge(u, v);
    }
    return g;
  } catch (const json::exception& e) {
    throw ParseError(std::string("graph: ") + e.what());
  }
}

inline json read_json(std::istream& in) {
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

// JSON if the text starts with '{', edge list otherwise.
inline Graph parse_graph(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  std::istringstream in(text);
  if (first != std::string::npos && text[first] == '{') return graph_from_json(read_json(in));
  return parse_edge_list(in);
}

inline std::string slurp(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

inline Graph load_graph(const std::string& path) { return parse_graph(slurp(path)); }

inline json to_json(VertexSet s) { return s.to_vector(); }

inline json to_json(const Graph& g) {
  json edges = json::array();
  for (auto [u, v] : g.edges()) edges.push_back({u, v});
  return {{"n", g.id_bound()}, {"vertices", to_json(g.vertices())}, {"edges", edges}};
}

inline json to_json(const Separation& s) { return {{"a", to_json(s.a)}, {"b", to_json(s.b)}, {"order", s.order()}}; }
inline json to_json(const UnorientedSeparation& s) { return to_json(s.canonical()); }

inline json to_json(const Profile& p, const ProfileFlags& f) {
  json oriented = json::array();
  for (const auto& s : p.oriented()) oriented.push_back({{"a", to_json(s.a)}, {"b", to_json(s.b)}});
  return {{"k", p.k()}, {"oriented", oriented}, {"flags", {{"regular", f.regular}, {"robust", f.robust}, {"principal", f.principal}}}};
}

inline json to_json(const SplinterInstance& inst) {
  json nested = json::array();
  for (std::size_t x = 0; x < inst.element_count; ++x)
    for (std::size_t y = x + 1; y < inst.element_count; ++y)
      if (inst.nested[x][y]) nested.push_back({x, y});
  json fams = json::array();
  for (const auto& f : inst.families) fams.push_back({{"order", f.order}, {"members", f.members}});
  return {{"elements", inst.element_count}, {"nested", nested}, {"families", fams}};
}

// {"elements": m, "nested": [[i,j],...], "families": [{"order": k, "members": [...]}]}; nestedness is symmetric and reflexive.
inline SplinterInstance instance_from_json(const json& j) {
  try {
    SplinterInstance inst;
    inst.element_count = j.at("elements").get<std::size_t>();
    inst.nested.assign(inst.element_count, std::vector<bool>(inst.element_count, false));
    for (std::size_t x = 0; x < inst.element_count; ++x) inst.nested[x][x] = true;
    for (const auto& e : j.at("nested")) {
      const auto x = e.at(0).get<std::size_t>(), y = e.at(1).get<std::size_t>();
      if (x >= inst.element_count || y >= inst.element_count) throw ParseError("instance: nested pair out of range");
      inst.nested[x][y] = inst.nested[y][x] = true;
    }
    for (const auto& f : j.at("families")) inst.families.push_back({f.at("order").get<int>(), f.at("members").get<std::vector<std::size_t>>()});
    inst.validate();
    return inst;
  } catch (const json::exception& e) {
    throw ParseError(std::string("instance: ") + e.what());
  }
}

inline json to_json(const ThinSplinterResult& r) {
  json levels = json::array();
  for (const auto& l : r.levels) levels.push_back({{"k", l.k}, {"added", l.added}});
  return {{"levels", levels}, {"nested", r.nested_set}};
}

inline json to_json(const TreeDecomposition& td) {
  json nodes = json::array();
  for (std::size_t i = 0; i < td.bags.size(); ++i) nodes.push_back({{"id", i}, {"bag", to_json(td.bags[i])}});
  json edges = json::array();
  for (auto [u, v] : td.edges) edges.push_back({u, v});
  return {{"nodes", nodes}, {"edges", edges}};
}

inline json to_json(const TreeOfTreeDecompositions& t, int node = 0) {
  const auto& nd = t.nodes[node];
  json out = to_json(nd.td);
  out["level"] = nd.depth + 1;
  out["torso_of"] = nd.torso_of < 0 ? json(nullptr) : json(nd.torso_of);
  out["graph"] = to_json(nd.graph);
  json children = json::array();
  for (int c : nd.children) children.push_back(to_json(t, c));
  out["children"] = children;
  return out;
}

inline std::string bag_label(VertexSet b) {
  std::ostringstream os;
  os << b;
  return os.str();
}

inline std::string to_dot(const TreeDecomposition& td, const std::string& name = "td") {
  std::ostringstream os;
  os << "graph " << name << " {\n";
  for (std::size_t i = 0; i < td.bags.size(); ++i) os << "  n" << i << " [label=\"" << bag_label(td.bags[i]) << "\"];\n";
  for (auto [u, v] : td.edges) os << "  n" << u << " -- n" << v << ";\n";
  os << "}\n";
  return os.str();
}

// One cluster per node of the outer tree; dashed edges point from a bag to its torso's decomposition.
inline std::string to_dot(const TreeOfTreeDecompositions& t) {
  std::ostringstream os;
  os << "graph totd {\n  compound=true;\n";
  for (std::size_t i = 0; i < t.nodes.size(); ++i) {
    const auto& nd = t.nodes[i];
    os << "  subgraph cluster_" << i << " {\n    label=\"node " << i << " level " << nd.depth + 1 << "\";\n";
    for (std::size_t b = 0; b < nd.td.bags.size(); ++b) os << "    t" << i << "_" << b << " [label=\"" << bag_label(nd.td.bags[b]) << "\"];\n";
    for (auto [u, v] : nd.td.edges) os << "    t" << i << "_" << u << " -- t" << i << "_" << v << ";\n";
    os << "  }\n";
  }
  for (std::size_t i = 1; i < t.nodes.size(); ++i) {
    const auto& nd = t.nodes[i];
    os << "  t" << nd.parent << "_" << nd.torso_of << " -- t" << i << "_0 [style=dashed, lhead=cluster_" << i << "];\n";
  }
  os << "}\n";
  return os.str();
}

inline TableUniverse universe_from_json(const json& j) {
  try {
    const auto m = j.at("star").size();
    std::vector<std::vector<bool>> leq(m, std::vector<bool>(m, false));
    for (const auto& e : j.at("leq")) leq.at(e.at(0).get<std::size_t>()).at(e.at(1).get<std::size_t>()) = true;
    for (std::size_t x = 0; x < m; ++x) leq[x][x] = true;
    return TableUniverse(j.at("star").get<std::vector<std::size_t>>(), leq, j.at("join").get<std::vector<std::vector<std::size_t>>>(),
                         j.at("meet").get<std::vector<std::vector<std::size_t>>>(), j.at("order").get<std::vector<int>>());
  } catch (const json::exception& e) {
    throw ParseError(std::string("universe: ") + e.what());
  } catch (const std::out_of_range& e) {
    throw ParseError(std::string("universe: index out of range"));
  }
}

struct ProfiniteInput {
  InverseSystem system;
  std::vector<ProfiniteFamily> families;
  std::vector<std::vector<Separation>> labels;  // empty for table systems
};

// Either {"graph": {...}, "points": [[...]], "families": [[[sep...] per point]]} with separations as {"a","b"},
// or {"order": [[p,q]...], "universes": [...], "maps": [{"from","to","map": [[x,y]...]}], "families": [[[ids] per point]]}.
inline ProfiniteInput profinite_from_json(const json& j, const Caps& caps = {}) {
  try {
    ProfiniteInput out;
    if (j.contains("graph")) {
      const Graph g = graph_from_json(j.at("graph"));
      std::vector<VertexSet> points;
      for (const auto& p : j.at("points")) points.push_back(VertexSet::from(p.get<std::vector<int>>()));
      auto grs = graph_restriction_system(g, points, caps);
      for (const auto& f : j.at("families")) {
        ProfiniteFamily fam;
        std::size_t p = 0;
        for (const auto& at : f) {
          std::vector<std::size_t> ids;
          for (const auto& s : at)
            ids.push_back(grs.id_of(p, {VertexSet::from(s.at("a").get<std::vector<int>>()), VertexSet::from(s.at("b").get<std::vector<int>>())}));
          fam.at.push_back(std::move(ids));
          ++p;
        }
        out.families.push_back(std::move(fam));
      }
      out.system = std::move(grs.system);
      out.labels = std::move(grs.labels);
      return out;
    }
    for (const auto& u : j.at("universes")) out.system.universes.push_back(universe_from_json(u));
    const std::size_t n = out.system.universes.size();
    out.system.poset.leq.assign(n, std::vector<bool>(n, false));
    for (std::size_t p = 0; p < n; ++p) out.system.poset.leq[p][p] = true;
    for (const auto& e : j.at("order")) out.system.poset.leq.at(e.at(0).get<std::size_t>()).at(e.at(1).get<std::size_t>()) = true;
    for (const auto& m : j.at("maps")) {
      const auto q = m.at("from").get<std::size_t>(), p = m.at("to").get<std::size_t>();
      if (q >= n || p >= n) throw ParseError("system: map endpoint out of range");
      std::vector<std::size_t> f(out.system.universes[q].size(), 0);
      for (const auto& pr : m.at("map")) f.at(pr.at(0).get<std::size_t>()) = pr.at(1).get<std::size_t>();
      out.system.maps[{q, p}] = std::move(f);
    }
    for (const auto& f : j.at("families")) out.families.push_back({f.get<std::vector<std::vector<std::size_t>>>()});
    return out;
  } catch (const json::exception& e) {
    throw ParseError(std::string("system: ") + e.what());
  } catch (const std::out_of_range&) {
    throw ParseError("system: index out of range");
  }
}

}  // namespace tangleforge::io
