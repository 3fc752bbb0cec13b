#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tangleforge/profiles.hpp"
#include "tangleforge/splinter.hpp"

namespace tangleforge {

inline bool separator_less(VertexSet x, VertexSet y) { return lex_compare(x, y) < 0; }

// Minimal u-v separators with at most k vertices, sorted. X is minimal iff the components
// of u and v in G-X both have neighbourhood X.
inline std::vector<VertexSet> minimal_separators(const Graph& g, int u, int v, int k, const Caps& caps = {}) {
  if (u == v) throw PreconditionError("endpoints must differ");
  if (!g.vertices().contains(u) || !g.vertices().contains(v)) throw PreconditionError("endpoint outside the graph");
  detail::check_graph_caps(g, caps);
  std::vector<VertexSet> out;
  if (g.adjacent(u, v)) return out;
  const std::vector<int> rest = (g.vertices() - VertexSet{u, v}).to_vector();
  const int n = static_cast<int>(rest.size());
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    if (std::popcount(m) > k) continue;
    VertexSet x;
    for (int i = 0; i < n; ++i)
      if ((m >> i) & 1u) x.insert(rest[i]);
    VertexSet cu, cv;
    for (VertexSet c : g.components(x)) {
      if (c.contains(u)) cu = c;
      if (c.contains(v)) cv = c;
    }
    if (cu == cv) continue;
    if (g.neighborhood(cu) == x && g.neighborhood(cv) == x) out.push_back(x);
  }
  std::sort(out.begin(), out.end(), separator_less);
  return out;
}

// X ~ Y: X ⊆ C ∪ Y for some component C of G-Y.
inline bool separator_nested(const Graph& g, VertexSet x, VertexSet y) {
  if (x.subset_of(y)) return true;
  for (VertexSet c : g.components(y))
    if ((x - y).subset_of(c)) return true;
  return false;
}

// Some component C of G-X has Y ⊆ C ∪ N(C), and symmetrically.
inline bool strongly_nested(const Graph& g, VertexSet x, VertexSet y) {
  auto half = [&](VertexSet p, VertexSet q) {
    for (VertexSet c : g.components(p))
      if (q.subset_of(c | g.neighborhood(c))) return true;
    return false;
  };
  return half(x, y) && half(y, x);
}

struct Separator {
  VertexSet vertices;
  std::vector<Separation> witnesses;  // oriented from the first profile towards the second
};

// Separators of the efficient distinguishers of p and q, each with all its witnesses.
inline std::vector<Separator> distinguishing_separators(const Profile& p, const Profile& q) {
  std::map<std::uint64_t, Separator> by;
  for (const auto& s : efficient_distinguishers(p, q).separations) {
    auto& e = by[s.separator().bits()];
    e.vertices = s.separator();
    e.witnesses.push_back(oriented_towards(p, q, s.canonical()));
  }
  std::vector<Separator> out;
  for (auto& [_, s] : by) out.push_back(std::move(s));
  std::sort(out.begin(), out.end(), [](const Separator& x, const Separator& y) { return separator_less(x.vertices, y.vertices); });
  return out;
}

struct ProfilePair {
  std::size_t p, q;
  int order;
  std::vector<std::size_t> members;     // ids into SeparatorInstance::elements
  std::vector<Separation> distinguishers;  // oriented from p towards q
};

// Separators of efficient distinguishers between every pair of a profile set, as a splinter instance.
struct SeparatorInstance {
  Graph graph;
  std::vector<Profile> profiles;
  std::vector<VertexSet> elements;
  std::vector<ProfilePair> pairs;
  SplinterInstance splinter;

  std::optional<std::size_t> id_of(VertexSet x) const {
    auto it = std::lower_bound(elements.begin(), elements.end(), x, separator_less);
    if (it == elements.end() || *it != x) return std::nullopt;
    return static_cast<std::size_t>(it - elements.begin());
  }
};

namespace detail {

inline void require_distinguishable_regular_robust(const Graph& g, const std::vector<Profile>& profiles, const Caps& caps) {
  const auto universe = all_separations(g, caps);
  for (std::size_t i = 0; i < profiles.size(); ++i) {
    if (!is_regular(g, profiles[i])) throw PreconditionError("profile " + std::to_string(i) + " is not regular");
    if (!is_robust(profiles[i], universe)) throw PreconditionError("profile " + std::to_string(i) + " is not robust");
    for (std::size_t j = 0; j < i; ++j)
      if (efficient_distinguishers(profiles[j], profiles[i]).empty())
        throw PreconditionError("profiles " + std::to_string(j) + " and " + std::to_string(i) + " are not distinguishable");
  }
}

}  // namespace detail

inline SeparatorInstance build_separator_instance(const Graph& g, const std::vector<Profile>& profiles, const Caps& caps = {}) {
  detail::require_distinguishable_regular_robust(g, profiles, caps);
  SeparatorInstance inst;
  inst.graph = g;
  inst.profiles = profiles;
  std::vector<std::vector<Separator>> per_pair;
  for (std::size_t i = 0; i < profiles.size(); ++i)
    for (std::size_t j = i + 1; j < profiles.size(); ++j) {
      per_pair.push_back(distinguishing_separators(profiles[i], profiles[j]));
      for (const auto& s : per_pair.back()) inst.elements.push_back(s.vertices);
    }
  std::sort(inst.elements.begin(), inst.elements.end(), separator_less);
  inst.elements.erase(std::unique(inst.elements.begin(), inst.elements.end()), inst.elements.end());

  std::size_t idx = 0;
  for (std::size_t i = 0; i < profiles.size(); ++i)
    for (std::size_t j = i + 1; j < profiles.size(); ++j, ++idx) {
      ProfilePair pp{i, j, per_pair[idx].front().vertices.size(), {}, {}};
      for (const auto& s : per_pair[idx]) {
        pp.members.push_back(*inst.id_of(s.vertices));
        pp.distinguishers.insert(pp.distinguishers.end(), s.witnesses.begin(), s.witnesses.end());
      }
      inst.pairs.push_back(std::move(pp));
    }

  auto& sp = inst.splinter;
  const std::size_t m = inst.elements.size();
  sp.element_count = m;
  sp.nested.assign(m, std::vector<bool>(m));
  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t y = 0; y < m; ++y) sp.nested[x][y] = separator_nested(g, inst.elements[x], inst.elements[y]);
  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t y = 0; y < x; ++y)
      if (sp.nested[x][y] != sp.nested[y][x])
        throw HypothesisError("separator nestedness is not symmetric on this instance");
  for (const auto& pp : inst.pairs) sp.families.push_back({pp.order, pp.members});

  // Corners materialised from witness separations: a corner of two witnesses whose separator
  // lies in the target family and which distinguishes the target pair efficiently.
  std::vector<std::vector<Separation>> witnesses(m);
  for (const auto& pp : inst.pairs)
    for (const auto& s : pp.distinguishers) witnesses[*inst.id_of(s.separator())].push_back(s);
  sp.corner_oracle = [g, elements = inst.elements, pairs = inst.pairs, profiles, witnesses,
                      nested = sp.nested](std::size_t a, std::size_t b, std::size_t f) -> std::optional<std::size_t> {
    const auto& pp = pairs[f];
    std::optional<std::size_t> fallback;
    for (const auto& wa : witnesses[a])
      for (const auto& wb : witnesses[b])
        for (const auto& c : corners(wa, wb)) {
          if (c.order() != pp.order || !distinguishes(profiles[pp.p], profiles[pp.q], c)) continue;
          auto it = std::lower_bound(elements.begin(), elements.end(), c.separator(), separator_less);
          if (it == elements.end() || *it != c.separator()) continue;
          const std::size_t id = static_cast<std::size_t>(it - elements.begin());
          if (nested[id][a]) return id;
          if (!fallback) fallback = id;
        }
    return fallback;
  };
  return inst;
}

inline std::size_t separator_crossing_number(const SeparatorInstance& inst, VertexSet x, int k) {
  auto id = inst.id_of(x);
  if (!id) throw PreconditionError("separator is not an element of the instance");
  return crossing_number(inst.splinter, *id, k);
}

struct CanonicalSeparators {
  SeparatorInstance instance;
  ThinCheckReport check;
  ThinSplinterResult thin;
  std::vector<VertexSet> separators;
};

// Canonical nested set of separators efficiently distinguishing every pair of profiles.
inline CanonicalSeparators canonical_nested_separators(const Graph& g, const std::vector<Profile>& profiles, const Caps& caps = {}) {
  CanonicalSeparators out;
  out.instance = build_separator_instance(g, profiles, caps);
  out.check = thinly_splinters_check(out.instance.splinter);
  if (!out.check.ok()) {
    const auto& v = out.check.violations.front();
    throw HypothesisError("separator families do not thinly splinter: property " + std::to_string(v.property) + " fails for families " +
                          std::to_string(v.family_i) + " and " + std::to_string(v.family_j));
  }
  out.thin = thin_splinter(out.instance.splinter);
  for (auto x : out.thin.nested_set) out.separators.push_back(out.instance.elements[x]);
  return out;
}

// Distinct separators are strongly nested and each has a tight component.
inline bool is_strongly_nested_set(const Graph& g, const std::vector<VertexSet>& seps) {
  for (auto x : seps)
    for (auto y : seps)
      if (!strongly_nested(g, x, y)) return false;
  return true;
}

struct EmissionStep {
  VertexSet separator;
  std::vector<VertexSet> tight;
  std::vector<VertexSet> non_tight;
  std::vector<VertexSet> grouped;  // per tight component C: the union of 𝒟_C
  std::vector<Separation> emitted;
};

struct NestedSeparations {
  std::vector<UnorientedSeparation> separations;
  std::vector<EmissionStep> steps;
};

namespace detail {

// Direct construction on a connected graph; separators are processed by size, then canonical key.
inline void emit_from_separators(const Graph& g, std::vector<VertexSet> seps, std::vector<Separation>& emitted,
                                 std::vector<EmissionStep>& steps) {
  std::sort(seps.begin(), seps.end(), [](VertexSet x, VertexSet y) {
    if (x.size() != y.size()) return x.size() < y.size();
    return separator_less(x, y);
  });
  const VertexSet v = g.vertices();
  for (VertexSet x : seps) {
    EmissionStep step;
    step.separator = x;
    for (VertexSet c : g.components(x)) (g.neighborhood(c) == x ? step.tight : step.non_tight).push_back(c);
    step.grouped.assign(step.tight.size(), VertexSet{});
    for (const Separation& s : emitted) {
      for (const Separation& o : {s, s.inverse()}) {
        if (!x.subset_of(o.a)) continue;
        std::optional<std::size_t> home;
        for (std::size_t i = 0; i < step.tight.size(); ++i)
          if (step.tight[i].intersects(o.b)) {
            if (home) throw CertificationError("a separation points into two tight components");
            home = i;
          }
        if (!home) continue;
        for (VertexSet d : step.non_tight)
          if (d.intersects(o.b)) step.grouped[*home] |= d;
      }
    }
    for (std::size_t i = 0; i < step.tight.size(); ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (step.grouped[i].intersects(step.grouped[j])) throw CertificationError("grouped non-tight components overlap");
    for (std::size_t i = 0; i < step.tight.size(); ++i) {
      const VertexSet side = step.tight[i] | step.grouped[i];
      step.emitted.push_back({side | x, v - side});
    }
    emitted.insert(emitted.end(), step.emitted.begin(), step.emitted.end());
    steps.push_back(std::move(step));
  }
}

}  // namespace detail

// Home component of a profile: the component C of G with (V∖C, C) in p.
inline std::optional<VertexSet> home_component(const Graph& g, const Profile& p) {
  for (VertexSet c : g.components())
    if (p.contains({g.vertices() - c, c})) return c;
  return std::nullopt;
}

// Nested separations realising a nested set of separators; certified to distinguish every pair efficiently.
inline NestedSeparations separators_to_separations(const Graph& g, const std::vector<VertexSet>& seps,
                                                   const std::vector<Profile>& profiles) {
  for (std::size_t i = 0; i < profiles.size(); ++i)
    if (!is_principal(g, profiles[i]))
      throw PreconditionError("profile " + std::to_string(i) + " is not principal; a nested distinguishing set need not exist");
  NestedSeparations out;
  std::vector<Separation> emitted;
  const auto comps = g.components();
  const VertexSet v = g.vertices();
  for (VertexSet k : comps) {
    std::vector<VertexSet> inside;
    for (VertexSet x : seps) {
      if (x.empty()) continue;
      if (x.subset_of(k)) inside.push_back(x);
      else if (x.intersects(k)) throw PreconditionError("separator meets several components");
    }
    std::vector<Separation> local;
    detail::emit_from_separators(g.induced(k), inside, local, out.steps);
    for (const Separation& s : local) emitted.push_back({s.a, s.b | (v - k)});
  }
  if (comps.size() > 1) {
    std::vector<VertexSet> homes;
    for (const auto& p : profiles)
      if (auto h = home_component(g, p)) homes.push_back(*h);
    std::sort(homes.begin(), homes.end(), separator_less);
    homes.erase(std::unique(homes.begin(), homes.end()), homes.end());
    if (homes.size() >= 2)
      for (VertexSet c : homes) emitted.push_back({c, v - c});
  }
  for (const auto& s : emitted) out.separations.emplace_back(s);
  std::sort(out.separations.begin(), out.separations.end());
  out.separations.erase(std::unique(out.separations.begin(), out.separations.end()), out.separations.end());

  for (const auto& s : out.separations)
    for (const auto& t : out.separations)
      if (!is_nested(s, t)) throw CertificationError("emitted separations are not nested");
  for (std::size_t i = 0; i < profiles.size(); ++i)
    for (std::size_t j = i + 1; j < profiles.size(); ++j) {
      const auto d = efficient_distinguishers(profiles[i], profiles[j]);
      const bool hit = std::any_of(out.separations.begin(), out.separations.end(), [&](const UnorientedSeparation& s) {
        return s.order() == d.order && distinguishes(profiles[i], profiles[j], s.canonical());
      });
      if (!hit)
        throw CertificationError("profiles " + std::to_string(i) + " and " + std::to_string(j) + " are not distinguished efficiently");
    }
  return out;
}

}  // namespace tangleforge
