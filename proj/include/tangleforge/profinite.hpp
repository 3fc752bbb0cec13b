#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tangleforge/splinter.hpp"

namespace tangleforge {

// Finite poset given by its order relation.
struct DirectedPoset {
  std::vector<std::vector<bool>> leq;

  std::size_t size() const { return leq.size(); }

  std::vector<std::string> problems() const {
    std::vector<std::string> out;
    const std::size_t n = size();
    for (std::size_t p = 0; p < n; ++p) {
      if (leq[p].size() != n) {
        out.push_back("order relation has the wrong shape");
        return out;
      }
    }
    for (std::size_t p = 0; p < n; ++p) {
      if (!leq[p][p]) out.push_back("not reflexive at " + std::to_string(p));
      for (std::size_t q = 0; q < n; ++q) {
        if (p != q && leq[p][q] && leq[q][p]) out.push_back("not antisymmetric at " + std::to_string(p) + "," + std::to_string(q));
        for (std::size_t r = 0; r < n; ++r)
          if (leq[p][q] && leq[q][r] && !leq[p][r]) out.push_back("not transitive at " + std::to_string(p) + "," + std::to_string(q) + "," + std::to_string(r));
        bool bound = false;
        for (std::size_t r = 0; r < n && !bound; ++r) bound = leq[p][r] && leq[q][r];
        if (!bound) out.push_back("points " + std::to_string(p) + "," + std::to_string(q) + " have no common upper bound");
      }
    }
    if (n == 0) out.push_back("poset is empty");
    return out;
  }

  // A finite directed poset has a greatest element.
  std::size_t top() const {
    for (std::size_t t = 0; t < size(); ++t) {
      bool all = true;
      for (std::size_t p = 0; p < size() && all; ++p) all = leq[p][t];
      if (all) return t;
    }
    throw PreconditionError("poset has no greatest element");
  }
};

// Inverse system of finite universes indexed by a directed poset, with maps f_qp : U_q -> U_p for p <= q.
struct InverseSystem {
  DirectedPoset poset;
  std::vector<TableUniverse> universes;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> maps;  // key (q, p) with p < q

  std::size_t map(std::size_t q, std::size_t p, std::size_t x) const {
    if (q == p) return x;
    auto it = maps.find({q, p});
    if (it == maps.end()) throw PreconditionError("missing map " + std::to_string(q) + "->" + std::to_string(p));
    return it->second.at(x);
  }
};

inline std::vector<std::string> validate_inverse_system(const InverseSystem& sys) {
  auto out = sys.poset.problems();
  if (!out.empty()) return out;
  const std::size_t n = sys.poset.size();
  if (sys.universes.size() != n) return {"one universe per point is required"};
  for (std::size_t p = 0; p < n; ++p) {
    auto rep = verify_universe(sys.universes[p], sys.universes[p].elements());
    if (!rep.ok()) out.push_back("universe " + std::to_string(p) + " violates " + rep.violations.front().axiom);
  }
  for (std::size_t q = 0; q < n; ++q)
    for (std::size_t p = 0; p < n; ++p) {
      if (p == q || !sys.poset.leq[p][q]) continue;
      auto it = sys.maps.find({q, p});
      const auto& uq = sys.universes[q];
      const auto& up = sys.universes[p];
      if (it == sys.maps.end() || it->second.size() != uq.size()) {
        out.push_back("map " + std::to_string(q) + "->" + std::to_string(p) + " is missing or has the wrong size");
        continue;
      }
      const auto& f = it->second;
      bool hom = true;
      for (std::size_t x = 0; x < uq.size() && hom; ++x) {
        if (f[x] >= up.size()) hom = false;
        else if (f[uq.star(x)] != up.star(f[x])) hom = false;
        for (std::size_t y = 0; y < uq.size() && hom; ++y)
          hom = f[uq.join(x, y)] == up.join(f[x], f[y]) && f[uq.meet(x, y)] == up.meet(f[x], f[y]);
      }
      if (!hom) out.push_back("map " + std::to_string(q) + "->" + std::to_string(p) + " is not a homomorphism");
    }
  if (!out.empty()) return out;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t q = 0; q < n; ++q)
      for (std::size_t p = 0; p < n; ++p) {
        if (!sys.poset.leq[p][q] || !sys.poset.leq[q][r]) continue;
        for (std::size_t x = 0; x < sys.universes[r].size(); ++x)
          if (sys.map(r, p, x) != sys.map(q, p, sys.map(r, q, x))) {
            out.push_back("maps " + std::to_string(r) + "->" + std::to_string(q) + "->" + std::to_string(p) + " are not compatible");
            break;
          }
      }
  return out;
}

// A thread: one element per point, compatible with the maps.
using Thread = std::vector<std::size_t>;

// Threads whose entries lie in allowed[p] at every point. With a greatest element t every
// thread is the image of its entry at t.
inline std::vector<Thread> inverse_limit(const InverseSystem& sys, const std::vector<std::set<std::size_t>>& allowed,
                                         const Caps& caps = {}) {
  const std::size_t t = sys.poset.top();
  const std::size_t n = sys.poset.size();
  std::vector<Thread> out;
  for (std::size_t x : allowed[t]) {
    Thread th(n);
    bool ok = true;
    for (std::size_t p = 0; p < n && ok; ++p) {
      th[p] = sys.map(t, p, x);
      ok = allowed[p].count(th[p]) > 0;
    }
    if (!ok) continue;
    out.push_back(std::move(th));
    if (out.size() > caps.max_limits) throw SizeLimitError("inverse limit exceeds cap");
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Family given by a subset O_p at every point.
struct ProfiniteFamily {
  std::vector<std::vector<std::size_t>> at;
};

struct ProfiniteSplinterResult {
  std::vector<Thread> nested;                    // both orientations of every chosen thread
  std::vector<std::vector<std::size_t>> chosen;  // N_p as unoriented ids, per point
  std::vector<std::size_t> candidate_sizes;      // |𝒩_p| per point
  bool profintersect = false;
};

namespace detail {

inline std::set<std::size_t> star_closed(const TableUniverse& u, const std::vector<std::size_t>& xs) {
  std::set<std::size_t> out;
  for (auto x : xs) {
    if (x >= u.size()) throw PreconditionError("family names an unknown element");
    out.insert(x);
    out.insert(u.star(x));
  }
  return out;
}

}  // namespace detail

// Nested set N in the inverse limit meeting the limit of every family.
inline ProfiniteSplinterResult profinite_splinter(const InverseSystem& sys, const std::vector<ProfiniteFamily>& families,
                                                  const Caps& caps = {}) {
  if (auto bad = validate_inverse_system(sys); !bad.empty()) throw PreconditionError("invalid inverse system: " + bad.front());
  const std::size_t n = sys.poset.size();
  const std::size_t top = sys.poset.top();

  // Limits B_i and their projections.
  std::vector<std::vector<std::set<std::size_t>>> proj(families.size(), std::vector<std::set<std::size_t>>(n));
  std::vector<std::vector<Thread>> limits(families.size());
  for (std::size_t i = 0; i < families.size(); ++i) {
    const auto& fam = families[i];
    if (fam.at.size() != n) throw PreconditionError("family " + std::to_string(i) + " needs a set at every point");
    std::vector<std::set<std::size_t>> allowed(n);
    for (std::size_t p = 0; p < n; ++p) allowed[p] = detail::star_closed(sys.universes[p], fam.at[p]);
    for (std::size_t q = 0; q < n; ++q)
      for (std::size_t p = 0; p < n; ++p) {
        if (p == q || !sys.poset.leq[p][q]) continue;
        for (auto x : allowed[q])
          if (!allowed[p].count(sys.map(q, p, x)))
            throw PreconditionError("family " + std::to_string(i) + " is not closed under the maps");
      }
    limits[i] = inverse_limit(sys, allowed, caps);
    if (limits[i].empty()) throw PreconditionError("family " + std::to_string(i) + " has an empty limit");
    for (const auto& th : limits[i])
      for (std::size_t p = 0; p < n; ++p) proj[i][p].insert(sys.universes[p].unoriented(th[p]));
  }

  // Projections must splinter at every point.
  for (std::size_t p = 0; p < n; ++p) {
    FiniteSplinterFamily<TableUniverse> fp{sys.universes[p], {}};
    for (const auto& pr : proj) fp.families.emplace_back(pr[p].begin(), pr[p].end());
    if (!splinters_check(fp).ok()) throw HypothesisError("projections do not splinter at point " + std::to_string(p));
  }

  // 𝒩_p: nested subsets of the union of the projections meeting every projection.
  ProfiniteSplinterResult res;
  std::vector<std::vector<std::vector<std::size_t>>> candidates(n);
  for (std::size_t p = 0; p < n; ++p) {
    const auto& u = sys.universes[p];
    std::set<std::size_t> ground;
    for (const auto& pr : proj) ground.insert(pr[p].begin(), pr[p].end());
    if (ground.size() > caps.max_profinite_candidates)
      throw SizeLimitError("candidate set at point " + std::to_string(p) + " has " + std::to_string(ground.size()) + " elements");
    const std::vector<std::size_t> g(ground.begin(), ground.end());
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << g.size()); ++m) {
      std::vector<std::size_t> pick;
      for (std::size_t i = 0; i < g.size(); ++i)
        if ((m >> i) & 1u) pick.push_back(g[i]);
      bool ok = true;
      for (std::size_t a = 0; a < pick.size() && ok; ++a)
        for (std::size_t b = a + 1; b < pick.size() && ok; ++b) ok = is_nested(u, pick[a], pick[b]);
      for (const auto& pr : proj)
        if (ok) ok = std::any_of(pick.begin(), pick.end(), [&](std::size_t x) { return pr[p].count(x) > 0; });
      if (ok) candidates[p].push_back(std::move(pick));
    }
    if (candidates[p].empty()) throw HypothesisError("no nested transversal at point " + std::to_string(p));
    std::sort(candidates[p].begin(), candidates[p].end());
    res.candidate_sizes.push_back(candidates[p].size());
  }

  auto image = [&](std::size_t q, std::size_t p, const std::vector<std::size_t>& set) {
    std::set<std::size_t> out;
    for (auto x : set) out.insert(sys.universes[p].unoriented(sys.map(q, p, x)));
    return std::vector<std::size_t>(out.begin(), out.end());
  };
  for (std::size_t q = 0; q < n; ++q)
    for (std::size_t p = 0; p < n; ++p) {
      if (p == q || !sys.poset.leq[p][q]) continue;
      for (const auto& c : candidates[q])
        if (!std::binary_search(candidates[p].begin(), candidates[p].end(), image(q, p, c)))
          throw CertificationError("candidate sets are not closed under the maps");
    }

  // Least element of 𝒩_top determines the least thread.
  const auto& best = candidates[top].front();
  for (std::size_t p = 0; p < n; ++p) res.chosen.push_back(image(top, p, best));
  std::vector<std::set<std::size_t>> allowed(n);
  for (std::size_t p = 0; p < n; ++p) allowed[p] = detail::star_closed(sys.universes[p], res.chosen[p]);
  res.nested = inverse_limit(sys, allowed, caps);

  for (std::size_t p = 0; p < n; ++p)
    for (const auto& x : res.nested)
      for (const auto& y : res.nested)
        if (!is_nested(sys.universes[p], x[p], y[p])) throw CertificationError("result is not nested at point " + std::to_string(p));
  // Meeting every projection of a limit must imply meeting the limit itself.
  res.profintersect = true;
  for (std::size_t i = 0; i < families.size(); ++i) {
    const bool meets = std::any_of(res.nested.begin(), res.nested.end(), [&](const Thread& x) {
      return std::binary_search(limits[i].begin(), limits[i].end(), x);
    });
    bool every_point = true;
    for (std::size_t p = 0; p < n; ++p) {
      const auto& ch = res.chosen[p];
      every_point = every_point && std::any_of(ch.begin(), ch.end(), [&](std::size_t x) { return proj[i][p].count(x) > 0; });
    }
    if (every_point && !meets) res.profintersect = false;
    if (!meets) throw CertificationError("result misses the limit of family " + std::to_string(i));
  }
  return res;
}

// Restrictions of a graph's separations to vertex sets Z, ordered by inclusion.
struct GraphRestrictionSystem {
  InverseSystem system;
  std::vector<VertexSet> points;
  std::vector<std::vector<Separation>> labels;  // per point: id -> separation of G[Z]

  std::size_t id_of(std::size_t p, const Separation& s) const {
    const auto& l = labels[p];
    auto it = std::lower_bound(l.begin(), l.end(), s, key_less);
    if (it == l.end() || !(*it == s)) throw PreconditionError("not a separation of the restricted graph");
    return static_cast<std::size_t>(it - l.begin());
  }
};

inline GraphRestrictionSystem graph_restriction_system(const Graph& g, const std::vector<VertexSet>& points, const Caps& caps = {}) {
  GraphRestrictionSystem out;
  out.points = points;
  const std::size_t n = points.size();
  out.system.poset.leq.assign(n, std::vector<bool>(n));
  for (std::size_t p = 0; p < n; ++p) {
    if (!points[p].subset_of(g.vertices())) throw PreconditionError("point is not a vertex subset");
    for (std::size_t q = 0; q < n; ++q) out.system.poset.leq[p][q] = points[p].subset_of(points[q]);
  }
  for (std::size_t p = 0; p < n; ++p) {
    out.labels.push_back(all_separations(g.induced(points[p]), caps));
    out.system.universes.push_back(TableUniverse::tabulate(GraphUniverse{}, out.labels.back()));
  }
  for (std::size_t q = 0; q < n; ++q)
    for (std::size_t p = 0; p < n; ++p) {
      if (p == q || !out.system.poset.leq[p][q]) continue;
      std::vector<std::size_t> f;
      for (const auto& s : out.labels[q]) f.push_back(out.id_of(p, {s.a & points[p], s.b & points[p]}));
      out.system.maps[{q, p}] = std::move(f);
    }
  return out;
}

}  // namespace tangleforge
