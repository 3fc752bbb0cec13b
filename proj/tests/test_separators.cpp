#include <gtest/gtest.h>

#include "support.hpp"

using namespace tangleforge;
using tangleforge::support::sep;

namespace {

bool crossing(const Graph& g, VertexSet x, VertexSet y) { return !separator_nested(g, x, y) || !separator_nested(g, y, x); }

}  // namespace

TEST(MinimalSeparators, Examples) {
  EXPECT_EQ(minimal_separators(support::fixture_graph("P4"), 0, 3, 1), (std::vector<VertexSet>{VertexSet{1}, VertexSet{2}}));
  Graph k4(4);
  for (int u = 0; u < 4; ++u)
    for (int v = u + 1; v < 4; ++v) k4.add_edge(u, v);
  EXPECT_TRUE(minimal_separators(k4, 0, 1, 3).empty());
  EXPECT_EQ(minimal_separators(support::fixture_graph("C4"), 0, 2, 2), (std::vector<VertexSet>{VertexSet{1, 3}}));
  EXPECT_TRUE(minimal_separators(support::fixture_graph("C4"), 0, 2, 1).empty());
  EXPECT_THROW(minimal_separators(k4, 2, 2, 1), PreconditionError);
  EXPECT_THROW(minimal_separators(k4, 0, 9, 1), PreconditionError);
}

TEST(MinimalSeparators, AgreeWithSubsetScan) {
  for (const auto& f : fixtures())
    for (int u : f.graph.vertices())
      for (int v : f.graph.vertices()) {
        if (u == v) continue;
        for (int k = 0; k <= 3; ++k) EXPECT_EQ(minimal_separators(f.graph, u, v, k, f.caps), oracle::minimal_separators_by_subsets(f.graph, u, v, k)) << f.name;
      }
}

TEST(SeparatorNested, Examples) {
  const auto& g = support::fixture_graph("2K4");
  EXPECT_TRUE(separator_nested(g, VertexSet{3}, VertexSet{3, 4}));
  EXPECT_TRUE(separator_nested(g, VertexSet{3}, VertexSet{4}));
  EXPECT_TRUE(separator_nested(g, VertexSet{4}, VertexSet{3}));
}

TEST(SeparatorNested, AsymmetricOutsideDistinguishingSeparators) {
  const auto& g = support::fixture_graph("P4");
  EXPECT_FALSE(separator_nested(g, VertexSet{0, 2}, VertexSet{1}));
  EXPECT_TRUE(separator_nested(g, VertexSet{1}, VertexSet{0, 2}));
}

TEST(SeparatorNested, SymmetricOnDistinguishingSeparators) {
  for (const auto& f : fixtures()) {
    const auto inst = build_separator_instance(f.graph, harness::fixture_profiles(f), f.caps);
    for (auto x : inst.elements)
      for (auto y : inst.elements) EXPECT_EQ(separator_nested(f.graph, x, y), separator_nested(f.graph, y, x)) << f.name << ' ' << x << ' ' << y;
  }
}

TEST(StronglyNested, Examples) {
  const auto& g = support::fixture_graph("2K4");
  EXPECT_TRUE(strongly_nested(g, VertexSet{3}, VertexSet{4}));
  EXPECT_TRUE(strongly_nested(g, VertexSet{3}, VertexSet{3}));
  EXPECT_FALSE(strongly_nested(g, g.vertices(), VertexSet{3}));
  EXPECT_FALSE(strongly_nested(g, g.vertices(), g.vertices()));
  const auto& c4 = support::fixture_graph("C4");
  EXPECT_FALSE(strongly_nested(c4, VertexSet{0, 2}, VertexSet{1, 3}));
}

TEST(StronglyNested, SelfNestedIffTightComponentExists) {
  for (const auto& f : fixtures())
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << f.graph.order()) && m < 512; ++m) {
      const VertexSet x(m);
      bool tight = false;
      for (VertexSet c : f.graph.components(x)) tight = tight || f.graph.neighborhood(c) == x;
      EXPECT_EQ(strongly_nested(f.graph, x, x), tight) << f.name << ' ' << x;
    }
}

TEST(StronglyNested, ClosedUnderSubsetsOnConnectedGraphs) {
  for (const char* name : {"P4", "C4"}) {
    const auto& g = support::fixture_graph(name);
    const int n = g.order();
    for (std::uint64_t x = 0; x < (1u << n); ++x)
      for (std::uint64_t y = 0; y < (1u << n); ++y) {
        if (!strongly_nested(g, VertexSet(x), VertexSet(y))) continue;
        for (std::uint64_t xs = x;; xs = (xs - 1) & x) {
          for (std::uint64_t ys = y;; ys = (ys - 1) & y) {
            ASSERT_TRUE(strongly_nested(g, VertexSet(xs), VertexSet(ys))) << name;
            if (ys == 0) break;
          }
          if (xs == 0) break;
        }
      }
  }
}

TEST(StronglyNested, NestedDistinguishingSeparatorsAreStronglyNested) {
  for (const auto& f : fixtures()) {
    const auto inst = build_separator_instance(f.graph, harness::fixture_profiles(f), f.caps);
    for (auto x : inst.elements)
      for (auto y : inst.elements)
        if (separator_nested(f.graph, x, y)) { EXPECT_TRUE(strongly_nested(f.graph, x, y)) << f.name; }
  }
}

TEST(DistinguishingSeparators, TwoCliques) {
  const auto ps = support::profiles_of("2K4");
  const auto& g = support::fixture_graph("2K4");
  bool found = false;
  for (std::size_t i = 0; i < ps.size(); ++i)
    for (std::size_t j = i + 1; j < ps.size(); ++j) {
      const auto ds = distinguishing_separators(ps[i], ps[j]);
      if (ds.size() != 2) continue;
      found = true;
      EXPECT_EQ(ds[0].vertices, VertexSet{3});
      EXPECT_EQ(ds[1].vertices, VertexSet{4});
      for (const auto& d : ds) {
        ASSERT_EQ(d.witnesses.size(), 1u);
        EXPECT_TRUE(ps[i].contains(d.witnesses[0]) && ps[j].contains(d.witnesses[0].inverse()));
        EXPECT_TRUE(is_tight(g, d.witnesses[0]));
      }
    }
  EXPECT_TRUE(found);
  EXPECT_TRUE(distinguishing_separators(ps[0], ps[0]).empty());
}

TEST(DistinguishingSeparators, WitnessesAreTight) {
  for (const auto& f : fixtures()) {
    const auto ps = harness::fixture_profiles(f);
    for (std::size_t i = 0; i < ps.size(); ++i)
      for (std::size_t j = i + 1; j < ps.size(); ++j)
        for (const auto& d : distinguishing_separators(ps[i], ps[j]))
          for (const auto& w : d.witnesses) {
            EXPECT_TRUE(is_tight(f.graph, w)) << f.name << ' ' << w;
            EXPECT_EQ(w.separator(), d.vertices);
          }
  }
}

TEST(DistinguishingSeparators, CrossingSeparatorMeetsEveryTightComponent) {
  for (const auto& f : fixtures()) {
    const auto inst = build_separator_instance(f.graph, harness::fixture_profiles(f), f.caps);
    for (auto x : inst.elements)
      for (auto y : inst.elements) {
        if (!crossing(f.graph, x, y)) continue;
        for (VertexSet c : f.graph.components(x))
          if (f.graph.neighborhood(c) == x) { EXPECT_TRUE(y.intersects(c)) << f.name << ' ' << x << ' ' << y; }
      }
  }
}

TEST(DistinguishingSeparators, CrossingSeparatorIsAMinimalSeparatorOfTheOther) {
  for (const auto& f : fixtures()) {
    const auto inst = build_separator_instance(f.graph, harness::fixture_profiles(f), f.caps);
    for (auto x : inst.elements)
      for (auto y : inst.elements) {
        if (!crossing(f.graph, x, y)) continue;
        bool found = false;
        for (int v : y)
          for (int w : y)
            if (v < w) {
              const auto ms = oracle::minimal_separators_by_subsets(f.graph, v, w, x.size());
              found = found || std::find(ms.begin(), ms.end(), x) != ms.end();
            }
        EXPECT_TRUE(found) << f.name << ' ' << x << ' ' << y;
      }
  }
}

TEST(SeparatorCrossingNumber, BoundedByMinimalSeparatorCount) {
  for (const auto& f : fixtures()) {
    const auto inst = build_separator_instance(f.graph, harness::fixture_profiles(f), f.caps);
    for (auto x : inst.elements)
      for (int k : inst.splinter.orders()) {
        const auto n = separator_crossing_number(inst, x, k);
        std::set<VertexSet> bound;
        for (int v : x)
          for (int w : x)
            if (v < w)
              for (auto s : minimal_separators(f.graph, v, w, k, f.caps))
                if (inst.id_of(s)) bound.insert(s);
        EXPECT_LE(n, bound.size()) << f.name << ' ' << x << " k=" << k;
      }
  }
}

TEST(SeparatorCrossingNumber, TwoCliquesHasNoCrossings) {
  const auto& f = fixture("2K4");
  const auto inst = build_separator_instance(f.graph, harness::fixture_profiles(f), f.caps);
  for (auto x : inst.elements)
    for (int k : inst.splinter.orders()) EXPECT_EQ(separator_crossing_number(inst, x, k), 0u);
  EXPECT_THROW(separator_crossing_number(inst, VertexSet{0, 7}, 1), PreconditionError);
}

TEST(SeparatorInstance, RejectsIrregularOrIndistinguishableProfiles) {
  const auto& g = support::fixture_graph("P4");
  std::vector<Profile> irregular;
  for (const auto& p : enumerate_k_profiles(g, 2))
    if (!is_regular(g, p)) irregular.push_back(p);
  ASSERT_FALSE(irregular.empty());
  EXPECT_THROW(build_separator_instance(g, {irregular[0]}), PreconditionError);
  const auto ps = support::profiles_of("P4");
  EXPECT_THROW(build_separator_instance(g, {ps[0], ps[0]}), PreconditionError);
}

TEST(CanonicalSeparators, TwoCliques) {
  const auto cs = canonical_nested_separators(support::fixture_graph("2K4"), support::profiles_of("2K4"));
  EXPECT_EQ(harness::detail::sorted_sets(cs.separators), (std::vector<VertexSet>{VertexSet{3}, VertexSet{4}}));
}

TEST(CanonicalSeparators, SingleProfileGivesNothing) {
  const auto ps = support::profiles_of("C4");
  ASSERT_EQ(ps.size(), 1u);
  EXPECT_TRUE(canonical_nested_separators(support::fixture_graph("C4"), ps).separators.empty());
}

TEST(CanonicalSeparators, NestedStronglyNestedAndEfficient) {
  for (const auto& f : fixtures()) {
    const auto ps = harness::fixture_profiles(f);
    const auto cs = canonical_nested_separators(f.graph, ps, f.caps);
    EXPECT_TRUE(cs.check.ok()) << f.name;
    EXPECT_TRUE(is_strongly_nested_set(f.graph, cs.separators)) << f.name;
    for (std::size_t i = 0; i < ps.size(); ++i)
      for (std::size_t j = i + 1; j < ps.size(); ++j) {
        const auto ds = distinguishing_separators(ps[i], ps[j]);
        EXPECT_TRUE(std::any_of(ds.begin(), ds.end(), [&](const Separator& d) {
          return std::find(cs.separators.begin(), cs.separators.end(), d.vertices) != cs.separators.end();
        })) << f.name;
      }
  }
}

TEST(CanonicalSeparators, EquivariantUnderAutomorphisms) {
  for (const char* name : {"GRID33", "HUB6", "2K4"}) {
    const auto& f = fixture(name);
    const auto ps = harness::fixture_profiles(f);
    const auto base = harness::detail::sorted_sets(canonical_nested_separators(f.graph, ps, f.caps).separators);
    for (const auto& perm : automorphisms(f.graph)) {
      const auto image = canonical_nested_separators(f.graph, harness::detail::mapped(ps, perm), f.caps).separators;
      EXPECT_EQ(harness::detail::sorted_sets(image), harness::detail::mapped(base, perm)) << name;
    }
  }
}

TEST(NestedSeparations, TwoCliques) {
  const auto& g = support::fixture_graph("2K4");
  const auto ps = support::profiles_of("2K4");
  const auto res = separators_to_separations(g, {VertexSet{3}, VertexSet{4}}, ps);
  ASSERT_EQ(res.separations.size(), 2u);
  EXPECT_TRUE(res.separations[0].has_orientation(sep({0, 1, 2, 3}, {3, 4, 5, 6, 7})) || res.separations[1].has_orientation(sep({0, 1, 2, 3}, {3, 4, 5, 6, 7})));
  EXPECT_TRUE(res.separations[0].has_orientation(sep({0, 1, 2, 3, 4}, {4, 5, 6, 7})) || res.separations[1].has_orientation(sep({0, 1, 2, 3, 4}, {4, 5, 6, 7})));
}

TEST(NestedSeparations, EmptySeparatorSet) {
  const auto& g = support::fixture_graph("C4");
  EXPECT_TRUE(separators_to_separations(g, {}, support::profiles_of("C4")).separations.empty());
}

TEST(NestedSeparations, NonPrincipalProfileIsRejected) {
  const auto& g = support::fixture_graph("P4");
  std::vector<Profile> irregular;
  for (const auto& p : enumerate_k_profiles(g, 2))
    if (!is_principal(g, p)) irregular.push_back(p);
  ASSERT_FALSE(irregular.empty());
  EXPECT_THROW(separators_to_separations(g, {VertexSet{1}}, {irregular[0]}), PreconditionError);
}

TEST(NestedSeparations, DisconnectedGraphIsHandledPerComponent) {
  const auto& g = support::fixture_graph("2K2");
  const auto ps = support::profiles_of("2K2");
  const auto cs = canonical_nested_separators(g, ps);
  const auto res = separators_to_separations(g, cs.separators, ps);
  ASSERT_EQ(res.separations.size(), 1u);
  EXPECT_TRUE(res.separations[0].has_orientation(sep({0, 1}, {2, 3})));
}

TEST(NestedSeparations, FixturesAreNestedEfficientAndGroupsDisjoint) {
  for (const auto& f : fixtures()) {
    const auto ps = harness::fixture_profiles(f);
    if (!std::all_of(ps.begin(), ps.end(), [&](const Profile& p) { return is_principal(f.graph, p); })) continue;
    const auto cs = canonical_nested_separators(f.graph, ps, f.caps);
    const auto res = separators_to_separations(f.graph, cs.separators, ps);
    for (const auto& s : res.separations)
      for (const auto& t : res.separations) EXPECT_TRUE(is_nested(s, t)) << f.name;
    for (std::size_t i = 0; i < ps.size(); ++i)
      for (std::size_t j = i + 1; j < ps.size(); ++j) {
        const int best = oracle::min_distinguishing_order(f.graph, ps[i], ps[j]);
        EXPECT_TRUE(std::any_of(res.separations.begin(), res.separations.end(), [&](const UnorientedSeparation& s) {
          return s.order() == best && distinguishes(ps[i], ps[j], s.canonical());
        })) << f.name;
      }
    for (const auto& step : res.steps)
      for (std::size_t a = 0; a < step.grouped.size(); ++a)
        for (std::size_t b = a + 1; b < step.grouped.size(); ++b) EXPECT_FALSE(step.grouped[a].intersects(step.grouped[b])) << f.name;
  }
}

TEST(NestedSeparations, StronglyNestedSeparatorsGiveNestedOrDisjointSeparations) {
  for (const auto& f : fixtures()) {
    const auto ps = harness::fixture_profiles(f);
    if (!std::all_of(ps.begin(), ps.end(), [&](const Profile& p) { return is_principal(f.graph, p); })) continue;
    const auto res = separators_to_separations(f.graph, canonical_nested_separators(f.graph, ps, f.caps).separators, ps);
    for (const auto& s : res.separations)
      for (const auto& t : res.separations) {
        const VertexSet x = s.separator(), y = t.separator();
        if (!strongly_nested(f.graph, x, y)) continue;
        bool escape = false;
        for (VertexSet c : f.graph.components(x & y)) escape = escape || (!c.intersects(x) && !c.intersects(y));
        EXPECT_TRUE(is_nested(s, t) || escape) << f.name;
      }
  }
}

TEST(HomeComponent, DisconnectedPair) {
  const auto& g = support::fixture_graph("2K2");
  std::set<VertexSet> homes;
  for (const auto& p : support::profiles_of("2K2")) {
    const auto h = home_component(g, p);
    ASSERT_TRUE(h.has_value());
    homes.insert(*h);
  }
  EXPECT_EQ(homes, (std::set<VertexSet>{VertexSet{0, 1}, VertexSet{2, 3}}));
}
