#include <gtest/gtest.h>

#include "support.hpp"

using namespace tangleforge;
using tangleforge::support::sep;

TEST(VertexSet, BasicOperations) {
  VertexSet s{1, 3, 5};
  EXPECT_EQ(s.size(), 3);
  EXPECT_TRUE(s.contains(3));
  EXPECT_FALSE(s.contains(2));
  EXPECT_EQ(s.first(), 1);
  EXPECT_EQ((s | VertexSet{2}).size(), 4);
  EXPECT_EQ((s & VertexSet{1, 2}), VertexSet{1});
  EXPECT_EQ(s - VertexSet{1}, (VertexSet{3, 5}));
  EXPECT_TRUE(VertexSet{1}.subset_of(s));
  EXPECT_EQ(s.to_vector(), (std::vector<int>{1, 3, 5}));
  EXPECT_TRUE(lex_compare(VertexSet{0, 5}, VertexSet{1}) < 0);
}

TEST(Graph, RejectsSelfLoopsAndOutOfRangeEdges) {
  Graph g(3);
  EXPECT_THROW(g.add_edge(1, 1), PreconditionError);
  EXPECT_THROW(g.add_edge(0, 3), PreconditionError);
}

TEST(Graph, ComponentsAfterRemoval) {
  const auto& g = support::fixture_graph("P4");
  const auto comps = g.components(VertexSet{1});
  ASSERT_EQ(comps.size(), 2u);
  EXPECT_EQ(comps[0], VertexSet{0});
  EXPECT_EQ(comps[1], (VertexSet{2, 3}));
  EXPECT_FALSE(support::fixture_graph("2K2").connected());
}

TEST(Separations, PathOrderTwoHasSevenUnoriented) {
  const auto& g = support::fixture_graph("P4");
  const auto seps = enumerate_separations(g, 2);
  const auto oracle_keys = oracle::unoriented_keys(oracle::separations_by_pairs(g, 1));
  EXPECT_EQ(oracle_keys.size(), 7u);
  EXPECT_EQ(seps.size(), 7u);
  EXPECT_EQ(support::keys_of(seps), oracle_keys);
  auto has = [&](const Separation& s) {
    return std::any_of(seps.begin(), seps.end(), [&](const UnorientedSeparation& u) { return u.has_orientation(s); });
  };
  EXPECT_TRUE(has(sep({0, 1}, {1, 2, 3})));
  EXPECT_TRUE(has(Separation{VertexSet{}, g.vertices()}));
  for (int v = 0; v < 4; ++v) EXPECT_TRUE(has(Separation{VertexSet::singleton(v), g.vertices()}));
}

TEST(Separations, AgreeWithPairOracleOnFixtures) {
  for (const auto& f : fixtures())
    for (int k = 1; k <= 3; ++k) {
      const auto seps = enumerate_separations(f.graph, k, f.caps);
      EXPECT_EQ(support::keys_of(seps), oracle::unoriented_keys(oracle::separations_by_pairs(f.graph, k - 1))) << f.name << " k=" << k;
    }
}

TEST(Separations, AllSeparationsClosedUnderStar) {
  for (const auto& f : fixtures()) {
    const auto all = all_separations(f.graph, f.caps);
    std::unordered_set<Separation> set(all.begin(), all.end());
    for (const auto& s : all) EXPECT_TRUE(set.count(s.inverse())) << f.name;
    EXPECT_EQ(all.size(), oracle::separations_by_pairs(f.graph, f.graph.order()).size()) << f.name;
  }
}

TEST(Separations, SingleEdgeOrderOneIsOnlyTheTrivialOne) {
  const Graph k2(2, {{0, 1}});
  const auto seps = enumerate_separations(k2, 1);
  ASSERT_EQ(seps.size(), 1u);
  EXPECT_TRUE(seps[0].has_orientation({VertexSet{}, k2.vertices()}));
}

TEST(Separations, CycleOrderThreeContainsCrossingPair) {
  const auto& g = support::fixture_graph("C4");
  const auto seps = enumerate_separations(g, 3);
  const Separation r = sep({0, 1, 2}, {2, 3, 0}), s = sep({1, 2, 3}, {3, 0, 1});
  auto has = [&](const Separation& x) {
    return std::any_of(seps.begin(), seps.end(), [&](const UnorientedSeparation& u) { return u.has_orientation(x); });
  };
  EXPECT_TRUE(has(r));
  EXPECT_TRUE(has(s));
  EXPECT_EQ(r.separator(), (VertexSet{0, 2}));
  EXPECT_EQ(s.separator(), (VertexSet{1, 3}));
  EXPECT_FALSE(is_nested(r, s));
}

TEST(Separations, CapsAreEnforced) {
  Caps caps;
  caps.max_vertices = 3;
  EXPECT_THROW(enumerate_separations(support::fixture_graph("P4"), 2, caps), SizeLimitError);
  EXPECT_THROW(enumerate_separations(support::fixture_graph("P4"), 7), SizeLimitError);
  EXPECT_THROW(enumerate_separations(support::fixture_graph("P4"), 0), PreconditionError);
}

TEST(UniverseOps, CycleJoinIsLeastUpperBound) {
  const auto& g = support::fixture_graph("C4");
  const Separation r = sep({0, 1, 2}, {2, 3, 0}), s = sep({1, 2, 3}, {3, 0, 1});
  const Separation j = join(r, s);
  EXPECT_EQ(j, (Separation{g.vertices(), VertexSet{0, 3}}));
  EXPECT_EQ(j.order(), 2);
  // Least upper bound by search over every separation.
  std::vector<Separation> upper;
  for (const auto& x : oracle::separations_by_pairs(g, g.order()))
    if (leq(r, x) && leq(s, x)) upper.push_back(x);
  std::vector<Separation> least;
  for (const auto& x : upper)
    if (std::all_of(upper.begin(), upper.end(), [&](const Separation& y) { return leq(x, y); })) least.push_back(x);
  ASSERT_EQ(least.size(), 1u);
  EXPECT_EQ(least.front(), j);
}

TEST(UniverseOps, StarIsAnInvolutionAndSmallMeets) {
  for (const auto& s : all_separations(support::fixture_graph("P4"))) {
    EXPECT_EQ(s.inverse().inverse(), s);
    if (leq(s, s.inverse())) { EXPECT_EQ(meet(s, s.inverse()), s); }
  }
}

TEST(UniverseOps, JoinsAndMeetsOfSeparationsAreSeparations) {
  for (const auto& f : fixtures()) {
    std::vector<Separation> s;
    for (const auto& u : enumerate_separations(f.graph, 3, f.caps)) {
      s.push_back(u.canonical());
      s.push_back(u.canonical().inverse());
    }
    for (const auto& x : s)
      for (const auto& y : s) {
        EXPECT_TRUE(is_separation(f.graph, join(x, y)));
        EXPECT_TRUE(is_separation(f.graph, meet(x, y)));
      }
  }
}

TEST(Nestedness, Examples) {
  EXPECT_TRUE(is_nested(sep({0, 1}, {1, 2, 3}), sep({0, 1, 2}, {2, 3})));
  EXPECT_FALSE(is_nested(sep({0, 1, 2}, {2, 3, 0}), sep({1, 2, 3}, {3, 0, 1})));
  for (const auto& s : all_separations(support::fixture_graph("C4"))) EXPECT_TRUE(is_nested(s, s));
}

TEST(Corners, CycleCrossingPairCorners) {
  const auto& g = support::fixture_graph("C4");
  const auto cs = corner_separations(sep({0, 1, 2}, {2, 3, 0}), sep({1, 2, 3}, {3, 0, 1}));
  auto has = [&](const Separation& x) { return std::any_of(cs.begin(), cs.end(), [&](const auto& u) { return u.has_orientation(x); }); };
  EXPECT_TRUE(has({g.vertices(), VertexSet{0, 3}}));
  EXPECT_TRUE(has({g.vertices(), VertexSet{1, 2}}));
}

TEST(Corners, SelfCornersAreTheSeparationAndItsSeparatorSplit) {
  const Separation r = sep({0, 1}, {1, 2, 3});
  const auto cs = corner_separations(r, r);
  ASSERT_EQ(cs.size(), 2u);
  const VertexSet v{0, 1, 2, 3};
  EXPECT_TRUE(std::any_of(cs.begin(), cs.end(), [&](const auto& u) { return u.has_orientation(r); }));
  EXPECT_TRUE(std::any_of(cs.begin(), cs.end(), [&](const auto& u) { return u.has_orientation({v, VertexSet{1}}); }));
}

TEST(Corners, NestedPairCornersComeFromTheChain) {
  const Separation r = sep({0, 1}, {1, 2, 3}), s = sep({0, 1, 2}, {2, 3});
  for (const auto& c : corners(r, s)) {
    const bool chain = same_unoriented(c, r) || same_unoriented(c, s) || leq(c, c.inverse()) || leq(c.inverse(), c);
    EXPECT_TRUE(chain) << c;
  }
}

TEST(Classify, Examples) {
  const auto& g = support::fixture_graph("P4");
  const GraphUniverse u;
  const auto all = all_separations(g);
  const Separation empty{VertexSet{}, g.vertices()};
  const auto c = classify_separation(u, all, empty);
  EXPECT_EQ(c.kind, SeparationKind::trivial);
  ASSERT_TRUE(c.witness.has_value());
  EXPECT_TRUE(leq(empty, *c.witness) && leq(empty, c.witness->inverse()));
  EXPECT_TRUE(leq(empty, empty.inverse()));
  EXPECT_EQ(classify_separation(u, all, empty.inverse()).kind, SeparationKind::cosmall);
  EXPECT_EQ(classify_separation(u, all, sep({0, 1}, {1, 2, 3})).kind, SeparationKind::regular);
}

TEST(Classify, TrivialImpliesSmall) {
  const auto& g = support::fixture_graph("C4");
  const auto all = all_separations(g);
  for (const auto& x : all)
    if (classify_separation(GraphUniverse{}, all, x).kind == SeparationKind::trivial) { EXPECT_TRUE(leq(x, x.inverse())); }
}

TEST(Tightness, Examples) {
  EXPECT_TRUE(is_tight(support::fixture_graph("2K4"), sep({0, 1, 2, 3}, {3, 4, 5, 6, 7})));
  EXPECT_FALSE(is_tight(support::fixture_graph("P4"), sep({}, {0, 1, 2, 3})));
  EXPECT_TRUE(is_tight(support::fixture_graph("P4"), sep({0, 1}, {1, 2, 3})));
}

TEST(VerifyUniverse, PathOrderThreeIsValid) {
  const auto elems = generated_universe(support::fixture_graph("P4"), 3);
  const auto rep = verify_universe(GraphUniverse{}, elems, {true, 8});
  EXPECT_TRUE(rep.ok());
  EXPECT_EQ(rep.elements, elems.size());
}

TEST(VerifyUniverse, StarIdentityOnChainViolatesOrderReversal) {
  const TableUniverse u({0, 1}, {{true, true}, {false, true}}, {{0, 1}, {1, 1}}, {{0, 0}, {0, 1}}, {0, 0});
  const auto rep = verify_universe(u, u.elements());
  ASSERT_FALSE(rep.ok());
  EXPECT_TRUE(std::any_of(rep.violations.begin(), rep.violations.end(), [](const AxiomViolation& v) { return v.axiom == "order reversal"; }));
}

TEST(VerifyUniverse, GraphOrderIsSubmodularOnEveryPair) {
  for (const auto& f : reference_fixtures()) {
    const auto all = all_separations(f.graph, f.caps);
    if (all.size() > 2000) continue;
    for (const auto& x : all)
      for (const auto& y : all) ASSERT_LE(join(x, y).order() + meet(x, y).order(), x.order() + y.order());
  }
}

TEST(VerifyUniverse, BrokenOrderFunctionIsReported) {
  const TableUniverse u({1, 0}, {{true, false}, {false, true}}, {{0, 0}, {0, 1}}, {{0, 1}, {1, 1}}, {1, 2});
  const auto rep = verify_universe(u, u.elements(), {true, 16});
  EXPECT_FALSE(rep.ok());
}

// Fish lemma: t nested with two crossing separations is nested with all their corners.
TEST(Lemmas, FishOnSmallFixtures) {
  for (const char* name : {"P4", "C4", "2K2", "HUB6"}) {
    const auto& g = support::fixture_graph(name);
    std::vector<Separation> s;
    for (const auto& u : enumerate_separations(g, 4)) s.push_back(u.canonical());
    for (const auto& r : s)
      for (const auto& q : s) {
        if (is_nested(r, q)) continue;
        for (const auto& t : s)
          if (is_nested(t, r) && is_nested(t, q))
            for (const auto& c : corners(r, q)) { ASSERT_TRUE(is_nested(t, c)) << name; }
      }
  }
}

TEST(Caps, ParseAndReject) {
  const auto c = Caps::parse("n=10,k=3,sk=50");
  EXPECT_EQ(c.max_vertices, 10);
  EXPECT_EQ(c.max_order, 3);
  EXPECT_EQ(c.max_separations, 50u);
  EXPECT_THROW(Caps::parse("n"), ParseError);
  EXPECT_THROW(Caps::parse("zz=1"), ParseError);
  EXPECT_THROW(Caps::parse("n=abc"), ParseError);
  EXPECT_THROW(Caps::parse("n=100"), ParseError);
}

TEST(Automorphisms, AgreeWithPermutationScan) {
  for (const auto& f : fixtures()) EXPECT_EQ(automorphisms(f.graph).size(), oracle::automorphisms_by_permutation(f.graph).size()) << f.name;
  EXPECT_EQ(automorphisms(support::fixture_graph("C4")).size(), 8u);
}
