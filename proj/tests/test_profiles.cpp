#include <gtest/gtest.h>

#include "support.hpp"

using namespace tangleforge;
using tangleforge::support::sep;

namespace {

std::vector<std::pair<std::uint64_t, std::uint64_t>> key_of(const Profile& p) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> k;
  for (const auto& s : p.oriented()) k.emplace_back(s.a.bits(), s.b.bits());
  std::sort(k.begin(), k.end());
  return k;
}

struct PairOfProfiles {
  const Profile* p;
  const Profile* q;
  DistinguisherSet d;
};

std::vector<PairOfProfiles> distinguished_pairs(const std::vector<Profile>& ps) {
  std::vector<PairOfProfiles> out;
  for (std::size_t i = 0; i < ps.size(); ++i)
    for (std::size_t j = i + 1; j < ps.size(); ++j) {
      auto d = efficient_distinguishers(ps[i], ps[j]);
      if (!d.empty()) out.push_back({&ps[i], &ps[j], std::move(d)});
    }
  return out;
}

}  // namespace

TEST(Profiles, EngineMatchesUnprunedScan) {
  for (const auto& f : fixtures())
    for (int k = 1; k <= f.profile_k; ++k) {
      if (enumerate_separations(f.graph, k, f.caps).size() > harness::Budget::census_limit) continue;
      std::set<std::vector<std::pair<std::uint64_t, std::uint64_t>>> engine;
      for (const auto& p : enumerate_k_profiles(f.graph, k, f.caps)) engine.insert(key_of(p));
      EXPECT_EQ(engine, oracle::profiles_unpruned(f.graph, k)) << f.name << " k=" << k;
    }
}

TEST(Profiles, EveryEnumeratedProfilePassesTheDirectCheck) {
  for (const auto& f : fixtures())
    for (int k = 1; k <= f.profile_k; ++k)
      for (const auto& p : enumerate_k_profiles(f.graph, k, f.caps)) {
        EXPECT_TRUE(oracle::is_profile(k, p.oriented())) << f.name << " k=" << k;
        EXPECT_EQ(p.size(), enumerate_separations(f.graph, k, f.caps).size());
      }
}

TEST(Profiles, FrozenCensus) {
  for (const auto& f : fixtures()) {
    ASSERT_EQ(static_cast<int>(f.census.size()), f.profile_k) << f.name;
    const auto universe = all_separations(f.graph, f.caps);
    for (int k = 1; k <= f.profile_k; ++k) {
      std::array<int, 4> got{};
      for (const auto& p : enumerate_k_profiles(f.graph, k, f.caps)) {
        const auto fl = profile_flags(f.graph, p, universe);
        ++got[0];
        if (fl.regular) ++got[1];
        if (fl.regular && fl.robust) ++got[2];
        if (fl.regular && fl.robust && fl.principal) ++got[3];
      }
      EXPECT_EQ(got, f.census[k - 1]) << f.name << " k=" << k;
    }
  }
}

TEST(Profiles, MaximalSetSizes) {
  const std::map<std::string, std::size_t> expected{{"P4", 3}, {"C4", 1}, {"2K4", 3}, {"GRID33", 5}, {"2K2", 2}, {"HUB6", 4}};
  for (const auto& f : fixtures()) EXPECT_EQ(harness::fixture_profiles(f).size(), expected.at(f.name)) << f.name;
}

TEST(Profiles, SingleEdgeOrderOne) {
  const Graph k2(2, {{0, 1}});
  const auto ps = enumerate_k_profiles(k2, 1);
  ASSERT_EQ(ps.size(), 2u);
  int regular = 0;
  for (const auto& p : ps) regular += is_regular(k2, p);
  EXPECT_EQ(regular, 1);
  EXPECT_TRUE(std::any_of(ps.begin(), ps.end(), [&](const Profile& p) { return p.contains({k2.vertices(), {}}); }));
}

TEST(Profiles, PrincipalImpliesRegular) {
  for (const auto& f : fixtures())
    for (int k = 1; k <= f.profile_k; ++k)
      for (const auto& p : enumerate_k_profiles(f.graph, k, f.caps))
        if (is_principal(f.graph, p)) { EXPECT_TRUE(is_regular(f.graph, p)) << f.name; }
}

TEST(Profiles, MaximalSetIsPairwiseDistinguishable) {
  for (const auto& f : fixtures()) {
    const auto ps = harness::fixture_profiles(f);
    for (std::size_t i = 0; i < ps.size(); ++i)
      for (std::size_t j = i + 1; j < ps.size(); ++j) EXPECT_FALSE(efficient_distinguishers(ps[i], ps[j]).empty()) << f.name;
  }
}

TEST(Profiles, RelabelCommutesWithEnumeration) {
  const auto& f = fixture("GRID33");
  std::set<std::vector<std::pair<std::uint64_t, std::uint64_t>>> base;
  for (const auto& p : enumerate_k_profiles(f.graph, 3, f.caps)) base.insert(key_of(p));
  for (const auto& perm : automorphisms(f.graph)) {
    std::set<std::vector<std::pair<std::uint64_t, std::uint64_t>>> mapped;
    for (const auto& p : enumerate_k_profiles(f.graph, 3, f.caps)) mapped.insert(key_of(p.relabel(perm)));
    EXPECT_EQ(mapped, base);
  }
}

TEST(Irregular, PathProfiles) {
  const auto& g = support::fixture_graph("P4");
  for (const auto& p : enumerate_k_profiles(g, 1))
    if (!is_regular(g, p)) { EXPECT_EQ(classify_irregular(g, p).kind, IrregularProfile::Kind::whole_graph); }
  std::set<int> vertices;
  for (const auto& p : enumerate_k_profiles(g, 2))
    if (!is_regular(g, p)) {
      const auto c = classify_irregular(g, p);
      EXPECT_EQ(c.kind, IrregularProfile::Kind::vertex);
      vertices.insert(c.vertex);
    }
  EXPECT_EQ(vertices, (std::set<int>{0, 3}));
  EXPECT_THROW(classify_irregular(g, regular_robust_profiles(g, 2).front()), PreconditionError);
}

TEST(Irregular, EveryIrregularFixtureProfileIsClassified) {
  for (const auto& f : fixtures())
    for (int k = 1; k <= std::min(2, f.profile_k); ++k)
      for (const auto& p : enumerate_k_profiles(f.graph, k, f.caps))
        if (!is_regular(f.graph, p)) { EXPECT_NO_THROW(classify_irregular(f.graph, p, f.caps)) << f.name; }
}

TEST(Profiles, DisconnectedPairOrderOneIsAllRegular) {
  const auto& g = support::fixture_graph("2K2");
  const auto ps = enumerate_k_profiles(g, 1);
  EXPECT_EQ(ps.size(), 2u);
  for (const auto& p : ps) EXPECT_TRUE(is_regular(g, p));
}

TEST(Distinguishers, TwoCliquesJoinedByAnEdge) {
  const auto& g = support::fixture_graph("2K4");
  const auto ps = support::profiles_of("2K4");
  const Separation left_cut = sep({0, 1, 2, 3}, {3, 4, 5, 6, 7}), right_cut = sep({0, 1, 2, 3, 4}, {4, 5, 6, 7});
  auto towards = [&](const Separation& a, const Separation& b) {
    return std::find_if(ps.begin(), ps.end(), [&](const Profile& p) { return p.contains(a) && p.contains(b); });
  };
  const auto left = towards(left_cut.inverse(), right_cut.inverse());
  const auto right = towards(left_cut, right_cut);
  ASSERT_NE(left, ps.end());
  ASSERT_NE(right, ps.end());
  const auto d = efficient_distinguishers(*left, *right);
  EXPECT_EQ(d.order, 1);
  ASSERT_EQ(d.separations.size(), 2u);
  EXPECT_TRUE(d.contains(left_cut));
  EXPECT_TRUE(d.contains(right_cut));
  for (const auto& s : d.separations) EXPECT_TRUE(is_tight(g, s.canonical()));
}

TEST(Distinguishers, MatchBruteForceMinimum) {
  for (const auto& f : fixtures()) {
    const auto ps = harness::fixture_profiles(f);
    for (const auto& p : ps) EXPECT_TRUE(efficient_distinguishers(p, p).empty());
    for (std::size_t i = 0; i < ps.size(); ++i)
      for (std::size_t j = 0; j < ps.size(); ++j) {
        if (i == j) continue;
        const auto d = efficient_distinguishers(ps[i], ps[j]);
        const auto back = efficient_distinguishers(ps[j], ps[i]);
        EXPECT_EQ(d.separations, back.separations);
        EXPECT_EQ(d.order, oracle::min_distinguishing_order(f.graph, ps[i], ps[j])) << f.name;
        for (const auto& s : d.separations) {
          EXPECT_TRUE(distinguishes(ps[i], ps[j], s.canonical()));
          const Separation o = oriented_towards(ps[i], ps[j], s.canonical());
          EXPECT_TRUE(ps[i].contains(o) && ps[j].contains(o.inverse()));
        }
      }
  }
}

TEST(Corners, UnequalOrdersOnFixtures) {
  std::size_t crossing = 0;
  for (const auto& f : fixtures()) {
    const auto ps = harness::fixture_profiles(f);
    const auto pairs = distinguished_pairs(ps);
    for (const auto& a : pairs)
      for (const auto& b : pairs)
        for (const auto& ab : a.d.separations)
          for (const auto& cd : b.d.separations) {
            if (ab.order() >= cd.order()) {
              EXPECT_THROW(corner_unequal_orders(*a.p, *a.q, *b.p, *b.q, ab.canonical(), cd.canonical()), PreconditionError);
              continue;
            }
            if (is_nested(ab, cd)) {
              EXPECT_THROW(corner_unequal_orders(*a.p, *a.q, *b.p, *b.q, ab.canonical(), cd.canonical()), PreconditionError);
              continue;
            }
            ++crossing;
            const auto c = corner_unequal_orders(*a.p, *a.q, *b.p, *b.q, ab.canonical(), cd.canonical());
            EXPECT_EQ(c.corner.order(), b.d.order) << f.name;
            EXPECT_TRUE(b.p->contains(c.oriented) && b.q->contains(c.oriented.inverse())) << f.name;
            const auto cs = corners(ab.canonical(), cd.canonical());
            EXPECT_TRUE(std::any_of(cs.begin(), cs.end(), [&](const Separation& x) { return same_unoriented(x, c.oriented); }));
          }
  }
  RecordProperty("crossing_cases", static_cast<int>(crossing));
}

TEST(Corners, UnequalOrdersRejectsNonDistinguishers) {
  const auto ps = support::profiles_of("2K4");
  const auto d = efficient_distinguishers(ps[0], ps[1]);
  ASSERT_FALSE(d.empty());
  const Separation junk = sep({0}, {0, 1, 2, 3, 4, 5, 6, 7});
  EXPECT_THROW(corner_unequal_orders(ps[0], ps[1], ps[0], ps[1], junk, d.separations[0].canonical()), PreconditionError);
}

TEST(Corners, EqualOrdersSharedDistinguisherIsMixed) {
  const auto ps = support::profiles_of("2K4");
  const auto d = efficient_distinguishers(ps[0], ps[1]);
  ASSERT_FALSE(d.empty());
  const Separation r = d.separations[0].canonical();
  const auto res = corner_equal_orders(ps[0], ps[1], ps[0], ps[1], r, r);
  EXPECT_EQ(res.outcome, EqualOrderCorners::Outcome::mixed);
  ASSERT_EQ(res.pairs.size(), 1u);
}

TEST(Corners, EqualOrdersTagsMatchBruteForce) {
  std::size_t cases = 0;
  for (const auto& f : fixtures()) {
    const auto ps = harness::fixture_profiles(f);
    const auto pairs = distinguished_pairs(ps);
    auto efficient_for = [&](const PairOfProfiles& pr, const Separation& c) {
      return distinguishes(*pr.p, *pr.q, c) && c.order() == oracle::min_distinguishing_order(f.graph, *pr.p, *pr.q);
    };
    for (const auto& a : pairs)
      for (const auto& b : pairs)
        for (const auto& r : a.d.separations)
          for (const auto& s : b.d.separations) {
            if (r.order() != s.order()) continue;
            ++cases;
            const auto res = corner_equal_orders(*a.p, *a.q, *b.p, *b.q, r.canonical(), s.canonical());
            for (const auto& oc : res.pairs) {
              EXPECT_EQ(oc.corner_tags.first, efficient_for(a, oc.corner));
              EXPECT_EQ(oc.corner_tags.second, efficient_for(b, oc.corner));
              EXPECT_EQ(oc.opposite_tags.first, efficient_for(a, oc.opposite));
              EXPECT_EQ(oc.opposite_tags.second, efficient_for(b, oc.opposite));
            }
            if (res.outcome == EqualOrderCorners::Outcome::mixed) {
              ASSERT_EQ(res.pairs.size(), 1u);
              const auto& oc = res.pairs[0];
              EXPECT_TRUE((oc.corner_tags.first && oc.opposite_tags.second) || (oc.corner_tags.second && oc.opposite_tags.first));
            } else {
              ASSERT_EQ(res.pairs.size(), 2u);
              EXPECT_TRUE(res.pairs[0].corner_tags.first && res.pairs[0].opposite_tags.first);
              EXPECT_TRUE(res.pairs[1].corner_tags.second && res.pairs[1].opposite_tags.second);
            }
          }
  }
  EXPECT_GT(cases, 0u);
}

TEST(Corners, EqualOrdersRejectsDifferentOrders) {
  const auto ps = support::profiles_of("HUB6");
  for (std::size_t i = 0; i < ps.size(); ++i)
    for (std::size_t j = i + 1; j < ps.size(); ++j)
      for (std::size_t x = 0; x < ps.size(); ++x)
        for (std::size_t y = x + 1; y < ps.size(); ++y) {
          const auto d1 = efficient_distinguishers(ps[i], ps[j]), d2 = efficient_distinguishers(ps[x], ps[y]);
          if (d1.order == d2.order) continue;
          EXPECT_THROW(corner_equal_orders(ps[i], ps[j], ps[x], ps[y], d1.separations[0].canonical(), d2.separations[0].canonical()),
                       PreconditionError);
        }
}
