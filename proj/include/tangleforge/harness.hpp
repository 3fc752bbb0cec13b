#pragma once

// One check per acceptance criterion, shared by the acceptance binary and the `verify` verb.

#include <chrono>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "tangleforge/fixtures.hpp"
#include "tangleforge/oracle.hpp"
#include "tangleforge/profinite.hpp"
#include "tangleforge/treedec.hpp"

namespace tangleforge::harness {

struct CriterionResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

struct Budget {
  static constexpr double universe_seconds = 5.0;
  static constexpr double fish_seconds = 30.0;
  static constexpr double totd_seconds = 10.0;
  static constexpr int splinter_instances = 200;
  static constexpr int max_families = 6;
  static constexpr std::size_t max_family_union = 20;
  static constexpr int profinite_systems = 50;
  static constexpr std::size_t max_unoriented_universe = 10;
  static constexpr std::size_t max_points = 4;
  static constexpr int treeset_roundtrips = 100;
  static constexpr std::size_t max_treeset = 8;
  static constexpr std::size_t census_limit = 24;
  static constexpr std::size_t expected_2k4_profiles = 2;
};

inline std::vector<Profile> fixture_profiles(const Fixture& f) {
  return maximal_regular_robust_profiles(f.graph, f.profile_k, f.caps);
}

using ProfileKey = std::vector<std::pair<std::uint64_t, std::uint64_t>>;

inline ProfileKey profile_key(const Profile& p) {
  ProfileKey out;
  for (const auto& s : p.oriented()) out.emplace_back(s.a.bits(), s.b.bits());
  std::sort(out.begin(), out.end());
  return out;
}

namespace detail {

template <class F>
CriterionResult timed(std::string name, F&& body) {
  CriterionResult r;
  r.name = std::move(name);
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(r);
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail += std::string(r.detail.empty() ? "" : "; ") + "exception: " + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

inline std::vector<Separation> both_orientations(const std::vector<UnorientedSeparation>& us) {
  std::vector<Separation> out;
  for (const auto& u : us) {
    out.push_back(u.canonical());
    if (!(u.canonical() == u.canonical().inverse())) out.push_back(u.canonical().inverse());
  }
  return out;
}

inline std::vector<VertexSet> sorted_sets(std::vector<VertexSet> xs) {
  std::sort(xs.begin(), xs.end(), separator_less);
  return xs;
}

inline std::vector<VertexSet> mapped(const std::vector<VertexSet>& xs, const std::vector<int>& perm) {
  std::vector<VertexSet> out;
  for (auto x : xs) out.push_back(Graph::map_set(x, perm));
  return sorted_sets(out);
}

inline std::vector<Profile> mapped(const std::vector<Profile>& ps, const std::vector<int>& perm) {
  std::vector<Profile> out;
  for (const auto& p : ps) out.push_back(p.relabel(perm));
  return out;
}

}  // namespace detail

// Universe axioms with submodularity on the sublattice generated by S_k, k = 1..4.
inline CriterionResult universe_axioms() {
  return detail::timed("universe axioms (5 fixtures, k<=4, submodular)", [](CriterionResult& r) {
    std::size_t checked = 0, violations = 0;
    std::ostringstream first;
    for (const auto& f : reference_fixtures())
      for (int k = 1; k <= 4; ++k) {
        const auto elems = generated_universe(f.graph, k, f.caps);
        const auto rep = verify_universe(GraphUniverse{}, elems, {true, 1}, f.caps);
        checked += rep.elements;
        violations += rep.violation_count;
        if (!rep.ok() && first.str().empty()) first << " first: " << f.name << " k=" << k << " " << rep.violations.front().axiom;
      }
    r.detail = std::to_string(checked) + " elements, " + std::to_string(violations) + " violations" + first.str();
    r.passed = violations == 0;
  });
}

// Fish lemma and corner-nestedness over all triples of separations of order <= 3.
inline CriterionResult fish_and_corner_nestedness() {
  return detail::timed("fish lemma and corner-nestedness (C4, GRID33, order<=3)", [](CriterionResult& r) {
    std::size_t triples = 0, fish_bad = 0, corner_bad = 0;
    for (const char* name : {"C4", "GRID33"}) {
      const auto& f = fixture(name);
      std::vector<Separation> s;
      for (const auto& u : enumerate_separations(f.graph, 4, f.caps)) s.push_back(u.canonical());
      const std::size_t m = s.size();
      std::vector<std::vector<bool>> nest(m, std::vector<bool>(m));
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) nest[i][j] = is_nested(s[i], s[j]);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j) {
          const auto cs = corners(s[i], s[j]);
          std::array<Separation, 4> meets;
          for (int o = 0; o < 4; ++o) {
            const Separation a = o & 2 ? s[i].inverse() : s[i];
            const Separation b = o & 1 ? s[j].inverse() : s[j];
            meets[o] = meet(a, b);
          }
          for (std::size_t t = 0; t < m; ++t) {
            ++triples;
            if (!nest[i][j] && nest[t][i] && nest[t][j])
              for (const auto& c : cs)
                if (!is_nested(s[t], c)) ++fish_bad;
            if (nest[t][i] || nest[t][j])
              for (int o = 0; o < 4; ++o)
                if (!is_nested(s[t], cs[o]) && !is_nested(s[t], meets[o])) ++corner_bad;
          }
        }
    }
    r.detail = std::to_string(triples) + " triples, fish counterexamples " + std::to_string(fish_bad) +
               ", corner-nestedness counterexamples " + std::to_string(corner_bad);
    r.passed = fish_bad == 0 && corner_bad == 0;
  });
}

// Regular robust principal 2-profiles of 2K4, and pruned/unpruned census agreement.
inline CriterionResult profile_census() {
  return detail::timed("profile census (2K4 k=2 has exactly 2 regular robust principal; pruned == unpruned)", [](CriterionResult& r) {
    const auto& f = fixture("2K4");
    const auto universe = all_separations(f.graph, f.caps);
    std::size_t engine_count = 0, oracle_count = 0;
    for (const auto& p : enumerate_k_profiles(f.graph, 2, f.caps)) {
      const auto fl = profile_flags(f.graph, p, universe);
      if (fl.regular && fl.robust && fl.principal) ++engine_count;
    }
    for (const auto& key : oracle::profiles_unpruned(f.graph, 2)) {
      std::vector<Separation> o;
      for (auto [a, b] : key) o.push_back({VertexSet(a), VertexSet(b)});
      Profile p(2, o);
      if (is_regular(f.graph, p) && is_robust(p, universe) && is_principal(f.graph, p)) ++oracle_count;
    }
    std::size_t cases = 0, mismatches = 0, non_profiles = 0;
    for (const auto& fx : fixtures())
      for (int k = 1; k <= fx.graph.order(); ++k) {
        if (enumerate_separations(fx.graph, k, fx.caps).size() > Budget::census_limit) break;
        ++cases;
        std::set<ProfileKey> engine;
        for (const auto& p : enumerate_k_profiles(fx.graph, k, fx.caps)) {
          engine.insert(profile_key(p));
          if (!oracle::is_profile(k, p.oriented())) ++non_profiles;
        }
        if (engine != oracle::profiles_unpruned(fx.graph, k)) ++mismatches;
      }
    r.detail = "2K4 k=2: pruned " + std::to_string(engine_count) + ", unpruned " + std::to_string(oracle_count) + ", expected " +
               std::to_string(Budget::expected_2k4_profiles) + "; census " + std::to_string(cases - mismatches) + "/" +
               std::to_string(cases) + " agree; " + std::to_string(non_profiles) + " rejected by the independent checker";
    r.passed = engine_count == Budget::expected_2k4_profiles && oracle_count == Budget::expected_2k4_profiles && mismatches == 0 &&
               non_profiles == 0;
  });
}

// Every fixture's documented census against enumerate_k_profiles and profile_flags, plus pruned == unpruned.
inline CriterionResult fixture_census() {
  return detail::timed("fixture census (documented counts; pruned == unpruned)", [](CriterionResult& r) {
    std::size_t rows = 0, wrong = 0, mismatches = 0;
    std::string first;
    for (const auto& f : fixtures()) {
      const auto universe = all_separations(f.graph, f.caps);
      for (int k = 1; k <= f.profile_k; ++k) {
        std::array<int, 4> got{};
        for (const auto& p : enumerate_k_profiles(f.graph, k, f.caps)) {
          const auto fl = profile_flags(f.graph, p, universe);
          ++got[0];
          got[1] += fl.regular;
          got[2] += fl.regular && fl.robust;
          got[3] += fl.regular && fl.robust && fl.principal;
        }
        ++rows;
        if (got != f.census.at(k - 1)) {
          ++wrong;
          if (first.empty()) first = "; " + f.name + " k=" + std::to_string(k) + " differs";
        }
        if (enumerate_separations(f.graph, k, f.caps).size() <= Budget::census_limit) {
          std::set<ProfileKey> engine;
          for (const auto& p : enumerate_k_profiles(f.graph, k, f.caps)) engine.insert(profile_key(p));
          if (engine != oracle::profiles_unpruned(f.graph, k)) ++mismatches;
        }
      }
    }
    r.detail = std::to_string(rows - wrong) + "/" + std::to_string(rows) + " census rows match, " + std::to_string(mismatches) +
               " pruned/unpruned mismatches" + first;
    r.passed = wrong == 0 && mismatches == 0;
  });
}

// Joins and meets of efficient distinguishers stay in the set; every member is tight.
inline CriterionResult lattice_and_tightness() {
  return detail::timed("distinguisher lattice and tightness (all fixtures)", [](CriterionResult& r) {
    std::size_t sets = 0, lattice_bad = 0, tight_bad = 0;
    for (const auto& f : fixtures()) {
      const auto universe = all_separations(f.graph, f.caps);
      std::vector<Profile> ps;
      for (int k = 1; k <= f.profile_k; ++k)
        for (auto& p : enumerate_k_profiles(f.graph, k, f.caps))
          if (is_regular(f.graph, p) && is_robust(p, universe)) ps.push_back(std::move(p));
      for (std::size_t i = 0; i < ps.size(); ++i)
        for (std::size_t j = 0; j < ps.size(); ++j) {
          if (i == j) continue;
          const auto d = efficient_distinguishers(ps[i], ps[j]);
          if (d.empty()) continue;
          ++sets;
          for (const auto& u : d.separations) {
            const Separation x = oriented_towards(ps[i], ps[j], u.canonical());
            if (!is_tight(f.graph, x)) ++tight_bad;
            for (const auto& w : d.separations) {
              const Separation y = oriented_towards(ps[i], ps[j], w.canonical());
              for (const Separation& z : {join(x, y), meet(x, y)})
                if (!d.contains(z) || !ps[i].contains(z) || !ps[j].contains(z.inverse())) ++lattice_bad;
            }
          }
        }
    }
    r.detail = std::to_string(sets) + " distinguisher sets, lattice failures " + std::to_string(lattice_bad) + ", non-tight members " +
               std::to_string(tight_bad);
    r.passed = sets > 0 && lattice_bad == 0 && tight_bad == 0;
  });
}

// Random families of graph separations: half drawn as efficient-distinguisher sets of profile pairs,
// half as small random subsets; kept only when they satisfy the splinter condition.
inline FiniteSplinterFamily<GraphUniverse> random_splinter_instance(std::mt19937_64& rng, std::size_t* rejected = nullptr) {
  std::uniform_int_distribution<int> nv(4, 7), nf(1, Budget::max_families), size(1, 3), coin(0, 1);
  while (true) {
    const int n = nv(rng);
    Graph g(n);
    std::bernoulli_distribution edge(0.45);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (edge(rng)) g.add_edge(u, v);
    FiniteSplinterFamily<GraphUniverse> fam{GraphUniverse{}, {}};
    const int families = nf(rng);
    if (coin(rng)) {
      std::vector<Profile> ps;
      const auto universe = all_separations(g);
      Caps wide;
      wide.max_separations = 64;
      try {
        for (int k = 1; k <= 3; ++k)
          for (auto& p : enumerate_k_profiles(g, k, wide))
            if (is_regular(g, p) && is_robust(p, universe)) ps.push_back(std::move(p));
      } catch (const SizeLimitError&) {
      }
      std::vector<std::vector<Separation>> pool;
      for (std::size_t i = 0; i < ps.size(); ++i)
        for (std::size_t j = i + 1; j < ps.size(); ++j) {
          const auto d = efficient_distinguishers(ps[i], ps[j]);
          if (!d.empty()) pool.push_back(detail::both_orientations(d.separations));
        }
      if (pool.empty()) continue;
      std::shuffle(pool.begin(), pool.end(), rng);
      for (int i = 0; i < families && i < static_cast<int>(pool.size()); ++i) {
        std::vector<Separation> half;
        for (const auto& s : pool[i])
          if (!key_less(s.inverse(), s)) half.push_back(s);
        fam.families.push_back(half);
      }
    } else {
      std::vector<Separation> pool;
      for (const auto& u : enumerate_separations(g, 3)) pool.push_back(u.canonical());
      for (int i = 0; i < families; ++i) {
        std::vector<Separation> f;
        const int s = size(rng);
        for (int t = 0; t < s; ++t) f.push_back(pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)]);
        std::sort(f.begin(), f.end(), key_less);
        f.erase(std::unique(f.begin(), f.end()), f.end());
        fam.families.push_back(f);
      }
    }
    std::set<UnorientedSeparation> all;
    for (const auto& f : fam.families)
      for (const auto& s : f) all.insert(UnorientedSeparation(s));
    if (all.size() > Budget::max_family_union || !splinters_check(fam).ok()) {
      if (rejected) ++*rejected;
      continue;
    }
    return fam;
  }
}

inline CriterionResult finite_splinter(std::uint64_t seed = 1) {
  return detail::timed("finite splinter (200 random instances)", [seed](CriterionResult& r) {
    std::mt19937_64 rng(seed);
    std::size_t rejected = 0;
    int certified = 0, agree = 0;
    std::string failure;
    for (int t = 0; t < Budget::splinter_instances; ++t) {
      const auto fam = random_splinter_instance(rng, &rejected);
      bool ok = false;
      try {
        const auto pick = splinter_finite(fam);
        ok = pick.size() == fam.families.size();
        for (std::size_t i = 0; i < pick.size() && ok; ++i) ok = fam.member(i, pick[i]);
        for (std::size_t i = 0; i < pick.size() && ok; ++i)
          for (std::size_t j = 0; j < pick.size() && ok; ++j) ok = is_nested(pick[i], pick[j]);
      } catch (const Error& e) {
        if (failure.empty()) failure = "; instance " + std::to_string(t) + ": " + e.what();
      }
      const bool exists = oracle::nested_transversal_exists(fam.families, [](const Separation& a, const Separation& b) { return is_nested(a, b); });
      certified += ok;
      agree += ok == exists;
    }
    r.detail = "seed " + std::to_string(seed) + ": certified " + std::to_string(certified) + "/" + std::to_string(Budget::splinter_instances) +
               ", brute-force agreement " + std::to_string(agree) + "/" + std::to_string(Budget::splinter_instances) + ", " +
               std::to_string(rejected) + " draws rejected" + failure;
    r.passed = certified == Budget::splinter_instances && agree == Budget::splinter_instances;
  });
}

// Thin splinter output on each fixture's separator instance, with automorphism equivariance.
inline CriterionResult thin_splinter_equivariance() {
  return detail::timed("thin splinter: meets families, nested, equivariant", [](CriterionResult& r) {
    std::size_t violations = 0, autos = 0;
    std::ostringstream notes;
    for (const auto& f : fixtures()) {
      const auto ps = fixture_profiles(f);
      const auto cs = canonical_nested_separators(f.graph, ps, f.caps);
      const auto& inst = cs.instance.splinter;
      for (const auto& fam : inst.families)
        if (std::none_of(fam.members.begin(), fam.members.end(), [&](std::size_t x) {
              return std::find(cs.thin.nested_set.begin(), cs.thin.nested_set.end(), x) != cs.thin.nested_set.end();
            }))
          ++violations;
      for (auto x : cs.separators)
        for (auto y : cs.separators)
          if (!separator_nested(f.graph, x, y)) ++violations;
      const auto perms = oracle::automorphisms_by_permutation(f.graph);
      if (perms.size() != automorphisms(f.graph).size()) ++violations;
      autos += perms.size();
      notes << ' ' << f.name << ':' << perms.size();
      const auto base = detail::sorted_sets(cs.separators);
      for (const auto& perm : perms) {
        const auto image = canonical_nested_separators(f.graph, detail::mapped(ps, perm), f.caps).separators;
        if (detail::sorted_sets(image) != detail::mapped(base, perm)) ++violations;
      }
    }
    r.detail = std::to_string(autos) + " automorphisms (" + notes.str().substr(1) + "), " + std::to_string(violations) + " violations";
    r.passed = violations == 0;
  });
}

struct RandomProfiniteCase {
  GraphRestrictionSystem restriction;
  std::vector<ProfiniteFamily> families;
};

// Graph-restriction systems over a 3-vertex connected graph: points are vertex subsets including V,
// families are images of random subsets at the top, optionally enlarged at minimal points.
inline RandomProfiniteCase random_profinite_case(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coin(0, 1), points(1, static_cast<int>(Budget::max_points) - 1), nfam(1, 3);
  const Graph g = coin(rng) ? Graph(3, {{0, 1}, {1, 2}}) : Graph(3, {{0, 1}, {1, 2}, {0, 2}});
  std::vector<std::uint64_t> subsets{1, 2, 3, 4, 5, 6};
  std::shuffle(subsets.begin(), subsets.end(), rng);
  std::vector<VertexSet> pts{g.vertices()};
  for (int i = 0, m = points(rng); i < m; ++i) pts.push_back(VertexSet(subsets[i]));
  RandomProfiniteCase out{graph_restriction_system(g, pts), {}};
  const auto& sys = out.restriction.system;
  const std::size_t n = pts.size();
  for (int i = 0, m = nfam(rng); i < m; ++i) {
    const auto& top = sys.universes[0];
    ProfiniteFamily fam;
    fam.at.assign(n, {});
    std::vector<std::size_t> chosen;
    for (std::size_t x = 0; x < top.size(); ++x)
      if (top.unoriented(x) == x && std::bernoulli_distribution(0.3)(rng)) chosen.push_back(x);
    if (chosen.empty()) chosen.push_back(std::uniform_int_distribution<std::size_t>(0, top.size() - 1)(rng));
    for (std::size_t p = 0; p < n; ++p) {
      std::set<std::size_t> img;
      for (auto x : chosen) img.insert(sys.universes[p].unoriented(sys.map(0, p, x)));
      bool minimal = true;
      for (std::size_t q = 0; q < n; ++q)
        if (q != p && sys.poset.leq[q][p]) minimal = false;
      if (minimal && coin(rng)) img.insert(sys.universes[p].unoriented(std::uniform_int_distribution<std::size_t>(0, sys.universes[p].size() - 1)(rng)));
      fam.at[p].assign(img.begin(), img.end());
    }
    out.families.push_back(std::move(fam));
  }
  return out;
}

// Threads of a family, by scanning the full product of the point universes.
inline std::vector<Thread> limit_by_product(const InverseSystem& sys, const ProfiniteFamily& fam) {
  const std::size_t n = sys.poset.size();
  std::vector<std::set<std::size_t>> allowed(n);
  for (std::size_t p = 0; p < n; ++p)
    for (auto x : fam.at[p]) {
      allowed[p].insert(x);
      allowed[p].insert(sys.universes[p].star(x));
    }
  std::vector<Thread> out;
  Thread cur(n);
  auto rec = [&](auto&& self, std::size_t p) -> void {
    if (p == n) {
      for (std::size_t q = 0; q < n; ++q)
        for (std::size_t s = 0; s < n; ++s)
          if (q != s && sys.poset.leq[s][q] && sys.map(q, s, cur[q]) != cur[s]) return;
      out.push_back(cur);
      return;
    }
    for (auto x : allowed[p]) {
      cur[p] = x;
      self(self, p + 1);
    }
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end());
  return out;
}

inline CriterionResult profinite(std::uint64_t seed = 1) {
  return detail::timed("profinite splinter (50 random inverse systems)", [seed](CriterionResult& r) {
    std::mt19937_64 rng(seed);
    int passed = 0, drawn = 0, rejected = 0;
    std::size_t max_universe = 0;
    std::string failure;
    while (drawn - rejected < Budget::profinite_systems) {
      auto c = random_profinite_case(rng);
      const auto& sys = c.restriction.system;
      for (const auto& u : sys.universes) max_universe = std::max(max_universe, (u.size() + 1) / 2);
      ++drawn;
      ProfiniteSplinterResult res;
      try {
        res = profinite_splinter(sys, c.families);
      } catch (const HypothesisError&) {
        ++rejected;  // projections do not splinter
        continue;
      } catch (const PreconditionError&) {
        ++rejected;
        continue;
      } catch (const Error& e) {
        if (failure.empty()) failure = std::string("; ") + e.what();
        continue;
      }
      bool ok = res.profintersect && !res.nested.empty();
      for (std::size_t p = 0; p < sys.poset.size() && ok; ++p)
        for (const auto& x : res.nested)
          for (const auto& y : res.nested) ok = ok && is_nested(sys.universes[p], x[p], y[p]);
      for (const auto& fam : c.families) {
        const auto lim = limit_by_product(sys, fam);
        ok = ok && std::any_of(res.nested.begin(), res.nested.end(),
                               [&](const Thread& t) { return std::binary_search(lim.begin(), lim.end(), t); });
      }
      if (ok) ++passed;
      else if (failure.empty()) failure = "; system " + std::to_string(drawn - 1) + " failed the cross-check";
    }
    const int accepted = drawn - rejected;
    r.detail = "seed " + std::to_string(seed) + ": " + std::to_string(passed) + "/" + std::to_string(accepted) + " systems pass (" +
               std::to_string(rejected) + " draws without splintering projections), max |U_p| " + std::to_string(max_universe) + failure;
    r.passed = passed == Budget::profinite_systems && accepted == Budget::profinite_systems && max_universe <= Budget::max_unoriented_universe;
  });
}

inline CriterionResult canonical_separators_2k4() {
  return detail::timed("canonical separators of 2K4 are {3},{4}; thin check on all fixtures", [](CriterionResult& r) {
    const auto& f = fixture("2K4");
    const auto cs = canonical_nested_separators(f.graph, fixture_profiles(f), f.caps);
    const std::vector<VertexSet> expect{VertexSet{3}, VertexSet{4}};
    std::ostringstream got;
    for (auto x : cs.separators) got << x;
    std::size_t failing = 0, mismatches = 0;
    for (const auto& fx : fixtures()) {
      const auto inst = build_separator_instance(fx.graph, fixture_profiles(fx), fx.caps);
      const auto rep = thinly_splinters_check(inst.splinter);
      failing += !rep.ok();
      mismatches += rep.oracle_mismatches.size();
    }
    r.detail = "2K4 separators " + got.str() + "; thin check fails on " + std::to_string(failing) + " fixtures; " +
               std::to_string(mismatches) + " corner oracle mismatches";
    r.passed = detail::sorted_sets(cs.separators) == expect && failing == 0;
  });
}

inline CriterionResult nested_separations() {
  return detail::timed("nested separations: nested, efficient, 2K2 per component", [](CriterionResult& r) {
    std::size_t pairs = 0, inefficient = 0, crossing = 0;
    std::string two_k2;
    for (const auto& f : fixtures()) {
      const auto ps = fixture_profiles(f);
      const auto cs = canonical_nested_separators(f.graph, ps, f.caps);
      const auto out = separators_to_separations(f.graph, cs.separators, ps);
      for (const auto& s : out.separations)
        for (const auto& t : out.separations)
          if (!is_nested(s.canonical(), t.canonical())) ++crossing;
      for (std::size_t i = 0; i < ps.size(); ++i)
        for (std::size_t j = i + 1; j < ps.size(); ++j) {
          ++pairs;
          const int best = oracle::min_distinguishing_order(f.graph, ps[i], ps[j]);
          const bool hit = std::any_of(out.separations.begin(), out.separations.end(), [&](const UnorientedSeparation& s) {
            return s.order() == best && distinguishes(ps[i], ps[j], s.canonical());
          });
          if (!hit) ++inefficient;
        }
      if (f.name == "2K2") {
        std::ostringstream o;
        for (const auto& s : out.separations) o << s;
        two_k2 = o.str();
      }
    }
    const std::string expect_2k2 = "({0,1},{2,3})";
    r.detail = std::to_string(pairs) + " pairs, " + std::to_string(inefficient) + " not at brute-force minimum, " + std::to_string(crossing) +
               " crossing pairs; 2K2 gives " + two_k2;
    r.passed = inefficient == 0 && crossing == 0 && two_k2 == expect_2k2;
  });
}

// Nested, pairwise non-trivial, non-small separations of a fixture in random order.
inline std::vector<UnorientedSeparation> random_tree_set(const Graph& g, std::mt19937_64& rng, std::size_t target) {
  std::vector<Separation> pool;
  for (const auto& s : all_separations(g))
    if (!key_less(s.inverse(), s) && !leq(s, s.inverse()) && !leq(s.inverse(), s)) pool.push_back(s);
  std::shuffle(pool.begin(), pool.end(), rng);
  std::vector<Separation> n;
  const GraphUniverse u;
  for (const auto& s : pool) {
    if (n.size() >= target) break;
    if (!std::all_of(n.begin(), n.end(), [&](const Separation& t) { return is_nested(s, t); })) continue;
    auto trial = n;
    trial.push_back(s);
    bool trivial = false;
    for (const auto& x : trial)
      for (const Separation& o : {x, x.inverse()})
        if (classify_separation(u, trial, o).kind == SeparationKind::trivial) trivial = true;
    if (!trivial) n = std::move(trial);
  }
  std::vector<UnorientedSeparation> out(n.begin(), n.end());
  std::sort(out.begin(), out.end());
  return out;
}

inline CriterionResult treeset_roundtrip(std::uint64_t seed = 1) {
  return detail::timed("tree set to tree-decomposition round trip (100 random)", [seed](CriterionResult& r) {
    std::mt19937_64 rng(seed);
    const auto fx = fixtures();
    int good = 0;
    std::string failure;
    for (int t = 0; t < Budget::treeset_roundtrips; ++t) {
      const auto& f = fx[std::uniform_int_distribution<std::size_t>(0, fx.size() - 1)(rng)];
      const auto target = std::uniform_int_distribution<std::size_t>(1, Budget::max_treeset)(rng);
      const auto n = random_tree_set(f.graph, rng, target);
      try {
        const auto td = treeset_to_treedecomposition(f.graph, n);
        const auto rep = verify_treedecomposition(f.graph, td);
        const bool t3 = oracle::bags_connected_per_vertex(td.bags, td.edges, f.graph.vertices());
        if (rep.ok() && t3 && induced_unoriented(td) == n) ++good;
        else if (failure.empty()) failure = "; round trip " + std::to_string(t) + " on " + f.name + " failed";
      } catch (const Error& e) {
        if (failure.empty()) failure = "; round trip " + std::to_string(t) + " on " + f.name + ": " + e.what();
      }
    }
    r.detail = "seed " + std::to_string(seed) + ": " + std::to_string(good) + "/" + std::to_string(Budget::treeset_roundtrips) + failure;
    r.passed = good == Budget::treeset_roundtrips;
  });
}

// Multiset of (depth, bags) over all nodes, relabelled by perm.
inline std::vector<std::pair<int, std::vector<VertexSet>>> totd_shape(const TreeOfTreeDecompositions& t, const std::vector<int>& perm) {
  std::vector<std::pair<int, std::vector<VertexSet>>> out;
  for (const auto& nd : t.nodes) out.emplace_back(nd.depth, detail::mapped(nd.td.bags, perm));
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    if (x.first != y.first) return x.first < y.first;
    return std::lexicographical_compare(x.second.begin(), x.second.end(), y.second.begin(), y.second.end(), separator_less);
  });
  return out;
}

inline CriterionResult totd_2k4() {
  return detail::timed("tree of tree-decompositions for 2K4", [](CriterionResult& r) {
    const auto& f = fixture("2K4");
    const auto ps = fixture_profiles(f);
    const auto t = build_totd(f.graph, ps, f.caps);
    const auto& root = t.nodes.front();
    const auto adj = root.td.adjacency();
    const bool path = root.td.bags.size() == 3 && std::count_if(adj.begin(), adj.end(), [](const auto& a) { return a.size() == 1; }) == 2;
    const auto rep = certify_totd(f.graph, t, ps);
    std::vector<int> swap(8);
    for (int v = 0; v < 8; ++v) swap[v] = 7 - v;
    std::vector<int> id(8);
    std::iota(id.begin(), id.end(), 0);
    const auto image = build_totd(f.graph, detail::mapped(ps, swap), f.caps);
    const bool equivariant = totd_shape(t, swap) == totd_shape(image, id);
    r.detail = "root bags " + std::to_string(root.td.bags.size()) + (path ? " (path)" : "") + ", children " +
               std::to_string(root.children.size()) + ", certificate " + (rep.ok() ? "ok" : rep.failures.front()) + ", swap " +
               (equivariant ? "equivariant" : "not equivariant");
    r.passed = path && root.children.size() == 3 && rep.ok() && equivariant;
  });
}

// Infinite graphs and inverse systems are out of reach; this line stands or falls with the finite substitutes.
inline CriterionResult infinite_results_substitutes(const std::vector<CriterionResult>& substitutes) {
  CriterionResult r;
  r.name = "infinite results: finite substitute suites all pass";
  std::size_t failed = 0;
  for (const auto& s : substitutes) failed += !s.passed;
  r.passed = failed == 0;
  r.detail = "not run on infinite inputs; " + std::to_string(substitutes.size() - failed) + "/" +
             std::to_string(substitutes.size()) + " substitute suites pass";
  return r;
}

inline std::vector<std::function<CriterionResult()>> criteria(std::uint64_t seed = 1) {
  return {universe_axioms,
          fish_and_corner_nestedness,
          profile_census,
          lattice_and_tightness,
          [seed] { return finite_splinter(seed); },
          thin_splinter_equivariance,
          [seed] { return profinite(seed); },
          canonical_separators_2k4,
          nested_separations,
          [seed] { return treeset_roundtrip(seed); },
          totd_2k4};
}

// Module invariant suites replayed by `verify`: the acceptance checks with the 2K4 profile count
// replaced by the regression-locked fixture census.
inline std::vector<std::function<CriterionResult()>> invariant_suites(std::uint64_t seed = 1) {
  auto out = criteria(seed);
  out[2] = fixture_census;
  return out;
}

inline bool within(const CriterionResult& r, double limit) { return r.seconds < limit; }

// Runs every criterion, applying time budgets where they are part of the criterion.
inline std::vector<CriterionResult> run_all(std::uint64_t seed = 1) {
  std::vector<CriterionResult> out;
  const auto cs = criteria(seed);
  for (std::size_t i = 0; i < cs.size(); ++i) {
    auto r = cs[i]();
    double limit = 0;
    if (i == 0) limit = Budget::universe_seconds;
    if (i == 1) limit = Budget::fish_seconds;
    if (i == 10) limit = Budget::totd_seconds;
    if (limit > 0 && !within(r, limit)) {
      r.passed = false;
      r.detail += "; over the " + std::to_string(static_cast<int>(limit)) + " s budget";
    }
    out.push_back(std::move(r));
  }
  out.push_back(infinite_results_substitutes(out));
  return out;
}

}  // namespace tangleforge::harness
