#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "tangleforge/universe.hpp"

namespace tangleforge {

// Orientation of S_k: one oriented separation per element of S_k.
class Profile {
 public:
  Profile() = default;
  Profile(int k, std::vector<Separation> oriented) : k_(k), oriented_(std::move(oriented)) {
    std::sort(oriented_.begin(), oriented_.end(),
              [](const Separation& x, const Separation& y) { return UnorientedSeparation(x) < UnorientedSeparation(y); });
    members_.insert(oriented_.begin(), oriented_.end());
  }

  int k() const { return k_; }
  const std::vector<Separation>& oriented() const { return oriented_; }
  std::size_t size() const { return oriented_.size(); }
  bool contains(const Separation& s) const { return members_.count(s) > 0; }

  // The orientation of s chosen by this profile, if s has order < k.
  std::optional<Separation> orientation_of(const Separation& s) const {
    if (contains(s)) return s;
    if (contains(s.inverse())) return s.inverse();
    return std::nullopt;
  }

  Profile relabel(const std::vector<int>& perm) const {
    std::vector<Separation> out;
    for (const auto& s : oriented_) out.push_back({Graph::map_set(s.a, perm), Graph::map_set(s.b, perm)});
    return Profile(k_, std::move(out));
  }

  friend bool operator==(const Profile& x, const Profile& y) { return x.k_ == y.k_ && x.oriented_ == y.oriented_; }

 private:
  int k_ = 0;
  std::vector<Separation> oriented_;
  std::unordered_set<Separation> members_;
};

struct ProfileFlags {
  bool regular = false;
  bool robust = false;
  bool principal = false;
};

namespace detail {

// Pruned backtracking over orientations of S_k; separations are processed by increasing order.
class ProfileSearch {
 public:
  ProfileSearch(const Graph& g, int k, const Caps& caps) : k_(k) {
    seps_ = enumerate_separations(g, k, caps);
    if (seps_.size() > caps.max_separations)
      throw SizeLimitError("|S_k| = " + std::to_string(seps_.size()) + " exceeds cap " + std::to_string(caps.max_separations));
    std::stable_sort(seps_.begin(), seps_.end(), [](const auto& x, const auto& y) { return x.order() < y.order(); });
    for (std::size_t i = 0; i < seps_.size(); ++i) {
      index_.emplace(seps_[i].canonical(), Slot{i, false});
      index_.emplace(seps_[i].canonical().inverse(), Slot{i, true});
    }
    choice_.assign(seps_.size(), Separation{});
  }

  std::vector<Profile> run() {
    rec(0);
    std::sort(out_.begin(), out_.end(), [](const Profile& x, const Profile& y) {
      return std::lexicographical_compare(x.oriented().begin(), x.oriented().end(), y.oriented().begin(), y.oriented().end(), key_less);
    });
    return out_;
  }

 private:
  struct Slot {
    std::size_t index;
    bool inverted;
  };

  bool assigned(std::size_t i) const { return i < depth_; }

  // Checks o against the prefix: consistency and closure of joins that are already decided.
  bool compatible(const Separation& o) const {
    auto check_join = [&](const Separation& x, const Separation& y) {
      const Separation j = join(x, y);
      if (j.order() >= k_) return true;
      auto it = index_.find(j);
      if (it == index_.end()) return true;
      const std::size_t idx = it->second.index;
      if (idx == depth_) return j == o;
      return !assigned(idx) || choice_[idx] == j;
    };
    if (!check_join(o, o)) return false;
    for (std::size_t i = 0; i < depth_; ++i) {
      const Separation& r = choice_[i];
      if (leq(r.inverse(), o) && !same_unoriented(r, o)) return false;
      if (leq(o.inverse(), r) && !same_unoriented(r, o)) return false;
      if (!check_join(o, r)) return false;
    }
    return true;
  }

  // Joins whose slot came after both operands were not seen by compatible().
  bool closed_under_joins() const {
    for (std::size_t i = 0; i < choice_.size(); ++i)
      for (std::size_t j = 0; j < i; ++j) {
        const Separation x = join(choice_[i], choice_[j]);
        if (x.order() >= k_) continue;
        auto it = index_.find(x);
        if (it != index_.end() && choice_[it->second.index] != x) return false;
      }
    return true;
  }

  void rec(std::size_t i) {
    depth_ = i;
    if (i == seps_.size()) {
      if (closed_under_joins()) out_.emplace_back(k_, choice_);
      return;
    }
    const Separation s = seps_[i].canonical();
    const Separation options[2] = {s, s.inverse()};
    for (int t = 0; t < (s == s.inverse() ? 1 : 2); ++t) {
      const Separation& o = options[t];
      depth_ = i;
      if (!compatible(o)) continue;
      choice_[i] = o;
      rec(i + 1);
    }
    depth_ = i;
  }

  int k_;
  std::vector<UnorientedSeparation> seps_;
  std::unordered_map<Separation, Slot> index_;
  std::vector<Separation> choice_;
  std::size_t depth_ = 0;
  std::vector<Profile> out_;
};

}  // namespace detail

// All k-profiles of g, sorted.
inline std::vector<Profile> enumerate_k_profiles(const Graph& g, int k, const Caps& caps = {}) {
  return detail::ProfileSearch(g, k, caps).run();
}

inline bool is_regular(const Graph& g, const Profile& p) {
  for (const auto& s : p.oriented())
    if (s.a == g.vertices()) return false;
  return true;
}

// For s in P and t in the universe with |s∨t| < |s| and |s∨t*| < |s|, one of the two joins lies in P.
inline bool is_robust(const Profile& p, const std::vector<Separation>& universe) {
  for (const auto& s : p.oriented()) {
    const int ord = s.order();
    if (ord == 0) continue;
    for (const auto& t : universe) {
      const Separation j1 = join(s, t), j2 = join(s, t.inverse());
      if (j1.order() < ord && j2.order() < ord && !p.contains(j1) && !p.contains(j2)) return false;
    }
  }
  return true;
}

// For every X with |X| < k, P contains (V∖C, C∪X) for some component C of G-X.
inline bool is_principal(const Graph& g, const Profile& p) {
  const std::vector<int> vs = g.vertices().to_vector();
  const int n = static_cast<int>(vs.size());
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    if (std::popcount(m) >= p.k()) continue;
    VertexSet x;
    for (int i = 0; i < n; ++i)
      if ((m >> i) & 1u) x.insert(vs[i]);
    bool found = false;
    for (VertexSet c : g.components(x))
      if (p.contains({g.vertices() - c, c | x})) {
        found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

inline ProfileFlags profile_flags(const Graph& g, const Profile& p, const std::vector<Separation>& universe) {
  return {is_regular(g, p), is_robust(p, universe), is_principal(g, p)};
}

inline ProfileFlags profile_flags(const Graph& g, const Profile& p, const Caps& caps = {}) {
  return profile_flags(g, p, all_separations(g, caps));
}

// Regular robust k-profiles.
inline std::vector<Profile> regular_robust_profiles(const Graph& g, int k, const Caps& caps = {}) {
  const auto universe = all_separations(g, caps);
  std::vector<Profile> out;
  for (auto& p : enumerate_k_profiles(g, k, caps))
    if (is_regular(g, p) && is_robust(p, universe)) out.push_back(std::move(p));
  return out;
}

// Regular robust profiles of every order k <= kmax, dropping those contained in a profile of larger order.
// The result is pairwise distinguishable.
inline std::vector<Profile> maximal_regular_robust_profiles(const Graph& g, int kmax, const Caps& caps = {}) {
  std::vector<Profile> all;
  for (int k = 1; k <= kmax; ++k)
    for (auto& p : regular_robust_profiles(g, k, caps)) all.push_back(std::move(p));
  std::vector<Profile> out;
  for (const auto& p : all) {
    bool induced = false;
    for (const auto& q : all)
      if (q.k() > p.k() && std::all_of(p.oriented().begin(), p.oriented().end(), [&](const Separation& s) { return q.contains(s); }))
        induced = true;
    if (!induced) out.push_back(p);
  }
  return out;
}

struct IrregularProfile {
  enum class Kind { whole_graph, vertex } kind;
  int vertex = -1;
};

// An irregular profile is {(V,∅)} at k=1, or at k=2 the profile of a vertex x that is not a cutvertex:
// all (A,B) in S_2 with x in B except ({x},V).
inline IrregularProfile classify_irregular(const Graph& g, const Profile& p, const Caps& caps = {}) {
  if (is_regular(g, p)) throw PreconditionError("profile is regular");
  const VertexSet v = g.vertices();
  if (p.k() == 1 && p.size() == 1 && p.oriented().front() == Separation{v, {}}) return {IrregularProfile::Kind::whole_graph, -1};
  if (p.k() == 2) {
    for (const auto& s : p.oriented()) {
      if (s.a != v || s.b.size() != 1) continue;
      const int x = s.b.first();
      if (g.components(VertexSet::singleton(x)).size() > 1) break;
      std::vector<Separation> expect;
      for (const auto& u : enumerate_separations(g, 2, caps))
        for (const Separation& o : {u.canonical(), u.canonical().inverse()}) {
          if (o.b.contains(x) && !(o.a == VertexSet::singleton(x) && o.b == v)) expect.push_back(o);
        }
      Profile q(2, expect);
      if (q == p) return {IrregularProfile::Kind::vertex, x};
      break;
    }
  }
  throw HypothesisError("irregular profile matches neither the whole-graph nor a vertex profile");
}

struct DistinguisherSet {
  int order = -1;  // -1 when the profiles are not distinguished
  std::vector<UnorientedSeparation> separations;
  bool empty() const { return separations.empty(); }
  bool contains(const Separation& s) const {
    return std::binary_search(separations.begin(), separations.end(), UnorientedSeparation(s));
  }
};

// Whether some orientation of s lies in p with its inverse in q.
inline bool distinguishes(const Profile& p, const Profile& q, const Separation& s) {
  return (p.contains(s) && q.contains(s.inverse())) || (p.contains(s.inverse()) && q.contains(s));
}

// Separations of minimum order distinguishing p and q.
inline DistinguisherSet efficient_distinguishers(const Profile& p, const Profile& q) {
  DistinguisherSet out;
  for (const auto& s : p.oriented()) {
    if (!q.contains(s.inverse()) || s == s.inverse()) continue;
    if (out.order < 0 || s.order() < out.order) {
      out.order = s.order();
      out.separations.clear();
    }
    if (s.order() == out.order) out.separations.emplace_back(s);
  }
  std::sort(out.separations.begin(), out.separations.end());
  return out;
}

// The orientation of s that lies in p and whose inverse lies in q.
inline Separation oriented_towards(const Profile& p, const Profile& q, const Separation& s) {
  if (p.contains(s) && q.contains(s.inverse())) return s;
  if (p.contains(s.inverse()) && q.contains(s)) return s.inverse();
  throw PreconditionError("separation does not distinguish the profiles");
}

struct CornerChoice {
  UnorientedSeparation corner;
  Separation oriented;  // orientation lying in the first profile of the target pair
};

// For crossing efficient distinguishers ab of (p1,p2) and cd of (q1,q2) with |ab| < |cd|,
// a corner of ab and cd that efficiently distinguishes q1 and q2.
inline CornerChoice corner_unequal_orders(const Profile& p1, const Profile& p2, const Profile& q1, const Profile& q2,
                                          const Separation& ab, const Separation& cd) {
  const auto dp = efficient_distinguishers(p1, p2);
  const auto dq = efficient_distinguishers(q1, q2);
  if (!dp.contains(ab)) throw PreconditionError("first separation is not an efficient distinguisher of its pair");
  if (!dq.contains(cd)) throw PreconditionError("second separation is not an efficient distinguisher of its pair");
  if (ab.order() >= cd.order()) throw PreconditionError("orders must satisfy |ab| < |cd|");
  if (is_nested(ab, cd)) throw PreconditionError("inputs are nested");
  for (const auto& c : corner_separations(ab, cd))
    if (dq.contains(c.canonical())) return {c, oriented_towards(q1, q2, c.canonical())};
  throw HypothesisError("no corner distinguishes the second pair efficiently");
}

struct CornerTags {
  bool first = false;   // efficiently distinguishes the first pair
  bool second = false;  // efficiently distinguishes the second pair
};

struct OppositeCorners {
  Separation corner;
  CornerTags corner_tags;
  Separation opposite;
  CornerTags opposite_tags;
};

struct EqualOrderCorners {
  enum class Outcome {
    mixed,     // one corner of an opposite pair serves each pair
    separate,  // one opposite pair serves the first pair, the other the second
  } outcome;
  std::vector<OppositeCorners> pairs;
};

// For efficient distinguishers r of (p1,p2) and s of (q1,q2) of equal order.
inline EqualOrderCorners corner_equal_orders(const Profile& p1, const Profile& p2, const Profile& q1, const Profile& q2,
                                             const Separation& r, const Separation& s) {
  const auto dp = efficient_distinguishers(p1, p2);
  const auto dq = efficient_distinguishers(q1, q2);
  if (!dp.contains(r)) throw PreconditionError("first separation is not an efficient distinguisher of its pair");
  if (!dq.contains(s)) throw PreconditionError("second separation is not an efficient distinguisher of its pair");
  if (r.order() != s.order()) throw PreconditionError("orders differ");
  const auto cs = corners(r, s);
  auto tags = [&](const Separation& c) { return CornerTags{dp.contains(c), dq.contains(c)}; };
  const std::array<std::array<int, 2>, 2> opposite{{{0, 3}, {1, 2}}};
  for (auto [x, y] : opposite) {
    const auto tx = tags(cs[x]), ty = tags(cs[y]);
    if ((tx.first && ty.second) || (tx.second && ty.first))
      return {EqualOrderCorners::Outcome::mixed, {{cs[x], tx, cs[y], ty}}};
  }
  for (int i = 0; i < 2; ++i) {
    const auto [x1, y1] = opposite[i];
    const auto [x2, y2] = opposite[1 - i];
    const auto t1 = tags(cs[x1]), u1 = tags(cs[y1]), t2 = tags(cs[x2]), u2 = tags(cs[y2]);
    if (t1.first && u1.first && t2.second && u2.second)
      return {EqualOrderCorners::Outcome::separate, {{cs[x1], t1, cs[y1], u1}, {cs[x2], t2, cs[y2], u2}}};
  }
  throw HypothesisError("no opposite corner pair distinguishes the pairs efficiently");
}

}  // namespace tangleforge
