#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <functional>
#include <ostream>
#include <string>
#include <unordered_set>
#include <vector>

#include "tangleforge/config.hpp"
#include "tangleforge/graph.hpp"

namespace tangleforge {

// Oriented separation (A,B).
struct Separation {
  VertexSet a;
  VertexSet b;

  VertexSet separator() const { return a & b; }
  int order() const { return separator().size(); }
  Separation inverse() const { return {b, a}; }

  friend bool operator==(const Separation&, const Separation&) = default;
};

// (A,B) <= (C,D) iff A ⊆ C and B ⊇ D.
inline bool leq(const Separation& s, const Separation& t) { return s.a.subset_of(t.a) && t.b.subset_of(s.b); }
inline Separation join(const Separation& s, const Separation& t) { return {s.a | t.a, s.b & t.b}; }
inline Separation meet(const Separation& s, const Separation& t) { return {s.a & t.a, s.b | t.b}; }

// Canonical order on oriented separations: lex on A, then lex on B.
inline std::strong_ordering key_compare(const Separation& s, const Separation& t) {
  if (auto c = lex_compare(s.a, t.a); c != 0) return c;
  return lex_compare(s.b, t.b);
}
inline bool key_less(const Separation& s, const Separation& t) { return key_compare(s, t) < 0; }

inline Separation canonical_orientation(const Separation& s) { return key_less(s.inverse(), s) ? s.inverse() : s; }

inline bool same_unoriented(const Separation& s, const Separation& t) { return s == t || s == t.inverse(); }

inline std::ostream& operator<<(std::ostream& os, const Separation& s) { return os << '(' << s.a << ',' << s.b << ')'; }

// Unoriented separation {(A,B),(B,A)}, stored in canonical orientation.
class UnorientedSeparation {
 public:
  UnorientedSeparation() = default;
  explicit UnorientedSeparation(const Separation& s) : rep_(canonical_orientation(s)) {}

  const Separation& canonical() const { return rep_; }
  int order() const { return rep_.order(); }
  VertexSet separator() const { return rep_.separator(); }
  bool has_orientation(const Separation& s) const { return same_unoriented(rep_, s); }

  friend bool operator==(const UnorientedSeparation&, const UnorientedSeparation&) = default;
  friend std::strong_ordering operator<=>(const UnorientedSeparation& x, const UnorientedSeparation& y) {
    return key_compare(x.rep_, y.rep_);
  }

 private:
  Separation rep_;
};

inline std::ostream& operator<<(std::ostream& os, const UnorientedSeparation& s) { return os << s.canonical(); }

}  // namespace tangleforge

template <>
struct std::hash<tangleforge::Separation> {
  std::size_t operator()(const tangleforge::Separation& s) const noexcept {
    const auto h = std::hash<std::uint64_t>{};
    return h(s.a.bits()) * 0x9e3779b97f4a7c15ULL ^ h(s.b.bits());
  }
};

template <>
struct std::hash<tangleforge::UnorientedSeparation> {
  std::size_t operator()(const tangleforge::UnorientedSeparation& s) const noexcept {
    return std::hash<tangleforge::Separation>{}(s.canonical());
  }
};

namespace tangleforge {

inline bool is_separation(const Graph& g, const Separation& s) {
  const VertexSet v = g.vertices();
  if (!s.a.subset_of(v) || !s.b.subset_of(v) || (s.a | s.b) != v) return false;
  return !g.has_edge_between(s.a - s.b, s.b - s.a);
}

// Some orientations are comparable.
inline bool is_nested(const Separation& r, const Separation& s) {
  return leq(r, s) || leq(r, s.inverse()) || leq(r.inverse(), s) || leq(s, r);
}
inline bool is_nested(const UnorientedSeparation& r, const UnorientedSeparation& s) {
  return is_nested(r.canonical(), s.canonical());
}

// r∨s, r∨s*, r*∨s, r*∨s* in that order. Opposite pairs are (0,3) and (1,2).
inline std::array<Separation, 4> corners(const Separation& r, const Separation& s) {
  return {join(r, s), join(r, s.inverse()), join(r.inverse(), s), join(r.inverse(), s.inverse())};
}

// The distinct unoriented corner separations, sorted.
inline std::vector<UnorientedSeparation> corner_separations(const Separation& r, const Separation& s) {
  std::vector<UnorientedSeparation> out;
  for (const auto& c : corners(r, s)) out.emplace_back(c);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Some component C ⊆ A∖B and some component D ⊆ B∖A of G - (A∩B) have full neighbourhood A∩B.
inline bool is_tight(const Graph& g, const Separation& s) {
  const VertexSet x = s.separator();
  bool left = false, right = false;
  for (VertexSet c : g.components(x)) {
    if (g.neighborhood(c) != x) continue;
    if (c.subset_of(s.a - s.b)) left = true;
    if (c.subset_of(s.b - s.a)) right = true;
  }
  return left && right;
}

namespace detail {

inline void check_graph_caps(const Graph& g, const Caps& caps) {
  if (g.order() > caps.max_vertices)
    throw SizeLimitError("graph has " + std::to_string(g.order()) + " vertices; cap is " + std::to_string(caps.max_vertices));
}

// Calls f(A,B) for every oriented separation whose separator has fewer than k vertices.
// Each separation arises exactly once: its separator X and the side of each component of G-X.
template <class F>
void for_each_separation(const Graph& g, int k, F&& f) {
  const VertexSet v = g.vertices();
  const std::vector<int> vs = v.to_vector();
  const int n = static_cast<int>(vs.size());
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    if (std::popcount(m) >= k) continue;
    VertexSet x;
    for (int i = 0; i < n; ++i)
      if ((m >> i) & 1u) x.insert(vs[i]);
    const auto comps = g.components(x);
    const std::size_t c = comps.size();
    for (std::uint64_t side = 0; side < (std::uint64_t{1} << c); ++side) {
      VertexSet a = x, b = x;
      for (std::size_t i = 0; i < c; ++i) ((side >> i) & 1u ? b : a) |= comps[i];
      f(Separation{a, b});
    }
  }
}

inline std::size_t count_separations(const Graph& g, int k) {
  const std::vector<int> vs = g.vertices().to_vector();
  const int n = static_cast<int>(vs.size());
  std::size_t total = 0;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    if (std::popcount(m) >= k) continue;
    VertexSet x;
    for (int i = 0; i < n; ++i)
      if ((m >> i) & 1u) x.insert(vs[i]);
    const auto c = g.components(x).size();
    if (c >= 63) return static_cast<std::size_t>(-1);
    total += std::size_t{1} << c;
  }
  return total;
}

}  // namespace detail

// S_k: unoriented separations of order < k, sorted canonically.
inline std::vector<UnorientedSeparation> enumerate_separations(const Graph& g, int k, const Caps& caps = {}) {
  if (k < 1) throw PreconditionError("k must be at least 1");
  if (k > caps.max_order) throw SizeLimitError("k=" + std::to_string(k) + " exceeds cap " + std::to_string(caps.max_order));
  detail::check_graph_caps(g, caps);
  if (detail::count_separations(g, k) > caps.max_universe) throw SizeLimitError("separation count exceeds cap");
  std::vector<UnorientedSeparation> out;
  detail::for_each_separation(g, k, [&](const Separation& s) {
    UnorientedSeparation u(s);
    if (u.canonical() == s) out.push_back(u);
  });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Every oriented separation of g, sorted canonically.
inline std::vector<Separation> all_separations(const Graph& g, const Caps& caps = {}) {
  detail::check_graph_caps(g, caps);
  const int k = g.order() + 1;
  if (detail::count_separations(g, k) > caps.max_universe) throw SizeLimitError("separation universe exceeds cap");
  std::vector<Separation> out;
  detail::for_each_separation(g, k, [&](const Separation& s) { out.push_back(s); });
  std::sort(out.begin(), out.end(), key_less);
  return out;
}

}  // namespace tangleforge
