#pragma once

#include <concepts>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "tangleforge/separation.hpp"

namespace tangleforge {

template <class U>
concept SeparationUniverse = requires(const U& u, const typename U::element_type& x) {
  typename U::element_type;
  { u.star(x) } -> std::convertible_to<typename U::element_type>;
  { u.leq(x, x) } -> std::convertible_to<bool>;
  { u.join(x, x) } -> std::convertible_to<typename U::element_type>;
  { u.meet(x, x) } -> std::convertible_to<typename U::element_type>;
  { u.order(x) } -> std::convertible_to<int>;
  { x == x } -> std::convertible_to<bool>;
};

// Separations of a graph with the standard operations.
struct GraphUniverse {
  using element_type = Separation;
  Separation star(const Separation& s) const { return s.inverse(); }
  bool leq(const Separation& s, const Separation& t) const { return tangleforge::leq(s, t); }
  Separation join(const Separation& s, const Separation& t) const { return tangleforge::join(s, t); }
  Separation meet(const Separation& s, const Separation& t) const { return tangleforge::meet(s, t); }
  int order(const Separation& s) const { return s.order(); }
};

// Finite universe given by tables over ids 0..size()-1.
class TableUniverse {
 public:
  using element_type = std::size_t;

  TableUniverse() = default;
  TableUniverse(std::vector<std::size_t> star, std::vector<std::vector<bool>> leq,
                std::vector<std::vector<std::size_t>> join, std::vector<std::vector<std::size_t>> meet,
                std::vector<int> order)
      : star_(std::move(star)), leq_(std::move(leq)), join_(std::move(join)), meet_(std::move(meet)), order_(std::move(order)) {
    const std::size_t m = star_.size();
    auto bad = [&](const std::string& what) { throw PreconditionError("table universe: " + what + " has the wrong shape"); };
    if (order_.size() != m) bad("order");
    if (leq_.size() != m || join_.size() != m || meet_.size() != m) bad("tables");
    for (std::size_t i = 0; i < m; ++i) {
      if (leq_[i].size() != m || join_[i].size() != m || meet_[i].size() != m) bad("row " + std::to_string(i));
      if (star_[i] >= m) bad("star");
      for (std::size_t j = 0; j < m; ++j)
        if (join_[i][j] >= m || meet_[i][j] >= m) bad("join/meet");
    }
  }

  // Tables of a closed element list of another universe; labels keep the source elements.
  template <SeparationUniverse U>
  static TableUniverse tabulate(const U& u, const std::vector<typename U::element_type>& elements) {
    const std::size_t m = elements.size();
    std::unordered_map<typename U::element_type, std::size_t> id;
    for (std::size_t i = 0; i < m; ++i) id.emplace(elements[i], i);
    auto find = [&](const typename U::element_type& x) {
      auto it = id.find(x);
      if (it == id.end()) throw PreconditionError("element list is not closed under the universe operations");
      return it->second;
    };
    std::vector<std::size_t> star(m);
    std::vector<std::vector<bool>> leq(m, std::vector<bool>(m));
    std::vector<std::vector<std::size_t>> jn(m, std::vector<std::size_t>(m)), mt(m, std::vector<std::size_t>(m));
    std::vector<int> order(m);
    for (std::size_t i = 0; i < m; ++i) {
      star[i] = find(u.star(elements[i]));
      order[i] = u.order(elements[i]);
      for (std::size_t j = 0; j < m; ++j) {
        leq[i][j] = u.leq(elements[i], elements[j]);
        jn[i][j] = find(u.join(elements[i], elements[j]));
        mt[i][j] = find(u.meet(elements[i], elements[j]));
      }
    }
    return TableUniverse(std::move(star), std::move(leq), std::move(jn), std::move(mt), std::move(order));
  }

  std::size_t size() const { return star_.size(); }
  std::vector<std::size_t> elements() const {
    std::vector<std::size_t> out(size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = i;
    return out;
  }

  std::size_t star(std::size_t x) const { return star_[x]; }
  bool leq(std::size_t x, std::size_t y) const { return leq_[x][y]; }
  std::size_t join(std::size_t x, std::size_t y) const { return join_[x][y]; }
  std::size_t meet(std::size_t x, std::size_t y) const { return meet_[x][y]; }
  int order(std::size_t x) const { return order_[x]; }

  // Representative of {x, x*}.
  std::size_t unoriented(std::size_t x) const { return std::min(x, star_[x]); }

 private:
  std::vector<std::size_t> star_;
  std::vector<std::vector<bool>> leq_;
  std::vector<std::vector<std::size_t>> join_, meet_;
  std::vector<int> order_;
};

template <SeparationUniverse U>
bool same_unoriented(const U& u, const typename U::element_type& x, const typename U::element_type& y) {
  return x == y || x == u.star(y);
}

template <SeparationUniverse U>
bool is_nested(const U& u, const typename U::element_type& x, const typename U::element_type& y) {
  const auto xs = u.star(x), ys = u.star(y);
  return u.leq(x, y) || u.leq(x, ys) || u.leq(xs, y) || u.leq(xs, ys);
}

template <SeparationUniverse U>
std::array<typename U::element_type, 4> corners(const U& u, const typename U::element_type& r,
                                                const typename U::element_type& s) {
  return {u.join(r, s), u.join(r, u.star(s)), u.join(u.star(r), s), u.join(u.star(r), u.star(s))};
}

// Closure of a seed list under star, join and meet.
template <SeparationUniverse U>
std::vector<typename U::element_type> closure(const U& u, std::vector<typename U::element_type> seed,
                                             std::size_t cap = 1u << 16) {
  using E = typename U::element_type;
  std::unordered_map<E, std::size_t> seen;
  std::vector<E> out;
  auto add = [&](const E& x) {
    if (seen.emplace(x, out.size()).second) {
      out.push_back(x);
      if (out.size() > cap) throw SizeLimitError("closure exceeds cap of " + std::to_string(cap) + " elements");
    }
  };
  for (const auto& x : seed) add(x);
  for (std::size_t i = 0; i < out.size(); ++i) {
    add(u.star(out[i]));
    for (std::size_t j = 0; j <= i; ++j) {
      const E x = out[i], y = out[j];
      add(u.join(x, y));
      add(u.meet(x, y));
    }
  }
  return out;
}

// Sublattice generated by S_k of a graph.
inline std::vector<Separation> generated_universe(const Graph& g, int k, const Caps& caps = {}) {
  std::vector<Separation> seed;
  for (const auto& s : enumerate_separations(g, k, caps)) {
    seed.push_back(s.canonical());
    seed.push_back(s.canonical().inverse());
  }
  auto out = closure(GraphUniverse{}, seed, caps.max_checked_elements);
  std::sort(out.begin(), out.end(), key_less);
  return out;
}

struct AxiomViolation {
  std::string axiom;
  std::vector<std::size_t> witnesses;  // indices into the checked element list
};

struct UniverseReport {
  std::size_t elements = 0;
  std::size_t violation_count = 0;
  std::vector<AxiomViolation> violations;  // first few, for diagnostics
  bool ok() const { return violation_count == 0; }
};

struct UniverseCheckOptions {
  bool submodular = false;
  std::size_t keep = 16;
};

// Checks the universe axioms on a finite element list: involution, order reversal,
// partial order, closure, least upper and greatest lower bounds, order symmetry,
// and optionally submodularity.
template <SeparationUniverse U>
UniverseReport verify_universe(const U& u, const std::vector<typename U::element_type>& elements,
                               UniverseCheckOptions opt = {}, const Caps& caps = {}) {
  using E = typename U::element_type;
  const std::size_t m = elements.size();
  if (m > caps.max_checked_elements) throw SizeLimitError("universe check limited to " + std::to_string(caps.max_checked_elements) + " elements");
  UniverseReport rep;
  rep.elements = m;
  auto fail = [&](const std::string& axiom, std::vector<std::size_t> w) {
    ++rep.violation_count;
    if (rep.violations.size() < opt.keep) rep.violations.push_back({axiom, std::move(w)});
  };
  std::unordered_map<E, std::size_t> id;
  for (std::size_t i = 0; i < m; ++i) id.emplace(elements[i], i);
  auto find = [&](const E& x) -> std::optional<std::size_t> {
    auto it = id.find(x);
    if (it == id.end()) return std::nullopt;
    return it->second;
  };

  std::vector<std::size_t> st(m);
  for (std::size_t i = 0; i < m; ++i) {
    auto s = find(u.star(elements[i]));
    if (!s) {
      fail("star closure", {i});
      st[i] = i;
      continue;
    }
    st[i] = *s;
    if (!(u.star(u.star(elements[i])) == elements[i])) fail("involution", {i});
    if (u.order(elements[i]) < 0) fail("order nonnegative", {i});
    if (u.order(elements[i]) != u.order(u.star(elements[i]))) fail("order symmetry", {i});
  }

  std::vector<boost::dynamic_bitset<>> up(m, boost::dynamic_bitset<>(m)), down(m, boost::dynamic_bitset<>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (u.leq(elements[i], elements[j])) {
        up[i].set(j);
        down[j].set(i);
      }
  for (std::size_t i = 0; i < m; ++i) {
    if (!up[i].test(i)) fail("reflexivity", {i});
    for (std::size_t j = up[i].find_first(); j != boost::dynamic_bitset<>::npos; j = up[i].find_next(j)) {
      if (j != i && up[j].test(i)) {
        if (i < j) fail("antisymmetry", {i, j});
      }
      if (!up[j].is_subset_of(up[i])) fail("transitivity", {i, j});
      if (!up[st[j]].test(st[i])) fail("order reversal", {i, j});
    }
  }

  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i; j < m; ++j) {
      const E jn = u.join(elements[i], elements[j]);
      const E mt = u.meet(elements[i], elements[j]);
      auto ji = find(jn), mi = find(mt);
      if (!ji) fail("join closure", {i, j});
      else if ((up[i] & up[j]) != up[*ji]) fail("join is least upper bound", {i, j});
      if (!mi) fail("meet closure", {i, j});
      else if ((down[i] & down[j]) != down[*mi]) fail("meet is greatest lower bound", {i, j});
      if (opt.submodular && u.order(jn) + u.order(mt) > u.order(elements[i]) + u.order(elements[j]))
        fail("submodularity", {i, j});
    }
  }
  return rep;
}

enum class SeparationKind { trivial, small, cosmall, regular };

inline const char* to_string(SeparationKind k) {
  switch (k) {
    case SeparationKind::trivial: return "trivial";
    case SeparationKind::small: return "small";
    case SeparationKind::cosmall: return "cosmall";
    case SeparationKind::regular: return "regular";
  }
  return "?";
}

template <class E>
struct SeparationClass {
  SeparationKind kind = SeparationKind::regular;
  std::optional<E> witness;  // for trivial: the r with x <= r and x <= r*
};

// Classifies x against the unoriented elements listed in `context`.
template <SeparationUniverse U>
SeparationClass<typename U::element_type> classify_separation(const U& u, const std::vector<typename U::element_type>& context,
                                                              const typename U::element_type& x) {
  for (const auto& r : context) {
    if (same_unoriented(u, r, x)) continue;
    if (u.leq(x, r) && u.leq(x, u.star(r))) return {SeparationKind::trivial, r};
  }
  if (u.leq(x, u.star(x))) return {SeparationKind::small, std::nullopt};
  if (u.leq(u.star(x), x)) return {SeparationKind::cosmall, std::nullopt};
  return {SeparationKind::regular, std::nullopt};
}

}  // namespace tangleforge
