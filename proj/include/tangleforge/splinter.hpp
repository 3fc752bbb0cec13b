#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "tangleforge/universe.hpp"

namespace tangleforge {

// Families A_1..A_n of elements of a separation universe.
template <SeparationUniverse U>
struct FiniteSplinterFamily {
  using element_type = typename U::element_type;
  U universe;
  std::vector<std::vector<element_type>> families;

  bool member(std::size_t i, const element_type& x) const {
    for (const auto& y : families[i])
      if (same_unoriented(universe, x, y)) return true;
    return false;
  }
};

template <class E>
struct SplinterViolation {
  std::size_t i, j;
  E s, t;
};

template <class E>
struct SplinterCheck {
  std::optional<SplinterViolation<E>> violation;
  bool ok() const { return !violation.has_value(); }
};

// For s in A_i and t in A_j: s in A_j, or t in A_i, or some corner of s,t lies in A_i ∪ A_j.
template <SeparationUniverse U>
SplinterCheck<typename U::element_type> splinters_check(const FiniteSplinterFamily<U>& f) {
  const auto& u = f.universe;
  for (std::size_t i = 0; i < f.families.size(); ++i)
    for (std::size_t j = i + 1; j < f.families.size(); ++j)
      for (const auto& s : f.families[i])
        for (const auto& t : f.families[j]) {
          if (f.member(j, s) || f.member(i, t)) continue;
          bool found = false;
          for (const auto& c : corners(u, s, t))
            if (f.member(i, c) || f.member(j, c)) {
              found = true;
              break;
            }
          if (!found) return {SplinterViolation<typename U::element_type>{i, j, s, t}};
        }
  return {};
}

// Pairwise nested a_1..a_n with a_i in A_i.
template <SeparationUniverse U>
std::vector<typename U::element_type> splinter_finite(const FiniteSplinterFamily<U>& f) {
  using E = typename U::element_type;
  const auto& u = f.universe;
  const std::size_t n = f.families.size();
  for (std::size_t i = 0; i < n; ++i)
    if (f.families[i].empty()) throw PreconditionError("family " + std::to_string(i) + " is empty");

  std::vector<std::vector<E>> live = f.families;
  std::vector<bool> done(n, false);
  std::vector<std::optional<E>> chosen(n);
  for (std::size_t round = 0; round < n; ++round) {
    bool progressed = false;
    for (std::size_t i = 0; i < n && !progressed; ++i) {
      if (done[i]) continue;
      for (const E& a : live[i]) {
        bool fits = true;
        for (std::size_t j = 0; j < n && fits; ++j) {
          if (done[j] || j == i) continue;
          fits = std::any_of(live[j].begin(), live[j].end(), [&](const E& b) { return is_nested(u, a, b); });
        }
        if (!fits) continue;
        chosen[i] = a;
        done[i] = true;
        for (std::size_t j = 0; j < n; ++j) {
          if (done[j]) continue;
          std::erase_if(live[j], [&](const E& b) { return !is_nested(u, a, b); });
        }
        progressed = true;
        break;
      }
    }
    if (!progressed) {
      FiniteSplinterFamily<U> rest{u, {}};
      for (std::size_t j = 0; j < n; ++j)
        if (!done[j]) rest.families.push_back(live[j]);
      auto check = splinters_check(rest);
      std::string msg = "families do not splinter";
      if (!check.ok()) msg += ": the restricted families " + std::to_string(check.violation->i) + " and " + std::to_string(check.violation->j) + " violate the corner condition";
      throw HypothesisError(msg);
    }
  }
  std::vector<E> out;
  for (auto& c : chosen) out.push_back(*c);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!is_nested(u, out[i], out[j])) throw CertificationError("chosen elements are not pairwise nested");
  return out;
}

struct SplinterFamily {
  int order = 0;
  std::vector<std::size_t> members;
};

// Abstract instance: elements 0..m-1, a symmetric nestedness relation, and families with orders.
struct SplinterInstance {
  std::size_t element_count = 0;
  std::vector<std::vector<bool>> nested;
  std::vector<SplinterFamily> families;
  // Optional diagnostic: a claimed corner of a and b lying in the given family.
  std::function<std::optional<std::size_t>(std::size_t a, std::size_t b, std::size_t family)> corner_oracle;

  void validate() const {
    if (nested.size() != element_count) throw PreconditionError("nestedness relation has the wrong size");
    for (std::size_t x = 0; x < element_count; ++x) {
      if (nested[x].size() != element_count) throw PreconditionError("nestedness relation has the wrong size");
      if (!nested[x][x]) throw PreconditionError("nestedness relation is not reflexive at " + std::to_string(x));
      for (std::size_t y = 0; y < x; ++y)
        if (nested[x][y] != nested[y][x]) throw PreconditionError("nestedness relation is not symmetric");
    }
    for (std::size_t f = 0; f < families.size(); ++f) {
      if (families[f].members.empty()) throw PreconditionError("family " + std::to_string(f) + " is empty");
      for (auto x : families[f].members)
        if (x >= element_count) throw PreconditionError("family " + std::to_string(f) + " names an unknown element");
    }
  }

  bool crosses(std::size_t x, std::size_t y) const { return !nested[x][y]; }

  std::vector<int> orders() const {
    std::set<int> ks;
    for (const auto& f : families) ks.insert(f.order);
    return {ks.begin(), ks.end()};
  }

  // Elements lying in some family of the given order.
  boost::dynamic_bitset<> level(int k) const {
    boost::dynamic_bitset<> out(element_count);
    for (const auto& f : families)
      if (f.order == k)
        for (auto x : f.members) out.set(x);
    return out;
  }
};

// Number of elements in families of order k that cross a.
inline std::size_t crossing_number(const SplinterInstance& inst, std::size_t a, int k) {
  const auto lv = inst.level(k);
  std::size_t n = 0;
  for (std::size_t x = lv.find_first(); x != boost::dynamic_bitset<>::npos; x = lv.find_next(x))
    if (inst.crosses(a, x)) ++n;
  return n;
}

struct ThinViolation {
  int property;  // 2 or 3, or 0 for a corner oracle diagnostic
  std::size_t family_i, family_j;
  std::size_t a, b;
};

struct ThinCheckReport {
  std::vector<std::pair<int, std::size_t>> max_crossing;  // per order: largest crossing number
  std::vector<ThinViolation> violations;
  std::vector<ThinViolation> oracle_mismatches;
  bool ok() const { return violations.empty(); }
};

namespace detail {

struct CrossingRows {
  std::vector<boost::dynamic_bitset<>> cross;
  explicit CrossingRows(const SplinterInstance& inst) : cross(inst.element_count, boost::dynamic_bitset<>(inst.element_count)) {
    for (std::size_t x = 0; x < inst.element_count; ++x)
      for (std::size_t y = 0; y < inst.element_count; ++y)
        if (inst.crosses(x, y)) cross[x].set(y);
  }
  // Every element crossing c crosses a or b.
  bool is_corner(std::size_t c, std::size_t a, std::size_t b) const { return cross[c].is_subset_of(cross[a] | cross[b]); }
};

}  // namespace detail

// Checks the three thin-splinter properties by definition; corners are found by scanning all elements.
inline ThinCheckReport thinly_splinters_check(const SplinterInstance& inst) {
  inst.validate();
  ThinCheckReport rep;
  const detail::CrossingRows rows(inst);
  std::map<int, std::vector<std::size_t>> cn;  // order -> crossing numbers
  for (int k : inst.orders()) {
    auto& v = cn[k];
    for (std::size_t x = 0; x < inst.element_count; ++x) v.push_back(crossing_number(inst, x, k));
    rep.max_crossing.emplace_back(k, *std::max_element(v.begin(), v.end()));
  }
  auto in_family = [&](std::size_t f, std::size_t x) {
    const auto& m = inst.families[f].members;
    return std::find(m.begin(), m.end(), x) != m.end();
  };
  auto check_oracle = [&](std::size_t fi, std::size_t fj, std::size_t a, std::size_t b, std::size_t target) {
    if (!inst.corner_oracle) return;
    auto c = inst.corner_oracle(a, b, target);
    if (!c || !in_family(target, *c) || !rows.is_corner(*c, a, b)) rep.oracle_mismatches.push_back({0, fi, fj, a, b});
  };
  const std::size_t nf = inst.families.size();
  for (std::size_t i = 0; i < nf; ++i)
    for (std::size_t j = 0; j < nf; ++j) {
      const auto& fi = inst.families[i];
      const auto& fj = inst.families[j];
      if (fi.order < fj.order) {
        for (auto a : fi.members)
          for (auto b : fj.members) {
            if (!inst.crosses(a, b)) continue;
            bool ok = false;
            for (auto c : fj.members)
              if (!inst.crosses(c, a) && rows.is_corner(c, a, b)) {
                ok = true;
                break;
              }
            if (!ok) rep.violations.push_back({2, i, j, a, b});
            else check_oracle(i, j, a, b, j);
          }
      } else if (fi.order == fj.order && i < j) {
        const auto& num = cn[fi.order];
        for (auto a : fi.members)
          for (auto b : fj.members) {
            if (!inst.crosses(a, b)) continue;
            bool ok = false;
            for (auto c : fi.members)
              if (num[c] < num[a] && rows.is_corner(c, a, b)) ok = true;
            for (auto c : fj.members)
              if (!ok && num[c] < num[b] && rows.is_corner(c, a, b)) ok = true;
            if (!ok) rep.violations.push_back({3, i, j, a, b});
          }
      }
    }
  return rep;
}

struct ThinLevel {
  int k;
  std::vector<std::size_t> added;
};

struct ThinSplinterResult {
  std::vector<std::size_t> nested_set;
  std::vector<ThinLevel> levels;
};

// Levelwise: at order k, from each family keep all members nested with the previous levels
// whose k-crossing number is minimum.
inline ThinSplinterResult thin_splinter(const SplinterInstance& inst) {
  inst.validate();
  ThinSplinterResult out;
  std::vector<bool> in_set(inst.element_count, false);
  std::vector<std::size_t> prev;
  for (int k : inst.orders()) {
    std::set<std::size_t> added;
    for (std::size_t f = 0; f < inst.families.size(); ++f) {
      if (inst.families[f].order != k) continue;
      std::vector<std::size_t> cand;
      for (auto x : inst.families[f].members)
        if (std::all_of(prev.begin(), prev.end(), [&](std::size_t y) { return inst.nested[x][y]; })) cand.push_back(x);
      if (cand.empty())
        throw HypothesisError("family " + std::to_string(f) + " has no member nested with the lower levels");
      std::size_t best = static_cast<std::size_t>(-1);
      std::vector<std::size_t> num;
      for (auto x : cand) {
        num.push_back(crossing_number(inst, x, k));
        best = std::min(best, num.back());
      }
      for (std::size_t i = 0; i < cand.size(); ++i)
        if (num[i] == best) added.insert(cand[i]);
    }
    ThinLevel lvl{k, {}};
    for (auto x : added)
      if (!in_set[x]) {
        in_set[x] = true;
        lvl.added.push_back(x);
      }
    prev.insert(prev.end(), lvl.added.begin(), lvl.added.end());
    out.levels.push_back(std::move(lvl));
  }
  for (std::size_t x = 0; x < inst.element_count; ++x)
    if (in_set[x]) out.nested_set.push_back(x);

  for (auto x : out.nested_set)
    for (auto y : out.nested_set)
      if (!inst.nested[x][y]) throw CertificationError("result is not pairwise nested");
  for (std::size_t f = 0; f < inst.families.size(); ++f)
    if (std::none_of(inst.families[f].members.begin(), inst.families[f].members.end(), [&](std::size_t x) { return in_set[x]; }))
      throw CertificationError("result misses family " + std::to_string(f));
  return out;
}

}  // namespace tangleforge
