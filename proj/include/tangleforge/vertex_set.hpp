#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <iterator>
#include <ostream>
#include <vector>

namespace tangleforge {

// Set of vertex ids in [0, 64) backed by a bitmask.
class VertexSet {
 public:
  using mask_type = std::uint64_t;
  static constexpr int capacity = 64;

  class iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = int;
    using difference_type = std::ptrdiff_t;
    using pointer = const int*;
    using reference = int;

    constexpr iterator() = default;
    constexpr explicit iterator(mask_type rest) : rest_(rest) {}
    constexpr int operator*() const { return std::countr_zero(rest_); }
    constexpr iterator& operator++() {
      rest_ &= rest_ - 1;
      return *this;
    }
    constexpr iterator operator++(int) {
      iterator old = *this;
      ++*this;
      return old;
    }
    constexpr bool operator==(const iterator&) const = default;

   private:
    mask_type rest_ = 0;
  };

  constexpr VertexSet() = default;
  constexpr explicit VertexSet(mask_type bits) : bits_(bits) {}
  VertexSet(std::initializer_list<int> vs) {
    for (int v : vs) insert(v);
  }

  static VertexSet from(const std::vector<int>& vs) {
    VertexSet s;
    for (int v : vs) s.insert(v);
    return s;
  }
  static constexpr VertexSet range(int n) {
    return VertexSet(n >= 64 ? ~mask_type{0} : ((mask_type{1} << n) - 1));
  }
  static constexpr VertexSet singleton(int v) { return VertexSet(mask_type{1} << v); }

  constexpr mask_type bits() const { return bits_; }
  constexpr bool contains(int v) const { return (bits_ >> v) & 1u; }
  constexpr void insert(int v) { bits_ |= mask_type{1} << v; }
  constexpr void erase(int v) { bits_ &= ~(mask_type{1} << v); }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int first() const { return std::countr_zero(bits_); }
  constexpr bool subset_of(VertexSet o) const { return (bits_ & ~o.bits_) == 0; }
  constexpr bool intersects(VertexSet o) const { return (bits_ & o.bits_) != 0; }

  constexpr iterator begin() const { return iterator(bits_); }
  constexpr iterator end() const { return iterator(0); }

  std::vector<int> to_vector() const { return {begin(), end()}; }

  friend constexpr VertexSet operator|(VertexSet a, VertexSet b) { return VertexSet(a.bits_ | b.bits_); }
  friend constexpr VertexSet operator&(VertexSet a, VertexSet b) { return VertexSet(a.bits_ & b.bits_); }
  friend constexpr VertexSet operator-(VertexSet a, VertexSet b) { return VertexSet(a.bits_ & ~b.bits_); }
  friend constexpr VertexSet operator^(VertexSet a, VertexSet b) { return VertexSet(a.bits_ ^ b.bits_); }
  constexpr VertexSet& operator|=(VertexSet o) { bits_ |= o.bits_; return *this; }
  constexpr VertexSet& operator&=(VertexSet o) { bits_ &= o.bits_; return *this; }
  constexpr VertexSet& operator-=(VertexSet o) { bits_ &= ~o.bits_; return *this; }

  friend constexpr bool operator==(VertexSet, VertexSet) = default;
  // Bitmask order; use lex_compare for the canonical order on sorted vertex lists.
  friend constexpr auto operator<=>(VertexSet a, VertexSet b) { return a.bits_ <=> b.bits_; }

 private:
  mask_type bits_ = 0;
};

// Lexicographic comparison of the sorted vertex lists.
constexpr std::strong_ordering lex_compare(VertexSet a, VertexSet b) {
  if (a == b) return std::strong_ordering::equal;
  const int d = std::countr_zero((a ^ b).bits());
  if (a.contains(d)) {
    // a has d, b does not; b is smaller only if it stops before d
    return (b.bits() >> d) != 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return (a.bits() >> d) == 0 ? std::strong_ordering::less : std::strong_ordering::greater;
}

inline std::ostream& operator<<(std::ostream& os, VertexSet s) {
  os << '{';
  bool first = true;
  for (int v : s) {
    if (!first) os << ',';
    os << v;
    first = false;
  }
  return os << '}';
}

}  // namespace tangleforge

template <>
struct std::hash<tangleforge::VertexSet> {
  std::size_t operator()(tangleforge::VertexSet s) const noexcept {
    return std::hash<std::uint64_t>{}(s.bits());
  }
};
