#pragma once

#include <bit>
#include <cstdint>
#include <functional>

namespace srlab {

/// Element set over a group of size <= 128, two machine words.
struct Mask128 {
  std::uint64_t lo = 0, hi = 0;

  static Mask128 single(int i) {
    Mask128 m;
    m.set(i);
    return m;
  }

  void set(int i) { i < 64 ? (void)(lo |= 1ull << i) : (void)(hi |= 1ull << (i - 64)); }
  void reset(int i) { i < 64 ? (void)(lo &= ~(1ull << i)) : (void)(hi &= ~(1ull << (i - 64))); }
  bool test(int i) const { return i < 64 ? (lo >> i) & 1 : (hi >> (i - 64)) & 1; }

  int count() const { return std::popcount(lo) + std::popcount(hi); }
  bool none() const { return lo == 0 && hi == 0; }
  bool any() const { return !none(); }

  int lowest() const {
    if (lo) return std::countr_zero(lo);
    return 64 + std::countr_zero(hi);
  }

  Mask128 operator&(const Mask128& o) const { return {lo & o.lo, hi & o.hi}; }
  Mask128 operator|(const Mask128& o) const { return {lo | o.lo, hi | o.hi}; }
  Mask128 operator^(const Mask128& o) const { return {lo ^ o.lo, hi ^ o.hi}; }
  Mask128& operator|=(const Mask128& o) { lo |= o.lo; hi |= o.hi; return *this; }
  Mask128& operator&=(const Mask128& o) { lo &= o.lo; hi &= o.hi; return *this; }
  Mask128 minus(const Mask128& o) const { return {lo & ~o.lo, hi & ~o.hi}; }

  bool subset_of(const Mask128& o) const {
    return (lo & ~o.lo) == 0 && (hi & ~o.hi) == 0;
  }
  bool intersects(const Mask128& o) const {
    return (lo & o.lo) != 0 || (hi & o.hi) != 0;
  }
  bool operator==(const Mask128& o) const { return lo == o.lo && hi == o.hi; }
  bool operator!=(const Mask128& o) const { return !(*this == o); }
  bool operator<(const Mask128& o) const {
    return hi != o.hi ? hi < o.hi : lo < o.lo;
  }

  template <typename F>
  void for_each(F f) const {
    std::uint64_t w = lo;
    while (w) {
      f(std::countr_zero(w));
      w &= w - 1;
    }
    w = hi;
    while (w) {
      f(64 + std::countr_zero(w));
      w &= w - 1;
    }
  }
};

struct Mask128Hash {
  std::size_t operator()(const Mask128& m) const {
    return std::hash<std::uint64_t>()(m.lo * 0x9e3779b97f4a7c15ull ^ m.hi);
  }
};

}  // namespace srlab
