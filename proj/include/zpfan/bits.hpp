#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace zpfan {

/// Vertex subsets of a hypergraph with at most 64 vertices.
using VertexSet = std::uint64_t;

constexpr int kMaxVertices = 64;

inline constexpr VertexSet bit(int v) { return VertexSet{1} << v; }

inline constexpr int popcount(VertexSet s) { return std::popcount(s); }

inline constexpr bool is_subset(VertexSet a, VertexSet b) { return (a & ~b) == 0; }

inline constexpr int lowest(VertexSet s) { return std::countr_zero(s); }

inline constexpr int highest(VertexSet s) { return 63 - std::countl_zero(s); }

inline constexpr VertexSet full_set(int n) { return n >= 64 ? ~VertexSet{0} : bit(n) - 1; }

inline std::vector<int> members(VertexSet s) {
  std::vector<int> out;
  out.reserve(popcount(s));
  while (s != 0) {
    out.push_back(lowest(s));
    s &= s - 1;
  }
  return out;
}

template <class Fn>
void for_each_member(VertexSet s, Fn&& fn) {
  while (s != 0) {
    fn(lowest(s));
    s &= s - 1;
  }
}

/// Calls fn(subset) for every subset of `s` (including empty and `s` itself).
template <class Fn>
void for_each_subset(VertexSet s, Fn&& fn) {
  VertexSet sub = s;
  while (true) {
    fn(sub);
    if (sub == 0) break;
    sub = (sub - 1) & s;
  }
}

/// Next k-subset in colex order (Gosper's hack); returns 0 past the end.
inline VertexSet next_combination(VertexSet x, int n) {
  VertexSet c = x & (~x + 1);
  VertexSet r = x + c;
  VertexSet next = (((r ^ x) >> 2) / c) | r;
  if (n < 64 && (next >> n) != 0) return 0;
  if (next < x) return 0;
  return next;
}

/// Calls fn(subset) for every k-subset of {0..n-1}, colex order.
template <class Fn>
void for_each_combination(int n, int k, Fn&& fn) {
  if (k < 0 || k > n) return;
  if (k == 0) {
    fn(VertexSet{0});
    return;
  }
  for (VertexSet x = full_set(k); x != 0; x = next_combination(x, n)) fn(x);
}

/// Growable bitset for relations on more than 64 elements.
class DynBitset {
 public:
  DynBitset() = default;
  explicit DynBitset(std::size_t n) : size_(n), words_((n + 63) / 64, 0) {}

  std::size_t size() const { return size_; }
  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  DynBitset& operator|=(const DynBitset& o) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= o.words_[w];
    return *this;
  }
  std::size_t count() const {
    std::size_t c = 0;
    for (std::uint64_t w : words_) c += std::popcount(w);
    return c;
  }
  bool operator==(const DynBitset&) const = default;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace zpfan
