#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "zpfan/bits.hpp"
#include "zpfan/group.hpp"

namespace zpfan {

/// A set tau of labels (eps, j) in Z_p x [m]. levels[eps] holds the 0-based
/// j with (eps, j) in tau, so levels[eps] is tau^eps.
struct LabeledSimplex {
  int p = 2;
  int m = 0;
  std::vector<VertexSet> levels;

  static LabeledSimplex empty(int p, int m) {
    if (p < 2) throw std::invalid_argument("LabeledSimplex: p must be >= 2");
    if (m < 0 || m > kMaxVertices) throw std::invalid_argument("LabeledSimplex: m out of range");
    return {p, m, std::vector<VertexSet>(p, 0)};
  }

  /// From explicit (eps, j) pairs, j 0-based.
  static LabeledSimplex from_pairs(int p, int m, const std::vector<std::pair<int, int>>& pairs) {
    LabeledSimplex t = empty(p, m);
    for (auto [eps, j] : pairs) t.add(eps, j);
    return t;
  }

  void add(int eps, int j) {
    if (eps < 0 || eps >= p || j < 0 || j >= m) throw std::invalid_argument("LabeledSimplex: label out of range");
    levels[eps] |= bit(j);
  }

  bool contains(int eps, int j) const { return (levels[eps] >> j) & 1U; }
  int class_size(int eps) const { return popcount(levels[eps]); }
  int size() const {
    int s = 0;
    for (VertexSet l : levels) s += popcount(l);
    return s;
  }
  bool empty() const { return size() == 0; }

  /// Signs present at level j, as a bitmask over residues.
  VertexSet signs_at(int j) const {
    VertexSet s = 0;
    for (int e = 0; e < p; ++e)
      if (contains(e, j)) s |= bit(e);
    return s;
  }

  /// True when no level carries all p signs, i.e. tau is a simplex of
  /// (sigma^{p-1}_{p-2})^{*m}.
  bool in_proper_join() const {
    for (int j = 0; j < m; ++j)
      if (signs_at(j) == full_set(p)) return false;
    return true;
  }

  bool subset_of(const LabeledSimplex& o) const {
    for (int e = 0; e < p; ++e)
      if (!is_subset(levels[e], o.levels[e])) return false;
    return true;
  }

  /// w^k . tau: every label's sign shifted by k.
  LabeledSimplex act(int k) const {
    LabeledSimplex out = empty(p, m);
    for (int e = 0; e < p; ++e) out.levels[(e + k) % p] = levels[e];
    return out;
  }

  /// Sort key: labels as (level, exponent rank) pairs in increasing order.
  std::vector<std::pair<int, int>> key() const {
    std::vector<std::pair<int, int>> k;
    for (int e = 0; e < p; ++e) for_each_member(levels[e], [&](int j) { k.emplace_back(j, exponent_rank(e, p)); });
    std::sort(k.begin(), k.end());
    return k;
  }

  bool operator==(const LabeledSimplex& o) const { return p == o.p && m == o.m && levels == o.levels; }
};

struct Value {
  int l = 0;
  int h = 0;
};

/// h = min |tau^eps|, l = p*h + #{eps : |tau^eps| > h}.
inline Value value_l(const LabeledSimplex& t) {
  int h = t.class_size(0);
  for (int e = 1; e < t.p; ++e) h = std::min(h, t.class_size(e));
  int above = 0;
  for (int e = 0; e < t.p; ++e)
    if (t.class_size(e) > h) ++above;
  return {t.p * h + above, h};
}

/// l by its definition: largest total of a choice of sizes b_eps <= |tau^eps|
/// that pairwise differ by at most one.
inline int value_l_by_profiles(const LabeledSimplex& t) {
  int best = 0;
  int cap = 0;
  for (int e = 0; e < t.p; ++e) cap = std::max(cap, t.class_size(e));
  for (int low = 0; low <= cap; ++low) {
    int total = 0;
    bool ok = true;
    for (int e = 0; e < t.p && ok; ++e) {
      const int s = t.class_size(e);
      if (s < low) ok = false;
      else total += std::min(s, low + 1);
    }
    if (ok) best = std::max(best, total);
  }
  return best;
}

namespace detail {

// Lexicographically least member of the orbit of a subset of Z_p (as a
// bitmask over residues), comparing sorted exponent ranks.
inline std::vector<int> ranks_of(VertexSet s, int p) {
  std::vector<int> out;
  for_each_member(s, [&](int e) { out.push_back(exponent_rank(e, p)); });
  std::sort(out.begin(), out.end());
  return out;
}

inline VertexSet rotate_mask(VertexSet s, int k, int p) {
  VertexSet out = 0;
  for_each_member(s, [&](int e) { out |= bit((e + k) % p); });
  return out;
}

}  // namespace detail

/// s_0 on proper nonempty subsets A of Z_p: with rep the lex-least member of
/// the orbit of A and A = w^k . rep, returns k (as a residue).
inline int canonical_sign0(VertexSet a, int p) {
  if (a == 0 || a == full_set(p) || !is_subset(a, full_set(p)))
    throw std::invalid_argument("s0 needs a proper nonempty subset of Z_p");
  int best_k = -1;
  std::vector<int> best;
  for (int k = 0; k < p; ++k) {
    // candidate rep = w^{-k} . a, so that a = w^k . rep
    const VertexSet rep = detail::rotate_mask(a, (p - k) % p, p);
    const std::vector<int> key = detail::ranks_of(rep, p);
    if (best_k < 0 || key < best) {
      best = key;
      best_k = k;
    } else if (key == best) {
      throw std::invalid_argument("s0: rotation action on this subset is not free");
    }
  }
  return best_k;
}

/// True when every nonempty class has the same size and tau lies in the proper
/// join, i.e. tau is in W.
inline bool in_w(const LabeledSimplex& t) {
  if (t.empty() || !t.in_proper_join()) return false;
  int a = 0;
  for (int e = 0; e < t.p; ++e) {
    const int s = t.class_size(e);
    if (s == 0) continue;
    if (a == 0) a = s;
    else if (s != a) return false;
  }
  return true;
}

/// s on W, built from the lex-least orbit representative as for s_0.
inline int canonical_sign(const LabeledSimplex& t) {
  if (!in_w(t)) throw std::invalid_argument("s: simplex is not in W (class sizes must all be 0 or a common a)");
  int best_k = -1;
  std::vector<std::pair<int, int>> best;
  for (int k = 0; k < t.p; ++k) {
    const auto key = t.act((t.p - k) % t.p).key();
    if (best_k < 0 || key < best) {
      best = key;
      best_k = k;
    } else if (key == best) {
      throw std::invalid_argument("s: rotation action on this simplex is not free");
    }
  }
  return best_k;
}

}  // namespace zpfan
