#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "zpfan/budget.hpp"
#include "zpfan/hypergraph.hpp"

namespace zpfan {

enum class Decision { Yes, No, Unknown };

namespace detail {

// Colours forbidden for v because some edge through v has all its other
// vertices coloured with one colour. Colours are 1-based bit positions.
inline std::uint64_t forbidden_colors(const Hypergraph& h, const std::vector<int>& colors, int v) {
  std::uint64_t forbidden = 0;
  if (h.uniformity() == 2) {
    for_each_member(h.adjacency(v), [&](int u) {
      if (colors[u] != 0) forbidden |= std::uint64_t{1} << colors[u];
    });
    return forbidden;
  }
  for (int ei : h.incident(v)) {
    VertexSet rest = h.edge(ei) & ~bit(v);
    int shared = -1;
    bool mono = true;
    while (rest != 0 && mono) {
      const int u = lowest(rest);
      rest &= rest - 1;
      if (colors[u] == 0 || (shared != -1 && colors[u] != shared)) mono = false;
      shared = colors[u];
    }
    if (mono && shared > 0) forbidden |= std::uint64_t{1} << shared;
  }
  return forbidden;
}

inline std::uint64_t color_range(int k) { return k >= 63 ? ~std::uint64_t{1} : ((std::uint64_t{1} << (k + 1)) - 2); }

// DSATUR-style choice: fewest available colours, then highest degree.
inline int pick_vertex(const Hypergraph& h, const std::vector<int>& colors, int k, std::uint64_t& available) {
  int best = -1;
  int best_count = 1 << 30;
  for (int v = 0; v < h.vertex_count(); ++v) {
    if (colors[v] != 0) continue;
    const std::uint64_t avail = color_range(k) & ~forbidden_colors(h, colors, v);
    const int count = std::popcount(avail);
    if (count < best_count || (count == best_count && h.degree(v) > h.degree(best))) {
      best = v;
      best_count = count;
      available = avail;
      if (count == 0) break;
    }
  }
  return best;
}

}  // namespace detail

struct ColorabilityResult {
  Decision decision = Decision::Unknown;
  Coloring witness;
};

/// Decides whether H has a proper colouring with at most k colours. New
/// colours are only opened in increasing order, so colour permutations are
/// never revisited.
inline ColorabilityResult k_colorable(const Hypergraph& h, int k, NodeCounter& counter) {
  if (k > 62) k = 62;
  for (VertexSet e : h.edges())
    if (popcount(e) == 1) return {Decision::No, {}};
  if (k < 1) return {Decision::No, {}};
  const int n = h.vertex_count();
  std::vector<int> colors(n, 0);
  auto rec = [&](auto&& self, int colored, int used) -> Decision {
    if (colored == n) return Decision::Yes;
    if (!counter.tick()) return Decision::Unknown;
    std::uint64_t avail = 0;
    const int v = detail::pick_vertex(h, colors, k, avail);
    if (avail == 0) return Decision::No;
    avail &= detail::color_range(std::min(k, used + 1));
    while (avail != 0) {
      const int col = std::countr_zero(avail);
      avail &= avail - 1;
      colors[v] = col;
      const Decision d = self(self, colored + 1, std::max(used, col));
      if (d != Decision::No) return d;
      colors[v] = 0;
    }
    return Decision::No;
  };
  const Decision d = rec(rec, 0, 0);
  if (d == Decision::Yes) return {d, Coloring::from(colors)};
  return {d, {}};
}

inline ColorabilityResult k_colorable(const Hypergraph& h, int k, const SearchBudget& budget = {}) {
  NodeCounter counter(budget);
  return k_colorable(h, k, counter);
}

/// Greedy DSATUR colouring; always proper unless H has a singleton edge.
inline Coloring greedy_coloring(const Hypergraph& h) {
  const int n = h.vertex_count();
  std::vector<int> colors(n, 0);
  for (int step = 0; step < n; ++step) {
    std::uint64_t avail = 0;
    const int v = detail::pick_vertex(h, colors, 62, avail);
    colors[v] = avail == 0 ? 1 : std::countr_zero(avail);
  }
  return Coloring::from(colors);
}

struct ChromaticResult {
  bool infinite = false;
  int lower = 0;
  int upper = 0;
  bool exact = false;
  Coloring witness;
  std::uint64_t nodes = 0;

  int value() const { return upper; }
};

/// Exact chromatic number by decreasing-k colourability tests, starting from
/// a greedy colouring. A singleton edge makes the chromatic number infinite.
inline ChromaticResult chromatic_number(const Hypergraph& h, const SearchBudget& budget = {}) {
  ChromaticResult out;
  for (VertexSet e : h.edges())
    if (popcount(e) == 1) {
      out.infinite = true;
      out.exact = true;
      return out;
    }
  if (h.edge_count() == 0) {
    out.lower = out.upper = 1;
    out.exact = true;
    out.witness = Coloring::from(std::vector<int>(h.vertex_count(), 1));
    return out;
  }
  out.lower = 2;
  if (auto r = h.uniformity()) {
    const int omega = clique_number(h, *r);
    out.lower = std::max(out.lower, (omega + *r - 2) / (*r - 1));
  }
  out.witness = greedy_coloring(h);
  out.upper = out.witness.palette;
  NodeCounter counter(budget);
  while (out.upper > out.lower) {
    ColorabilityResult res = k_colorable(h, out.upper - 1, counter);
    if (res.decision == Decision::Yes) {
      out.witness = std::move(res.witness);
      out.upper = out.witness.palette;
    } else if (res.decision == Decision::No) {
      out.lower = out.upper;
    } else {
      break;
    }
  }
  out.exact = out.lower == out.upper;
  out.nodes = counter.nodes();
  return out;
}

/// Closed neighbourhoods N[e \ {v}] over all edges e and v in e, deduplicated.
/// For graphs these are exactly the closed neighbourhoods N[u].
inline std::vector<VertexSet> local_neighbourhoods(const Hypergraph& h) {
  std::vector<VertexSet> sets;
  for (VertexSet e : h.edges()) {
    for_each_member(e, [&](int v) {
      const VertexSet x = e & ~bit(v);
      VertexSet closed = x;
      for (VertexSet f : h.edges()) {
        const VertexSet d = f & ~x;
        if (popcount(d) == 1) closed |= d;
      }
      sets.push_back(closed);
    });
  }
  std::sort(sets.begin(), sets.end());
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  return sets;
}

/// max over local neighbourhoods of the number of colours seen there.
inline int local_palette(const Hypergraph& h, const Coloring& c) {
  int worst = 0;
  for (VertexSet s : local_neighbourhoods(h)) {
    std::uint64_t seen = 0;
    for_each_member(s, [&](int v) { seen |= std::uint64_t{1} << (c[v] % 64); });
    worst = std::max(worst, std::popcount(seen));
  }
  return worst;
}

struct LocalChromaticResult {
  int lower = 0;
  int upper = 0;
  bool exact = false;
  Coloring witness;
  std::uint64_t nodes = 0;

  int value() const { return upper; }
};

/// Exact local chromatic number: branch and bound over proper colourings with
/// colours opened in increasing order, pruning as soon as a neighbourhood
/// already sees as many colours as the incumbent.
inline LocalChromaticResult local_chromatic_number(const Hypergraph& h, const SearchBudget& budget = {}) {
  if (h.edge_count() == 0) throw std::invalid_argument("local chromatic number needs at least one edge");
  h.require_uniformity("local_chromatic_number");
  for (VertexSet e : h.edges())
    if (popcount(e) == 1) throw std::invalid_argument("local chromatic number undefined with singleton edges");

  LocalChromaticResult out;
  out.lower = 2;
  const ChromaticResult chi = chromatic_number(h, budget);
  out.witness = chi.witness;
  out.upper = local_palette(h, out.witness);

  const int n = h.vertex_count();
  const std::vector<VertexSet> sets = local_neighbourhoods(h);
  std::vector<std::vector<int>> sets_of(n);
  for (int s = 0; s < static_cast<int>(sets.size()); ++s)
    for_each_member(sets[s], [&](int v) { sets_of[v].push_back(s); });

  std::vector<int> order(n);
  for (int v = 0; v < n; ++v) order[v] = v;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return h.degree(a) > h.degree(b); });

  std::vector<int> colors(n, 0);
  std::vector<std::vector<int>> count(sets.size(), std::vector<int>(n + 2, 0));
  std::vector<int> distinct(sets.size(), 0);
  NodeCounter counter(budget);

  auto proper_at = [&](int v) {
    for (int ei : h.incident(v)) {
      bool mono = true;
      for_each_member(h.edge(ei), [&](int u) { mono = mono && colors[u] == colors[v]; });
      if (mono) return false;
    }
    return true;
  };

  auto rec = [&](auto&& self, int idx, int used) -> void {
    if (out.upper <= out.lower) return;
    if (idx == n) {
      int worst = 0;
      for (int d : distinct) worst = std::max(worst, d);
      if (worst < out.upper) {
        out.upper = worst;
        out.witness = Coloring::from(colors);
      }
      return;
    }
    if (!counter.tick()) return;
    const int v = order[idx];
    for (int col = 1; col <= used + 1 && col <= n; ++col) {
      colors[v] = col;
      bool ok = proper_at(v);
      int touched = 0;
      const auto& mine = sets_of[v];
      for (; ok && touched < static_cast<int>(mine.size()); ++touched) {
        const int s = mine[touched];
        if (count[s][col]++ == 0 && ++distinct[s] >= out.upper) ok = false;
      }
      if (ok) self(self, idx + 1, std::max(used, col));
      for (int i = 0; i < touched; ++i) {
        const int s = mine[i];
        if (--count[s][col] == 0) --distinct[s];
      }
      colors[v] = 0;
      if (counter.exhausted()) return;
    }
  };
  rec(rec, 0, 0);
  out.nodes = counter.nodes();
  out.exact = !counter.exhausted() || out.upper == out.lower;
  if (out.exact) out.lower = out.upper;
  return out;
}

}  // namespace zpfan
