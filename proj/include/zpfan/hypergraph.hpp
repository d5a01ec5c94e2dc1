#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "zpfan/bits.hpp"

namespace zpfan {

/// A finite hypergraph on vertices 0..n-1 (written 1..n in files and on the
/// command line). Edges are stored as bitmasks sorted in colex order, which
/// for bitmasks is plain numeric order.
class Hypergraph {
 public:
  Hypergraph() = default;

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<VertexSet>& edges() const { return edges_; }
  VertexSet edge(int i) const { return edges_[i]; }
  VertexSet vertices() const { return full_set(n_); }

  /// Common edge size, if every edge has the same size. Edgeless hypergraphs
  /// keep whatever uniformity they were declared with.
  std::optional<int> uniformity() const { return uniformity_; }
  int require_uniformity(const char* what) const {
    if (!uniformity_) throw std::invalid_argument(std::string(what) + ": hypergraph is not uniform");
    return *uniformity_;
  }

  bool has_edge(VertexSet e) const { return lookup_.contains(e); }

  /// Indices of edges containing v.
  const std::vector<int>& incident(int v) const { return incident_[v]; }
  int degree(int v) const { return static_cast<int>(incident_[v].size()); }

  /// Neighbourhood mask in the 2-uniform case (empty for other edge sizes).
  VertexSet adjacency(int v) const { return adjacency_[v]; }

  /// True if some edge is contained in s.
  bool contains_edge_within(VertexSet s) const {
    for (VertexSet e : edges_)
      if (is_subset(e, s)) return true;
    return false;
  }

  /// True if adding v to the edge-free set s keeps it edge-free.
  bool stays_independent(VertexSet s, int v) const {
    const VertexSet with = s | bit(v);
    for (int e : incident_[v])
      if (is_subset(edges_[e], with)) return false;
    return true;
  }

  bool operator==(const Hypergraph& o) const { return n_ == o.n_ && edges_ == o.edges_; }

  friend Hypergraph build_hypergraph_masks(int n, std::vector<VertexSet> edges, std::optional<int> declared_r);

 private:
  int n_ = 0;
  std::vector<VertexSet> edges_;
  std::optional<int> uniformity_;
  std::unordered_set<VertexSet> lookup_;
  std::vector<std::vector<int>> incident_;
  std::vector<VertexSet> adjacency_;
};

/// Builds a hypergraph from edge bitmasks. Duplicates are dropped; a declared
/// uniformity is kept for edgeless results and checked otherwise.
inline Hypergraph build_hypergraph_masks(int n, std::vector<VertexSet> edges,
                                         std::optional<int> declared_r = std::nullopt) {
  if (n < 1) throw std::invalid_argument("hypergraph needs at least one vertex");
  if (n > kMaxVertices) throw std::invalid_argument("at most 64 vertices are supported");
  for (VertexSet e : edges) {
    if (e == 0) throw std::invalid_argument("empty edge");
    if (!is_subset(e, full_set(n))) throw std::invalid_argument("edge vertex out of range");
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  Hypergraph h;
  h.n_ = n;
  h.edges_ = std::move(edges);
  if (h.edges_.empty()) {
    h.uniformity_ = declared_r;
  } else {
    const int r = popcount(h.edges_.front());
    bool uniform = std::all_of(h.edges_.begin(), h.edges_.end(),
                               [r](VertexSet e) { return popcount(e) == r; });
    if (uniform) h.uniformity_ = r;
    if (declared_r && (!uniform || r != *declared_r))
      throw std::invalid_argument("edges do not match declared uniformity");
  }
  h.lookup_.insert(h.edges_.begin(), h.edges_.end());
  h.incident_.assign(n, {});
  h.adjacency_.assign(n, 0);
  for (int i = 0; i < h.edge_count(); ++i) {
    const VertexSet e = h.edges_[i];
    for_each_member(e, [&](int v) { h.incident_[v].push_back(i); });
    if (popcount(e) == 2) {
      const int a = lowest(e), b = highest(e);
      h.adjacency_[a] |= bit(b);
      h.adjacency_[b] |= bit(a);
    }
  }
  return h;
}

/// Builds a hypergraph from vertex lists (0-based).
inline Hypergraph build_hypergraph(int n, const std::vector<std::vector<int>>& edges,
                                   std::optional<int> declared_r = std::nullopt) {
  std::vector<VertexSet> masks;
  masks.reserve(edges.size());
  for (const auto& e : edges) {
    VertexSet m = 0;
    for (int v : e) {
      if (v < 0 || v >= n) throw std::invalid_argument("edge vertex out of range");
      m |= bit(v);
    }
    masks.push_back(m);
  }
  return build_hypergraph_masks(n, std::move(masks), declared_r);
}

/// Complete k-uniform hypergraph K_n^k.
inline Hypergraph complete_hypergraph(int n, int k) {
  std::vector<VertexSet> edges;
  for_each_combination(n, k, [&](VertexSet s) { edges.push_back(s); });
  return build_hypergraph_masks(n, std::move(edges), k);
}

inline Hypergraph cycle_graph(int n) {
  std::vector<VertexSet> edges;
  for (int i = 0; i < n; ++i) edges.push_back(bit(i) | bit((i + 1) % n));
  return build_hypergraph_masks(n, std::move(edges), 2);
}

inline Hypergraph edgeless_hypergraph(int n, std::optional<int> r = std::nullopt) {
  return build_hypergraph_masks(n, {}, r);
}

/// A proper-or-not assignment of colours 1..palette to every vertex.
struct Coloring {
  std::vector<int> colors;
  int palette = 0;

  static Coloring from(std::vector<int> colors) {
    Coloring c;
    c.palette = colors.empty() ? 0 : *std::max_element(colors.begin(), colors.end());
    for (int col : colors)
      if (col < 1) throw std::invalid_argument("colours are numbered from 1");
    c.colors = std::move(colors);
    return c;
  }

  int operator[](int v) const { return colors[v]; }
  int size() const { return static_cast<int>(colors.size()); }
};

/// Ordered list of pairwise disjoint vertex sets; the order matters because
/// the cyclic group acts by rotating it.
struct PartiteFamily {
  std::vector<VertexSet> parts;

  VertexSet support() const {
    VertexSet s = 0;
    for (VertexSet u : parts) s |= u;
    return s;
  }
  int nonempty_count() const {
    return static_cast<int>(std::count_if(parts.begin(), parts.end(), [](VertexSet u) { return u != 0; }));
  }
  int total_size() const {
    int t = 0;
    for (VertexSet u : parts) t += popcount(u);
    return t;
  }
  bool disjoint() const {
    VertexSet seen = 0;
    for (VertexSet u : parts) {
      if (u & seen) return false;
      seen |= u;
    }
    return true;
  }
};

/// A subhypergraph together with the map from its vertices back to the parent.
struct Relabeled {
  Hypergraph graph;
  std::vector<int> original;
};

inline Relabeled induced(const Hypergraph& h, VertexSet u) {
  if (!is_subset(u, h.vertices())) throw std::invalid_argument("induced: vertex set out of range");
  if (u == 0) throw std::invalid_argument("induced: empty vertex set");
  std::vector<int> original = members(u);
  std::vector<int> index(h.vertex_count(), -1);
  for (int i = 0; i < static_cast<int>(original.size()); ++i) index[original[i]] = i;
  std::vector<VertexSet> edges;
  for (VertexSet e : h.edges()) {
    if (!is_subset(e, u)) continue;
    VertexSet m = 0;
    for_each_member(e, [&](int v) { m |= bit(index[v]); });
    edges.push_back(m);
  }
  return {build_hypergraph_masks(static_cast<int>(original.size()), std::move(edges), h.uniformity()),
          std::move(original)};
}

struct PartiteSubhypergraph {
  Hypergraph graph;
  std::vector<int> original;
  PartiteFamily parts;  // in the relabeled vertex numbering
};

/// H[U_1,...,U_q]: edges inside the union meeting every part at most once.
inline PartiteSubhypergraph partite_subhypergraph(const Hypergraph& h, const PartiteFamily& family) {
  if (!family.disjoint()) throw std::invalid_argument("partite_subhypergraph: parts overlap");
  const VertexSet support = family.support();
  if (!is_subset(support, h.vertices())) throw std::invalid_argument("partite_subhypergraph: vertex out of range");
  if (support == 0) throw std::invalid_argument("partite_subhypergraph: all parts empty");
  std::vector<int> original = members(support);
  std::vector<int> index(h.vertex_count(), -1);
  for (int i = 0; i < static_cast<int>(original.size()); ++i) index[original[i]] = i;
  auto relabel = [&](VertexSet s) {
    VertexSet m = 0;
    for_each_member(s, [&](int v) { m |= bit(index[v]); });
    return m;
  };
  std::vector<VertexSet> edges;
  for (VertexSet e : h.edges()) {
    if (!is_subset(e, support)) continue;
    bool ok = std::all_of(family.parts.begin(), family.parts.end(),
                          [e](VertexSet u) { return popcount(e & u) <= 1; });
    if (ok) edges.push_back(relabel(e));
  }
  PartiteSubhypergraph out{build_hypergraph_masks(static_cast<int>(original.size()), std::move(edges), h.uniformity()),
                           std::move(original), {}};
  for (VertexSet u : family.parts) out.parts.parts.push_back(relabel(u));
  return out;
}

namespace detail {

// Visits every choice of one vertex from each of `need` distinct parts drawn
// from parts[from..], skipping index `skip`. Stops early when fn returns false.
template <class Fn>
bool for_each_transversal(const std::vector<VertexSet>& parts, int from, int skip, int need, VertexSet acc, Fn& fn) {
  if (need == 0) return fn(acc);
  const int q = static_cast<int>(parts.size());
  for (int i = from; i < q; ++i) {
    if (i == skip || parts[i] == 0) continue;
    VertexSet part = parts[i];
    while (part != 0) {
      const int v = lowest(part);
      part &= part - 1;
      if (!for_each_transversal(parts, i + 1, skip, need - 1, acc | bit(v), fn)) return false;
    }
  }
  return true;
}

}  // namespace detail

/// Checks that every r-set meeting r distinct parts in one vertex each and
/// containing v is an edge, where v is about to join part `target`. This is
/// the only new requirement created by growing a complete partite family.
inline bool extends_complete_partite(const Hypergraph& h, const std::vector<VertexSet>& parts, int target, int v,
                                     int r) {
  if (r == 2) {
    VertexSet others = 0;
    for (int i = 0; i < static_cast<int>(parts.size()); ++i)
      if (i != target) others |= parts[i];
    return is_subset(others, h.adjacency(v));
  }
  int nonempty_others = 0;
  for (int i = 0; i < static_cast<int>(parts.size()); ++i)
    if (i != target && parts[i] != 0) ++nonempty_others;
  if (nonempty_others < r - 1) return true;
  auto check = [&](VertexSet t) { return h.has_edge(t); };
  return detail::for_each_transversal(parts, 0, target, r - 1, bit(v), check);
}

/// True iff H[U_1..U_q] is complete r-uniform q-partite. Families with fewer
/// than r nonempty parts are complete by convention.
inline bool is_complete_partite(const Hypergraph& h, const PartiteFamily& family, int r) {
  if (!family.disjoint()) throw std::invalid_argument("is_complete_partite: parts overlap");
  if (family.nonempty_count() < r) return true;
  auto check = [&](VertexSet t) { return h.has_edge(t); };
  return detail::for_each_transversal(family.parts, 0, -1, r, 0, check);
}

/// Largest m such that some m-set has all its r-subsets as edges; r-1 when
/// no edge exists.
inline int clique_number(const Hypergraph& h, int r) {
  const int n = h.vertex_count();
  int best = 0;
  std::vector<int> chosen;
  auto admissible = [&](int v) {
    if (static_cast<int>(chosen.size()) < r - 1) return true;
    if (r == 2) {
      for (int u : chosen)
        if (!(h.adjacency(u) & bit(v))) return false;
      return true;
    }
    VertexSet s = 0;
    for (int u : chosen) s |= bit(u);
    bool ok = true;
    for_each_combination(static_cast<int>(chosen.size()), r - 1, [&](VertexSet pick) {
      if (!ok) return;
      VertexSet t = bit(v);
      for_each_member(pick, [&](int i) { t |= bit(chosen[i]); });
      if (!h.has_edge(t)) ok = false;
    });
    return ok;
  };
  auto grow = [&](auto&& self, VertexSet candidates) -> void {
    best = std::max(best, static_cast<int>(chosen.size()));
    if (static_cast<int>(chosen.size()) + popcount(candidates) <= best) return;
    while (candidates != 0) {
      if (static_cast<int>(chosen.size()) + popcount(candidates) <= best) return;
      const int v = lowest(candidates);
      candidates &= candidates - 1;
      if (!admissible(v)) continue;
      chosen.push_back(v);
      VertexSet next = candidates;
      if (r == 2 && static_cast<int>(chosen.size()) >= 1) next &= h.adjacency(v);
      self(self, next);
      chosen.pop_back();
    }
  };
  grow(grow, full_set(n));
  return std::max(best, r - 1);
}

inline int clique_number(const Hypergraph& h) { return clique_number(h, h.require_uniformity("clique_number")); }

/// Largest vertex set containing no edge.
inline int independence_number(const Hypergraph& h) {
  const int n = h.vertex_count();
  int best = 0;
  auto grow = [&](auto&& self, VertexSet chosen, int next) -> void {
    best = std::max(best, popcount(chosen));
    if (popcount(chosen) + (n - next) <= best) return;
    for (int v = next; v < n; ++v) {
      if (popcount(chosen) + (n - v) <= best) return;
      if (h.stays_independent(chosen, v)) self(self, chosen | bit(v), v + 1);
    }
  };
  grow(grow, 0, 0);
  return best;
}

inline bool is_proper(const Hypergraph& h, const Coloring& c) {
  if (c.size() != h.vertex_count()) throw std::invalid_argument("colouring does not cover every vertex");
  for (VertexSet e : h.edges()) {
    const int first = c[lowest(e)];
    bool mono = true;
    for_each_member(e, [&](int v) { mono = mono && c[v] == first; });
    if (mono) return false;
  }
  return true;
}

/// KG^r(F): vertices are the edges of F in colex order, hyperedges are r-sets
/// of pairwise disjoint F-edges.
struct KneserHypergraph {
  Hypergraph graph;
  Hypergraph ground;
  int r = 2;

  VertexSet ground_edge(int vertex) const { return ground.edge(vertex); }
};

inline KneserHypergraph kneser(const Hypergraph& f, int r) {
  if (r < 2) throw std::invalid_argument("kneser: r must be at least 2");
  const int m = f.edge_count();
  if (m == 0) throw std::invalid_argument("kneser: ground hypergraph has no edges");
  if (m > kMaxVertices) throw std::invalid_argument("kneser: more than 64 ground edges");
  std::vector<VertexSet> edges;
  auto pick = [&](auto&& self, int from, int left, VertexSet used, VertexSet chosen) -> void {
    if (left == 0) {
      edges.push_back(chosen);
      return;
    }
    for (int i = from; i <= m - left; ++i) {
      if (f.edge(i) & used) continue;
      self(self, i + 1, left - 1, used | f.edge(i), chosen | bit(i));
    }
  };
  pick(pick, 0, r, 0, 0);
  return {build_hypergraph_masks(m, std::move(edges), r), f, r};
}

inline KneserHypergraph usual_kneser(int n, int k, int r) { return kneser(complete_hypergraph(n, k), r); }

}  // namespace zpfan
