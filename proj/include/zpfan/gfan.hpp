#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "zpfan/complex.hpp"
#include "zpfan/equivariant_search.hpp"
#include "zpfan/index_bounds.hpp"
#include "zpfan/poset.hpp"
#include "zpfan/tucker.hpp"

namespace zpfan {

/// (g, j): a group element and a level in 1..m.
struct GroupLabel {
  int g = 0;
  int level = 1;
  bool operator==(const GroupLabel&) const = default;
};

/// Empty when lambda is a G-equivariant labeling of T into G x [m] with no
/// edge labeled (g, j), (g', j) for g != g'; otherwise the reason.
inline std::optional<std::string> gfan_precondition(const SimplicialGComplex& t, const std::vector<GroupLabel>& lambda,
                                                    int m) {
  const FiniteGroup& group = t.group();
  if (static_cast<int>(lambda.size()) != t.vertex_count()) return "one label per vertex expected";
  for (int v = 0; v < t.vertex_count(); ++v) {
    if (lambda[v].g < 0 || lambda[v].g >= group.order() || lambda[v].level < 1 || lambda[v].level > m)
      return "label out of range at vertex " + t.label(v);
    for (int g = 0; g < group.order(); ++g) {
      const GroupLabel& moved = lambda[t.act(g, v)];
      if (moved.level != lambda[v].level || moved.g != group.mul(g, lambda[v].g))
        return "not equivariant at vertex " + t.label(v);
    }
  }
  const auto& adj = t.adjacency();
  for (int u = 0; u < t.vertex_count(); ++u)
    for (int v = u + 1; v < t.vertex_count(); ++v)
      if (adj[u].test(v) && lambda[u].level == lambda[v].level && lambda[u].g != lambda[v].g)
        return "edge " + t.label(u) + " " + t.label(v) + " carries two elements at one level";
  return std::nullopt;
}

struct GFanResult {
  ChainStatus status = ChainStatus::Counterexample;
  std::vector<int> vertices;  // one per label, by increasing level
  std::vector<GroupLabel> labels;
  bool m_at_least_n_plus_one = true;
};

/// A simplex of T whose labels, sorted by level, contain
/// (g_0, j_0), ..., (g_n, j_n) with g_i != g_{i+1} and j_i < j_{i+1}.
/// The edge condition leaves one group element per level inside a simplex,
/// so the longest such sequence is the number of runs; maximal simplices
/// are scanned in order and the first run of each block is kept.
inline GFanResult gfan_chain(const SimplicialGComplex& t, const std::vector<GroupLabel>& lambda, int m, int n) {
  if (auto why = gfan_precondition(t, lambda, m)) throw std::invalid_argument("gfan_chain: " + *why);
  GFanResult out;
  out.m_at_least_n_plus_one = m >= n + 1;
  std::vector<Simplex> maximal = t.maximal_simplices();
  std::sort(maximal.begin(), maximal.end());
  for (const Simplex& s : maximal) {
    std::vector<int> verts(s.begin(), s.end());
    std::stable_sort(verts.begin(), verts.end(), [&](int a, int b) { return lambda[a].level < lambda[b].level; });
    std::vector<int> picked;
    for (int v : verts) {
      if (!picked.empty()) {
        const GroupLabel& last = lambda[picked.back()];
        if (last.g == lambda[v].g || last.level == lambda[v].level) continue;
      }
      picked.push_back(v);
    }
    if (static_cast<int>(picked.size()) >= n + 1) {
      picked.resize(n + 1);
      out.status = ChainStatus::Found;
      out.vertices = picked;
      for (int v : picked) out.labels.push_back(lambda[v]);
      return out;
    }
  }
  return out;
}

/// Checks a G-Fan witness from scratch.
inline bool is_gfan_witness(const SimplicialGComplex& t, const std::vector<GroupLabel>& lambda,
                            const std::vector<int>& vertices, int n) {
  if (static_cast<int>(vertices.size()) != n + 1 || !t.is_simplex(make_simplex(vertices))) return false;
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i) {
    const GroupLabel& a = lambda[vertices[i]];
    const GroupLabel& b = lambda[vertices[i + 1]];
    if (a.g == b.g || a.level >= b.level) return false;
  }
  return true;
}

struct GFanSweepResult {
  std::uint64_t admissible = 0;
  std::uint64_t found = 0;
  std::uint64_t counterexamples = 0;
  std::optional<std::vector<GroupLabel>> first_counterexample;
};

/// Every admissible labeling of T into G x [m], one value per orbit
/// representative, each checked with gfan_chain at index n.
inline GFanSweepResult gfan_sweep(const SimplicialGComplex& t, int m, int n) {
  if (!t.is_free()) throw std::invalid_argument("gfan_sweep: complex is not free");
  const OrbitDecomposition o = orbit_decomposition(t);
  const FiniteGroup& group = t.group();
  const int q = static_cast<int>(o.orbits.size());
  const int values = group.order() * m;
  const auto& adj = t.adjacency();
  std::vector<GroupLabel> lambda(t.vertex_count());
  std::vector<bool> labeled(t.vertex_count(), false);
  GFanSweepResult res;
  auto assign = [&](int r, int v) {
    const int rep = o.orbits[r].front();
    const GroupLabel base{v % group.order(), v / group.order() + 1};
    for (int g = 0; g < group.order(); ++g) {
      const int x = t.act(g, rep);
      lambda[x] = {group.mul(g, base.g), base.level};
      labeled[x] = true;
    }
    for (int g = 0; g < group.order(); ++g) {
      const int x = t.act(g, rep);
      for (int y = 0; y < t.vertex_count(); ++y)
        if (labeled[y] && adj[x].test(y) && lambda[y].level == lambda[x].level && lambda[y].g != lambda[x].g)
          return false;
    }
    return true;
  };
  auto unassign = [&](int r) {
    for (int x : o.orbits[r]) labeled[x] = false;
  };
  auto rec = [&](auto&& self, int r) -> void {
    if (r == q) {
      ++res.admissible;
      const GFanResult g = gfan_chain(t, lambda, m, n);
      if (g.status == ChainStatus::Found && is_gfan_witness(t, lambda, g.vertices, n)) {
        ++res.found;
      } else {
        ++res.counterexamples;
        if (!res.first_counterexample) res.first_counterexample = lambda;
      }
      return;
    }
    for (int v = 0; v < values; ++v) {
      if (assign(r, v)) self(self, r + 1);
      unassign(r);
    }
  };
  rec(rec, 0);
  return res;
}

// ---------------------------------------------------------------------------
// Chains in a poset mapped to Q_{s,p}

struct PosetChainResult {
  int k = 0;                   // ind lower bound of Delta P, plus one
  ChainStatus balanced_status = ChainStatus::Counterexample;
  std::vector<int> balanced;   // strictly increasing levels, balanced signs
  std::optional<int> xind;     // p = 2 only
  std::optional<ChainStatus> alternating_status;
  std::vector<int> alternating;  // consecutive signs differ
};

namespace detail {

// Chains x_1 < ... < x_k in P, elements tried in index order, that satisfy
// `accept(chain, next)` at every step and `finish(chain)` at the end.
template <class Accept, class Finish>
std::optional<std::vector<int>> find_poset_chain(const GPoset& poset, int k, Accept&& accept, Finish&& finish) {
  if (k <= 0) return std::vector<int>{};
  std::vector<int> chain;
  auto rec = [&](auto&& self) -> bool {
    if (static_cast<int>(chain.size()) == k) return finish(chain);
    for (int y = 0; y < poset.size(); ++y) {
      if (!chain.empty() && !poset.less(chain.back(), y)) continue;
      if (!accept(chain, y)) continue;
      chain.push_back(y);
      if (self(self)) return true;
      chain.pop_back();
    }
    return false;
  };
  if (rec(rec)) return chain;
  return std::nullopt;
}

}  // namespace detail

/// psi must be an order preserving Z_p-map P -> Q_{s,p} (element level*p + sign).
/// Finds a chain of length ind(Delta P)+1 (using the certified lower bound)
/// with strictly increasing levels and per-sign counts between floor(k/p)
/// and ceil(k/p); for p = 2 also a chain of length Xind(P)+1 whose
/// consecutive signs differ.
inline PosetChainResult poset_chain(const GPoset& poset, const std::vector<int>& psi, int s,
                                    const IndBoundsOptions& ind_opt = {}) {
  if (!is_order_map(poset, psi, s)) throw std::invalid_argument("poset_chain: psi is not an order preserving Z_p-map");
  const int p = poset.group().order();
  PosetChainResult out;
  out.k = poset.empty() ? 0 : ind_bounds(order_complex(poset), ind_opt).lower + 1;
  const int lo = out.k / p, hi = (out.k + p - 1) / p;
  std::vector<int> count(p, 0);
  auto level = [&](int x) { return psi[x] / p; };
  auto sign = [&](int x) { return psi[x] % p; };
  auto accept = [&](const std::vector<int>& chain, int y) {
    if (!chain.empty() && level(chain.back()) >= level(y)) return false;
    int c = 0;
    for (int x : chain) c += sign(x) == sign(y);
    return c + 1 <= hi;
  };
  auto balanced = [&](const std::vector<int>& chain) {
    std::fill(count.begin(), count.end(), 0);
    for (int x : chain) ++count[sign(x)];
    return std::all_of(count.begin(), count.end(), [&](int c) { return c >= lo && c <= hi; });
  };
  if (auto c = detail::find_poset_chain(poset, out.k, accept, balanced)) {
    out.balanced_status = ChainStatus::Found;
    out.balanced = *c;
  }
  if (p == 2) {
    const XindResult x = xind_exact(poset, s);
    if (x.status != XindResult::Status::Exact) throw std::runtime_error("poset_chain: cross-index not determined");
    out.xind = x.value;
    auto alternates = [&](const std::vector<int>& chain, int y) { return chain.empty() || sign(chain.back()) != sign(y); };
    auto any = [](const std::vector<int>&) { return true; };
    if (auto c = detail::find_poset_chain(poset, x.value + 1, alternates, any)) {
      out.alternating_status = ChainStatus::Found;
      out.alternating = *c;
    } else {
      out.alternating_status = ChainStatus::Counterexample;
    }
  }
  return out;
}

}  // namespace zpfan
