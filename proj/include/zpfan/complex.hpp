#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "zpfan/bits.hpp"
#include "zpfan/group.hpp"
#include "zpfan/hypergraph.hpp"

namespace zpfan {

/// Sorted list of distinct vertex indices.
using Simplex = std::vector<int>;

inline Simplex make_simplex(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

/// Where a complex came from, when that is known. Some index lower bounds
/// are theorems about particular families and are only applied when the
/// complex was built by the matching constructor.
struct ComplexOrigin {
  enum class Kind { None, JoinPower, Sigma, KneserBox, KneserHomOrder };
  Kind kind = Kind::None;
  int n = 0;      // JoinPower: number of factors; Sigma: vector length
  int alpha = 0;  // Sigma
  int r = 0;      // KneserBox, KneserHomOrder: Kneser uniformity
  std::shared_ptr<const Hypergraph> ground;  // KneserBox, KneserHomOrder: the hypergraph F
};

/// A finite simplicial complex with a group acting on its vertices.
/// Simplices are given either by an explicit list of maximal simplices or by
/// a membership oracle (closed under subsets) plus a generator for the
/// maximal simplices, which is only run on demand.
class SimplicialGComplex {
 public:
  using Oracle = std::function<bool(const Simplex&)>;
  using Generator = std::function<std::vector<Simplex>()>;

  static SimplicialGComplex from_maximal(FiniteGroup group, std::vector<std::string> labels,
                                         std::vector<std::vector<int>> action, std::vector<Simplex> maximal) {
    SimplicialGComplex k(std::move(group), std::move(labels), std::move(action));
    const int n = k.vertex_count();
    std::vector<bool> covered(n, false);
    std::vector<Simplex> cleaned;
    for (Simplex& s : maximal) {
      s = make_simplex(std::move(s));
      if (s.empty()) continue;
      for (int v : s) {
        if (v < 0 || v >= n) throw std::invalid_argument("simplex vertex out of range");
        covered[v] = true;
      }
      cleaned.push_back(std::move(s));
    }
    for (int v = 0; v < n; ++v)
      if (!covered[v]) cleaned.push_back({v});
    // keep only inclusion-maximal members
    std::sort(cleaned.begin(), cleaned.end(), [](const Simplex& a, const Simplex& b) {
      return a.size() != b.size() ? a.size() > b.size() : a < b;
    });
    cleaned.erase(std::unique(cleaned.begin(), cleaned.end()), cleaned.end());
    std::vector<Simplex> keep;
    for (const Simplex& s : cleaned) {
      bool dominated = false;
      for (const Simplex& t : keep)
        if (t.size() > s.size() && std::includes(t.begin(), t.end(), s.begin(), s.end())) {
          dominated = true;
          break;
        }
      if (!dominated) keep.push_back(s);
    }
    std::sort(keep.begin(), keep.end());
    k.cache_->maximal = keep;
    std::call_once(k.cache_->maximal_once, [] {});
    k.containing_.assign(n, {});
    for (int i = 0; i < static_cast<int>(keep.size()); ++i)
      for (int v : keep[i]) k.containing_[v].push_back(i);
    return k;
  }

  static SimplicialGComplex from_oracle(FiniteGroup group, std::vector<std::string> labels,
                                        std::vector<std::vector<int>> action, Oracle is_simplex,
                                        Generator maximal) {
    SimplicialGComplex k(std::move(group), std::move(labels), std::move(action));
    k.oracle_ = std::move(is_simplex);
    k.generator_ = std::move(maximal);
    return k;
  }

  int vertex_count() const { return static_cast<int>(labels_.size()); }
  bool empty() const { return labels_.empty(); }
  const FiniteGroup& group() const { return group_; }
  const std::string& label(int v) const { return labels_[v]; }
  const std::vector<std::string>& labels() const { return labels_; }
  int act(int g, int v) const { return action_[g][v]; }
  const std::vector<std::vector<int>>& action() const { return action_; }

  Simplex act(int g, const Simplex& s) const {
    Simplex out;
    out.reserve(s.size());
    for (int v : s) out.push_back(action_[g][v]);
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Membership test; `s` must be sorted. The empty set counts as a simplex.
  bool is_simplex(const Simplex& s) const {
    if (s.empty()) return true;
    if (oracle_) return oracle_(s);
    for (int i : containing_[s.front()]) {
      const Simplex& m = cache_->maximal[i];
      if (std::includes(m.begin(), m.end(), s.begin(), s.end())) return true;
    }
    return false;
  }

  bool has_explicit_simplices() const { return !oracle_; }

  const std::vector<Simplex>& maximal_simplices() const {
    std::call_once(cache_->maximal_once, [this] {
      std::vector<Simplex> m = generator_();
      for (Simplex& s : m) s = make_simplex(std::move(s));
      std::sort(m.begin(), m.end());
      m.erase(std::unique(m.begin(), m.end()), m.end());
      cache_->maximal = std::move(m);
    });
    return cache_->maximal;
  }

  /// -1 for the empty complex.
  int dimension() const {
    if (empty()) return -1;
    std::size_t d = 0;
    for (const Simplex& s : maximal_simplices()) d = std::max(d, s.size());
    return static_cast<int>(d) - 1;
  }

  /// 1-skeleton as adjacency bitsets.
  const std::vector<DynBitset>& adjacency() const {
    std::call_once(cache_->adjacency_once, [this] {
      const int n = vertex_count();
      std::vector<DynBitset> adj(n, DynBitset(n));
      if (oracle_) {
        for (int a = 0; a < n; ++a)
          for (int b = a + 1; b < n; ++b)
            if (oracle_({a, b})) {
              adj[a].set(b);
              adj[b].set(a);
            }
      } else {
        for (const Simplex& s : cache_->maximal)
          for (std::size_t i = 0; i < s.size(); ++i)
            for (std::size_t j = i + 1; j < s.size(); ++j) {
              adj[s[i]].set(s[j]);
              adj[s[j]].set(s[i]);
            }
      }
      cache_->adjacency = std::move(adj);
    });
    return cache_->adjacency;
  }

  /// Every nonempty simplex, each listed once, sorted by size then
  /// lexicographically. Throws if there are more than `cap`.
  std::vector<Simplex> all_simplices(std::size_t cap = 2'000'000) const {
    std::set<Simplex> faces;
    for (const Simplex& m : maximal_simplices()) {
      if (m.size() > 24) throw std::length_error("simplex too large to expand faces");
      const VertexSet full = full_set(static_cast<int>(m.size()));
      for (VertexSet sub = full; sub != 0; sub = (sub - 1) & full) {
        Simplex s;
        for_each_member(sub, [&](int i) { s.push_back(m[i]); });
        faces.insert(std::move(s));
        if (faces.size() > cap) throw std::length_error("complex has too many simplices");
      }
    }
    std::vector<Simplex> out(faces.begin(), faces.end());
    std::stable_sort(out.begin(), out.end(), [](const Simplex& a, const Simplex& b) { return a.size() < b.size(); });
    return out;
  }

  /// Checks that every group element maps maximal simplices to simplices.
  bool action_is_simplicial() const {
    for (int g = 0; g < group_.order(); ++g)
      for (const Simplex& m : maximal_simplices())
        if (!is_simplex(act(g, m))) return false;
    return true;
  }

  /// Free iff no nonidentity element fixes a simplex setwise. A fixed simplex
  /// contains the <g>-orbit of each of its vertices, so it suffices to test
  /// whether those orbits are simplices.
  bool is_free() const {
    for (int g = 1; g < group_.order(); ++g)
      for (int v = 0; v < vertex_count(); ++v) {
        Simplex orbit;
        int w = v;
        do {
          orbit.push_back(w);
          w = action_[g][w];
        } while (w != v);
        if (orbit.size() == 1 || is_simplex(make_simplex(orbit))) return false;
      }
    return true;
  }

  ComplexOrigin origin;

 private:
  struct Cache {
    std::once_flag maximal_once;
    std::once_flag adjacency_once;
    std::vector<Simplex> maximal;
    std::vector<DynBitset> adjacency;
  };

  SimplicialGComplex(FiniteGroup group, std::vector<std::string> labels, std::vector<std::vector<int>> action)
      : group_(std::move(group)), labels_(std::move(labels)), action_(std::move(action)),
        cache_(std::make_shared<Cache>()) {
    const int n = vertex_count();
    if (static_cast<int>(action_.size()) != group_.order()) throw std::invalid_argument("action table needs one row per group element");
    for (const auto& row : action_) {
      if (static_cast<int>(row.size()) != n) throw std::invalid_argument("action row has wrong length");
      std::vector<bool> hit(n, false);
      for (int v : row) {
        if (v < 0 || v >= n || hit[v]) throw std::invalid_argument("group element does not permute the vertices");
        hit[v] = true;
      }
    }
    for (int v = 0; v < n; ++v)
      if (action_[0][v] != v) throw std::invalid_argument("identity must act trivially");
    for (int a = 0; a < group_.order(); ++a)
      for (int b = 0; b < group_.order(); ++b)
        for (int v = 0; v < n; ++v)
          if (action_[a][action_[b][v]] != action_[group_.mul(a, b)][v])
            throw std::invalid_argument("action table is not a group action");
  }

  FiniteGroup group_;
  std::vector<std::string> labels_;
  std::vector<std::vector<int>> action_;
  Oracle oracle_;
  Generator generator_;
  std::vector<std::vector<int>> containing_;
  std::shared_ptr<Cache> cache_;
};

/// Orbits of a group action on indices 0..n-1.
struct OrbitDecomposition {
  std::vector<std::vector<int>> orbits;  // each sorted; representative = front()
  std::vector<int> orbit_of;
  bool free = true;

  int representative(int x) const { return orbits[orbit_of[x]].front(); }
};

inline OrbitDecomposition orbits_of_action(const std::vector<std::vector<int>>& action) {
  OrbitDecomposition out;
  const int n = action.empty() ? 0 : static_cast<int>(action[0].size());
  out.orbit_of.assign(n, -1);
  for (int x = 0; x < n; ++x) {
    if (out.orbit_of[x] != -1) continue;
    std::vector<int> orbit;
    for (const auto& row : action) orbit.push_back(row[x]);
    orbit = make_simplex(orbit);
    for (int y : orbit) out.orbit_of[y] = static_cast<int>(out.orbits.size());
    if (orbit.size() != action.size()) out.free = false;
    out.orbits.push_back(std::move(orbit));
  }
  return out;
}

/// Vertex orbits; the freeness flag refers to the complex (no simplex fixed
/// setwise), which is stronger than freeness on vertices.
inline OrbitDecomposition orbit_decomposition(const SimplicialGComplex& k) {
  OrbitDecomposition out = orbits_of_action(k.action());
  out.free = k.is_free();
  return out;
}

// ---------------------------------------------------------------------------
// Standard spaces

/// sigma^{r-1}_{t-1}: vertex set Z_r, maximal simplices all t-subsets,
/// rotation action.
inline SimplicialGComplex sigma_skeleton(int r, int t) {
  if (t > r) throw std::invalid_argument("sigma_skeleton: t must not exceed r");
  if (t < 1) throw std::invalid_argument("sigma_skeleton: t must be >= 1");
  const FiniteGroup g = FiniteGroup::cyclic(r);
  std::vector<std::string> labels;
  for (int e = 0; e < r; ++e) labels.push_back(g.name(e));
  std::vector<std::vector<int>> action(r, std::vector<int>(r));
  for (int a = 0; a < r; ++a)
    for (int e = 0; e < r; ++e) action[a][e] = (a + e) % r;
  std::vector<Simplex> maximal;
  for_each_combination(r, t, [&](VertexSet s) { maximal.push_back(members(s)); });
  return SimplicialGComplex::from_maximal(g, std::move(labels), std::move(action), std::move(maximal));
}

/// Vertex index of (g, level) in G^{*n}; levels are 0-based.
inline int join_vertex(int group_order, int g, int level) { return level * group_order + g; }

/// G^{*n}: vertices G x [n]; a set is a simplex iff it uses each level at
/// most once. Left multiplication on the first coordinate.
inline SimplicialGComplex join_power(const FiniteGroup& g, int n) {
  if (n < 0) throw std::invalid_argument("join_power: n must be >= 0");
  const int q = g.order();
  std::vector<std::string> labels;
  for (int j = 0; j < n; ++j)
    for (int a = 0; a < q; ++a) labels.push_back("(" + g.name(a) + "," + std::to_string(j + 1) + ")");
  std::vector<std::vector<int>> action(q, std::vector<int>(q * n));
  for (int h = 0; h < q; ++h)
    for (int j = 0; j < n; ++j)
      for (int a = 0; a < q; ++a) action[h][join_vertex(q, a, j)] = join_vertex(q, g.mul(h, a), j);
  auto oracle = [q](const Simplex& s) {
    for (std::size_t i = 1; i < s.size(); ++i)
      if (s[i] / q == s[i - 1] / q) return false;
    return true;
  };
  auto generator = [q, n]() {
    std::vector<Simplex> out;
    Simplex cur(n);
    auto rec = [&](auto&& self, int j) -> void {
      if (j == n) {
        out.push_back(cur);
        return;
      }
      for (int a = 0; a < q; ++a) {
        cur[j] = join_vertex(q, a, j);
        self(self, j + 1);
      }
    };
    if (n > 0) rec(rec, 0);
    return out;
  };
  SimplicialGComplex k = SimplicialGComplex::from_oracle(g, std::move(labels), std::move(action), oracle, generator);
  k.origin.kind = ComplexOrigin::Kind::JoinPower;
  k.origin.n = n;
  return k;
}

inline SimplicialGComplex zp_join_power(int p, int n) { return join_power(FiniteGroup::cyclic(p), n); }

/// E_n G realised as the (n+1)-fold join G^{*(n+1)}.
inline SimplicialGComplex e_n_space(const FiniteGroup& g, int n) { return join_power(g, n + 1); }

/// K * L with the diagonal action; vertices of K come first.
inline SimplicialGComplex join(const SimplicialGComplex& k, const SimplicialGComplex& l) {
  if (!(k.group() == l.group())) throw std::invalid_argument("join: complexes carry different groups");
  const int nk = k.vertex_count();
  const int nl = l.vertex_count();
  std::vector<std::string> labels = k.labels();
  labels.insert(labels.end(), l.labels().begin(), l.labels().end());
  std::vector<std::vector<int>> action(k.group().order(), std::vector<int>(nk + nl));
  for (int g = 0; g < k.group().order(); ++g) {
    for (int v = 0; v < nk; ++v) action[g][v] = k.act(g, v);
    for (int v = 0; v < nl; ++v) action[g][nk + v] = nk + l.act(g, v);
  }
  auto oracle = [k, l, nk](const Simplex& s) {
    Simplex a, b;
    for (int v : s) (v < nk ? a.push_back(v) : b.push_back(v - nk));
    return k.is_simplex(a) && l.is_simplex(b);
  };
  auto generator = [k, l, nk]() {
    std::vector<Simplex> out;
    const auto& mk = k.maximal_simplices();
    const auto& ml = l.maximal_simplices();
    if (mk.empty()) {
      for (Simplex s : ml) {
        for (int& v : s) v += nk;
        out.push_back(s);
      }
      return out;
    }
    if (ml.empty()) return mk;
    for (const Simplex& a : mk)
      for (const Simplex& b : ml) {
        Simplex s = a;
        for (int v : b) s.push_back(v + nk);
        out.push_back(s);
      }
    return out;
  };
  return SimplicialGComplex::from_oracle(k.group(), std::move(labels), std::move(action), oracle, generator);
}

/// sd K together with the simplex of K that each new vertex stands for.
struct Subdivision {
  SimplicialGComplex complex;
  std::vector<Simplex> faces;  // faces[v] = simplex of K represented by vertex v
};

/// First barycentric subdivision: vertices are the nonempty simplices of K,
/// simplices are chains under inclusion.
inline Subdivision barycentric_subdivision(const SimplicialGComplex& k, std::size_t cap = 2'000'000) {
  std::vector<Simplex> faces = k.all_simplices(cap);
  std::map<Simplex, int> index;
  for (int i = 0; i < static_cast<int>(faces.size()); ++i) index[faces[i]] = i;
  std::vector<std::string> labels;
  for (const Simplex& f : faces) {
    std::string s = "{";
    for (std::size_t i = 0; i < f.size(); ++i) s += (i ? "," : "") + k.label(f[i]);
    labels.push_back(s + "}");
  }
  const int q = k.group().order();
  std::vector<std::vector<int>> action(q, std::vector<int>(faces.size()));
  for (int g = 0; g < q; ++g)
    for (int i = 0; i < static_cast<int>(faces.size()); ++i) action[g][i] = index.at(k.act(g, faces[i]));
  auto shared_faces = std::make_shared<std::vector<Simplex>>(faces);
  auto oracle = [shared_faces](const Simplex& s) {
    for (std::size_t i = 0; i < s.size(); ++i)
      for (std::size_t j = i + 1; j < s.size(); ++j) {
        const Simplex& a = (*shared_faces)[s[i]];
        const Simplex& b = (*shared_faces)[s[j]];
        const bool ab = std::includes(b.begin(), b.end(), a.begin(), a.end());
        const bool ba = std::includes(a.begin(), a.end(), b.begin(), b.end());
        if (!ab && !ba) return false;
      }
    return true;
  };
  auto shared_index = std::make_shared<std::map<Simplex, int>>(std::move(index));
  auto generator = [k, shared_index]() {
    std::vector<Simplex> out;
    for (const Simplex& m : k.maximal_simplices()) {
      Simplex perm = m;
      do {
        Simplex chain;
        Simplex prefix;
        for (int v : perm) {
          prefix.push_back(v);
          chain.push_back(shared_index->at(make_simplex(prefix)));
        }
        out.push_back(make_simplex(chain));
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return out;
  };
  return {SimplicialGComplex::from_oracle(k.group(), std::move(labels), std::move(action), oracle, generator),
          std::move(faces)};
}

/// sd^d K; d = 0 returns K itself with singleton faces.
inline Subdivision iterated_subdivision(const SimplicialGComplex& k, int depth, std::size_t cap = 2'000'000) {
  std::vector<Simplex> faces;
  for (int v = 0; v < k.vertex_count(); ++v) faces.push_back({v});
  Subdivision cur{k, faces};
  for (int d = 0; d < depth; ++d) cur = barycentric_subdivision(cur.complex, cap);
  return cur;
}

}  // namespace zpfan
