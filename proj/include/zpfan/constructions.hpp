#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "zpfan/alternation.hpp"
#include "zpfan/complex.hpp"
#include "zpfan/hypergraph.hpp"
#include "zpfan/hypergraph_io.hpp"
#include "zpfan/poset.hpp"
#include "zpfan/signed_vector.hpp"

namespace zpfan {

inline void require_modulus(int p, int r, bool allow_nonprime, const char* what) {
  if (p < 2) throw std::invalid_argument(std::string(what) + ": p must be >= 2");
  if (!allow_nonprime && !is_prime(p)) throw std::invalid_argument(std::string(what) + ": p must be prime");
  if (p < r) throw std::invalid_argument(std::string(what) + ": p must be >= the uniformity r");
}

/// Vertex numbering of B_0(H, Z_p): the w^1 copy of V(H) first, then w^2, ...,
/// with the w^p (residue 0) copy last.
struct BoxLayout {
  int p = 2;
  int n = 0;

  int index(int eps, int v) const { return ((eps + p - 1) % p) * n + v; }
  int sign(int idx) const { return (idx / n + 1) % p; }
  int vertex(int idx) const { return idx % n; }

  /// Parts U_eps of a simplex (indexed by residue); empty optional if some
  /// vertex of H appears with two signs.
  std::optional<std::vector<VertexSet>> parts(const Simplex& s) const {
    std::vector<VertexSet> out(p, 0);
    VertexSet seen = 0;
    for (int x : s) {
      const int v = vertex(x);
      if (seen & bit(v)) return std::nullopt;
      seen |= bit(v);
      out[sign(x)] |= bit(v);
    }
    return out;
  }
};

namespace detail {

// Enumerates the families (U_0..U_{p-1}) of disjoint sets with H[U] complete
// r-uniform partite, by deciding each vertex in turn. `leaf` sees each family.
template <class Fn>
void for_each_complete_family(const Hypergraph& h, int p, int r, Fn&& leaf) {
  const int n = h.vertex_count();
  std::vector<VertexSet> parts(p, 0);
  auto rec = [&](auto&& self, int v) -> void {
    if (v == n) {
      leaf(parts);
      return;
    }
    self(self, v + 1);
    for (int e = 0; e < p; ++e) {
      if (!extends_complete_partite(h, parts, e, v, r)) continue;
      parts[e] |= bit(v);
      self(self, v + 1);
      parts[e] &= ~bit(v);
    }
  };
  rec(rec, 0);
}

}  // namespace detail

/// B_0(H, Z_p). Part U_eps of a simplex sits on the w^eps copy of V(H);
/// parts may be empty, at most one part per vertex of H.
inline SimplicialGComplex box_complex(const Hypergraph& h, int p, bool allow_nonprime = false) {
  const int r = h.require_uniformity("box_complex");
  require_modulus(p, r, allow_nonprime, "box_complex");
  const int n = h.vertex_count();
  const BoxLayout layout{p, n};
  const FiniteGroup g = FiniteGroup::cyclic(p);
  std::vector<std::string> labels(p * n);
  std::vector<std::vector<int>> action(p, std::vector<int>(p * n));
  for (int e = 0; e < p; ++e)
    for (int v = 0; v < n; ++v) {
      labels[layout.index(e, v)] = "(" + g.name(e) + "," + std::to_string(v + 1) + ")";
      for (int k = 0; k < p; ++k) action[k][layout.index(e, v)] = layout.index((e + k) % p, v);
    }
  auto shared = std::make_shared<Hypergraph>(h);
  auto oracle = [shared, layout, r](const Simplex& s) {
    auto parts = layout.parts(s);
    return parts && is_complete_partite(*shared, PartiteFamily{*parts}, r);
  };
  auto generator = [shared, layout, p, r]() {
    std::vector<Simplex> out;
    const int nv = shared->vertex_count();
    detail::for_each_complete_family(*shared, p, r, [&](const std::vector<VertexSet>& parts) {
      VertexSet used = 0;
      for (VertexSet u : parts) used |= u;
      if (used == 0) return;
      for (int v = 0; v < nv; ++v) {
        if (used & bit(v)) continue;
        for (int e = 0; e < p; ++e)
          if (extends_complete_partite(*shared, parts, e, v, r)) return;  // not maximal
      }
      Simplex s;
      for (int e = 0; e < p; ++e) for_each_member(parts[e], [&](int v) { s.push_back(layout.index(e, v)); });
      out.push_back(make_simplex(s));
    });
    return out;
  };
  return SimplicialGComplex::from_oracle(g, std::move(labels), std::move(action), oracle, generator);
}

/// B_0(KG^r(F), Z_p), remembering F so that the alternation lower bound on the
/// index can be applied.
inline SimplicialGComplex kneser_box_complex(const KneserHypergraph& kg, int p, bool allow_nonprime = false) {
  SimplicialGComplex k = box_complex(kg.graph, p, allow_nonprime);
  k.origin.kind = ComplexOrigin::Kind::KneserBox;
  k.origin.r = kg.r;
  k.origin.ground = std::make_shared<Hypergraph>(kg.ground);
  return k;
}

/// Hom(K^r_p, H) with its elements spelled out.
struct HomPoset {
  GPoset poset;
  std::vector<PartiteFamily> tuples;  // tuples[x].parts[j] = U_{j+1}
  int p = 2;
  int r = 2;
};

inline std::string format_tuple(const PartiteFamily& f) {
  std::string s = "(";
  for (std::size_t j = 0; j < f.parts.size(); ++j) s += (j ? "," : "") + format_set(f.parts[j]);
  return s + ")";
}

/// Elements are ordered p-tuples of nonempty disjoint sets spanning a
/// complete r-uniform p-partite subhypergraph; w^k rotates coordinates,
/// (w^k . U)_j = U_{j+k}.
inline HomPoset hom_poset(const Hypergraph& h, int p, bool allow_nonprime = false) {
  const int r = h.require_uniformity("hom_poset");
  require_modulus(p, r, allow_nonprime, "hom_poset");
  std::vector<std::vector<VertexSet>> found;
  detail::for_each_complete_family(h, p, r, [&](const std::vector<VertexSet>& parts) {
    if (std::all_of(parts.begin(), parts.end(), [](VertexSet u) { return u != 0; })) found.push_back(parts);
  });
  std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
    int sa = 0, sb = 0;
    for (VertexSet u : a) sa += popcount(u);
    for (VertexSet u : b) sb += popcount(u);
    return sa != sb ? sa < sb : a < b;
  });
  std::map<std::vector<VertexSet>, int> index;
  for (int i = 0; i < static_cast<int>(found.size()); ++i) index[found[i]] = i;
  const int m = static_cast<int>(found.size());
  std::vector<std::string> labels;
  std::vector<PartiteFamily> tuples;
  for (const auto& t : found) {
    tuples.push_back(PartiteFamily{t});
    labels.push_back(format_tuple(tuples.back()));
  }
  std::vector<std::vector<int>> action(p, std::vector<int>(m));
  for (int k = 0; k < p; ++k)
    for (int i = 0; i < m; ++i) {
      std::vector<VertexSet> rotated(p);
      for (int j = 0; j < p; ++j) rotated[j] = found[i][(j + k) % p];
      action[k][i] = index.at(rotated);
    }
  std::vector<std::pair<int, int>> covers;
  const VertexSet all = h.vertices();
  for (int i = 0; i < m; ++i) {
    VertexSet used = 0;
    for (VertexSet u : found[i]) used |= u;
    std::vector<VertexSet> bigger = found[i];
    for_each_member(all & ~used, [&](int v) {
      for (int j = 0; j < p; ++j) {
        bigger[j] |= bit(v);
        if (auto it = index.find(bigger); it != index.end()) covers.emplace_back(i, it->second);
        bigger[j] &= ~bit(v);
      }
    });
  }
  return {GPoset::from_relations(FiniteGroup::cyclic(p), std::move(labels), std::move(action), covers),
          std::move(tuples), p, r};
}

/// Delta Hom(K^r_p, KG^r(F)), remembering F.
inline SimplicialGComplex kneser_hom_order_complex(const KneserHypergraph& kg, int p, bool allow_nonprime = false) {
  SimplicialGComplex k = order_complex(hom_poset(kg.graph, p, allow_nonprime).poset);
  k.origin.kind = ComplexOrigin::Kind::KneserHomOrder;
  k.origin.r = kg.r;
  k.origin.ground = std::make_shared<Hypergraph>(kg.ground);
  return k;
}

/// Signed vectors with alt >= alpha+1, ordered by inclusion.
struct SigmaPoset {
  GPoset poset;
  std::vector<SignedVector> vectors;
  int n = 0;
  int alpha = 0;
};

inline SigmaPoset sigma_poset(int n, int p, int alpha) {
  if (n < 1) throw std::invalid_argument("sigma_poset: n must be >= 1");
  if (alpha < 0 || alpha > n) throw std::invalid_argument("sigma_poset: need 0 <= alpha <= n");
  if (!is_prime(p)) throw std::invalid_argument("sigma_poset: p must be prime");
  long long total = 1;
  for (int i = 0; i < n; ++i) {
    total *= p + 1;
    if (total > 5'000'000) throw std::length_error("sigma_poset: too many signed vectors");
  }
  std::vector<SignedVector> vectors;
  for (long long code = 0; code < total; ++code) {
    SignedVector x = SignedVector::from_code(p, n, code);
    if (alt_of_vector(x) >= alpha + 1) vectors.push_back(std::move(x));
  }
  std::stable_sort(vectors.begin(), vectors.end(), [](const SignedVector& a, const SignedVector& b) {
    return popcount(a.support()) < popcount(b.support());
  });
  std::map<long long, int> index;
  for (int i = 0; i < static_cast<int>(vectors.size()); ++i) index[vectors[i].code()] = i;
  const int m = static_cast<int>(vectors.size());
  std::vector<std::string> labels;
  for (const SignedVector& x : vectors) labels.push_back(x.to_string());
  std::vector<std::vector<int>> action(p, std::vector<int>(m));
  for (int k = 0; k < p; ++k)
    for (int i = 0; i < m; ++i) action[k][i] = index.at(vectors[i].act(k).code());
  std::vector<std::pair<int, int>> covers;
  long long weight = 1;
  for (int pos = 0; pos < n; ++pos, weight *= p + 1)
    for (int i = 0; i < m; ++i) {
      if (vectors[i][pos]) continue;
      for (int e = 0; e < p; ++e)
        if (auto it = index.find(vectors[i].code() + weight * (e + 1)); it != index.end())
          covers.emplace_back(i, it->second);
    }
  return {GPoset::from_relations(FiniteGroup::cyclic(p), std::move(labels), std::move(action), covers),
          std::move(vectors), n, alpha};
}

/// Sigma_p(n, alpha): order complex of the signed vectors with alt > alpha.
inline SimplicialGComplex sigma_complex(int n, int p, int alpha) {
  SimplicialGComplex k = order_complex(sigma_poset(n, p, alpha).poset);
  k.origin.kind = ComplexOrigin::Kind::Sigma;
  k.origin.n = n;
  k.origin.alpha = alpha;
  return k;
}

}  // namespace zpfan
