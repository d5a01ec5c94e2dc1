#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "zpfan/chromatic.hpp"
#include "zpfan/hypergraph.hpp"
#include "zpfan/signed_vector.hpp"

namespace zpfan {

/// sigma[i] is the vertex at position i (both 0-based).
using Ordering = std::vector<int>;

inline Ordering identity_ordering(int n) {
  Ordering s(n);
  std::iota(s.begin(), s.end(), 0);
  return s;
}

inline void require_bijection(const Ordering& sigma, int n) {
  if (static_cast<int>(sigma.size()) != n) throw std::invalid_argument("ordering has wrong length");
  std::vector<bool> seen(n, false);
  for (int v : sigma) {
    if (v < 0 || v >= n || seen[v]) throw std::invalid_argument("ordering is not a bijection");
    seen[v] = true;
  }
}

struct AltResult {
  int value = 0;
  SignedVector witness = SignedVector::zero(2, 0);
};

/// alt_p(H, sigma): the largest alternation of a signed vector X such that
/// every sigma(X^eps) is edge-free. Depth-first over positions; residues are
/// opened in increasing order because permuting residues changes neither the
/// alternation nor the classes' independence. Stops early once `cutoff` is
/// reached (the returned value is then only known to be >= cutoff).
inline AltResult alt_sigma(const Hypergraph& h, int p, const Ordering& sigma,
                           std::optional<int> cutoff = std::nullopt) {
  if (p < 2) throw std::invalid_argument("alt_sigma: p must be >= 2");
  const int n = h.vertex_count();
  require_bijection(sigma, n);
  std::vector<VertexSet> classes(p, 0);
  std::vector<SignedVector::Entry> current(n), best_entries(n);
  int best = -1;
  const int stop = cutoff.value_or(n + 1);

  auto rec = [&](auto&& self, int i, int last, int alt, int opened) -> void {
    if (best >= stop) return;
    if (alt + (n - i) <= best) return;
    if (i == n) {
      best = alt;
      best_entries = current;
      return;
    }
    const int v = sigma[i];
    const int limit = std::min(p, opened + 1);
    // residues that change the run first, then the current run, then zero
    for (int pass = 0; pass < 2; ++pass) {
      for (int eps = 0; eps < limit; ++eps) {
        const bool extends_run = eps == last;
        if ((pass == 0) == extends_run) continue;
        if (!h.stays_independent(classes[eps], v)) continue;
        classes[eps] |= bit(v);
        current[i] = eps;
        self(self, i + 1, eps, alt + (extends_run ? 0 : 1), std::max(opened, eps + 1));
        current[i].reset();
        classes[eps] &= ~bit(v);
      }
    }
    self(self, i + 1, last, alt, opened);
  };
  rec(rec, 0, -1, 0, 0);
  return {best, SignedVector(p, best_entries)};
}

/// Brute force over all (p+1)^n signed vectors; used as an oracle in tests.
inline int alt_sigma_bruteforce(const Hypergraph& h, int p, const Ordering& sigma) {
  const int n = h.vertex_count();
  long long total = 1;
  for (int i = 0; i < n; ++i) total *= p + 1;
  int best = 0;
  for (long long code = 0; code < total; ++code) {
    const SignedVector x = SignedVector::from_code(p, n, code);
    bool ok = true;
    for (int eps = 0; eps < p && ok; ++eps) {
      VertexSet img = 0;
      for_each_member(x.class_of(eps), [&](int i) { img |= bit(sigma[i]); });
      ok = !h.contains_edge_within(img);
    }
    if (ok) best = std::max(best, alt_of_vector(x));
  }
  return best;
}

/// Vertex orbits of the automorphism group, found by searching for an
/// automorphism sending u to v for each pair not yet known to be equivalent.
inline std::vector<int> automorphism_orbit_ids(const Hypergraph& h) {
  const int n = h.vertex_count();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  // edges grouped by their largest vertex so each is checked once all of its
  // vertices are mapped
  std::vector<std::vector<VertexSet>> closing(n);
  for (VertexSet e : h.edges()) closing[highest(e)].push_back(e);

  auto find_automorphism = [&](int u, int v, std::vector<int>& phi) {
    phi.assign(n, -1);
    VertexSet used = 0;
    auto rec = [&](auto&& self, int x) -> bool {
      if (x == n) return true;
      VertexSet cand = x == u ? bit(v) : (full_set(n) & ~used);
      while (cand != 0) {
        const int y = lowest(cand);
        cand &= cand - 1;
        if (used & bit(y)) continue;
        if (h.degree(x) != h.degree(y)) continue;
        if (x != u && y == v) continue;
        phi[x] = y;
        bool ok = true;
        for (VertexSet e : closing[x]) {
          VertexSet img = 0;
          for_each_member(e, [&](int w) { img |= bit(phi[w]); });
          if (!h.has_edge(img)) {
            ok = false;
            break;
          }
        }
        if (ok) {
          used |= bit(y);
          if (self(self, x + 1)) return true;
          used &= ~bit(y);
        }
        phi[x] = -1;
      }
      return false;
    };
    return rec(rec, 0);
  };

  std::vector<int> phi;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      if (find(u) == find(v)) continue;
      if (h.degree(u) != h.degree(v)) continue;
      if (find_automorphism(u, v, phi))
        for (int x = 0; x < n; ++x) parent[find(x)] = find(phi[x]);
    }
  std::vector<int> ids(n);
  for (int x = 0; x < n; ++x) ids[x] = find(x);
  return ids;
}

inline std::vector<int> orbit_representatives(const Hypergraph& h) {
  const std::vector<int> ids = automorphism_orbit_ids(h);
  std::vector<int> reps;
  for (int v = 0; v < h.vertex_count(); ++v) {
    bool first = true;
    for (int u = 0; u < v; ++u)
      if (ids[u] == ids[v]) first = false;
    if (first) reps.push_back(v);
  }
  return reps;
}

enum class AltMode { Exact, Budgeted };

struct AltMinResult {
  int value = 0;
  bool optimal = false;  // false: only an upper bound on alt_p(H)
  Ordering ordering;
  SignedVector witness = SignedVector::zero(2, 0);
  std::uint64_t orderings_examined = 0;
};

constexpr int kAltExactMaxVertices = 10;

/// alt_p(H) = min over orderings of alt_p(H, sigma). Exact mode fixes the
/// first position to an automorphism-orbit representative and enumerates the
/// rest; budgeted mode samples `samples` seeded orderings (plus the identity).
inline AltMinResult alt_min(const Hypergraph& h, int p, AltMode mode, std::uint64_t samples = 2000,
                            std::uint64_t seed = 1) {
  const int n = h.vertex_count();
  AltMinResult out;
  out.value = n + 1;
  auto consider = [&](const Ordering& sigma) {
    ++out.orderings_examined;
    AltResult r = alt_sigma(h, p, sigma, out.value);
    if (r.value < out.value) {
      out.value = r.value;
      out.ordering = sigma;
      out.witness = r.witness;
    }
  };
  if (mode == AltMode::Exact) {
    if (n > kAltExactMaxVertices) throw std::invalid_argument("alt_min exact mode supports at most 10 vertices");
    for (int first : orbit_representatives(h)) {
      Ordering sigma;
      sigma.push_back(first);
      for (int v = 0; v < n; ++v)
        if (v != first) sigma.push_back(v);
      do {
        consider(sigma);
      } while (out.value > 0 && std::next_permutation(sigma.begin() + 1, sigma.end()));
    }
    out.optimal = true;
  } else {
    std::mt19937_64 rng(seed);
    Ordering sigma = identity_ordering(n);
    consider(sigma);
    for (std::uint64_t s = 0; s < samples && out.value > 0; ++s) {
      std::shuffle(sigma.begin(), sigma.end(), rng);
      consider(sigma);
    }
    out.optimal = false;
  }
  return out;
}

struct DefectResult {
  int value = 0;
  VertexSet removed = 0;
  Coloring coloring;  // colouring of the kept vertices, indexed by original vertex (0 = removed)
  bool exact = true;
};

/// cd_r(H): fewest vertices whose removal leaves an r-colourable hypergraph.
/// Removal sets are tried by increasing size.
inline DefectResult colorability_defect(const Hypergraph& h, int r, const SearchBudget& budget = {}) {
  if (r < 2) throw std::invalid_argument("colorability_defect: r must be >= 2");
  const int n = h.vertex_count();
  DefectResult out;
  NodeCounter counter(budget);
  for (int s = 0; s <= n; ++s) {
    std::optional<DefectResult> found;
    for_each_combination(n, s, [&](VertexSet removed) {
      if (found) return;
      const VertexSet kept = full_set(n) & ~removed;
      if (kept == 0) {
        found = DefectResult{s, removed, Coloring::from(std::vector<int>(n, 0)), true};
        return;
      }
      const Relabeled sub = induced(h, kept);
      ColorabilityResult res = k_colorable(sub.graph, r, counter);
      if (res.decision == Decision::Unknown) out.exact = false;
      if (res.decision != Decision::Yes) return;
      std::vector<int> colors(n, 0);
      for (int i = 0; i < sub.graph.vertex_count(); ++i) colors[sub.original[i]] = res.witness[i];
      Coloring c;
      c.colors = colors;
      c.palette = *std::max_element(colors.begin(), colors.end());
      found = DefectResult{s, removed, c, true};
    });
    if (found) {
      found->exact = out.exact;
      return *found;
    }
  }
  throw std::logic_error("colorability_defect: unreachable");
}

}  // namespace zpfan
