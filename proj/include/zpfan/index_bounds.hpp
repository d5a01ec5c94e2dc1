#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "zpfan/alternation.hpp"
#include "zpfan/complex.hpp"
#include "zpfan/equivariant_search.hpp"

namespace zpfan {

/// One reason for a bound on ind_{Z_p}(K). `witness` carries everything a
/// third party needs to re-check it without this library.
///
/// kinds:
///   dimension             upper: K is free, so ind K <= dim K
///   explicit-map          upper: simplicial Z_p-map sd^d K -> Z_p^{*L}, ind <= L-1
///   subcomplex-embedding  lower: orbit representatives v_0..v_m whose
///                         transversals are all simplices, so Z_p^{*(m+1)} maps in
///   sigma-alternation     lower: K = Sigma_p(n, alpha), ind >= n - alpha - 1
///   kneser-alternation    lower: K = B_0(KG^r(F), Z_p), ind >= |V(F)| - alt_p(F, sigma) - 1
///   hom-box-comparison    lower: K = Delta Hom(K^r_p, KG^r(F)),
///                         ind >= |V(F)| - alt_p(F, sigma) - p
struct Certificate {
  std::string kind;
  bool upper = false;
  int bound = 0;
  nlohmann::json witness;

  nlohmann::json to_json() const {
    return {{"kind", kind}, {"side", upper ? "upper" : "lower"}, {"bound", bound}, {"witness", witness}};
  }
};

struct IndexInterval {
  int lower = -1;
  int upper = -1;
  std::vector<Certificate> certificates;

  bool exact() const { return lower == upper; }
  bool consistent() const { return lower <= upper; }

  nlohmann::json to_json() const {
    nlohmann::json certs = nlohmann::json::array();
    for (const Certificate& c : certificates) certs.push_back(c.to_json());
    return {{"lower", lower}, {"upper", upper}, {"certificates", certs}};
  }
};

struct IndBoundsOptions {
  int depth = 0;                 // subdivision depth tried by the map search
  int n_max = 8;                 // largest index value the map search targets
  int threads = 1;
  SearchBudget budget{50'000'000};
  std::size_t subdivision_cap = 200'000;
  std::uint64_t alt_samples = 2000;  // orderings tried when alt_p(F) is too big to minimise exactly
  std::uint64_t seed = 1;
};

namespace detail {

// Every transversal {g_0 v_0, ..., g_k v_k} with g_k fixed to the identity is
// a simplex. Rotating by the group covers the other choices of g_k.
inline bool transversals_are_simplices(const SimplicialGComplex& k, const std::vector<int>& reps) {
  const int p = k.group().order();
  const int m = static_cast<int>(reps.size());
  if (m == 0) return true;
  std::vector<int> g(m - 1, 0);
  while (true) {
    Simplex s;
    for (int i = 0; i + 1 < m; ++i) s.push_back(k.act(g[i], reps[i]));
    s.push_back(reps[m - 1]);
    const Simplex sorted = make_simplex(s);
    if (sorted.size() != s.size() || !k.is_simplex(sorted)) return false;
    int i = 0;
    while (i < m - 1 && g[i] == p - 1) g[i++] = 0;
    if (i == m - 1) return true;
    ++g[i];
  }
}

struct AltBound {
  int alt = 0;
  Ordering ordering;
  bool optimal = false;
};

inline AltBound alternation_for_bound(const Hypergraph& f, int p, const IndBoundsOptions& opt) {
  const AltMinResult a = f.vertex_count() <= kAltExactMaxVertices ? alt_min(f, p, AltMode::Exact)
                                                                  : alt_min(f, p, AltMode::Budgeted, opt.alt_samples, opt.seed);
  return {a.value, a.ordering, a.optimal};
}

}  // namespace detail

/// Largest m with an equivariant copy of Z_p^{*(m+1)} spanned by m+1 orbit
/// representatives; -1 for the empty complex. Stops at `stop_at`.
inline std::pair<int, std::vector<int>> largest_join_embedding(const SimplicialGComplex& k, int stop_at,
                                                               const SearchBudget& budget = {}) {
  if (k.empty()) return {-1, {}};
  const int p = k.group().order();
  const OrbitDecomposition orbits = orbits_of_action(k.action());
  const int q = static_cast<int>(orbits.orbits.size());
  const auto& adj = k.adjacency();
  std::vector<int> reps;
  for (const auto& o : orbits.orbits) reps.push_back(o.front());
  // orbit i and j can sit in a common join iff rep_i is adjacent to every g.rep_j
  std::vector<std::vector<bool>> ok(q, std::vector<bool>(q, false));
  for (int i = 0; i < q; ++i)
    for (int j = i + 1; j < q; ++j) {
      bool all = true;
      for (int g = 0; g < p && all; ++g) all = adj[reps[i]].test(k.act(g, reps[j]));
      ok[i][j] = ok[j][i] = all;
    }
  std::vector<int> best{reps[0]};
  std::vector<int> chosen;
  NodeCounter counter(budget);
  auto rec = [&](auto&& self, const std::vector<int>& cand) -> void {
    if (static_cast<int>(best.size()) - 1 >= stop_at || !counter.tick()) return;
    if (chosen.size() + cand.size() <= best.size()) return;
    for (std::size_t idx = 0; idx < cand.size(); ++idx) {
      const int c = cand[idx];
      std::vector<int> trial = chosen;
      trial.push_back(reps[c]);
      if (!detail::transversals_are_simplices(k, trial)) continue;
      chosen.push_back(reps[c]);
      if (chosen.size() > best.size()) best = chosen;
      std::vector<int> next;
      for (std::size_t j = idx + 1; j < cand.size(); ++j)
        if (ok[c][cand[j]]) next.push_back(cand[j]);
      self(self, next);
      chosen.pop_back();
      if (static_cast<int>(best.size()) - 1 >= stop_at) return;
    }
  };
  std::vector<int> all(q);
  for (int i = 0; i < q; ++i) all[i] = i;
  rec(rec, all);
  return {static_cast<int>(best.size()) - 1, best};
}

/// Certified interval for ind_{Z_p}(K).
inline IndexInterval ind_bounds(const SimplicialGComplex& k, const IndBoundsOptions& opt = {}) {
  IndexInterval out;
  if (k.empty()) {
    out.certificates.push_back({"dimension", true, -1, {{"dimension", -1}}});
    return out;
  }
  if (!k.group().is_cyclic()) throw std::invalid_argument("ind_bounds: needs a cyclic group");
  if (!k.is_free()) throw std::invalid_argument("ind_bounds: complex is not free");
  const int p = k.group().order();

  out.upper = k.dimension();
  out.certificates.push_back({"dimension", true, out.upper, {{"dimension", out.upper}}});

  // lower bounds from the construction, when known
  out.lower = 0;
  const ComplexOrigin& origin = k.origin;
  if (origin.kind == ComplexOrigin::Kind::Sigma) {
    const int b = origin.n - origin.alpha - 1;
    out.certificates.push_back({"sigma-alternation", false, b, {{"n", origin.n}, {"alpha", origin.alpha}}});
    out.lower = std::max(out.lower, b);
  } else if ((origin.kind == ComplexOrigin::Kind::KneserBox || origin.kind == ComplexOrigin::Kind::KneserHomOrder) &&
             origin.ground) {
    const detail::AltBound a = detail::alternation_for_bound(*origin.ground, p, opt);
    const bool box = origin.kind == ComplexOrigin::Kind::KneserBox;
    const int b = origin.ground->vertex_count() - a.alt - (box ? 1 : p);
    out.certificates.push_back({box ? "kneser-alternation" : "hom-box-comparison", false, b,
                                {{"ground_vertices", origin.ground->vertex_count()},
                                 {"alt", a.alt},
                                 {"alt_optimal", a.optimal},
                                 {"ordering", a.ordering},
                                 {"p", p}}});
    out.lower = std::max(out.lower, b);
  }

  // upper bounds from explicit maps sd^d K -> Z_p^{*L}
  const int max_levels = 64 / p;
  for (int d = 0; d <= opt.depth && out.upper > out.lower; ++d) {
    std::optional<Subdivision> sd;
    try {
      sd = iterated_subdivision(k, d, opt.subdivision_cap);
    } catch (const std::length_error&) {
      break;
    }
    for (int levels = std::max(1, out.lower + 1); levels <= std::min({out.upper, opt.n_max + 1, max_levels}); ++levels) {
      const JoinMapResult m = find_map_to_join(sd->complex, levels, opt.threads, opt.budget);
      if (m.status != SearchStatus::Found) continue;
      nlohmann::json pairs = nlohmann::json::array();
      for (int v = 0; v < sd->complex.vertex_count(); ++v) pairs.push_back({v, m.map[v] % p, m.map[v] / p + 1});
      out.upper = levels - 1;
      out.certificates.push_back({"explicit-map", true, out.upper,
                                  {{"depth", d}, {"levels", levels}, {"map", pairs}}});
      break;
    }
  }

  // lower bound from an embedded join power
  if (out.lower < out.upper) {
    auto [m, reps] = largest_join_embedding(k, out.upper, opt.budget);
    if (m >= out.lower) {
      out.certificates.push_back({"subcomplex-embedding", false, m, {{"vertices", reps}}});
      out.lower = std::max(out.lower, m);
    }
  } else {
    auto [m, reps] = largest_join_embedding(k, 0, opt.budget);
    out.certificates.push_back({"subcomplex-embedding", false, m, {{"vertices", reps}}});
  }
  return out;
}

/// Re-derives the bound a certificate claims, from K and the witness alone.
/// Returns nullopt when the certificate does not check out.
inline std::optional<int> recheck_certificate(const SimplicialGComplex& k, const Certificate& c,
                                              std::size_t subdivision_cap = 200'000) {
  const int p = k.group().order();
  const auto& w = c.witness;
  try {
    if (c.kind == "dimension") {
      if (!c.upper || (!k.empty() && !k.is_free())) return std::nullopt;
      return k.dimension() == w.at("dimension").get<int>() ? std::optional<int>(k.dimension()) : std::nullopt;
    }
    if (c.kind == "explicit-map") {
      if (!c.upper || !k.is_free()) return std::nullopt;
      const int depth = w.at("depth").get<int>();
      const int levels = w.at("levels").get<int>();
      const Subdivision sd = iterated_subdivision(k, depth, subdivision_cap);
      std::vector<int> f(sd.complex.vertex_count(), -1);
      for (const auto& entry : w.at("map")) {
        const int v = entry.at(0).get<int>();
        const int sign = entry.at(1).get<int>();
        const int level = entry.at(2).get<int>() - 1;
        if (v < 0 || v >= sd.complex.vertex_count() || sign < 0 || sign >= p || level < 0 || level >= levels)
          return std::nullopt;
        f[v] = join_vertex(p, sign, level);
      }
      if (!is_join_map(sd.complex, f, levels)) return std::nullopt;
      return levels - 1;
    }
    if (c.kind == "subcomplex-embedding") {
      if (c.upper) return std::nullopt;
      const std::vector<int> reps = w.at("vertices").get<std::vector<int>>();
      if (reps.empty()) return k.empty() ? std::optional<int>(-1) : std::nullopt;
      const OrbitDecomposition o = orbits_of_action(k.action());
      for (std::size_t i = 0; i < reps.size(); ++i) {
        if (reps[i] < 0 || reps[i] >= k.vertex_count()) return std::nullopt;
        for (std::size_t j = 0; j < i; ++j)
          if (o.orbit_of[reps[i]] == o.orbit_of[reps[j]]) return std::nullopt;
      }
      // all p^{m+1} transversals, without using the rotation shortcut
      const int m = static_cast<int>(reps.size());
      std::vector<int> g(m, 0);
      while (true) {
        Simplex s;
        for (int i = 0; i < m; ++i) s.push_back(k.act(g[i], reps[i]));
        if (!k.is_simplex(make_simplex(s))) return std::nullopt;
        int i = 0;
        while (i < m && g[i] == p - 1) g[i++] = 0;
        if (i == m) break;
        ++g[i];
      }
      return m - 1;
    }
    if (c.kind == "sigma-alternation") {
      if (k.origin.kind != ComplexOrigin::Kind::Sigma) return std::nullopt;
      if (w.at("n").get<int>() != k.origin.n || w.at("alpha").get<int>() != k.origin.alpha) return std::nullopt;
      return k.origin.n - k.origin.alpha - 1;
    }
    if (c.kind == "kneser-alternation" || c.kind == "hom-box-comparison") {
      const bool box = c.kind == "kneser-alternation";
      const auto want = box ? ComplexOrigin::Kind::KneserBox : ComplexOrigin::Kind::KneserHomOrder;
      if (k.origin.kind != want || !k.origin.ground) return std::nullopt;
      const Hypergraph& f = *k.origin.ground;
      const Ordering sigma = w.at("ordering").get<Ordering>();
      require_bijection(sigma, f.vertex_count());
      const int alt = alt_sigma(f, p, sigma).value;
      if (alt > w.at("alt").get<int>()) return std::nullopt;
      return f.vertex_count() - alt - (box ? 1 : p);
    }
  } catch (const std::exception&) {
    return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace zpfan
