#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "zpfan/alternation.hpp"
#include "zpfan/budget.hpp"
#include "zpfan/chromatic.hpp"
#include "zpfan/constructions.hpp"
#include "zpfan/equivariant_search.hpp"
#include "zpfan/hypergraph.hpp"
#include "zpfan/tucker.hpp"

namespace zpfan {

enum class WitnessStatus { Found, Counterexample, BudgetExhausted };

inline const char* to_string(WitnessStatus s) {
  switch (s) {
    case WitnessStatus::Found: return "found";
    case WitnessStatus::Counterexample: return "counterexample";
    case WitnessStatus::BudgetExhausted: return "budget-exhausted";
  }
  return "?";
}

inline int ceil_div(int a, int b) { return a >= 0 ? (a + b - 1) / b : -((-a) / b); }

/// Part sizes of a balanced p-partite family with t vertices, larger parts first.
inline std::vector<int> balanced_profile(int t, int p) {
  std::vector<int> sizes(p, t / p);
  for (int i = 0; i < t % p; ++i) ++sizes[i];
  return sizes;
}

struct ColorfulWitness {
  PartiteFamily parts;
  int total_size = 0;
  std::vector<std::vector<int>> colors;  // colours of each part, in vertex order
};

/// Empty when w is a colorful balanced complete r-uniform p-partite
/// subhypergraph of H under c; otherwise the first broken invariant.
/// Completeness is checked over all r-subsets of the support.
inline std::optional<std::string> colorful_witness_problem(const Hypergraph& h, const Coloring& c,
                                                           const ColorfulWitness& w) {
  const int r = h.require_uniformity("colorful witness");
  if (!w.parts.disjoint()) return "parts overlap";
  if (!is_subset(w.parts.support(), h.vertices())) return "vertex out of range";
  if (w.total_size != w.parts.total_size()) return "total size does not match the parts";
  int lo = h.vertex_count() + 1, hi = -1;
  for (std::size_t j = 0; j < w.parts.parts.size(); ++j) {
    const VertexSet u = w.parts.parts[j];
    lo = std::min(lo, popcount(u));
    hi = std::max(hi, popcount(u));
    std::vector<int> seen;
    for (int v : members(u)) {
      if (std::find(seen.begin(), seen.end(), c[v]) != seen.end())
        return "part " + std::to_string(j + 1) + " repeats colour " + std::to_string(c[v]);
      seen.push_back(c[v]);
    }
    if (w.colors.size() == w.parts.parts.size() && w.colors[j] != seen) return "stored colours do not match";
  }
  if (!w.parts.parts.empty() && hi - lo > 1) return "not balanced";
  const std::vector<int> support = members(w.parts.support());
  std::optional<std::string> missing;
  if (static_cast<int>(support.size()) >= r)
    for_each_combination(static_cast<int>(support.size()), r, [&](VertexSet idx) {
      if (missing) return;
      VertexSet s = 0;
      for_each_member(idx, [&](int i) { s |= bit(support[i]); });
      for (VertexSet u : w.parts.parts)
        if (popcount(s & u) > 1) return;
      if (!h.has_edge(s)) missing = "cross-part set " + format_set(s) + " is not an edge";
    });
  return missing;
}

inline bool is_colorful_witness(const Hypergraph& h, const Coloring& c, const ColorfulWitness& w) {
  return !colorful_witness_problem(h, c, w).has_value();
}

struct ColorfulOptions {
  SearchBudget budget{50'000'000};
  bool allow_nonprime = false;
};

struct ColorfulResult {
  WitnessStatus status = WitnessStatus::Counterexample;
  int target = 0;
  int max_total = 0;  // largest total reached; equals target when found
  ColorfulWitness witness;
  std::uint64_t nodes = 0;
};

namespace detail {

inline ColorfulWitness make_witness(const Coloring& c, const std::vector<VertexSet>& parts) {
  ColorfulWitness w;
  w.parts.parts = parts;
  w.total_size = w.parts.total_size();
  for (VertexSet u : parts) {
    std::vector<int> cols;
    for (int v : members(u)) cols.push_back(c[v]);
    w.colors.push_back(std::move(cols));
  }
  return w;
}

// Fills the parts one after another with the given sizes, vertices in
// increasing order, distinct colours inside a part, and every cross-part
// r-set through a new vertex an edge. Equal-size parts are ordered by their
// smallest vertex.
inline std::optional<std::vector<VertexSet>> colorful_profile_search(const Hypergraph& h, const Coloring& c, int r,
                                                                     const std::vector<int>& sizes,
                                                                     NodeCounter& counter) {
  const int n = h.vertex_count();
  const int q = static_cast<int>(sizes.size());
  std::vector<VertexSet> parts(q, 0);
  VertexSet used = 0;
  auto color_free = [&](int j, int v) {
    bool ok = true;
    for_each_member(parts[j], [&](int u) { ok = ok && c[u] != c[v]; });
    return ok;
  };
  auto rec = [&](auto&& self, int j, int from) -> bool {
    if (j == q) return true;
    if (popcount(parts[j]) == sizes[j]) {
      const int next_from = j + 1 < q && sizes[j + 1] == sizes[j] && parts[j] ? lowest(parts[j]) + 1 : 0;
      return self(self, j + 1, next_from);
    }
    if (!counter.tick()) return false;
    const int need = sizes[j] - popcount(parts[j]);
    for (int v = from; v < n; ++v) {
      if (n - v < need) break;
      if ((used & bit(v)) || !color_free(j, v)) continue;
      if (!extends_complete_partite(h, parts, j, v, r)) continue;
      parts[j] |= bit(v);
      used |= bit(v);
      if (self(self, j, v + 1)) return true;
      parts[j] &= ~bit(v);
      used &= ~bit(v);
      if (counter.exhausted()) return false;
    }
    return false;
  };
  if (rec(rec, 0, 0)) return parts;
  return std::nullopt;
}

}  // namespace detail

/// A colorful balanced complete r-uniform p-partite subhypergraph with
/// `target` vertices, the least one in vertex order. Removing a vertex from a
/// largest part keeps a witness a witness, so a larger one exists only if
/// one of exactly this size does. When none exists the result is a
/// counterexample verdict carrying the largest total that is reachable.
inline ColorfulResult find_colorful_balanced(const Hypergraph& h, const Coloring& c, int p, int target,
                                             const ColorfulOptions& opt = {}) {
  const int r = h.require_uniformity("find_colorful_balanced");
  require_modulus(p, r, opt.allow_nonprime, "find_colorful_balanced");
  if (!is_proper(h, c)) throw std::invalid_argument("find_colorful_balanced: colouring is not proper");
  if (target < 0) throw std::invalid_argument("find_colorful_balanced: negative target");
  ColorfulResult out;
  out.target = target;
  NodeCounter counter(opt.budget);
  for (int t = std::min(target, h.vertex_count()); t >= 0; --t) {
    auto parts = detail::colorful_profile_search(h, c, r, balanced_profile(t, p), counter);
    if (counter.exhausted()) {
      out.status = WitnessStatus::BudgetExhausted;
      break;
    }
    if (parts) {
      out.max_total = t;
      out.witness = detail::make_witness(c, *parts);
      out.status = t == target ? WitnessStatus::Found : WitnessStatus::Counterexample;
      break;
    }
  }
  out.nodes = counter.nodes();
  return out;
}

// ---------------------------------------------------------------------------
// Witnesses in KG^p(F) read off a fan chain

struct FanRouteResult {
  WitnessStatus status = WitnessStatus::Counterexample;
  int alt = 0;  // alt_p(F, sigma)
  int target = 0;
  FanChainResult chain;
  ColorfulWitness witness;
};

/// Builds the labeling lambda_from_coloring(F, p, c, sigma), takes a fan
/// chain X_1 < ... < X_k of it and, for every X_i labeled (eps, alt + j),
/// puts into part eps the first F-edge of colour j inside sigma(X_i^eps).
/// The parts are vertex sets of KG^p(F).
inline FanRouteResult colorful_from_fan_chain(const Hypergraph& f, int p, const Coloring& c, const Ordering& sigma,
                                              const SearchBudget& budget = {}) {
  const ColoringLabeling cl = lambda_from_coloring(f, p, c, sigma);
  FanRouteResult out;
  out.alt = cl.alt;
  out.target = f.vertex_count() - cl.alt;
  out.chain = find_fan_chain(cl.lambda, budget);
  if (out.chain.status != ChainStatus::Found) {
    out.status = out.chain.status == ChainStatus::BudgetExhausted ? WitnessStatus::BudgetExhausted
                                                                   : WitnessStatus::Counterexample;
    return out;
  }
  const SignedVectorSpace& space = *cl.lambda.space;
  std::vector<VertexSet> parts(p, 0);
  for (int x : out.chain.chain.chain) {
    const Label& l = cl.lambda[x];
    const int color = l.level - cl.alt;
    VertexSet img = 0;
    for_each_member(space.vector(x).class_of(l.sign), [&](int i) { img |= bit(sigma[i]); });
    int pick = -1;
    for (int e = 0; e < f.edge_count() && pick < 0; ++e)
      if (c[e] == color && is_subset(f.edge(e), img)) pick = e;
    if (pick < 0) throw std::logic_error("colorful_from_fan_chain: label without a matching edge");
    parts[l.sign] |= bit(pick);
  }
  out.witness = detail::make_witness(c, parts);
  out.status = out.witness.total_size == out.target ? WitnessStatus::Found : WitnessStatus::Counterexample;
  return out;
}

// ---------------------------------------------------------------------------
// Colouring corpora

/// Every proper colouring with colours 1..k in which colour i+1 is first used
/// after colour i (one per class up to colour permutation). Stops after `cap`.
template <class Fn>
std::uint64_t for_each_proper_coloring(const Hypergraph& h, int k, Fn&& fn, std::uint64_t cap = 1'000'000) {
  const int n = h.vertex_count();
  std::vector<int> colors(n, 0);
  std::uint64_t count = 0;
  auto ok_at = [&](int v) {
    for (int ei : h.incident(v)) {
      const VertexSet e = h.edge(ei);
      if (highest(e) != v) continue;
      bool mono = true;
      for_each_member(e, [&](int u) { mono = mono && colors[u] == colors[v]; });
      if (mono) return false;
    }
    return true;
  };
  auto rec = [&](auto&& self, int v, int used) -> void {
    if (count >= cap) return;
    if (v == n) {
      ++count;
      fn(Coloring::from(colors));
      return;
    }
    for (int col = 1; col <= std::min(k, used + 1); ++col) {
      colors[v] = col;
      if (ok_at(v)) self(self, v + 1, std::max(used, col));
    }
    colors[v] = 0;
  };
  rec(rec, 0, 0);
  return count;
}

/// A proper colouring with at most k colours: vertices in a random order,
/// colours tried in a random order, backtracking on dead ends. Empty when
/// none exists within the budget.
inline std::optional<Coloring> random_proper_coloring(const Hypergraph& h, int k, std::mt19937_64& rng,
                                                      const SearchBudget& budget = {}) {
  const int n = h.vertex_count();
  std::vector<int> order(n);
  for (int v = 0; v < n; ++v) order[v] = v;
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<int> colors(n, 0);
  NodeCounter counter(budget);
  auto ok_at = [&](int v) {
    for (int ei : h.incident(v)) {
      bool mono = true;
      for_each_member(h.edge(ei), [&](int u) { mono = mono && colors[u] == colors[v]; });
      if (mono) return false;
    }
    return true;
  };
  auto rec = [&](auto&& self, int idx) -> bool {
    if (idx == n) return true;
    if (!counter.tick()) return false;
    const int v = order[idx];
    std::vector<int> palette(k);
    for (int i = 0; i < k; ++i) palette[i] = i + 1;
    std::shuffle(palette.begin(), palette.end(), rng);
    for (int col : palette) {
      colors[v] = col;
      if (ok_at(v) && self(self, idx + 1)) return true;
      if (counter.exhausted()) break;
    }
    colors[v] = 0;
    return false;
  };
  if (!rec(rec, 0)) return std::nullopt;
  return Coloring::from(colors);
}

// ---------------------------------------------------------------------------
// Zig-zag

struct ZigzagWitness {
  VertexSet side_a = 0;  // the side holding the smallest colour, ceil(t/2) vertices
  VertexSet side_b = 0;
  std::vector<int> colors_a, colors_b;  // increasing
};

struct ZigzagResult {
  WitnessStatus status = WitnessStatus::Counterexample;
  int t = 0;
  bool t_from_xind = false;
  int longest = 0;  // longest alternating sequence reached
  ZigzagWitness witness;
  std::uint64_t nodes = 0;
};

/// Empty when w is a complete bipartite K_{ceil(t/2), floor(t/2)} in G with
/// t distinct colours that alternate between the sides in increasing order.
inline std::optional<std::string> zigzag_witness_problem(const Hypergraph& g, const Coloring& c, const ZigzagWitness& w,
                                                         int t) {
  if (w.side_a & w.side_b) return "sides overlap";
  const int a = popcount(w.side_a), b = popcount(w.side_b);
  if (a + b != t || a - b < 0 || a - b > 1) return "side sizes do not match t";
  for (int u : members(w.side_a))
    for (int v : members(w.side_b))
      if (!g.has_edge(bit(u) | bit(v))) return "missing edge " + format_set(bit(u) | bit(v));
  std::vector<std::pair<int, int>> tagged;
  for (int v : members(w.side_a)) tagged.emplace_back(c[v], 0);
  for (int v : members(w.side_b)) tagged.emplace_back(c[v], 1);
  std::sort(tagged.begin(), tagged.end());
  for (std::size_t i = 0; i + 1 < tagged.size(); ++i) {
    if (tagged[i].first == tagged[i + 1].first) return "colour " + std::to_string(tagged[i].first) + " repeats";
    if (tagged[i].second == tagged[i + 1].second) return "colours do not alternate between the sides";
  }
  return std::nullopt;
}

struct ZigzagOptions {
  SearchBudget budget{50'000'000};
  XindOptions xind{};
};

/// A multicolored K_{ceil(t/2), floor(t/2)} whose colours, read in
/// increasing order, alternate between the sides. Without t, uses
/// Xind(Hom(K_2, G)) + 2. Vertices are picked by increasing colour,
/// alternately for each side, each adjacent to all picked vertices opposite.
inline ZigzagResult zigzag_check(const Hypergraph& g, const Coloring& c, std::optional<int> t = std::nullopt,
                                 const ZigzagOptions& opt = {}) {
  if (g.uniformity() != 2) throw std::invalid_argument("zigzag_check: graph expected");
  if (g.edge_count() == 0) throw std::invalid_argument("zigzag_check: graph has no edges");
  if (!is_proper(g, c)) throw std::invalid_argument("zigzag_check: colouring is not proper");
  ZigzagResult out;
  if (t) {
    out.t = *t;
  } else {
    const XindResult x = xind_exact(hom_poset(g, 2).poset, g.vertex_count(), opt.xind);
    if (x.status != XindResult::Status::Exact) {
      out.status = WitnessStatus::BudgetExhausted;
      return out;
    }
    out.t = x.value + 2;
    out.t_from_xind = true;
  }
  if (out.t < 1) throw std::invalid_argument("zigzag_check: t must be positive");
  const int n = g.vertex_count();
  std::vector<int> seq;
  VertexSet side[2] = {0, 0};
  NodeCounter counter(opt.budget);
  auto rec = [&](auto&& self) -> bool {
    out.longest = std::max(out.longest, static_cast<int>(seq.size()));
    if (static_cast<int>(seq.size()) == out.t) return true;
    if (!counter.tick()) return false;
    const int s = static_cast<int>(seq.size()) % 2;
    for (int v = 0; v < n; ++v) {
      if (!seq.empty() && c[v] <= c[seq.back()]) continue;
      if (!is_subset(side[1 - s], g.adjacency(v))) continue;
      seq.push_back(v);
      side[s] |= bit(v);
      if (self(self)) return true;
      side[s] &= ~bit(v);
      seq.pop_back();
      if (counter.exhausted()) return false;
    }
    return false;
  };
  const bool found = rec(rec);
  out.nodes = counter.nodes();
  if (found) {
    out.status = WitnessStatus::Found;
    out.witness.side_a = side[0];
    out.witness.side_b = side[1];
    for (int i = 0; i < static_cast<int>(seq.size()); ++i)
      (i % 2 ? out.witness.colors_b : out.witness.colors_a).push_back(c[seq[i]]);
  } else {
    out.status = counter.exhausted() ? WitnessStatus::BudgetExhausted : WitnessStatus::Counterexample;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Local chromatic number

struct LocalBounds {
  int t = 0, p = 2, r = 2;
  int a = 0, b = 0;      // t = a p + b
  int hypergraph = 0;    // min(ceil(((p-r+1)a + min(p-r+1, b)) / (r-1)) + 1, ceil(t/(r-1)))
  int graph = 0;         // t - floor(t/p) + 1
  bool degenerate = false;  // t = 0
};

inline LocalBounds local_lower_formulas(int t, int p, int r, bool allow_nonprime = false) {
  if (t < 0) throw std::invalid_argument("local_lower_formulas: t must be >= 0");
  if (r < 2) throw std::invalid_argument("local_lower_formulas: r must be >= 2");
  require_modulus(p, r, allow_nonprime, "local_lower_formulas");
  LocalBounds out;
  out.t = t, out.p = p, out.r = r;
  out.a = t / p;
  out.b = t % p;
  const int w = p - r + 1;
  out.hypergraph = std::min(ceil_div(w * out.a + std::min(w, out.b), r - 1) + 1, ceil_div(t, r - 1));
  out.graph = t - t / p + 1;
  out.degenerate = t == 0;
  return out;
}

/// ceil((p-1)|V(F)|/p) - (p-1) alpha(F) + 1, a lower bound on chi_l(KG^2(F)).
inline int independence_local_bound(const Hypergraph& f, int p) {
  if (p < 2) throw std::invalid_argument("independence_local_bound: p must be >= 2");
  return ceil_div((p - 1) * f.vertex_count(), p) - (p - 1) * independence_number(f) + 1;
}

/// X together with every vertex v such that e \ X = {v} for some edge e.
inline VertexSet closed_neighbourhood(const Hypergraph& h, VertexSet x) {
  VertexSet out = x;
  for (VertexSet e : h.edges()) {
    const VertexSet d = e & ~x;
    if (popcount(d) == 1) out |= d;
  }
  return out;
}

/// The case analysis behind the hypergraph bound, replayed on a colorful
/// witness with parts sorted by decreasing size.
struct LocalCaseCertificate {
  int case_number = 0;
  VertexSet edge = 0;
  int u = -1;
  std::optional<int> v;
  std::vector<int> counted_colors;  // colours of U_1..U_{p-r+1}, plus c(v) in case 1
  int neighbourhood_colors = 0;     // |c(N[e \ {u}])|
  int bound = 0;
  bool holds = false;
  std::string problem;
};

inline LocalCaseCertificate local_case_certificate(const Hypergraph& h, const Coloring& c, const ColorfulWitness& w,
                                                   int t) {
  const int r = h.require_uniformity("local_case_certificate");
  const int p = static_cast<int>(w.parts.parts.size());
  LocalCaseCertificate cert;
  cert.bound = local_lower_formulas(t, p, r, true).hypergraph;
  std::vector<VertexSet> parts = w.parts.parts;
  std::stable_sort(parts.begin(), parts.end(), [](VertexSet x, VertexSet y) { return popcount(x) > popcount(y); });
  if (std::any_of(parts.begin(), parts.end(), [](VertexSet u) { return u == 0; })) {
    cert.problem = "a part is empty";
    return cert;
  }
  const int low = p - r + 1;  // U_1..U_low, 1-based
  std::vector<int> counted;
  for (int i = 0; i < low; ++i)
    for (int v : members(parts[i])) counted.push_back(c[v]);
  std::sort(counted.begin(), counted.end());
  counted.erase(std::unique(counted.begin(), counted.end()), counted.end());
  const int need = ceil_div(t, r - 1);
  cert.case_number = static_cast<int>(counted.size()) < need ? 1 : 2;
  cert.u = lowest(parts[low - 1]);
  VertexSet e = bit(cert.u);
  if (cert.case_number == 1) {
    for (int i = low; i < p && !cert.v; ++i)
      for (int v : members(parts[i]))
        if (!std::binary_search(counted.begin(), counted.end(), c[v])) {
          cert.v = v;
          e |= bit(v);
          for (int j = low; j < p; ++j)
            if (j != i) e |= bit(lowest(parts[j]));
          break;
        }
    if (!cert.v) {
      cert.problem = "no vertex with a new colour in the upper parts";
      return cert;
    }
    counted.push_back(c[*cert.v]);
  } else {
    for (int j = low; j < p; ++j) e |= bit(lowest(parts[j]));
  }
  cert.edge = e;
  cert.counted_colors = counted;
  if (!h.has_edge(e)) {
    cert.problem = "chosen set is not an edge";
    return cert;
  }
  const VertexSet nb = closed_neighbourhood(h, e & ~bit(cert.u));
  std::vector<int> seen;
  for (int v : members(nb)) seen.push_back(c[v]);
  std::sort(seen.begin(), seen.end());
  seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
  cert.neighbourhood_colors = static_cast<int>(seen.size());
  const bool covered =
      std::all_of(counted.begin(), counted.end(), [&](int col) { return std::binary_search(seen.begin(), seen.end(), col); });
  if (!covered) cert.problem = "counted colours missing from the neighbourhood";
  cert.holds = covered && cert.neighbourhood_colors >= cert.bound;
  if (covered && !cert.holds) cert.problem = "neighbourhood sees fewer colours than the bound";
  return cert;
}

struct LocalOptions {
  SearchBudget budget{50'000'000};
  XindOptions xind{};
  ColorfulOptions colorful{};
  bool allow_nonprime = false;
};

enum class LocalVerdict { Holds, Violated, Undetermined, NotApplicable };

inline const char* to_string(LocalVerdict v) {
  switch (v) {
    case LocalVerdict::Holds: return "holds";
    case LocalVerdict::Violated: return "violated";
    case LocalVerdict::Undetermined: return "undetermined";
    case LocalVerdict::NotApplicable: return "not-applicable";
  }
  return "?";
}

struct LocalReport {
  LocalVerdict verdict = LocalVerdict::Undetermined;
  std::string reason;
  int omega = 0;
  int xind = -1;
  int t = 0;
  LocalBounds bounds;
  LocalChromaticResult chi_l;
  std::optional<ColorfulResult> colorful;
  std::optional<LocalCaseCertificate> certificate;
};

/// t = Xind(Hom(K^r_p, H)) + p, the bounds at t, the exact local chromatic
/// number, and the case analysis replayed on a colorful witness for an
/// optimal local colouring.
inline LocalReport certify_local(const Hypergraph& h, int p, const LocalOptions& opt = {}) {
  const int r = h.require_uniformity("certify_local");
  if (h.edge_count() == 0) throw std::invalid_argument("certify_local: hypergraph has no edges");
  require_modulus(p, r, opt.allow_nonprime, "certify_local");
  LocalReport rep;
  rep.omega = clique_number(h, r);
  if (rep.omega < p) {
    rep.verdict = LocalVerdict::NotApplicable;
    rep.reason = "clique number " + std::to_string(rep.omega) + " is below p";
    return rep;
  }
  const XindResult x = xind_exact(hom_poset(h, p, opt.allow_nonprime).poset, h.vertex_count(), opt.xind);
  if (x.status != XindResult::Status::Exact) {
    rep.reason = "cross-index not determined";
    return rep;
  }
  rep.xind = x.value;
  rep.t = x.value + p;
  rep.bounds = local_lower_formulas(rep.t, p, r, opt.allow_nonprime);
  rep.chi_l = local_chromatic_number(h, opt.budget);
  ColorfulOptions copt = opt.colorful;
  copt.allow_nonprime = opt.allow_nonprime;
  rep.colorful = find_colorful_balanced(h, rep.chi_l.witness, p, rep.t, copt);
  if (rep.colorful->status == WitnessStatus::Found)
    rep.certificate = local_case_certificate(h, rep.chi_l.witness, rep.colorful->witness, rep.t);
  if (rep.chi_l.lower >= rep.bounds.hypergraph) {
    rep.verdict = LocalVerdict::Holds;
  } else if (rep.chi_l.exact) {
    rep.verdict = LocalVerdict::Violated;
    rep.reason = "local chromatic number below the bound";
  } else {
    rep.reason = "local chromatic number not determined";
  }
  return rep;
}

}  // namespace zpfan
