#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "zpfan/bits.hpp"
#include "zpfan/budget.hpp"
#include "zpfan/complex.hpp"
#include "zpfan/parallel.hpp"
#include "zpfan/poset.hpp"

namespace zpfan {

enum class SearchStatus { Found, Infeasible, BudgetExhausted };

inline const char* to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::Found: return "found";
    case SearchStatus::Infeasible: return "infeasible";
    case SearchStatus::BudgetExhausted: return "budget-exhausted";
  }
  return "?";
}

/// Constraint problem for an equivariant map into levelled copies of Z_p.
/// One variable per orbit; a value is level * p + sign and fixes the image of
/// the orbit representative, the rest of the orbit following by equivariance.
/// Pairwise constraints: optional level inequalities, and a set of allowed
/// sign offsets s_b - s_a that applies when both sit on the same level.
class OrbitCsp {
 public:
  struct Options {
    bool fix_first_sign = false;  // global rotation symmetry
    bool level_symmetry = false;  // levels interchangeable and rotatable one at a time
    int threads = 1;
    SearchBudget budget{};
  };

  struct Result {
    SearchStatus status = SearchStatus::Infeasible;
    std::vector<int> values;
    std::uint64_t nodes = 0;
  };

  OrbitCsp(int p, int vars) : p_(p), vars_(vars), priority_(vars, 0) {
    if (p < 2 || p > 64) throw std::invalid_argument("OrbitCsp: p out of range");
  }

  int modulus() const { return p_; }
  int variables() const { return vars_; }
  bool impossible() const { return impossible_; }

  void mark_impossible() { impossible_ = true; }
  void set_priority(std::vector<int> priority) { priority_ = std::move(priority); }

  /// level(a) <= level(b).
  void require_le(int a, int b) {
    if (a == b) return;
    Rel& r = rel(a, b);
    (a < b ? r.le_ab : r.le_ba) = true;
  }

  /// When level(a) == level(b), s_b - s_a must equal d (mod p).
  void require_offset(int a, int b, int d) {
    d = ((d % p_) + p_) % p_;
    if (a == b) {
      if (d != 0) impossible_ = true;
      return;
    }
    Rel& r = rel(a, b);
    const int off = a < b ? d : (p_ - d) % p_;
    r.offsets &= bit(off);
  }

  Result solve(int levels, const Options& opt) const {
    if (levels < 1) throw std::invalid_argument("OrbitCsp: need at least one level");
    if (levels * p_ > 64) throw std::invalid_argument("OrbitCsp: levels * p must be at most 64");
    Result out;
    if (impossible_) return out;
    if (vars_ == 0) {
      out.status = SearchStatus::Found;
      return out;
    }
    const auto adj = adjacency();
    // Expand a few levels of the tree in DFS order and hand each prefix to a
    // worker; the lowest-index success equals what a sequential run returns.
    std::vector<std::vector<std::pair<int, int>>> prefixes{{}};
    if (opt.threads > 1) {
      for (int round = 0; round < 3 && prefixes.size() < static_cast<std::size_t>(4 * opt.threads); ++round) {
        std::vector<std::vector<std::pair<int, int>>> next;
        for (const auto& pre : prefixes) {
          Solver s(*this, adj, levels, opt);
          if (!s.replay(pre)) continue;
          const int var = s.pick();
          if (var < 0) {
            next.push_back(pre);
            continue;
          }
          for (int v : s.candidates(var)) {
            auto longer = pre;
            longer.emplace_back(var, v);
            next.push_back(std::move(longer));
          }
        }
        prefixes = std::move(next);
      }
    }
    std::vector<Result> results(prefixes.size());
    parallel_for(prefixes.size(), opt.threads, [&](std::size_t i) {
      Solver s(*this, adj, levels, opt);
      Result& r = results[i];
      if (!s.replay(prefixes[i])) {
        r.status = SearchStatus::Infeasible;
        return;
      }
      r.status = s.run();
      r.nodes = s.counter.nodes();
      if (r.status == SearchStatus::Found) r.values = s.value;
    });
    for (const Result& r : results) out.nodes += r.nodes;
    bool exhausted = false;
    for (const Result& r : results) {
      if (r.status == SearchStatus::Found) {
        out.status = r.status;
        out.values = r.values;
        return out;
      }
      if (r.status == SearchStatus::BudgetExhausted) exhausted = true;
    }
    out.status = exhausted ? SearchStatus::BudgetExhausted : SearchStatus::Infeasible;
    return out;
  }

 private:
  struct Rel {
    bool le_ab = false;
    bool le_ba = false;
    std::uint64_t offsets = ~std::uint64_t{0};  // allowed s_b - s_a, a < b
  };
  struct Arc {
    int other;
    bool le_self_other;
    bool le_other_self;
    std::uint64_t offsets;  // allowed s_other - s_self
  };

  Rel& rel(int a, int b) { return rels_[{std::min(a, b), std::max(a, b)}]; }

  std::vector<std::vector<Arc>> adjacency() const {
    std::vector<std::vector<Arc>> adj(vars_);
    const std::uint64_t all = full_set(p_);
    for (const auto& [key, r] : rels_) {
      const auto [a, b] = key;
      const std::uint64_t off = r.offsets & all;
      std::uint64_t rev = 0;
      for_each_member(off, [&](int d) { rev |= bit((p_ - d) % p_); });
      adj[a].push_back({b, r.le_ab, r.le_ba, off});
      adj[b].push_back({a, r.le_ba, r.le_ab, rev});
    }
    return adj;
  }

  struct Solver {
    const OrbitCsp& csp;
    const std::vector<std::vector<Arc>>& adj;
    int levels;
    Options opt;
    NodeCounter counter;
    std::vector<std::uint64_t> domain;
    std::vector<int> value;
    std::vector<std::pair<int, std::uint64_t>> trail;
    int assigned = 0;
    int max_level = -1;

    Solver(const OrbitCsp& c, const std::vector<std::vector<Arc>>& a, int l, const Options& o)
        : csp(c), adj(a), levels(l), opt(o), counter(o.budget),
          domain(c.vars_, full_set(l * c.p_)), value(c.vars_, -1) {}

    std::uint64_t compatible(const Arc& arc, int v) const {
      const int p = csp.p_;
      const int la = v / p, sa = v % p;
      const int lo = arc.le_self_other ? la : 0;
      const int hi = arc.le_other_self ? la : levels - 1;
      if (lo > hi) return 0;
      std::uint64_t mask = full_set((hi + 1) * p) & ~full_set(lo * p);
      mask &= ~(full_set(p) << (la * p));
      std::uint64_t same = 0;
      for_each_member(arc.offsets, [&](int d) { same |= bit((sa + d) % p); });
      return mask | (same << (la * p));
    }

    int pick() const {
      int best = -1;
      int best_size = 0;
      for (int x = 0; x < csp.vars_; ++x) {
        if (value[x] >= 0) continue;
        const int s = popcount(domain[x]);
        if (best < 0 || s < best_size || (s == best_size && csp.priority_[x] > csp.priority_[best])) {
          best = x;
          best_size = s;
        }
      }
      return best;
    }

    std::vector<int> candidates(int var) const {
      std::vector<int> out;
      for_each_member(domain[var], [&](int v) {
        const int level = v / csp.p_, sign = v % csp.p_;
        if (opt.fix_first_sign && assigned == 0 && sign != 0) return;
        if (opt.level_symmetry && (level > max_level + 1 || (level == max_level + 1 && sign != 0))) return;
        out.push_back(v);
      });
      return out;
    }

    // Assigns and filters neighbours; false on a wipe-out (state then needs undo).
    bool assign(int var, int v) {
      value[var] = v;
      ++assigned;
      for (const Arc& arc : adj[var]) {
        if (value[arc.other] >= 0) {
          if (!((compatible(arc, v) >> value[arc.other]) & 1U)) return false;
          continue;
        }
        const std::uint64_t d = domain[arc.other] & compatible(arc, v);
        if (d != domain[arc.other]) {
          trail.emplace_back(arc.other, domain[arc.other]);
          domain[arc.other] = d;
          if (d == 0) return false;
        }
      }
      return true;
    }

    void undo(int var, std::size_t mark) {
      while (trail.size() > mark) {
        domain[trail.back().first] = trail.back().second;
        trail.pop_back();
      }
      value[var] = -1;
      --assigned;
    }

    bool replay(const std::vector<std::pair<int, int>>& prefix) {
      for (auto [var, v] : prefix) {
        if (!((domain[var] >> v) & 1U)) return false;
        const int level = v / csp.p_;
        if (!assign(var, v)) return false;
        max_level = std::max(max_level, level);
      }
      return true;
    }

    SearchStatus run() {
      if (!counter.tick()) return SearchStatus::BudgetExhausted;
      const int var = pick();
      if (var < 0) return SearchStatus::Found;
      bool exhausted = false;
      for (int v : candidates(var)) {
        const std::size_t mark = trail.size();
        const int saved_max = max_level;
        if (assign(var, v)) {
          max_level = std::max(max_level, v / csp.p_);
          const SearchStatus s = run();
          if (s == SearchStatus::Found) return s;
          if (s == SearchStatus::BudgetExhausted) exhausted = true;
        }
        max_level = saved_max;
        undo(var, mark);
        if (exhausted) return SearchStatus::BudgetExhausted;
      }
      return SearchStatus::Infeasible;
    }
  };

  int p_;
  int vars_;
  std::vector<int> priority_;
  std::map<std::pair<int, int>, Rel> rels_;
  bool impossible_ = false;
};

/// For each point x of a free action: x = act(shift[x], rep of its orbit).
inline std::vector<int> orbit_shifts(const std::vector<std::vector<int>>& action, const OrbitDecomposition& o) {
  const int n = action.empty() ? 0 : static_cast<int>(action[0].size());
  std::vector<int> shift(n, -1);
  for (const auto& orbit : o.orbits)
    for (int g = 0; g < static_cast<int>(action.size()); ++g) shift[action[g][orbit.front()]] = g;
  return shift;
}

// ---------------------------------------------------------------------------
// Cross-index

struct XindResult {
  enum class Status { Exact, AboveBound, BudgetExhausted };
  Status status = Status::Exact;
  int value = -1;          // Exact: Xind; otherwise the least n not yet refuted
  std::vector<int> map;    // element -> q_element(p, sign, level)
  std::uint64_t nodes = 0;
  bool empty_poset = false;
  int start = 0;           // values below start were excluded by a certificate, not by search
};

struct XindOptions {
  int threads = 1;
  SearchBudget budget{};
  int start = 0;  // a certified lower bound on Xind; smaller n are not searched
};

/// The constraint problem "order-preserving Z_p-map P -> Q_{n,p}".
inline OrbitCsp order_map_csp(const GPoset& poset, const OrbitDecomposition& orbits, const std::vector<int>& shift) {
  const int p = poset.group().order();
  OrbitCsp csp(p, static_cast<int>(orbits.orbits.size()));
  std::vector<int> priority;
  for (const auto& orbit : orbits.orbits) priority.push_back(poset.rank(orbit.front()));
  csp.set_priority(priority);
  for (auto [x, y] : poset.cover_pairs()) {
    const int a = orbits.orbit_of[x], b = orbits.orbit_of[y];
    if (a == b) {
      csp.mark_impossible();
      continue;
    }
    csp.require_le(a, b);
    // same level forces equal images: s_a + g_x = s_b + g_y
    csp.require_offset(a, b, shift[x] - shift[y]);
  }
  return csp;
}

/// Expands orbit values into an element map.
inline std::vector<int> expand_orbit_values(int p, const std::vector<int>& values, const OrbitDecomposition& orbits,
                                            const std::vector<int>& shift) {
  std::vector<int> out(shift.size());
  for (std::size_t x = 0; x < shift.size(); ++x) {
    const int v = values[orbits.orbit_of[x]];
    out[x] = (v / p) * p + (v % p + shift[x]) % p;
  }
  return out;
}

/// Least n <= n_max admitting an order-preserving Z_p-map P -> Q_{n,p}.
/// Xind of the empty poset is -1. With opt.start > 0 the search begins there
/// and the caller vouches for the lower bound.
inline XindResult xind_exact(const GPoset& poset, int n_max, const XindOptions& opt = {}) {
  XindResult out;
  if (poset.empty()) {
    out.empty_poset = true;
    return out;
  }
  if (!poset.group().is_cyclic()) throw std::invalid_argument("xind_exact: needs a cyclic group");
  if (!poset.is_free()) throw std::invalid_argument("xind_exact: poset action is not free");
  const int p = poset.group().order();
  const OrbitDecomposition orbits = orbit_decomposition(poset);
  const std::vector<int> shift = orbit_shifts(poset.action(), orbits);
  const OrbitCsp csp = order_map_csp(poset, orbits, shift);
  OrbitCsp::Options o;
  o.fix_first_sign = true;
  o.threads = opt.threads;
  o.budget = opt.budget;
  out.start = std::max(0, opt.start);
  for (int n = out.start; n <= n_max; ++n) {
    const OrbitCsp::Result r = csp.solve(n + 1, o);
    out.nodes += r.nodes;
    if (r.status == SearchStatus::Found) {
      out.status = XindResult::Status::Exact;
      out.value = n;
      out.map = expand_orbit_values(p, r.values, orbits, shift);
      return out;
    }
    if (r.status == SearchStatus::BudgetExhausted) {
      out.status = XindResult::Status::BudgetExhausted;
      out.value = n;
      return out;
    }
  }
  out.status = XindResult::Status::AboveBound;
  out.value = n_max + 1;
  return out;
}

/// Independent check that f: P -> Q_{n,p} is order preserving and equivariant.
inline bool is_order_map(const GPoset& poset, const std::vector<int>& f, int n) {
  const int p = poset.group().order();
  if (static_cast<int>(f.size()) != poset.size()) return false;
  for (int v : f)
    if (v < 0 || v >= (n + 1) * p) return false;
  for (int a = 0; a < poset.size(); ++a) {
    for (int g = 0; g < p; ++g) {
      const int img = f[poset.act(g, a)];
      if (img / p != f[a] / p || img % p != (f[a] % p + g) % p) return false;
    }
    for (int b = 0; b < poset.size(); ++b)
      if (poset.leq(a, b) && f[a] != f[b] && f[a] / p >= f[b] / p) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Maps into Z_p^{*L}

struct JoinMapResult {
  SearchStatus status = SearchStatus::Infeasible;
  std::vector<int> map;  // vertex -> join_vertex(p, sign, level)
  std::uint64_t nodes = 0;
};

/// Simplicial Z_p-map K -> Z_p^{*levels}. The target is a flag complex, so
/// only edges matter: the two ends must have equal images or different levels.
inline JoinMapResult find_map_to_join(const SimplicialGComplex& k, int levels, int threads = 1,
                                      const SearchBudget& budget = {}) {
  if (!k.group().is_cyclic()) throw std::invalid_argument("find_map_to_join: needs a cyclic group");
  const int p = k.group().order();
  JoinMapResult out;
  if (k.empty()) {
    out.status = SearchStatus::Found;
    return out;
  }
  const OrbitDecomposition orbits = orbits_of_action(k.action());
  if (!orbits.free) return out;  // a fixed vertex has nowhere to go
  const std::vector<int> shift = orbit_shifts(k.action(), orbits);
  OrbitCsp csp(p, static_cast<int>(orbits.orbits.size()));
  const auto& adj = k.adjacency();
  for (int x = 0; x < k.vertex_count(); ++x)
    for (int y = x + 1; y < k.vertex_count(); ++y) {
      if (!adj[x].test(y)) continue;
      const int a = orbits.orbit_of[x], b = orbits.orbit_of[y];
      if (a == b) {
        csp.mark_impossible();
        continue;
      }
      csp.require_offset(a, b, shift[x] - shift[y]);
    }
  OrbitCsp::Options o;
  o.level_symmetry = true;
  o.threads = threads;
  o.budget = budget;
  const OrbitCsp::Result r = csp.solve(levels, o);
  out.status = r.status;
  out.nodes = r.nodes;
  if (r.status == SearchStatus::Found) out.map = expand_orbit_values(p, r.values, orbits, shift);
  return out;
}

/// Independent check of a simplicial Z_p-map K -> Z_p^{*levels} on maximal
/// simplices.
inline bool is_join_map(const SimplicialGComplex& k, const std::vector<int>& f, int levels) {
  const int p = k.group().order();
  if (static_cast<int>(f.size()) != k.vertex_count()) return false;
  for (int v : f)
    if (v < 0 || v >= levels * p) return false;
  for (int g = 0; g < p; ++g)
    for (int x = 0; x < k.vertex_count(); ++x) {
      const int img = f[k.act(g, x)];
      if (img / p != f[x] / p || img % p != (f[x] % p + g) % p) return false;
    }
  for (const Simplex& s : k.maximal_simplices())
    for (std::size_t i = 0; i < s.size(); ++i)
      for (std::size_t j = i + 1; j < s.size(); ++j)
        if (f[s[i]] != f[s[j]] && f[s[i]] / p == f[s[j]] / p) return false;
  return true;
}

}  // namespace zpfan
