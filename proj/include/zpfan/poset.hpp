#pragma once

#include <algorithm>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "zpfan/bits.hpp"
#include "zpfan/complex.hpp"
#include "zpfan/group.hpp"

namespace zpfan {

/// Finite poset with a group acting by order automorphisms. The order is
/// given by generating pairs a < b (usually the covering pairs); the cover
/// relation and the reachability closure are derived.
class GPoset {
 public:
  static GPoset from_relations(FiniteGroup group, std::vector<std::string> labels, std::vector<std::vector<int>> action,
                               const std::vector<std::pair<int, int>>& less_pairs) {
    GPoset p(std::move(group), std::move(labels), std::move(action));
    const int n = p.size();
    std::vector<std::vector<int>> up(n);
    for (auto [a, b] : less_pairs) {
      if (a < 0 || b < 0 || a >= n || b >= n || a == b) throw std::invalid_argument("bad order pair");
      up[a].push_back(b);
    }
    for (auto& u : up) {
      std::sort(u.begin(), u.end());
      u.erase(std::unique(u.begin(), u.end()), u.end());
    }
    // topological order (Kahn), rejecting cycles
    std::vector<int> indeg(n, 0);
    for (int a = 0; a < n; ++a)
      for (int b : up[a]) ++indeg[b];
    std::vector<int> topo;
    for (int a = 0; a < n; ++a)
      if (indeg[a] == 0) topo.push_back(a);
    for (std::size_t i = 0; i < topo.size(); ++i)
      for (int b : up[topo[i]])
        if (--indeg[b] == 0) topo.push_back(b);
    if (static_cast<int>(topo.size()) != n) throw std::invalid_argument("order relation has a cycle");
    p.above_.assign(n, DynBitset(n));
    for (int i = n - 1; i >= 0; --i) {
      const int a = topo[i];
      p.above_[a].set(a);
      for (int b : up[a]) p.above_[a] |= p.above_[b];
    }
    p.up_covers_.assign(n, {});
    p.down_covers_.assign(n, {});
    for (int a = 0; a < n; ++a)
      for (int b : up[a]) {
        bool cover = true;
        for (int c : up[a])
          if (c != b && p.above_[c].test(b)) {
            cover = false;
            break;
          }
        if (cover) {
          p.up_covers_[a].push_back(b);
          p.down_covers_[b].push_back(a);
        }
      }
    p.rank_.assign(n, 0);
    for (int a : topo)
      for (int b : p.up_covers_[a]) p.rank_[b] = std::max(p.rank_[b], p.rank_[a] + 1);
    p.topo_ = std::move(topo);
    for (int g = 0; g < p.group_.order(); ++g)
      for (int a = 0; a < n; ++a)
        for (int b : p.up_covers_[a])
          if (!p.less(p.act(g, a), p.act(g, b))) throw std::invalid_argument("group action does not preserve the order");
    return p;
  }

  int size() const { return static_cast<int>(labels_.size()); }
  bool empty() const { return labels_.empty(); }
  const FiniteGroup& group() const { return group_; }
  const std::string& label(int x) const { return labels_[x]; }
  const std::vector<std::string>& labels() const { return labels_; }
  int act(int g, int x) const { return action_[g][x]; }
  const std::vector<std::vector<int>>& action() const { return action_; }

  bool leq(int a, int b) const { return above_[a].test(b); }
  bool less(int a, int b) const { return a != b && above_[a].test(b); }
  bool comparable(int a, int b) const { return leq(a, b) || leq(b, a); }
  const std::vector<int>& up_covers(int a) const { return up_covers_[a]; }
  const std::vector<int>& down_covers(int a) const { return down_covers_[a]; }
  /// Length of the longest chain ending at x, minus one.
  int rank(int x) const { return rank_[x]; }
  /// Elements in a linear extension of the order.
  const std::vector<int>& topological_order() const { return topo_; }

  /// Number of elements in a longest chain (0 for the empty poset).
  int height() const {
    int h = 0;
    for (int r : rank_) h = std::max(h, r + 1);
    return h;
  }

  std::vector<std::pair<int, int>> cover_pairs() const {
    std::vector<std::pair<int, int>> out;
    for (int a = 0; a < size(); ++a)
      for (int b : up_covers_[a]) out.emplace_back(a, b);
    return out;
  }

  std::vector<int> minimal_elements() const {
    std::vector<int> out;
    for (int a = 0; a < size(); ++a)
      if (down_covers_[a].empty()) out.push_back(a);
    return out;
  }

  /// Free: no nonidentity element fixes a point.
  bool is_free() const {
    for (int g = 1; g < group_.order(); ++g)
      for (int x = 0; x < size(); ++x)
        if (action_[g][x] == x) return false;
    return true;
  }

 private:
  GPoset(FiniteGroup group, std::vector<std::string> labels, std::vector<std::vector<int>> action)
      : group_(std::move(group)), labels_(std::move(labels)), action_(std::move(action)) {
    const int n = size();
    if (static_cast<int>(action_.size()) != group_.order()) throw std::invalid_argument("action table needs one row per group element");
    for (const auto& row : action_) {
      if (static_cast<int>(row.size()) != n) throw std::invalid_argument("action row has wrong length");
      std::vector<bool> hit(n, false);
      for (int v : row) {
        if (v < 0 || v >= n || hit[v]) throw std::invalid_argument("group element does not permute the elements");
        hit[v] = true;
      }
    }
    for (int a = 0; a < group_.order(); ++a)
      for (int b = 0; b < group_.order(); ++b)
        for (int x = 0; x < n; ++x)
          if (action_[a][action_[b][x]] != action_[group_.mul(a, b)][x])
            throw std::invalid_argument("action table is not a group action");
  }

  FiniteGroup group_;
  std::vector<std::string> labels_;
  std::vector<std::vector<int>> action_;
  std::vector<DynBitset> above_;
  std::vector<std::vector<int>> up_covers_, down_covers_;
  std::vector<int> rank_;
  std::vector<int> topo_;
};

inline OrbitDecomposition orbit_decomposition(const GPoset& p) { return orbits_of_action(p.action()); }

/// Delta P: chains of P. Maximal chains are walked along covers from minimal
/// to maximal elements.
inline SimplicialGComplex order_complex(const GPoset& p) {
  auto shared = std::make_shared<GPoset>(p);
  auto oracle = [shared](const Simplex& s) {
    for (std::size_t i = 0; i < s.size(); ++i)
      for (std::size_t j = i + 1; j < s.size(); ++j)
        if (!shared->comparable(s[i], s[j])) return false;
    return true;
  };
  auto generator = [shared]() {
    std::vector<Simplex> out;
    Simplex chain;
    auto rec = [&](auto&& self, int x) -> void {
      chain.push_back(x);
      if (shared->up_covers(x).empty()) out.push_back(make_simplex(chain));
      for (int y : shared->up_covers(x)) self(self, y);
      chain.pop_back();
    };
    for (int m : shared->minimal_elements()) rec(rec, m);
    return out;
  };
  return SimplicialGComplex::from_oracle(p.group(), p.labels(), p.action(), oracle, generator);
}

/// Index of (eps, level) in Q_{n,p}; both 0-based.
inline int q_element(int p, int eps, int level) { return level * p + eps; }

/// Q_{n,p}: Z_p x [n+1], (eps,i) < (eps',j) iff i < j.
inline GPoset q_poset(int n, int p) {
  if (n < 0) throw std::invalid_argument("q_poset: n must be >= 0");
  const FiniteGroup g = FiniteGroup::cyclic(p);
  std::vector<std::string> labels;
  for (int i = 0; i <= n; ++i)
    for (int e = 0; e < p; ++e) labels.push_back("(" + g.name(e) + "," + std::to_string(i + 1) + ")");
  std::vector<std::vector<int>> action(p, std::vector<int>((n + 1) * p));
  for (int k = 0; k < p; ++k)
    for (int i = 0; i <= n; ++i)
      for (int e = 0; e < p; ++e) action[k][q_element(p, e, i)] = q_element(p, (e + k) % p, i);
  std::vector<std::pair<int, int>> covers;
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < p; ++a)
      for (int b = 0; b < p; ++b) covers.emplace_back(q_element(p, a, i), q_element(p, b, i + 1));
  return GPoset::from_relations(g, std::move(labels), std::move(action), covers);
}

}  // namespace zpfan
