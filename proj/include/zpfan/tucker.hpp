#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "zpfan/alternation.hpp"
#include "zpfan/budget.hpp"
#include "zpfan/hypergraph.hpp"
#include "zpfan/parallel.hpp"
#include "zpfan/signed_vector.hpp"

namespace zpfan {

/// The nonzero vectors of (Z_p u {0})^n; vector i has code i+1.
class SignedVectorSpace {
 public:
  SignedVectorSpace(int p, int n) : p_(p), n_(n) {
    if (p < 2) throw std::invalid_argument("SignedVectorSpace: p must be >= 2");
    if (n < 1) throw std::invalid_argument("SignedVectorSpace: n must be >= 1");
    long long total = 1;
    for (int i = 0; i < n; ++i) {
      total *= p + 1;
      if (total > 2'000'000) throw std::length_error("SignedVectorSpace: too many signed vectors");
    }
    const int size = static_cast<int>(total - 1);
    vectors_.reserve(size);
    for (int i = 0; i < size; ++i) vectors_.push_back(SignedVector::from_code(p, n, i + 1));
    act_.assign(p, std::vector<int>(size));
    for (int k = 0; k < p; ++k)
      for (int i = 0; i < size; ++i) act_[k][i] = static_cast<int>(vectors_[i].act(k).code()) - 1;
    rep_of_.assign(size, -1);
    shift_of_.assign(size, 0);
    for (int i = 0; i < size; ++i) {
      if (rep_of_[i] >= 0) continue;
      reps_.push_back(i);
      for (int k = 0; k < p; ++k) {
        rep_of_[act_[k][i]] = i;
        shift_of_[act_[k][i]] = k;
      }
    }
    by_support_.resize(size);
    for (int i = 0; i < size; ++i) by_support_[i] = i;
    std::stable_sort(by_support_.begin(), by_support_.end(), [&](int a, int b) {
      return popcount(vectors_[a].support()) < popcount(vectors_[b].support());
    });
  }

  int modulus() const { return p_; }
  int dimension() const { return n_; }
  int size() const { return static_cast<int>(vectors_.size()); }
  const SignedVector& vector(int i) const { return vectors_[i]; }
  int index_of(const SignedVector& x) const {
    if (x.is_zero()) throw std::invalid_argument("the zero vector is not in the domain");
    return static_cast<int>(x.code()) - 1;
  }
  int act(int k, int i) const { return act_[((k % p_) + p_) % p_][i]; }
  VertexSet support(int i) const { return vectors_[i].support(); }

  /// Orbit representatives (the member of least index) in increasing order.
  const std::vector<int>& representatives() const { return reps_; }
  int representative(int i) const { return rep_of_[i]; }
  /// i = act(shift(i), representative(i)).
  int shift(int i) const { return shift_of_[i]; }
  /// Indices sorted by support size, ties by index.
  const std::vector<int>& by_support() const { return by_support_; }

  bool leq(int a, int b) const { return vectors_[a].subset_of(vectors_[b]); }

  /// Nonzero vectors strictly below i: zero out a nonempty proper part of the support.
  std::vector<int> strict_subsets(int i) const {
    std::vector<int> out;
    const VertexSet s = support(i);
    for (VertexSet keep = (s - 1) & s; keep != 0; keep = (keep - 1) & s) out.push_back(restrict(i, keep));
    return out;
  }

  /// Vectors strictly above i: fill a nonempty set of its zero positions.
  std::vector<int> strict_supersets(int i) const {
    std::vector<int> out;
    const VertexSet zeros = full_set(n_) & ~support(i);
    std::vector<SignedVector::Entry> e = vectors_[i].entries();
    auto rec = [&](auto&& self, int pos, bool grew) -> void {
      if (pos == n_) {
        if (grew) out.push_back(static_cast<int>(SignedVector(p_, e).code()) - 1);
        return;
      }
      self(self, pos + 1, grew);
      if (!(zeros & bit(pos))) return;
      for (int eps = 0; eps < p_; ++eps) {
        e[pos] = eps;
        self(self, pos + 1, true);
      }
      e[pos].reset();
    };
    rec(rec, 0, false);
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  int restrict(int i, VertexSet keep) const {
    std::vector<SignedVector::Entry> e = vectors_[i].entries();
    for (int pos = 0; pos < n_; ++pos)
      if (!(keep & bit(pos))) e[pos].reset();
    return static_cast<int>(SignedVector(p_, std::move(e)).code()) - 1;
  }

  int p_;
  int n_;
  std::vector<SignedVector> vectors_;
  std::vector<std::vector<int>> act_;
  std::vector<int> reps_, rep_of_, shift_of_, by_support_;
};

/// (lambda_1, lambda_2): a residue and a level in 1..m.
struct Label {
  int sign = 0;
  int level = 1;
  bool operator==(const Label&) const = default;
};

/// A map from the nonzero signed vectors to Z_p x [m], indexed like its space.
struct EquivariantLabeling {
  std::shared_ptr<const SignedVectorSpace> space;
  int m = 1;
  int alpha = 0;
  std::vector<Label> labels;

  int p() const { return space->modulus(); }
  int n() const { return space->dimension(); }
  const Label& operator[](int i) const { return labels[i]; }
  const Label& at(const SignedVector& x) const { return labels[space->index_of(x)]; }

  /// Labels every orbit from its representative's label.
  static EquivariantLabeling from_representatives(std::shared_ptr<const SignedVectorSpace> space, int m, int alpha,
                                                  const std::vector<Label>& rep_labels) {
    const auto& reps = space->representatives();
    if (rep_labels.size() != reps.size()) throw std::invalid_argument("one label per orbit representative expected");
    EquivariantLabeling out{space, m, alpha, std::vector<Label>(space->size())};
    const int p = space->modulus();
    for (std::size_t r = 0; r < reps.size(); ++r)
      for (int k = 0; k < p; ++k) out.labels[space->act(k, reps[r])] = {(rep_labels[r].sign + k) % p, rep_labels[r].level};
    return out;
  }

  /// Labels every vector by fn(vector).
  static EquivariantLabeling from_function(std::shared_ptr<const SignedVectorSpace> space, int m, int alpha,
                                           const std::function<Label(const SignedVector&)>& fn) {
    EquivariantLabeling out{space, m, alpha, {}};
    out.labels.reserve(space->size());
    for (int i = 0; i < space->size(); ++i) out.labels.push_back(fn(space->vector(i)));
    return out;
  }
};

struct LabelingVerdict {
  bool ok = true;
  std::string failure;       // range, equivariance, condition-1, condition-2
  std::vector<int> witness;  // vector indices, bottom to top for chains

  std::string describe(const EquivariantLabeling& lambda) const {
    if (ok) return "pass";
    std::string s = failure + ":";
    for (int i : witness) {
      const Label& l = lambda[i];
      s += " " + lambda.space->vector(i).to_string() + "->(" + FiniteGroup::cyclic(lambda.p()).name(l.sign) + "," +
           std::to_string(l.level) + ")";
    }
    return s;
  }
};

namespace detail {

inline std::uint64_t all_masks_bit(int p) { return std::uint64_t{1} << (full_set(p)); }

// A chain below i (ending at i) at i's level whose signs cover `need`.
inline bool chain_covering(const SignedVectorSpace& space, const std::vector<Label>& labels, int i, VertexSet need,
                           std::vector<int>& chain) {
  need &= ~bit(labels[i].sign);
  chain.push_back(i);
  if (need == 0) return true;
  for (int j : space.strict_subsets(i))
    if (labels[j].level == labels[i].level && chain_covering(space, labels, j, need, chain)) return true;
  chain.pop_back();
  return false;
}

}  // namespace detail

/// Checks range, equivariance and the two hypotheses of the Z_p-Tucker-Ky Fan
/// lemma; reports the first violation found.
inline LabelingVerdict check_labeling_conditions(const EquivariantLabeling& lambda) {
  const SignedVectorSpace& space = *lambda.space;
  const int p = space.modulus();
  if (p > 6) throw std::invalid_argument("check_labeling_conditions: p must be <= 6");
  if (static_cast<int>(lambda.labels.size()) != space.size()) return {false, "range", {}};
  for (int i = 0; i < space.size(); ++i) {
    const Label& l = lambda[i];
    if (l.sign < 0 || l.sign >= p || l.level < 1 || l.level > lambda.m) return {false, "range", {i}};
  }
  for (int i = 0; i < space.size(); ++i)
    for (int k = 1; k < p; ++k) {
      const Label& moved = lambda[space.act(k, i)];
      if (moved.level != lambda[i].level || moved.sign != (lambda[i].sign + k) % p)
        return {false, "equivariance", {i, space.act(k, i)}};
    }
  for (int j : space.by_support())
    for (int i : space.strict_subsets(j))
      if (lambda[i].level == lambda[j].level && lambda[i].level <= lambda.alpha && lambda[i].sign != lambda[j].sign)
        return {false, "condition-1", {i, j}};
  // sign masks of chains at one level ending at j, built bottom-up
  const std::uint64_t full = detail::all_masks_bit(p);
  std::vector<std::uint64_t> down(space.size(), 0);
  for (int j : space.by_support()) {
    if (lambda[j].level <= lambda.alpha) continue;
    const std::uint64_t own = bit(lambda[j].sign);
    down[j] = std::uint64_t{1} << own;
    for (int i : space.strict_subsets(j)) {
      if (lambda[i].level != lambda[j].level) continue;
      for (std::uint64_t mask = 0; mask < 64; ++mask)
        if (down[i] & (std::uint64_t{1} << mask)) down[j] |= std::uint64_t{1} << (mask | own);
    }
    if (down[j] & full) {
      std::vector<int> chain;
      detail::chain_covering(space, lambda.labels, j, full_set(p), chain);
      std::reverse(chain.begin(), chain.end());
      return {false, "condition-2", chain};
    }
  }
  return {};
}

/// Z_1 < ... < Z_k, bottom first, with their labels.
struct FanChain {
  std::vector<int> chain;
  std::vector<Label> labels;
};

enum class ChainStatus { Found, Counterexample, BudgetExhausted };

inline const char* to_string(ChainStatus s) {
  switch (s) {
    case ChainStatus::Found: return "found";
    case ChainStatus::Counterexample: return "counterexample";
    case ChainStatus::BudgetExhausted: return "budget-exhausted";
  }
  return "?";
}

struct FanChainResult {
  ChainStatus status = ChainStatus::Counterexample;
  FanChain chain;
  std::uint64_t nodes = 0;
};

/// The three conclusions of the Z_p-Tucker-Ky Fan lemma for a given chain, checked
/// from scratch: strict growth, levels above alpha, distinct labels, and
/// per-sign counts between floor and ceil of (n-alpha)/p.
inline bool is_fan_chain(const EquivariantLabeling& lambda, const std::vector<int>& chain) {
  const int k = lambda.n() - lambda.alpha;
  if (static_cast<int>(chain.size()) != std::max(k, 0)) return false;
  const int p = lambda.p();
  std::vector<int> count(p, 0);
  for (std::size_t a = 0; a < chain.size(); ++a) {
    if (lambda[chain[a]].level < lambda.alpha + 1) return false;
    if (a > 0 && (!lambda.space->leq(chain[a - 1], chain[a]) || chain[a - 1] == chain[a])) return false;
    for (std::size_t b = 0; b < a; ++b)
      if (lambda[chain[a]] == lambda[chain[b]]) return false;
    ++count[lambda[chain[a]].sign];
  }
  for (int c : count)
    if (c < k / p || c > (k + p - 1) / p) return false;
  return true;
}

namespace detail {

inline FanChainResult search_fan_chain(const EquivariantLabeling& lambda, const SearchBudget& budget) {
  const SignedVectorSpace& space = *lambda.space;
  const int n = space.dimension();
  const int p = space.modulus();
  const int k = n - lambda.alpha;
  FanChainResult out;
  if (k <= 0) {
    out.status = ChainStatus::Found;
    return out;
  }
  const int lo = k / p, hi = (k + p - 1) / p;
  std::vector<int> count(p, 0);
  std::vector<int> chain;
  NodeCounter counter(budget);
  auto deficit = [&] {
    int d = 0;
    for (int c : count) d += std::max(0, lo - c);
    return d;
  };
  auto fits = [&](int i) {
    const Label& l = lambda[i];
    if (l.level <= lambda.alpha || count[l.sign] >= hi) return false;
    for (int c : chain)
      if (lambda[c] == l) return false;
    return true;
  };
  auto rec = [&](auto&& self) -> bool {
    if (!counter.tick()) return false;
    const int left = k - static_cast<int>(chain.size());
    if (deficit() > left) return false;
    if (left == 0) return true;
    // each step adds at least one coordinate
    if (n - popcount(space.support(chain.back())) < left) return false;
    for (int j : space.strict_supersets(chain.back())) {
      if (!fits(j)) continue;
      chain.push_back(j);
      ++count[lambda[j].sign];
      if (self(self)) return true;
      --count[lambda[j].sign];
      chain.pop_back();
    }
    return false;
  };
  for (int i = 0; i < space.size(); ++i) {
    chain.clear();
    // rotating a chain keeps it valid, so its bottom can be an orbit representative
    if (space.representative(i) != i || !fits(i)) continue;
    if (n - popcount(space.support(i)) < k - 1) continue;
    chain.assign(1, i);
    ++count[lambda[i].sign];
    const bool found = rec(rec);
    if (found) {
      out.status = ChainStatus::Found;
      out.chain.chain = chain;
      for (int c : chain) out.chain.labels.push_back(lambda[c]);
      out.nodes = counter.nodes();
      return out;
    }
    --count[lambda[i].sign];
    if (counter.exhausted()) break;
  }
  out.status = counter.exhausted() ? ChainStatus::BudgetExhausted : ChainStatus::Counterexample;
  out.nodes = counter.nodes();
  return out;
}

}  // namespace detail

/// Depth-first search over containment chains in index order. A
/// Counterexample status means the lemma's conclusion failed for an
/// admissible labeling.
inline FanChainResult find_fan_chain(const EquivariantLabeling& lambda, const SearchBudget& budget = {}) {
  const LabelingVerdict v = check_labeling_conditions(lambda);
  if (!v.ok) throw std::invalid_argument("find_fan_chain: labeling is not admissible (" + v.describe(lambda) + ")");
  FanChainResult r = detail::search_fan_chain(lambda, budget);
  if (r.status == ChainStatus::Found && !is_fan_chain(lambda, r.chain.chain))
    throw std::logic_error("find_fan_chain: search returned an invalid chain");
  return r;
}

// ---------------------------------------------------------------------------
// Sweeps over all admissible labelings

struct SweepOptions {
  bool exhaustive = true;
  std::uint64_t samples = 1000;  // sampled mode
  std::uint64_t seed = 1;
  int threads = 1;
  SearchBudget chain_budget{10'000'000};
};

struct SweepResult {
  int n = 0, m = 0, p = 0, alpha = 0;
  std::uint64_t admissible = 0;
  std::uint64_t chains_found = 0;
  std::uint64_t counterexamples = 0;
  std::uint64_t budget_exhausted = 0;
  bool exhaustive = true;
  // n-alpha <= (p-1)(m-alpha), required of every admissible labeling
  bool inequality_regime = true;
  std::optional<std::vector<Label>> first_counterexample;  // labels of the orbit representatives
  std::optional<std::vector<Label>> first_labeling;
  std::optional<FanChain> first_chain;

  bool clean() const { return counterexamples == 0 && budget_exhausted == 0 && (inequality_regime || admissible == 0); }
};

namespace detail {

// Incremental admissibility: labels are assigned orbit by orbit, and each new
// vector is checked against the vectors labeled so far.
class LabelingBuilder {
 public:
  LabelingBuilder(std::shared_ptr<const SignedVectorSpace> space, int m, int alpha)
      : space_(std::move(space)), m_(m), alpha_(alpha), labels_(space_->size()), labeled_(space_->size(), false) {
    const int size = space_->size();
    subsets_.resize(size);
    supersets_.resize(size);
    for (int i = 0; i < size; ++i) {
      subsets_[i] = space_->strict_subsets(i);
      supersets_[i] = space_->strict_supersets(i);
    }
  }

  int orbit_count() const { return static_cast<int>(space_->representatives().size()); }
  int value_count() const { return space_->modulus() * m_; }
  Label value(int v) const { return {v % space_->modulus(), v / space_->modulus() + 1}; }

  /// Labels orbit r with value v if that keeps the labeling admissible.
  bool assign(int r, int v) {
    const int p = space_->modulus();
    const int rep = space_->representatives()[r];
    const Label base = value(v);
    for (int k = 0; k < p; ++k) {
      const int x = space_->act(k, rep);
      labels_[x] = {(base.sign + k) % p, base.level};
      labeled_[x] = true;
    }
    for (int k = 0; k < p; ++k)
      if (!consistent(space_->act(k, rep))) {
        unassign(r);
        return false;
      }
    return true;
  }

  void unassign(int r) {
    const int rep = space_->representatives()[r];
    for (int k = 0; k < space_->modulus(); ++k) labeled_[space_->act(k, rep)] = false;
  }

  EquivariantLabeling labeling() const { return {space_, m_, alpha_, labels_}; }
  std::vector<Label> representative_labels() const {
    std::vector<Label> out;
    for (int rep : space_->representatives()) out.push_back(labels_[rep]);
    return out;
  }

 private:
  std::uint64_t masks(int i, bool down) const {
    const std::uint64_t own = bit(labels_[i].sign);
    std::uint64_t out = std::uint64_t{1} << own;
    for (int j : down ? subsets_[i] : supersets_[i]) {
      if (!labeled_[j] || labels_[j].level != labels_[i].level) continue;
      const std::uint64_t sub = masks(j, down);
      for (std::uint64_t mask = 0; mask < 64; ++mask)
        if (sub & (std::uint64_t{1} << mask)) out |= std::uint64_t{1} << (mask | own);
    }
    return out;
  }

  bool consistent(int x) const {
    const Label& l = labels_[x];
    if (l.level <= alpha_) {
      for (const auto* list : {&subsets_[x], &supersets_[x]})
        for (int y : *list)
          if (labeled_[y] && labels_[y].level == l.level && labels_[y].sign != l.sign) return false;
      return true;
    }
    const int p = space_->modulus();
    const std::uint64_t down = masks(x, true), up = masks(x, false);
    const VertexSet full = full_set(p);
    for (std::uint64_t a = 0; a < 64; ++a) {
      if (!(down & (std::uint64_t{1} << a))) continue;
      for (std::uint64_t b = 0; b < 64; ++b)
        if ((up & (std::uint64_t{1} << b)) && (a | b) == full) return false;
    }
    return true;
  }

  std::shared_ptr<const SignedVectorSpace> space_;
  int m_, alpha_;
  std::vector<Label> labels_;
  std::vector<bool> labeled_;
  std::vector<std::vector<int>> subsets_, supersets_;
};

inline void record_leaf(const LabelingBuilder& b, const SweepOptions& opt, SweepResult& res) {
  ++res.admissible;
  const EquivariantLabeling lambda = b.labeling();
  if (!res.first_labeling) res.first_labeling = b.representative_labels();
  const FanChainResult c = search_fan_chain(lambda, opt.chain_budget);
  if (c.status == ChainStatus::Found && is_fan_chain(lambda, c.chain.chain)) {
    ++res.chains_found;
    if (!res.first_chain) res.first_chain = c.chain;
  } else if (c.status == ChainStatus::BudgetExhausted) {
    ++res.budget_exhausted;
  } else {
    ++res.counterexamples;
    if (!res.first_counterexample) res.first_counterexample = b.representative_labels();
  }
}

inline void merge_into(SweepResult& into, const SweepResult& part) {
  into.admissible += part.admissible;
  into.chains_found += part.chains_found;
  into.counterexamples += part.counterexamples;
  into.budget_exhausted += part.budget_exhausted;
  if (!into.first_counterexample) into.first_counterexample = part.first_counterexample;
  if (!into.first_labeling) into.first_labeling = part.first_labeling;
  if (!into.first_chain) into.first_chain = part.first_chain;
}

}  // namespace detail

/// Runs find_fan_chain on every admissible labeling at (n, m, p, alpha),
/// enumerated over orbit representatives (or sampled by seeded random descent).
inline SweepResult fan_lemma_sweep(int n, int m, int p, int alpha, const SweepOptions& opt = {}) {
  if (m < 1 || alpha < 0 || alpha > m) throw std::invalid_argument("fan_lemma_sweep: need m >= 1 and 0 <= alpha <= m");
  if (p > 6) throw std::invalid_argument("fan_lemma_sweep: p must be <= 6");
  auto space = std::make_shared<const SignedVectorSpace>(p, n);
  SweepResult res;
  res.n = n, res.m = m, res.p = p, res.alpha = alpha;
  res.exhaustive = opt.exhaustive;
  res.inequality_regime = n - alpha <= (p - 1) * (m - alpha);

  detail::LabelingBuilder proto(space, m, alpha);
  const int orbits = proto.orbit_count();
  const int values = proto.value_count();

  if (!opt.exhaustive) {
    std::mt19937_64 rng(opt.seed);
    for (std::uint64_t s = 0; s < opt.samples; ++s) {
      detail::LabelingBuilder b = proto;
      bool done = false;
      auto rec = [&](auto&& self, int r) -> void {
        if (r == orbits) {
          detail::record_leaf(b, opt, res);
          done = true;
          return;
        }
        std::vector<int> order(values);
        for (int v = 0; v < values; ++v) order[v] = v;
        std::shuffle(order.begin(), order.end(), rng);
        for (int v : order) {
          if (!b.assign(r, v)) continue;
          self(self, r + 1);
          b.unassign(r);
          if (done) return;
        }
      };
      rec(rec, 0);
      if (!done) break;  // no admissible labeling at all
    }
    return res;
  }

  // prefixes over the first few orbits, each finished independently
  int depth = 0;
  std::uint64_t width = 1;
  while (depth < orbits && width < 256) {
    width *= values;
    ++depth;
  }
  std::vector<std::vector<int>> prefixes;
  {
    detail::LabelingBuilder b = proto;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int r) -> void {
      if (r == depth) {
        prefixes.push_back(cur);
        return;
      }
      for (int v = 0; v < values; ++v) {
        if (!b.assign(r, v)) continue;
        cur.push_back(v);
        self(self, r + 1);
        cur.pop_back();
        b.unassign(r);
      }
    };
    rec(rec, 0);
  }
  std::vector<SweepResult> parts(prefixes.size());
  parallel_for(prefixes.size(), opt.threads, [&](std::size_t idx) {
    detail::LabelingBuilder b = proto;
    for (int r = 0; r < depth; ++r) b.assign(r, prefixes[idx][r]);
    SweepResult& part = parts[idx];
    auto rec = [&](auto&& self, int r) -> void {
      if (r == orbits) {
        detail::record_leaf(b, opt, part);
        return;
      }
      for (int v = 0; v < values; ++v) {
        if (!b.assign(r, v)) continue;
        self(self, r + 1);
        b.unassign(r);
      }
    };
    rec(rec, depth);
  });
  for (const SweepResult& part : parts) detail::merge_into(res, part);
  return res;
}

// ---------------------------------------------------------------------------
// Classical Tucker lemma, stated with signed integer labels +-1..+-m

/// lambda(-X) = -lambda(X) and no X subset of Y with lambda(X) = -lambda(Y).
/// `labels` is indexed like SignedVectorSpace(2, n).
inline bool is_tucker_labeling(const SignedVectorSpace& space, const std::vector<int>& labels, int m) {
  if (space.modulus() != 2) throw std::invalid_argument("is_tucker_labeling: needs p = 2");
  for (int i = 0; i < space.size(); ++i) {
    if (labels[i] == 0 || labels[i] < -m || labels[i] > m) return false;
    if (labels[space.act(1, i)] != -labels[i]) return false;
  }
  for (int x = 0; x < space.size(); ++x)
    for (int y = 0; y < space.size(); ++y)
      if (space.leq(x, y) && labels[x] == -labels[y]) return false;
  return true;
}

/// Number of labelings satisfying the classical Tucker hypotheses. Each orbit
/// {X, -X} is labeled through its representative; the check is the plain
/// pairwise one over already labeled vectors.
inline std::uint64_t count_tucker_labelings(int n, int m) {
  SignedVectorSpace space(2, n);
  const auto& reps = space.representatives();
  std::vector<int> labels(space.size(), 0);
  std::vector<std::vector<int>> comparable(space.size());
  for (int x = 0; x < space.size(); ++x)
    for (int y = 0; y < space.size(); ++y)
      if (x != y && (space.leq(x, y) || space.leq(y, x))) comparable[x].push_back(y);
  std::uint64_t count = 0;
  auto ok = [&](int x) {
    for (int y : comparable[x])
      if (labels[y] != 0 && labels[y] == -labels[x]) return false;
    return true;
  };
  auto rec = [&](auto&& self, std::size_t r) -> void {
    if (r == reps.size()) {
      ++count;
      return;
    }
    const int x = reps[r], y = space.act(1, x);
    for (int v = -m; v <= m; ++v) {
      if (v == 0) continue;
      labels[x] = v;
      labels[y] = -v;
      if (ok(x) && ok(y)) self(self, r + 1);
      labels[x] = labels[y] = 0;
    }
  };
  rec(rec, 0);
  return count;
}

// ---------------------------------------------------------------------------
// The labeling built from a proper colouring of KG^p(F)

/// Total order on subsets of positions; `less(a, b)` is a strict order.
using SubsetOrder = std::function<bool(VertexSet, VertexSet)>;

/// Colexicographic order, which on bitmasks is numeric order.
inline bool colex_less(VertexSet a, VertexSet b) { return a < b; }

struct ColoringLabeling {
  EquivariantLabeling lambda;
  int alt = 0;  // alt_p(F, sigma), also alpha
  Ordering sigma;
};

/// For alt(X) <= alt_p(F, sigma): (first nonzero entry, alt(X)). Otherwise
/// level alt_p(F, sigma) + c(X), where c(X) is the largest colour of an F-edge
/// inside some sigma(X^eps), and sign the eps whose class X^eps is largest
/// under `order` among the classes holding an edge of that colour. The colour
/// c is indexed by F's edges, which are the vertices of KG^p(F).
inline ColoringLabeling lambda_from_coloring(const Hypergraph& f, int p, const Coloring& c, const Ordering& sigma,
                                             const SubsetOrder& order = colex_less) {
  const int n = f.vertex_count();
  require_bijection(sigma, n);
  if (c.size() != f.edge_count()) throw std::invalid_argument("lambda_from_coloring: one colour per edge of F expected");
  const KneserHypergraph kg = kneser(f, p);
  if (!is_proper(kg.graph, c)) throw std::invalid_argument("lambda_from_coloring: colouring is not proper on KG^p(F)");
  const int a = alt_sigma(f, p, sigma).value;
  auto space = std::make_shared<const SignedVectorSpace>(p, n);
  int palette = 0;
  for (int col : c.colors) palette = std::max(palette, col);
  auto label = [&](const SignedVector& x) -> Label {
    const int ax = alt_of_vector(x);
    if (ax <= a) return {*x.first_nonzero(), ax};
    int best_color = 0;
    std::optional<int> best_sign;
    for (int eps = 0; eps < p; ++eps) {
      VertexSet img = 0;
      for_each_member(x.class_of(eps), [&](int i) { img |= bit(sigma[i]); });
      int top = 0;
      for (int e = 0; e < f.edge_count(); ++e)
        if (is_subset(f.edge(e), img)) top = std::max(top, c[e]);
      if (top == 0) continue;
      if (top > best_color || (top == best_color && order(x.class_of(*best_sign), x.class_of(eps)))) {
        best_color = top;
        best_sign = eps;
      }
    }
    if (!best_sign) throw std::logic_error("lambda_from_coloring: alt(X) exceeds alt_p(F, sigma) with edge-free classes");
    return {*best_sign, a + best_color};
  };
  return {EquivariantLabeling::from_function(space, a + palette, a, label), a, sigma};
}

}  // namespace zpfan
