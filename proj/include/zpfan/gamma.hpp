#pragma once

#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "zpfan/tucker.hpp"
#include "zpfan/value.hpp"

namespace zpfan {

/// The part of a labeled simplex at levels 1..alpha (sigma) and the part
/// above, shifted down by alpha (tau).
struct SplitSimplex {
  LabeledSimplex sigma;
  LabeledSimplex tau;
};

inline SplitSimplex split_at(const LabeledSimplex& t, int alpha) {
  if (alpha < 0 || alpha > t.m) throw std::invalid_argument("split_at: alpha out of range");
  SplitSimplex s{LabeledSimplex::empty(t.p, alpha), LabeledSimplex::empty(t.p, t.m - alpha)};
  for (int e = 0; e < t.p; ++e) {
    s.sigma.levels[e] = t.levels[e] & full_set(alpha);
    s.tau.levels[e] = t.levels[e] >> alpha;
  }
  return s;
}

/// Which branch of the case analysis an edge A < A' of sd K falls under.
enum class GammaCase {
  Sigma,     // both tau parts empty
  SigmaTau,  // tau(A) empty, tau(A') not
  I,         // h(tau) = h(tau') = 0
  II,        // h(tau) = 0 < h(tau')
  IIIa,      // h(tau) = h(tau') > 0
  IIIb,      // 0 < h(tau) < h(tau'), or the reverse
};

inline const char* to_string(GammaCase c) {
  switch (c) {
    case GammaCase::Sigma: return "sigma";
    case GammaCase::SigmaTau: return "sigma-tau";
    case GammaCase::I: return "i";
    case GammaCase::II: return "ii";
    case GammaCase::IIIa: return "iii-a";
    case GammaCase::IIIb: return "iii-b";
  }
  return "?";
}

inline GammaCase gamma_case(const LabeledSimplex& a, const LabeledSimplex& b, int alpha) {
  const SplitSimplex sa = split_at(a, alpha), sb = split_at(b, alpha);
  if (sa.tau.empty() && sb.tau.empty()) return GammaCase::Sigma;
  if (sa.tau.empty() || sb.tau.empty()) return GammaCase::SigmaTau;
  const int ha = value_l(sa.tau).h, hb = value_l(sb.tau).h;
  if (ha == 0 && hb == 0) return GammaCase::I;
  if (ha == 0 || hb == 0) return GammaCase::II;
  return ha == hb ? GammaCase::IIIa : GammaCase::IIIb;
}

/// Replaceable pieces of Gamma, so that tests can feed in broken versions and
/// watch the check reject them.
struct GammaOptions {
  std::function<int(const LabeledSimplex&)> value;         // l(tau); default value_l
  std::function<int(VertexSet, int)> sign0;                // s_0(empty classes, p); default canonical_sign0
  std::function<int(const LabeledSimplex&)> sign;          // s(tau bar); default canonical_sign
  std::vector<std::pair<int, int>> injected_edges;         // treated as edges of sd K
};

struct GammaValue {
  int sign = 0;
  int level = 0;  // 1-based
  bool operator==(const GammaValue&) const = default;
};

struct GammaViolation {
  int lower = 0, upper = 0;  // simplex indices
  GammaCase proof_case = GammaCase::Sigma;
  std::string reason;
};

struct GammaReport {
  int n = 0, alpha = 0, p = 2;
  int levels = 0;  // target Z_p^{*levels}
  bool precondition = true;
  std::optional<int> too_large;  // a simplex with l(tau) >= n - alpha
  std::vector<GammaValue> values;
  bool equivariant = true;
  std::vector<GammaViolation> violations;

  bool valid() const { return precondition && equivariant && violations.empty(); }
};

/// Gamma(sigma u tau) for one nonempty simplex.
/// tau empty: (eps, j) with j the top level of sigma.
/// h(tau) = 0: (s_0(empty classes of tau), alpha + l(tau)).
/// h(tau) > 0: (s(union of the smallest classes), alpha + l(tau)).
inline GammaValue gamma_value(const LabeledSimplex& t, int alpha, const GammaOptions& opt = {}) {
  const SplitSimplex s = split_at(t, alpha);
  const int p = t.p;
  if (s.tau.empty()) {
    if (s.sigma.empty()) throw std::invalid_argument("gamma_value: empty simplex");
    int top = -1;
    for (int e = 0; e < p; ++e)
      if (s.sigma.levels[e]) top = std::max(top, highest(s.sigma.levels[e]));
    const VertexSet signs = s.sigma.signs_at(top);
    if (popcount(signs) != 1) throw std::invalid_argument("gamma_value: sigma part is not a simplex of Z_p^{*alpha}");
    return {lowest(signs), top + 1};
  }
  const int l = opt.value ? opt.value(s.tau) : value_l(s.tau).l;
  const int h = value_l(s.tau).h;
  if (h == 0) {
    VertexSet empties = 0;
    for (int e = 0; e < p; ++e)
      if (s.tau.levels[e] == 0) empties |= bit(e);
    return {opt.sign0 ? opt.sign0(empties, p) : canonical_sign0(empties, p), alpha + l};
  }
  LabeledSimplex bar = LabeledSimplex::empty(p, s.tau.m);
  for (int e = 0; e < p; ++e)
    if (s.tau.class_size(e) == h) bar.levels[e] = s.tau.levels[e];
  return {opt.sign ? opt.sign(bar) : canonical_sign(bar), alpha + l};
}

/// Builds Gamma on sd K for the given simplices of K and checks that it is a
/// simplicial Z_p-map into Z_p^{*max(alpha, n-1)}. Every simplex must be
/// sigma u tau with sigma in Z_p^{*alpha} and tau in (sigma^{p-1}_{p-2})^{*(m-alpha)}.
/// The precondition l(tau) <= n-alpha-1 is reported, not enforced.
inline GammaReport gamma_collapse(const std::vector<LabeledSimplex>& simplices, int n, int alpha,
                                  const GammaOptions& opt = {}) {
  GammaReport rep;
  rep.n = n;
  rep.alpha = alpha;
  rep.levels = std::max(alpha, n - 1);
  if (simplices.empty()) return rep;
  const int p = simplices.front().p;
  rep.p = p;
  for (std::size_t i = 0; i < simplices.size(); ++i) {
    const LabeledSimplex& t = simplices[i];
    if (t.p != p || t.empty()) throw std::invalid_argument("gamma_collapse: simplices must be nonempty with one modulus");
    const SplitSimplex s = split_at(t, alpha);
    for (int j = 0; j < alpha; ++j)
      if (popcount(s.sigma.signs_at(j)) > 1) throw std::invalid_argument("gamma_collapse: sigma part not in Z_p^{*alpha}");
    if (!s.tau.in_proper_join()) throw std::invalid_argument("gamma_collapse: tau part not in the proper join");
    if (!s.tau.empty() && value_l(s.tau).l > n - alpha - 1 && !rep.too_large) {
      rep.precondition = false;
      rep.too_large = static_cast<int>(i);
    }
    rep.values.push_back(gamma_value(t, alpha, opt));
  }
  // equivariance on the simplices whose rotations are present
  for (std::size_t i = 0; i < simplices.size() && rep.equivariant; ++i)
    for (int k = 1; k < p; ++k) {
      const LabeledSimplex moved = simplices[i].act(k);
      const GammaValue expect{(rep.values[i].sign + k) % p, rep.values[i].level};
      if (!(gamma_value(moved, alpha, opt) == expect)) {
        rep.equivariant = false;
        break;
      }
    }
  auto check_edge = [&](int a, int b, const char* kind) {
    const GammaValue& x = rep.values[a];
    const GammaValue& y = rep.values[b];
    if (x.level < 1 || x.level > rep.levels || y.level < 1 || y.level > rep.levels) {
      rep.violations.push_back({a, b, gamma_case(simplices[a], simplices[b], alpha), "level outside the target"});
      return;
    }
    if (x.level == y.level && x.sign != y.sign)
      rep.violations.push_back({a, b, gamma_case(simplices[a], simplices[b], alpha), kind});
  };
  for (std::size_t a = 0; a < simplices.size(); ++a)
    for (std::size_t b = 0; b < simplices.size(); ++b)
      if (a != b && simplices[a].subset_of(simplices[b]))
        check_edge(static_cast<int>(a), static_cast<int>(b), "same level, different signs");
  for (auto [a, b] : opt.injected_edges) check_edge(a, b, "same level, different signs on an injected edge");
  return rep;
}

/// All nonempty simplices of Im(lambda): the label sets of chains of signed
/// vectors, viewed in Z_p x [m].
inline std::vector<LabeledSimplex> image_complex(const EquivariantLabeling& lambda) {
  const SignedVectorSpace& space = *lambda.space;
  const int p = space.modulus();
  std::set<std::vector<VertexSet>> seen;
  std::vector<LabeledSimplex> out;
  LabeledSimplex cur = LabeledSimplex::empty(p, lambda.m);
  auto rec = [&](auto&& self, int top) -> void {
    for (int j : space.strict_supersets(top)) {
      const Label& l = lambda[j];
      const VertexSet before = cur.levels[l.sign];
      cur.add(l.sign, l.level - 1);
      if (seen.insert(cur.levels).second) out.push_back(cur);
      self(self, j);
      cur.levels[l.sign] = before;
    }
  };
  for (int i = 0; i < space.size(); ++i) {
    const Label& l = lambda[i];
    cur = LabeledSimplex::empty(p, lambda.m);
    cur.add(l.sign, l.level - 1);
    if (seen.insert(cur.levels).second) out.push_back(cur);
    rec(rec, i);
  }
  return out;
}

}  // namespace zpfan
