#include <gtest/gtest.h>

#include <array>
#include <numeric>
#include <random>
#include <set>

#include "zpfan/constructions.hpp"
#include "zpfan/gamma.hpp"
#include "zpfan/gfan.hpp"
#include "zpfan/tucker.hpp"

using namespace zpfan;

namespace {

std::shared_ptr<const SignedVectorSpace> space_of(int p, int n) { return std::make_shared<const SignedVectorSpace>(p, n); }

EquivariantLabeling sign_alt_labeling(int p, int n, int m, int alpha) {
  return EquivariantLabeling::from_function(space_of(p, n), m, alpha, [](const SignedVector& x) {
    return Label{*x.first_nonzero(), alt_of_vector(x)};
  });
}

// Number of labelings passing check_labeling_conditions, trying every value
// on every orbit representative.
std::uint64_t brute_force_admissible(int n, int m, int p, int alpha) {
  auto space = space_of(p, n);
  const std::size_t q = space->representatives().size();
  std::vector<int> v(q, 0);
  std::uint64_t count = 0;
  while (true) {
    std::vector<Label> reps;
    for (int x : v) reps.push_back({x % p, x / p + 1});
    if (check_labeling_conditions(EquivariantLabeling::from_representatives(space, m, alpha, reps)).ok) ++count;
    std::size_t i = 0;
    while (i < q && v[i] == p * m - 1) v[i++] = 0;
    if (i == q) break;
    ++v[i];
  }
  return count;
}

// The usual proper colouring of KG(n, k): min(S)+1 while min(S) <= n-2k,
// one extra colour for the rest.
Coloring kneser_standard_coloring(const Hypergraph& f, int n, int k) {
  std::vector<int> colors;
  for (VertexSet e : f.edges()) colors.push_back(std::min(lowest(e), n - 2 * k + 1) + 1);
  return Coloring::from(colors);
}

Coloring random_proper_coloring(const Hypergraph& h, std::mt19937_64& rng) {
  std::vector<int> order(h.vertex_count());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<int> colors(h.vertex_count(), 0);
  for (int v : order) {
    for (int c = 1;; ++c) {
      colors[v] = c;
      bool ok = true;
      for (int e : h.incident(v)) {
        bool mono = true;
        for_each_member(h.edge(e), [&](int u) { mono = mono && colors[u] == c; });
        if (mono) ok = false;
      }
      if (ok) break;
    }
  }
  return Coloring::from(colors);
}

}  // namespace

TEST(SignedVectorSpace, StructureMatchesDefinitions) {
  for (int p : {2, 3})
    for (int n = 1; n <= 3; ++n) {
      SignedVectorSpace s(p, n);
      int expected = 1;
      for (int i = 0; i < n; ++i) expected *= p + 1;
      EXPECT_EQ(s.size(), expected - 1);
      EXPECT_EQ(static_cast<int>(s.representatives().size()) * p, s.size());
      for (int i = 0; i < s.size(); ++i) {
        EXPECT_EQ(s.act(s.shift(i), s.representative(i)), i);
        std::vector<int> up, down;
        for (int j = 0; j < s.size(); ++j) {
          if (j != i && s.vector(i).subset_of(s.vector(j))) up.push_back(j);
          if (j != i && s.vector(j).subset_of(s.vector(i))) down.push_back(j);
        }
        std::vector<int> got_down = s.strict_subsets(i);
        std::sort(got_down.begin(), got_down.end());
        EXPECT_EQ(s.strict_supersets(i), up);
        EXPECT_EQ(got_down, down);
      }
    }
}

TEST(LabelingConditions, SignAltPassesWhenAlphaIsN) {
  for (int p : {2, 3})
    for (int n = 1; n <= 3; ++n) {
      const EquivariantLabeling l = sign_alt_labeling(p, n, n, n);
      EXPECT_TRUE(check_labeling_conditions(l).ok) << "p=" << p << " n=" << n;
    }
}

TEST(LabelingConditions, ReportsViolations) {
  EquivariantLabeling l = sign_alt_labeling(2, 2, 2, 2);
  l.labels[0].sign ^= 1;  // (+,0) now disagrees with (-,0)
  const LabelingVerdict v = check_labeling_conditions(l);
  EXPECT_FALSE(v.ok);
  EXPECT_EQ(v.failure, "equivariance");
  EXPECT_EQ(v.witness.front(), 0);

  // (+,0) and (+,+) both at level 1 <= alpha with different signs
  auto space = space_of(2, 2);
  std::vector<Label> reps(space->representatives().size(), Label{0, 2});
  reps[0] = {0, 1};
  reps[2] = {1, 1};  // representative (+,+)
  ASSERT_EQ(space->vector(space->representatives()[2]).to_string(), "(+,+)");
  const LabelingVerdict c1 = check_labeling_conditions(EquivariantLabeling::from_representatives(space, 2, 1, reps));
  EXPECT_EQ(c1.failure, "condition-1");

  // a 3-chain (w1,0,0) < (w1,w2,0) < (w1,w2,w3) at level 1 with all three signs
  auto s3 = space_of(3, 3);
  std::vector<Label> r3(s3->representatives().size(), Label{0, 2});
  for (std::size_t r = 0; r < r3.size(); ++r) {
    const SignedVector& x = s3->vector(s3->representatives()[r]);
    if (x.to_string() == "(w1,0,0)") r3[r] = {1, 1};
    if (x.to_string() == "(w1,w2,0)") r3[r] = {2, 1};
    if (x.to_string() == "(w1,w2,w3)") r3[r] = {0, 1};
  }
  // the representatives above are the ones whose orbit contains those vectors
  EquivariantLabeling l3 = EquivariantLabeling::from_representatives(s3, 2, 0, r3);
  const LabelingVerdict c2 = check_labeling_conditions(l3);
  EXPECT_FALSE(c2.ok);
  EXPECT_EQ(c2.failure, "condition-2");
  EXPECT_EQ(c2.witness.size(), 3u);
}

TEST(LabelingConditions, IncrementalEnumerationMatchesBruteForce) {
  for (auto [n, m, p, alpha] : std::vector<std::array<int, 4>>{{2, 2, 2, 0}, {2, 2, 2, 1}, {2, 1, 3, 0}, {2, 2, 3, 1},
                                                                {1, 3, 3, 0}, {3, 1, 2, 0}}) {
    const SweepResult r = fan_lemma_sweep(n, m, p, alpha);
    EXPECT_EQ(r.admissible, brute_force_admissible(n, m, p, alpha)) << n << m << p << alpha;
  }
}

TEST(FanChain, SmallExample) {
  // lambda = (first sign, alt) at p=2, n=2, alpha=0
  const EquivariantLabeling l = sign_alt_labeling(2, 2, 2, 0);
  ASSERT_TRUE(check_labeling_conditions(l).ok);
  const FanChainResult r = find_fan_chain(l);
  ASSERT_EQ(r.status, ChainStatus::Found);
  ASSERT_EQ(r.chain.chain.size(), 2u);
  EXPECT_EQ(l.space->vector(r.chain.chain[0]).to_string(), "(0,+)");
  EXPECT_EQ(l.space->vector(r.chain.chain[1]).to_string(), "(-,+)");
  EXPECT_EQ(r.chain.labels[0], (Label{0, 1}));
  EXPECT_EQ(r.chain.labels[1], (Label{1, 2}));
  EXPECT_TRUE(is_fan_chain(l, r.chain.chain));
}

TEST(FanChain, RejectsInadmissibleLabeling) {
  EquivariantLabeling l = sign_alt_labeling(2, 2, 2, 0);
  l.labels[0].sign ^= 1;
  EXPECT_THROW(find_fan_chain(l), std::invalid_argument);
}

TEST(FanChain, ValidatorCatchesBadChains) {
  const EquivariantLabeling l = sign_alt_labeling(2, 2, 2, 0);
  const int a = l.space->index_of(SignedVector::parse(2, "(+,0)"));
  const int b = l.space->index_of(SignedVector::parse(2, "(+,-)"));
  const int c = l.space->index_of(SignedVector::parse(2, "(0,+)"));
  EXPECT_FALSE(is_fan_chain(l, {a, b}));  // both signs +
  EXPECT_FALSE(is_fan_chain(l, {c, b}));  // not nested
  EXPECT_FALSE(is_fan_chain(l, {a}));     // too short
}

TEST(FanLemmaSweep, SmallGridsHaveNoCounterexamples) {
  for (auto [n, m, p, alpha] : std::vector<std::array<int, 4>>{{1, 1, 2, 0}, {2, 2, 2, 0}, {2, 2, 2, 1}, {2, 1, 3, 0},
                                                                {2, 2, 3, 0}, {2, 2, 3, 1}, {2, 3, 3, 2}}) {
    const SweepResult r = fan_lemma_sweep(n, m, p, alpha);
    EXPECT_TRUE(r.inequality_regime);
    EXPECT_GT(r.admissible, 0u);
    EXPECT_EQ(r.counterexamples, 0u) << n << m << p << alpha;
    EXPECT_EQ(r.chains_found, r.admissible);
  }
}

TEST(FanLemmaSweep, NoAdmissibleLabelingOutsideTheInequality) {
  for (auto [n, m, p, alpha] : std::vector<std::array<int, 4>>{{3, 1, 2, 0}, {3, 2, 2, 0}, {3, 2, 2, 1}, {2, 1, 2, 0},
                                                                {3, 1, 3, 0}}) {
    const SweepResult r = fan_lemma_sweep(n, m, p, alpha);
    EXPECT_FALSE(r.inequality_regime);
    EXPECT_EQ(r.admissible, 0u) << n << m << p << alpha;
    EXPECT_TRUE(r.clean());
  }
}

TEST(FanLemmaSweep, DeterministicAcrossThreadsAndSeeds) {
  SweepOptions one, four;
  four.threads = 4;
  const SweepResult a = fan_lemma_sweep(2, 2, 3, 0, one);
  const SweepResult b = fan_lemma_sweep(2, 2, 3, 0, four);
  EXPECT_EQ(a.admissible, b.admissible);
  EXPECT_EQ(a.first_labeling->size(), b.first_labeling->size());
  for (std::size_t i = 0; i < a.first_labeling->size(); ++i) EXPECT_EQ((*a.first_labeling)[i], (*b.first_labeling)[i]);
  EXPECT_EQ(a.first_chain->chain, b.first_chain->chain);

  SweepOptions sampled;
  sampled.exhaustive = false;
  sampled.samples = 50;
  sampled.seed = 9;
  const SweepResult s1 = fan_lemma_sweep(3, 3, 2, 1, sampled);
  const SweepResult s2 = fan_lemma_sweep(3, 3, 2, 1, sampled);
  EXPECT_EQ(s1.admissible, 50u);
  EXPECT_EQ(s1.counterexamples, 0u);
  for (std::size_t i = 0; i < s1.first_labeling->size(); ++i) EXPECT_EQ((*s1.first_labeling)[i], (*s2.first_labeling)[i]);
}

TEST(NonPrime, P4RunsAndIsRecorded) {
  const SweepResult r = fan_lemma_sweep(2, 2, 4, 0);
  EXPECT_GT(r.admissible, 0u);
  EXPECT_EQ(r.chains_found + r.counterexamples + r.budget_exhausted, r.admissible);
}

TEST(ClassicalTucker, CountsAgreeWithTheFanSweep) {
  for (int n = 1; n <= 3; ++n)
    for (int m = 1; m <= 3; ++m) {
      if (n == 3 && m == 3) continue;  // 22 million labelings; covered by the acceptance run
      const std::uint64_t direct = count_tucker_labelings(n, m);
      EXPECT_EQ(direct, fan_lemma_sweep(n, m, 2, 0).admissible) << n << " " << m;
      if (m < n) EXPECT_EQ(direct, 0u);
      else EXPECT_GT(direct, 0u);
    }
}

TEST(ClassicalTucker, DirectCheckAgreesWithConditions) {
  std::mt19937_64 rng(5);
  auto space = space_of(2, 3);
  int agreements = 0, admissible = 0;
  for (int trial = 0; trial < 4000; ++trial) {
    std::vector<Label> reps;
    for (std::size_t r = 0; r < space->representatives().size(); ++r)
      reps.push_back({static_cast<int>(rng() % 2), static_cast<int>(rng() % 3) + 1});
    // bias toward admissible labelings: most vectors on their own level by support size
    if (trial % 2)
      for (std::size_t r = 0; r < reps.size(); ++r) {
        const SignedVector& x = space->vector(space->representatives()[r]);
        reps[r] = {*x.first_nonzero(), alt_of_vector(x)};
        if (rng() % 4 == 0) reps[r].sign ^= 1;
      }
    const EquivariantLabeling l = EquivariantLabeling::from_representatives(space, 3, 0, reps);
    std::vector<int> signed_labels;
    for (const Label& x : l.labels) signed_labels.push_back(x.sign == 0 ? x.level : -x.level);
    const bool a = is_tucker_labeling(*space, signed_labels, 3);
    const bool b = check_labeling_conditions(l).ok;
    agreements += a == b;
    admissible += a;
  }
  EXPECT_EQ(agreements, 4000);
  EXPECT_GT(admissible, 0);
}

TEST(LambdaFromColoring, Examples) {
  const Hypergraph f = complete_hypergraph(5, 2);
  const Coloring c = kneser_standard_coloring(f, 5, 2);
  const ColoringLabeling cl = lambda_from_coloring(f, 2, c, identity_ordering(5));
  EXPECT_EQ(cl.alt, 2);
  EXPECT_EQ(cl.lambda.m, 2 + 3);
  EXPECT_EQ(cl.lambda.at(SignedVector::parse(2, "(+,-,0,0,0)")), (Label{0, 2}));
  // alt 1 stays in the first regime even though {1,2} is an edge
  EXPECT_EQ(cl.lambda.at(SignedVector::parse(2, "(+,+,0,0,0)")), (Label{0, 1}));
  // alt 3: the + class {1,2,4} holds {2,4} of colour 2, the - class {3} nothing
  EXPECT_EQ(cl.lambda.at(SignedVector::parse(2, "(+,+,-,+,0)")), (Label{0, 2 + 2}));
  // alt 4: colour 3 only on {4,5}, inside the - class
  EXPECT_EQ(cl.lambda.at(SignedVector::parse(2, "(+,-,+,-,-)")), (Label{1, 2 + 3}));
  for (int i = 0; i < cl.lambda.space->size(); ++i)
    EXPECT_EQ(cl.lambda[cl.lambda.space->act(1, i)], (Label{cl.lambda[i].sign ^ 1, cl.lambda[i].level}));
  EXPECT_TRUE(check_labeling_conditions(cl.lambda).ok);
  const FanChainResult r = find_fan_chain(cl.lambda);
  ASSERT_EQ(r.status, ChainStatus::Found);
  EXPECT_EQ(r.chain.chain.size(), 3u);  // 5 - alt_2
}

TEST(LambdaFromColoring, TieBreakUsesTheSubsetOrder) {
  const Hypergraph f4 = complete_hypergraph(4, 2);
  // ({1,2},{3,4}) is an edge of KG^2(K4^2), so a constant colouring is improper
  EXPECT_THROW(lambda_from_coloring(f4, 2, Coloring::from(std::vector<int>(6, 1)), identity_ordering(4)),
               std::invalid_argument);
  EXPECT_THROW(lambda_from_coloring(f4, 2, kneser_standard_coloring(f4, 4, 2), {0, 1, 1, 2}), std::invalid_argument);

  // p = 3: colour 2 on the edges inside {1,2,3,4}, colour 1 elsewhere; no
  // perfect matching of K6 is monochromatic, so this is proper on KG^3(K6^2)
  const Hypergraph f = complete_hypergraph(6, 2);
  std::vector<int> colors;
  for (VertexSet e : f.edges()) colors.push_back(is_subset(e, full_set(4)) ? 2 : 1);
  const Coloring c = Coloring::from(colors);
  const SignedVector x = SignedVector::parse(3, "(w1,w1,w2,w2,w1,w3)");
  // classes {1,2,5} and {3,4} both hold an edge of colour 2
  const ColoringLabeling colex = lambda_from_coloring(f, 3, c, identity_ordering(6));
  const ColoringLabeling reverse =
      lambda_from_coloring(f, 3, c, identity_ordering(6), [](VertexSet u, VertexSet v) { return u > v; });
  EXPECT_EQ(colex.alt, 3);
  EXPECT_EQ(colex.lambda.at(x), (Label{1, 3 + 2}));
  EXPECT_EQ(reverse.lambda.at(x), (Label{2, 3 + 2}));
  EXPECT_TRUE(check_labeling_conditions(colex.lambda).ok);
  EXPECT_TRUE(check_labeling_conditions(reverse.lambda).ok);
}

TEST(LambdaFromColoring, AlwaysAdmissible) {
  std::mt19937_64 rng(17);
  struct Case {
    Hypergraph f;
    int p;
  };
  const std::vector<Case> cases{{complete_hypergraph(5, 2), 2}, {complete_hypergraph(6, 2), 2},
                                {complete_hypergraph(6, 2), 3}, {complete_hypergraph(5, 3), 2},
                                {cycle_graph(6), 2},            {cycle_graph(6), 3}};
  for (const Case& cs : cases) {
    const KneserHypergraph kg = kneser(cs.f, cs.p);
    for (int trial = 0; trial < 6; ++trial) {
      const Coloring c = random_proper_coloring(kg.graph, rng);
      Ordering sigma = identity_ordering(cs.f.vertex_count());
      if (trial % 2) std::shuffle(sigma.begin(), sigma.end(), rng);
      const ColoringLabeling cl = lambda_from_coloring(cs.f, cs.p, c, sigma);
      const LabelingVerdict v = check_labeling_conditions(cl.lambda);
      EXPECT_TRUE(v.ok) << v.describe(cl.lambda);
      const FanChainResult r = find_fan_chain(cl.lambda);
      EXPECT_EQ(r.status, ChainStatus::Found);
      EXPECT_TRUE(is_fan_chain(cl.lambda, r.chain.chain));
    }
  }
}

TEST(Gamma, WellDefinedWhenEverythingIsInSigma) {
  const EquivariantLabeling l = sign_alt_labeling(2, 2, 2, 2);
  const std::vector<LabeledSimplex> k = image_complex(l);
  ASSERT_FALSE(k.empty());
  const GammaReport r = gamma_collapse(k, 2, 2);
  EXPECT_TRUE(r.precondition);
  EXPECT_TRUE(r.equivariant);
  EXPECT_TRUE(r.violations.empty());
  EXPECT_TRUE(r.valid());
}

TEST(Gamma, PreconditionFailsForAdmissibleLabelings) {
  // the fan chain exists, so some tau has l(tau) >= n - alpha
  const EquivariantLabeling l = sign_alt_labeling(2, 2, 2, 0);
  const GammaReport r = gamma_collapse(image_complex(l), 2, 0);
  EXPECT_FALSE(r.precondition);
  ASSERT_TRUE(r.too_large.has_value());
}

TEST(Gamma, ValidOnRandomComplexesBelowTheThreshold) {
  std::mt19937_64 rng(23);
  for (int p : {2, 3, 5})
    for (int trial = 0; trial < 30; ++trial) {
      const int alpha = static_cast<int>(rng() % 3);
      const int m = alpha + 3;
      const int n = alpha + 1 + static_cast<int>(rng() % 5);
      // random maximal simplices, then everything below them and their rotations
      std::vector<LabeledSimplex> top;
      for (int s = 0; s < 4; ++s) {
        LabeledSimplex t = LabeledSimplex::empty(p, m);
        for (int j = 0; j < m; ++j) {
          if (j < alpha) {
            if (rng() % 2) t.add(static_cast<int>(rng() % p), j);
            continue;
          }
          for (int e = 0; e < p - 1; ++e)
            if (rng() % 2) t.add(static_cast<int>((e + rng()) % p), j);
          if (t.signs_at(j) == full_set(p)) t.levels[0] &= ~bit(j);
        }
        if (!t.empty() && value_l(split_at(t, alpha).tau).l <= n - alpha - 1) top.push_back(t);
      }
      std::set<std::vector<VertexSet>> seen;
      std::vector<LabeledSimplex> all;
      for (const LabeledSimplex& t : top)
        for (int k = 0; k < p; ++k) {
          const LabeledSimplex r = t.act(k);
          std::vector<std::pair<int, int>> labels;
          for (int e = 0; e < p; ++e) for_each_member(r.levels[e], [&](int j) { labels.emplace_back(e, j); });
          for (std::uint64_t sub = 1; sub < (std::uint64_t{1} << labels.size()); ++sub) {
            LabeledSimplex s = LabeledSimplex::empty(p, m);
            for (std::size_t b = 0; b < labels.size(); ++b)
              if (sub >> b & 1) s.add(labels[b].first, labels[b].second);
            if (seen.insert(s.levels).second) all.push_back(s);
          }
        }
      if (all.empty()) continue;
      const GammaReport rep = gamma_collapse(all, n, alpha);
      EXPECT_TRUE(rep.precondition);
      EXPECT_TRUE(rep.equivariant);
      EXPECT_TRUE(rep.violations.empty()) << "p=" << p << " case " << to_string(rep.violations.front().proof_case);
    }
}

TEST(Gamma, InjectedCaseIEdgeIsFlagged) {
  // tau = {(+,1)} and tau' = {(-,1)}: not nested, h = 0 and equal l
  const std::vector<LabeledSimplex> k{LabeledSimplex::from_pairs(2, 2, {{0, 0}}),
                                      LabeledSimplex::from_pairs(2, 2, {{1, 0}})};
  GammaOptions opt;
  opt.injected_edges = {{0, 1}};
  const GammaReport r = gamma_collapse(k, 3, 0, opt);
  ASSERT_EQ(r.violations.size(), 1u);
  EXPECT_EQ(r.violations[0].proof_case, GammaCase::I);
  EXPECT_TRUE(gamma_collapse(k, 3, 0).valid());
}

TEST(Gamma, BrokenValueFunctionIsFlaggedInCasesIIAndIII) {
  // constant l and constant but different signs collapse everything onto one level
  GammaOptions opt;
  opt.value = [](const LabeledSimplex&) { return 1; };
  opt.sign0 = [](VertexSet, int) { return 0; };
  opt.sign = [](const LabeledSimplex& t) { return t.size() % 2; };
  const int p = 2, m = 4;
  const LabeledSimplex a = LabeledSimplex::from_pairs(p, m, {{0, 0}});                                // h 0
  const LabeledSimplex b = LabeledSimplex::from_pairs(p, m, {{0, 0}, {1, 1}});                        // h 1, |bar| 2
  const LabeledSimplex c = LabeledSimplex::from_pairs(p, m, {{0, 0}, {1, 1}, {0, 2}});                // h 1, |bar| 1
  const LabeledSimplex d = LabeledSimplex::from_pairs(p, m, {{0, 0}, {1, 1}, {0, 2}, {1, 3}});        // h 2, |bar| 4
  const LabeledSimplex e = LabeledSimplex::from_pairs(p, m, {{0, 0}, {1, 1}, {1, 3}, {0, 2}, {1, 2}});  // not proper
  (void)e;
  const GammaReport r = gamma_collapse({a, b, c, d}, 9, 0, opt);
  std::set<GammaCase> cases;
  for (const GammaViolation& v : r.violations) cases.insert(v.proof_case);
  EXPECT_TRUE(cases.count(GammaCase::II));    // a < b
  EXPECT_TRUE(cases.count(GammaCase::IIIa));  // b < c
  EXPECT_TRUE(cases.count(GammaCase::IIIb));  // c < d
  EXPECT_FALSE(r.valid());
  EXPECT_TRUE(gamma_collapse({a, b, c, d}, 9, 0).violations.empty());
}

TEST(Gamma, CaseClassification) {
  const int p = 3, m = 3;
  const LabeledSimplex s1 = LabeledSimplex::from_pairs(p, m, {{1, 0}});
  const LabeledSimplex t1 = LabeledSimplex::from_pairs(p, m, {{1, 0}, {2, 1}});
  const LabeledSimplex t2 = LabeledSimplex::from_pairs(p, m, {{1, 0}, {2, 1}, {0, 2}});
  EXPECT_EQ(gamma_case(s1, s1, 1), GammaCase::Sigma);
  EXPECT_EQ(gamma_case(s1, t1, 1), GammaCase::SigmaTau);
  EXPECT_EQ(gamma_case(s1, t1, 0), GammaCase::I);
  EXPECT_EQ(gamma_case(t1, t2, 0), GammaCase::II);
  EXPECT_THROW(gamma_collapse({LabeledSimplex::from_pairs(2, 2, {{0, 0}, {1, 0}})}, 2, 1), std::invalid_argument);
  EXPECT_THROW(gamma_collapse({LabeledSimplex::from_pairs(2, 2, {{0, 0}, {1, 0}})}, 2, 0), std::invalid_argument);
}

TEST(GFan, IdentityLabelingOnSquare) {
  const SimplicialGComplex t = zp_join_power(2, 2);
  std::vector<GroupLabel> lambda(t.vertex_count());
  for (int level = 0; level < 2; ++level)
    for (int g = 0; g < 2; ++g) lambda[join_vertex(2, g, level)] = {g, level + 1};
  const GFanResult r = gfan_chain(t, lambda, 2, 1);
  ASSERT_EQ(r.status, ChainStatus::Found);
  ASSERT_EQ(r.labels.size(), 2u);
  EXPECT_NE(r.labels[0].g, r.labels[1].g);
  EXPECT_LT(r.labels[0].level, r.labels[1].level);
  EXPECT_TRUE(is_gfan_witness(t, lambda, r.vertices, 1));
  EXPECT_TRUE(r.m_at_least_n_plus_one);
}

TEST(GFan, NoAdmissibleLabelingWithTooFewLevels) {
  const GFanSweepResult r = gfan_sweep(zp_join_power(2, 2), 1, 1);
  EXPECT_EQ(r.admissible, 0u);
  const GFanSweepResult z3 = gfan_sweep(zp_join_power(3, 3), 2, 2);
  EXPECT_EQ(z3.admissible, 0u);
}

TEST(GFan, SweepsFindWitnesses) {
  const SimplicialGComplex points = zp_join_power(2, 1);
  std::vector<GroupLabel> lambda{{0, 1}, {1, 1}};
  const GFanResult r = gfan_chain(points, lambda, 1, 0);
  EXPECT_EQ(r.status, ChainStatus::Found);
  EXPECT_EQ(r.vertices.size(), 1u);
  for (int m = 2; m <= 3; ++m) {
    const GFanSweepResult s = gfan_sweep(zp_join_power(3, 2), m, 1);
    EXPECT_GT(s.admissible, 0u);
    EXPECT_EQ(s.counterexamples, 0u);
  }
  const GFanSweepResult klein = gfan_sweep(join_power(FiniteGroup::klein_four(), 2), 2, 1);
  EXPECT_GT(klein.admissible, 0u);
  EXPECT_EQ(klein.counterexamples, 0u);
  const GFanSweepResult sd = gfan_sweep(barycentric_subdivision(zp_join_power(2, 2)).complex, 2, 1);
  EXPECT_GT(sd.admissible, 0u);
  EXPECT_EQ(sd.counterexamples, 0u);
}

TEST(GFan, RejectsBadLabelings) {
  const SimplicialGComplex t = zp_join_power(2, 2);
  std::vector<GroupLabel> lambda(t.vertex_count(), GroupLabel{0, 1});
  EXPECT_THROW(gfan_chain(t, lambda, 2, 1), std::invalid_argument);
  for (int level = 0; level < 2; ++level)
    for (int g = 0; g < 2; ++g) lambda[join_vertex(2, g, level)] = {g, 1};
  EXPECT_THROW(gfan_chain(t, lambda, 2, 1), std::invalid_argument);  // an edge carries (+,1),(-,1)
}

TEST(PosetChain, Examples) {
  const GPoset q = q_poset(1, 2);
  std::vector<int> id(q.size());
  for (int x = 0; x < q.size(); ++x) id[x] = x;
  const PosetChainResult r = poset_chain(q, id, 1);
  EXPECT_EQ(r.k, 2);
  EXPECT_EQ(r.balanced_status, ChainStatus::Found);
  EXPECT_EQ(r.balanced.size(), 2u);
  ASSERT_TRUE(r.xind.has_value());
  EXPECT_EQ(*r.xind, 1);
  EXPECT_EQ(r.alternating_status, ChainStatus::Found);
  EXPECT_NE(r.alternating[0] % 2, r.alternating[1] % 2);

  const GPoset k22 = hom_poset(complete_hypergraph(2, 2), 2).poset;
  const XindResult x22 = xind_exact(k22, 2);
  const PosetChainResult r22 = poset_chain(k22, x22.map, 0);
  EXPECT_EQ(r22.k, 1);
  EXPECT_EQ(r22.balanced.size(), 1u);

  const GPoset k24 = hom_poset(complete_hypergraph(4, 2), 2).poset;
  const XindResult x24 = xind_exact(k24, 4);
  ASSERT_EQ(x24.value, 2);
  const PosetChainResult r24 = poset_chain(k24, x24.map, 2);
  EXPECT_EQ(r24.alternating_status, ChainStatus::Found);
  ASSERT_EQ(r24.alternating.size(), 3u);
  for (int i = 0; i + 1 < 3; ++i) {
    EXPECT_TRUE(k24.less(r24.alternating[i], r24.alternating[i + 1]));
    EXPECT_NE(x24.map[r24.alternating[i]] % 2, x24.map[r24.alternating[i + 1]] % 2);
  }
  EXPECT_EQ(r24.balanced_status, ChainStatus::Found);
  EXPECT_EQ(static_cast<int>(r24.balanced.size()), r24.k);

  const GPoset q3 = q_poset(2, 3);
  std::vector<int> id3(q3.size());
  for (int x = 0; x < q3.size(); ++x) id3[x] = x;
  const PosetChainResult r3 = poset_chain(q3, id3, 2);
  EXPECT_EQ(r3.k, 3);
  EXPECT_EQ(r3.balanced_status, ChainStatus::Found);
  EXPECT_FALSE(r3.xind.has_value());
}

TEST(PosetChain, RejectsNonMaps) {
  const GPoset q = q_poset(1, 2);
  std::vector<int> bad(q.size(), 0);
  EXPECT_THROW(poset_chain(q, bad, 1), std::invalid_argument);
}
