#include <gtest/gtest.h>

#include <random>

#include "zpfan/colorful.hpp"
#include "zpfan/index_bounds.hpp"

using namespace zpfan;

namespace {

Hypergraph petersen() { return usual_kneser(5, 2, 2).graph; }

// Largest colorful balanced complete partite family, by trying every
// assignment of vertices to "unused" or one of p parts.
int brute_force_max_colorful(const Hypergraph& h, const Coloring& c, int p) {
  const int n = h.vertex_count();
  std::vector<int> digit(n, 0);
  int best = 0;
  while (true) {
    ColorfulWitness w;
    w.parts.parts.assign(p, 0);
    for (int v = 0; v < n; ++v)
      if (digit[v]) w.parts.parts[digit[v] - 1] |= bit(v);
    w.total_size = w.parts.total_size();
    if (w.total_size > best && is_colorful_witness(h, c, w)) best = w.total_size;
    int i = 0;
    while (i < n && digit[i] == p) digit[i++] = 0;
    if (i == n) break;
    ++digit[i];
  }
  return best;
}

// Longest t for which some pair of sides passes the zig-zag validator.
int brute_force_max_zigzag(const Hypergraph& g, const Coloring& c) {
  const int n = g.vertex_count();
  int best = 0;
  std::vector<int> digit(n, 0);
  while (true) {
    ZigzagWitness w;
    for (int v = 0; v < n; ++v) {
      if (digit[v] == 1) w.side_a |= bit(v);
      if (digit[v] == 2) w.side_b |= bit(v);
    }
    const int t = popcount(w.side_a) + popcount(w.side_b);
    if (t > best && !zigzag_witness_problem(g, c, w, t)) best = t;
    int i = 0;
    while (i < n && digit[i] == 2) digit[i++] = 0;
    if (i == n) break;
    ++digit[i];
  }
  return best;
}

Hypergraph random_graph(int n, double density, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(density);
  std::vector<std::vector<int>> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(rng)) edges.push_back({u, v});
  if (edges.empty()) edges.push_back({0, 1});
  return build_hypergraph(n, edges, 2);
}

}  // namespace

TEST(ColorfulBalanced, PetersenAllThreeColorings) {
  const Hypergraph h = petersen();
  int checked = 0;
  for_each_proper_coloring(h, 3, [&](const Coloring& c) {
    ++checked;
    const ColorfulResult r = find_colorful_balanced(h, c, 2, 3);
    ASSERT_EQ(r.status, WitnessStatus::Found);
    EXPECT_EQ(r.witness.total_size, 3);
    EXPECT_FALSE(colorful_witness_problem(h, c, r.witness)) << *colorful_witness_problem(h, c, r.witness);
    std::vector<int> sizes;
    for (VertexSet u : r.witness.parts.parts) sizes.push_back(popcount(u));
    EXPECT_EQ(sizes, (std::vector<int>{2, 1}));
  });
  EXPECT_GT(checked, 0);
}

TEST(ColorfulBalanced, KneserThreeUniformFormulaColoring) {
  const KneserHypergraph kg = usual_kneser(7, 2, 3);
  std::vector<int> colors;
  for (VertexSet e : kg.ground.edges()) colors.push_back(std::min(lowest(e) / 2 + 1, 2));
  const Coloring c = Coloring::from(colors);
  ASSERT_TRUE(is_proper(kg.graph, c));
  const ColorfulResult r = find_colorful_balanced(kg.graph, c, 3, 4);
  ASSERT_EQ(r.status, WitnessStatus::Found);
  std::vector<int> sizes;
  for (VertexSet u : r.witness.parts.parts) sizes.push_back(popcount(u));
  EXPECT_EQ(sizes, (std::vector<int>{2, 1, 1}));
  EXPECT_TRUE(is_colorful_witness(kg.graph, c, r.witness));
}

TEST(ColorfulBalanced, SingleEdgeSplitsIntoSingletons) {
  const Hypergraph h = build_hypergraph(3, {{0, 1, 2}}, 3);
  const ColorfulResult r = find_colorful_balanced(h, Coloring::from({1, 2, 3}), 3, 3);
  ASSERT_EQ(r.status, WitnessStatus::Found);
  EXPECT_EQ(r.witness.parts.parts, (std::vector<VertexSet>{bit(0), bit(1), bit(2)}));
}

TEST(ColorfulBalanced, MaximumMatchesBruteForce) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 25; ++trial) {
    const Hypergraph g = random_graph(7, 0.55, rng);
    const int k = chromatic_number(g).value();
    const Coloring c = *random_proper_coloring(g, k + trial % 2, rng);
    const int oracle = brute_force_max_colorful(g, c, 2);
    const ColorfulResult reach = find_colorful_balanced(g, c, 2, oracle);
    EXPECT_EQ(reach.status, WitnessStatus::Found);
    const ColorfulResult beyond = find_colorful_balanced(g, c, 2, oracle + 1);
    EXPECT_EQ(beyond.status, WitnessStatus::Counterexample);
    EXPECT_EQ(beyond.max_total, oracle);
    EXPECT_TRUE(is_colorful_witness(g, c, beyond.witness));
  }
  const Hypergraph h3 = build_hypergraph(6, {{0, 1, 2}, {0, 1, 3}, {0, 4, 2}, {5, 1, 2}, {3, 4, 5}, {0, 4, 5}}, 3);
  for_each_proper_coloring(h3, 2, [&](const Coloring& c) {
    const int oracle = brute_force_max_colorful(h3, c, 3);
    EXPECT_EQ(find_colorful_balanced(h3, c, 3, oracle + 1).max_total, oracle);
  });
}

TEST(ColorfulBalanced, IndexLowerBoundTargetAlwaysReached) {
  struct Case {
    Hypergraph h;
    int p;
  };
  const std::vector<Case> cases = {{cycle_graph(5), 2},
                                   {complete_hypergraph(4, 2), 2},
                                   {complete_hypergraph(4, 2), 3},
                                   {petersen(), 2},
                                   {complete_hypergraph(5, 3), 3}};
  for (const Case& cs : cases) {
    const int target = ind_bounds(box_complex(cs.h, cs.p)).lower + 1;
    const int chi = chromatic_number(cs.h).value();
    for (int k = chi; k <= chi + 1; ++k)
      for_each_proper_coloring(cs.h, k, [&](const Coloring& c) {
        const ColorfulResult r = find_colorful_balanced(cs.h, c, cs.p, target);
        ASSERT_EQ(r.status, WitnessStatus::Found) << "p=" << cs.p << " target=" << target;
        EXPECT_TRUE(is_colorful_witness(cs.h, c, r.witness));
      }, 2000);
  }
}

TEST(ColorfulBalanced, Errors) {
  const Hypergraph k3 = complete_hypergraph(3, 2);
  EXPECT_THROW(find_colorful_balanced(k3, Coloring::from({1, 1, 2}), 2, 2), std::invalid_argument);
  EXPECT_THROW(find_colorful_balanced(k3, Coloring::from({1, 2, 3}), 4, 2), std::invalid_argument);
  EXPECT_NO_THROW(find_colorful_balanced(k3, Coloring::from({1, 2, 3}), 4, 2, {SearchBudget{}, true}));
  const ColorfulResult r = find_colorful_balanced(k3, Coloring::from({1, 2, 3}), 2, 4);
  EXPECT_EQ(r.status, WitnessStatus::Counterexample);
  EXPECT_EQ(r.max_total, 3);
}

TEST(ColorfulBalanced, ValidatorRejectsBrokenWitnesses) {
  const Hypergraph h = petersen();
  std::optional<Coloring> c;
  for_each_proper_coloring(h, 3, [&](const Coloring& x) { if (!c) c = x; }, 1);
  const ColorfulResult r = find_colorful_balanced(h, *c, 2, 3);
  ASSERT_EQ(r.status, WitnessStatus::Found);
  ColorfulWitness w = r.witness;
  w.parts.parts[1] |= w.parts.parts[0] & (~w.parts.parts[0] + 1);
  EXPECT_TRUE(colorful_witness_problem(h, *c, w));
  w = r.witness;
  w.total_size = 4;
  EXPECT_TRUE(colorful_witness_problem(h, *c, w));
  // two adjacent vertices in one part, nonadjacent across: not complete bipartite
  const ColorfulWitness bad{PartiteFamily{{bit(0) | bit(7), bit(1)}}, 3, {}};
  EXPECT_TRUE(colorful_witness_problem(h, *c, bad));
}

TEST(FanRoute, AgreesWithDirectSearchOnKneserGraphs) {
  std::mt19937_64 rng(5);
  struct Case {
    Hypergraph f;
    int p;
  };
  const std::vector<Case> cases = {{complete_hypergraph(5, 2), 2}, {complete_hypergraph(6, 2), 3},
                                   {complete_hypergraph(5, 3), 2}, {complete_hypergraph(7, 2), 3}};
  for (const Case& cs : cases) {
    const KneserHypergraph kg = kneser(cs.f, cs.p);
    const AltMinResult alt = alt_min(cs.f, cs.p, AltMode::Exact);
    const int target = cs.f.vertex_count() - alt.value;
    for (int trial = 0; trial < 15; ++trial) {
      const Coloring c = *random_proper_coloring(kg.graph, chromatic_number(kg.graph).value() + trial % 3, rng);
      const FanRouteResult fan = colorful_from_fan_chain(cs.f, cs.p, c, alt.ordering);
      ASSERT_EQ(fan.status, WitnessStatus::Found);
      EXPECT_EQ(fan.target, target);
      EXPECT_FALSE(colorful_witness_problem(kg.graph, c, fan.witness)) << *colorful_witness_problem(kg.graph, c, fan.witness);
      EXPECT_EQ(find_colorful_balanced(kg.graph, c, cs.p, target).status, WitnessStatus::Found);
    }
  }
}

TEST(Corpus, ProperColoringsUpToPermutation) {
  // C5 with 3 colours: 30 proper colourings, 5 classes up to permutation
  std::uint64_t seen = 0;
  EXPECT_EQ(for_each_proper_coloring(cycle_graph(5), 3, [&](const Coloring& c) {
              ++seen;
              EXPECT_TRUE(is_proper(cycle_graph(5), c));
              EXPECT_EQ(c[0], 1);
            }),
            5u);
  EXPECT_EQ(seen, 5u);
  EXPECT_EQ(for_each_proper_coloring(complete_hypergraph(4, 2), 3, [](const Coloring&) {}), 0u);
  std::mt19937_64 a(3), b(3);
  EXPECT_EQ(random_proper_coloring(petersen(), 4, a)->colors, random_proper_coloring(petersen(), 4, b)->colors);
  std::mt19937_64 rng(1);
  EXPECT_FALSE(random_proper_coloring(complete_hypergraph(4, 2), 3, rng));
}

TEST(Zigzag, CompleteGraphIdentityColoring) {
  const Hypergraph k4 = complete_hypergraph(4, 2);
  const ZigzagResult r = zigzag_check(k4, Coloring::from({1, 2, 3, 4}));
  EXPECT_TRUE(r.t_from_xind);
  EXPECT_EQ(r.t, 4);
  ASSERT_EQ(r.status, WitnessStatus::Found);
  EXPECT_EQ(r.witness.colors_a, (std::vector<int>{1, 3}));
  EXPECT_EQ(r.witness.colors_b, (std::vector<int>{2, 4}));
  EXPECT_EQ(r.witness.side_a, bit(0) | bit(2));
}

TEST(Zigzag, SingleEdgeAndPetersen) {
  const Hypergraph k2 = complete_hypergraph(2, 2);
  const ZigzagResult e = zigzag_check(k2, Coloring::from({2, 1}));
  EXPECT_EQ(e.t, 2);
  ASSERT_EQ(e.status, WitnessStatus::Found);
  EXPECT_EQ(e.witness.side_a | e.witness.side_b, bit(0) | bit(1));

  const Hypergraph h = petersen();
  for_each_proper_coloring(h, 3, [&](const Coloring& c) {
    const ZigzagResult r = zigzag_check(h, c, 3);
    ASSERT_EQ(r.status, WitnessStatus::Found);
    EXPECT_FALSE(zigzag_witness_problem(h, c, r.witness, 3));
  });
}

TEST(Zigzag, LongestMatchesBruteForce) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    const Hypergraph g = random_graph(7, 0.6, rng);
    const Coloring c = *random_proper_coloring(g, chromatic_number(g).value() + trial % 3, rng);
    const int oracle = brute_force_max_zigzag(g, c);
    const ZigzagResult hit = zigzag_check(g, c, oracle);
    ASSERT_EQ(hit.status, WitnessStatus::Found);
    EXPECT_FALSE(zigzag_witness_problem(g, c, hit.witness, oracle));
    const ZigzagResult miss = zigzag_check(g, c, oracle + 1);
    EXPECT_EQ(miss.status, WitnessStatus::Counterexample);
    EXPECT_EQ(miss.longest, oracle);
  }
}

TEST(Zigzag, Errors) {
  const Hypergraph k3 = complete_hypergraph(3, 2);
  EXPECT_THROW(zigzag_check(k3, Coloring::from({1, 1, 2})), std::invalid_argument);
  EXPECT_THROW(zigzag_check(edgeless_hypergraph(3, 2), Coloring::from({1, 1, 1})), std::invalid_argument);
  EXPECT_THROW(zigzag_check(complete_hypergraph(3, 3), Coloring::from({1, 1, 2})), std::invalid_argument);
}

TEST(LocalFormulas, Examples) {
  const LocalBounds a = local_lower_formulas(7, 3, 3);
  EXPECT_EQ(a.a, 2);
  EXPECT_EQ(a.b, 1);
  EXPECT_EQ(a.hypergraph, 3);
  EXPECT_EQ(local_lower_formulas(3, 2, 2).graph, 3);
  const LocalBounds zero = local_lower_formulas(0, 3, 2);
  EXPECT_TRUE(zero.degenerate);
  EXPECT_EQ(zero.hypergraph, 0);
  EXPECT_THROW(local_lower_formulas(5, 2, 3), std::invalid_argument);
  EXPECT_THROW(local_lower_formulas(5, 4, 2), std::invalid_argument);
  // r = 2 reduces to min(graph bound, t)
  for (int p : {2, 3, 5})
    for (int t = 0; t < 20; ++t) {
      const LocalBounds b = local_lower_formulas(t, p, 2);
      EXPECT_EQ(b.hypergraph, std::min(b.graph, t));
    }
}

TEST(LocalFormulas, IndependenceBoundBelowExactValue) {
  const Hypergraph k5 = complete_hypergraph(5, 2);
  EXPECT_EQ(independence_local_bound(k5, 2), 3);
  EXPECT_GE(local_chromatic_number(petersen()).value(), independence_local_bound(k5, 2));
  EXPECT_GE(local_chromatic_number(petersen()).value(), independence_local_bound(k5, 3));
  EXPECT_EQ(independence_local_bound(cycle_graph(6), 2), 3 - 3 + 1);
}

TEST(LocalFormulas, ClosedNeighbourhoodMatchesGraphDefinition) {
  const Hypergraph g = petersen();
  for (int v = 0; v < g.vertex_count(); ++v) EXPECT_EQ(closed_neighbourhood(g, bit(v)), g.adjacency(v) | bit(v));
}

TEST(CertifyLocal, CompleteGraphK4) {
  const LocalReport rep = certify_local(complete_hypergraph(4, 2), 2);
  EXPECT_EQ(rep.xind, 2);
  EXPECT_EQ(rep.t, 4);
  EXPECT_EQ(rep.bounds.hypergraph, 3);
  EXPECT_TRUE(rep.chi_l.exact);
  EXPECT_EQ(rep.chi_l.value(), 4);
  EXPECT_EQ(rep.verdict, LocalVerdict::Holds);
  ASSERT_TRUE(rep.certificate);
  EXPECT_TRUE(rep.certificate->holds) << rep.certificate->problem;
  EXPECT_LE(rep.certificate->neighbourhood_colors, rep.chi_l.value());
}

TEST(CertifyLocal, CycleTriangleAndSingleEdge) {
  const LocalReport c5 = certify_local(cycle_graph(5), 2);
  EXPECT_EQ(c5.t, 3);
  EXPECT_EQ(c5.chi_l.value(), 3);
  EXPECT_EQ(c5.bounds.hypergraph, 3);
  EXPECT_EQ(c5.verdict, LocalVerdict::Holds);

  const LocalReport k3 = certify_local(complete_hypergraph(3, 2), 3);
  EXPECT_EQ(k3.verdict, LocalVerdict::Holds);
  EXPECT_EQ(k3.chi_l.value(), 3);
  EXPECT_LE(k3.bounds.hypergraph, 3);
  ASSERT_TRUE(k3.certificate);
  EXPECT_TRUE(k3.certificate->holds) << k3.certificate->problem;

  const LocalReport e3 = certify_local(build_hypergraph(3, {{0, 1, 2}}, 3), 3);
  EXPECT_EQ(e3.verdict, LocalVerdict::Holds);
  EXPECT_EQ(e3.chi_l.value(), 2);
  EXPECT_LE(e3.bounds.hypergraph, 2);
  ASSERT_TRUE(e3.certificate);
  EXPECT_TRUE(e3.certificate->holds) << e3.certificate->problem;
}

TEST(CertifyLocal, PreconditionUnmet) {
  const LocalReport rep = certify_local(cycle_graph(5), 3);
  EXPECT_EQ(rep.verdict, LocalVerdict::NotApplicable);
  EXPECT_EQ(rep.omega, 2);
  EXPECT_THROW(certify_local(edgeless_hypergraph(3, 2), 2), std::invalid_argument);
}

TEST(CertifyLocal, BoundNeverAboveExactValue) {
  // refuting small cross-index values on posets like Hom(K2, K5) is slow, so
  // the search is budgeted and undecided instances are counted, not checked
  LocalOptions opt;
  opt.xind.budget = SearchBudget{2'000'000};
  std::mt19937_64 rng(8);
  int decided = 0, undecided = 0;
  for (int trial = 0; trial < 12; ++trial) {
    const Hypergraph g = random_graph(6, 0.6, rng);
    for (int p : {2, 3}) {
      const LocalReport rep = certify_local(g, p, opt);
      if (rep.verdict == LocalVerdict::NotApplicable) continue;
      if (rep.xind < 0) {
        ++undecided;
        continue;
      }
      ++decided;
      EXPECT_EQ(rep.verdict, LocalVerdict::Holds);
      EXPECT_GE(rep.chi_l.value(), rep.bounds.hypergraph);
      if (p == 2) {
        EXPECT_GE(rep.chi_l.value(), ceil_div(rep.t, 2) + 1);
      }
      ASSERT_TRUE(rep.certificate);
      EXPECT_TRUE(rep.certificate->holds) << rep.certificate->problem;
    }
  }
  EXPECT_GE(decided, 3 * undecided);
}
