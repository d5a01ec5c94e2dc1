#include <gtest/gtest.h>

#include <fstream>
#include <queue>
#include <random>
#include <sstream>

#include "zpfan/constructions.hpp"
#include "zpfan/serialize.hpp"

using namespace zpfan;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool connected(const SimplicialGComplex& k) {
  const auto& adj = k.adjacency();
  std::vector<bool> seen(k.vertex_count(), false);
  std::queue<int> q;
  q.push(0);
  seen[0] = true;
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    for (int w = 0; w < k.vertex_count(); ++w)
      if (adj[v].test(w) && !seen[w]) {
        seen[w] = true;
        q.push(w);
      }
  }
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

// Complete partite check straight from the definition: every r-subset of the
// support meeting each part at most once is an edge.
bool complete_partite_oracle(const Hypergraph& h, const std::vector<VertexSet>& parts, int r) {
  VertexSet support = 0;
  for (VertexSet u : parts) {
    if (u & support) return false;
    support |= u;
  }
  bool ok = true;
  for_each_combination(h.vertex_count(), r, [&](VertexSet s) {
    if (!is_subset(s, support)) return;
    for (VertexSet u : parts)
      if (popcount(s & u) > 1) return;
    if (!h.has_edge(s)) ok = false;
  });
  return ok;
}

// Number of p-tuples of nonempty disjoint sets forming a complete partite
// family, by trying all (p+1)^n assignments.
int hom_count_oracle(const Hypergraph& h, int p, int r) {
  const int n = h.vertex_count();
  long long total = 1;
  for (int i = 0; i < n; ++i) total *= p + 1;
  int count = 0;
  for (long long code = 0; code < total; ++code) {
    std::vector<VertexSet> parts(p, 0);
    long long c = code;
    for (int v = 0; v < n; ++v, c /= p + 1)
      if (c % (p + 1)) parts[c % (p + 1) - 1] |= bit(v);
    if (std::all_of(parts.begin(), parts.end(), [](VertexSet u) { return u != 0; }) &&
        complete_partite_oracle(h, parts, r))
      ++count;
  }
  return count;
}

int alt_oracle(const SignedVector& x) {
  int best = 0;
  for (VertexSet pick = 0; pick < bit(x.size()); ++pick) {
    std::optional<int> last;
    bool ok = true;
    for_each_member(pick, [&](int i) {
      if (!x[i] || (last && *last == *x[i])) ok = false;
      last = x[i];
    });
    if (ok) best = std::max(best, popcount(pick));
  }
  return best;
}

Hypergraph random_hypergraph(std::mt19937& rng, int n, int r, int percent) {
  std::vector<VertexSet> edges;
  for_each_combination(n, r, [&](VertexSet s) {
    if (static_cast<int>(rng() % 100) < percent) edges.push_back(s);
  });
  return build_hypergraph_masks(n, edges, r);
}

SimplicialGComplex empty_complex(int p) {
  return SimplicialGComplex::from_maximal(FiniteGroup::cyclic(p), {}, std::vector<std::vector<int>>(p), {});
}

}  // namespace

TEST(StandardSpaces, SigmaSkeleton) {
  const SimplicialGComplex s = sigma_skeleton(3, 2);
  EXPECT_EQ(s.vertex_count(), 3);
  EXPECT_EQ(s.maximal_simplices(), (std::vector<Simplex>{{0, 1}, {0, 2}, {1, 2}}));
  EXPECT_EQ(s.dimension(), 1);
  EXPECT_TRUE(s.action_is_simplicial());
  EXPECT_THROW(sigma_skeleton(3, 4), std::invalid_argument);
}

TEST(StandardSpaces, JoinPowers) {
  const SimplicialGComplex z = zp_join_power(2, 2);
  EXPECT_EQ(z.vertex_count(), 4);
  EXPECT_EQ(z.maximal_simplices().size(), 4u);
  EXPECT_TRUE(connected(z));
  for (int p : {2, 3})
    for (int n = 1; n <= 4; ++n) {
      const SimplicialGComplex k = zp_join_power(p, n);
      EXPECT_EQ(k.dimension(), n - 1);
      EXPECT_TRUE(k.is_free());
      EXPECT_TRUE(k.action_is_simplicial());
    }
  const OrbitDecomposition o = orbit_decomposition(z);
  EXPECT_EQ(o.orbits.size(), 2u);
  EXPECT_EQ(o.orbits[0].size(), 2u);
  EXPECT_TRUE(o.free);
  EXPECT_EQ(e_n_space(FiniteGroup::klein_four(), 1).dimension(), 1);
}

TEST(Join, OfTwoZeroSpheresIsTheSquare) {
  const SimplicialGComplex s0 = zp_join_power(2, 1);
  const SimplicialGComplex j = join(s0, s0);
  EXPECT_EQ(j.maximal_simplices(), zp_join_power(2, 2).maximal_simplices());
  EXPECT_EQ(j.action(), zp_join_power(2, 2).action());
}

TEST(Join, DimensionsAddAndEmptyIsNeutral) {
  const SimplicialGComplex a = sigma_skeleton(3, 2);
  const SimplicialGComplex b = zp_join_power(3, 2);
  EXPECT_EQ(join(a, b).dimension(), a.dimension() + b.dimension() + 1);
  const SimplicialGComplex e = join(a, empty_complex(3));
  EXPECT_EQ(e.maximal_simplices(), a.maximal_simplices());
  EXPECT_EQ(join(empty_complex(3), a).maximal_simplices(), a.maximal_simplices());
  EXPECT_THROW(join(a, zp_join_power(2, 1)), std::invalid_argument);
}

TEST(Subdivision, SmallExamples) {
  const SimplicialGComplex edge = SimplicialGComplex::from_maximal(
      FiniteGroup::cyclic(2), {"a", "b"}, {{0, 1}, {1, 0}}, {{0, 1}});
  const Subdivision sd_edge = barycentric_subdivision(edge);
  EXPECT_EQ(sd_edge.complex.vertex_count(), 3);
  EXPECT_EQ(sd_edge.complex.maximal_simplices().size(), 2u);

  const Subdivision hex = barycentric_subdivision(sigma_skeleton(3, 2));
  EXPECT_EQ(hex.complex.vertex_count(), 6);
  EXPECT_EQ(hex.complex.maximal_simplices().size(), 6u);
  EXPECT_TRUE(connected(hex.complex));
  for (int v = 0; v < 6; ++v) EXPECT_EQ(hex.complex.adjacency()[v].count(), 2u);
  EXPECT_TRUE(hex.complex.action_is_simplicial());

  const SimplicialGComplex z = zp_join_power(3, 2);
  const Subdivision sd = barycentric_subdivision(z);
  EXPECT_EQ(sd.complex.vertex_count(), static_cast<int>(z.all_simplices().size()));
  EXPECT_EQ(sd.complex.vertex_count(), 6 + 9);
  EXPECT_TRUE(sd.complex.is_free());
  EXPECT_EQ(iterated_subdivision(z, 2).complex.dimension(), 1);
}

TEST(BoxComplex, K2) {
  const SimplicialGComplex b = box_complex(complete_hypergraph(2, 2), 2);
  EXPECT_EQ(b.vertex_count(), 4);
  EXPECT_EQ(b.maximal_simplices(), (std::vector<Simplex>{{0, 1}, {0, 3}, {1, 2}, {2, 3}}));
  EXPECT_TRUE(b.is_free());
  EXPECT_TRUE(connected(b));
  EXPECT_EQ(serialize(b), read_file(std::string(ZPFAN_DATA_DIR) + "/golden/box_k2_z2.complex"));
}

TEST(BoxComplex, SingleVertex) {
  const SimplicialGComplex b = box_complex(edgeless_hypergraph(1, 2), 2);
  EXPECT_EQ(b.maximal_simplices(), (std::vector<Simplex>{{0}, {1}}));
  EXPECT_TRUE(b.is_free());
}

TEST(BoxComplex, MatchesDefinitionOnRandomHypergraphs) {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 12; ++trial) {
    const int r = 2 + trial % 2;
    const int p = r == 2 ? 2 + (trial / 2) % 2 : 3;
    const int n = p == 3 ? 4 : 5;
    const Hypergraph h = random_hypergraph(rng, n, r, 60);
    const SimplicialGComplex b = box_complex(h, p);
    const BoxLayout layout{p, n};
    const int total = p * n;
    std::vector<VertexSet> simplices;
    for (VertexSet s = 1; s < bit(total); ++s) {
      std::vector<VertexSet> parts(p, 0);
      bool disjoint = true;
      for_each_member(s, [&](int x) {
        const VertexSet v = bit(layout.vertex(x));
        for (VertexSet u : parts)
          if (u & v) disjoint = false;
        parts[layout.sign(x)] |= v;
      });
      const bool expected = disjoint && complete_partite_oracle(h, parts, r);
      ASSERT_EQ(b.is_simplex(members(s)), expected);
      if (expected) simplices.push_back(s);
    }
    std::vector<Simplex> maximal;
    for (VertexSet s : simplices) {
      bool top = true;
      for (VertexSet t : simplices)
        if (t != s && is_subset(s, t)) top = false;
      if (top) maximal.push_back(members(s));
    }
    std::sort(maximal.begin(), maximal.end());
    EXPECT_EQ(b.maximal_simplices(), maximal);
    EXPECT_TRUE(b.is_free());
    EXPECT_TRUE(b.action_is_simplicial());
    EXPECT_LE(b.dimension() + 1, n);
  }
}

TEST(BoxComplex, RejectsBadModulus) {
  EXPECT_THROW(box_complex(complete_hypergraph(4, 2), 4), std::invalid_argument);
  EXPECT_THROW(box_complex(complete_hypergraph(4, 3), 2), std::invalid_argument);
  EXPECT_NO_THROW(box_complex(complete_hypergraph(4, 2), 4, true));
}

TEST(HomPoset, SmallCounts) {
  const HomPoset k22 = hom_poset(complete_hypergraph(2, 2), 2);
  ASSERT_EQ(k22.poset.size(), 2);
  EXPECT_FALSE(k22.poset.comparable(0, 1));
  EXPECT_EQ(k22.poset.act(1, 0), 1);
  EXPECT_EQ(hom_poset(complete_hypergraph(3, 2), 2).poset.size(), 12);
  EXPECT_EQ(hom_poset(complete_hypergraph(4, 2), 2).poset.size(), 50);
  EXPECT_TRUE(hom_poset(edgeless_hypergraph(4, 3), 3).poset.empty());
  EXPECT_EQ(hom_poset(complete_hypergraph(3, 3), 3).poset.size(), 6);
}

TEST(HomPoset, MatchesDefinition) {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    const int r = 2 + trial % 2;
    const int p = r == 2 ? 2 + (trial / 2) % 2 : 3;
    const Hypergraph h = random_hypergraph(rng, 5, r, 70);
    const HomPoset hom = hom_poset(h, p);
    EXPECT_EQ(hom.poset.size(), hom_count_oracle(h, p, r));
    EXPECT_TRUE(hom.poset.is_free());
    for (int a = 0; a < hom.poset.size(); ++a)
      for (int b = 0; b < hom.poset.size(); ++b) {
        bool inside = true;
        for (int j = 0; j < p; ++j) inside = inside && is_subset(hom.tuples[a].parts[j], hom.tuples[b].parts[j]);
        ASSERT_EQ(hom.poset.leq(a, b), inside);
      }
    for (int k = 0; k < p; ++k)
      for (int x = 0; x < hom.poset.size(); ++x)
        for (int j = 0; j < p; ++j)
          ASSERT_EQ(hom.tuples[hom.poset.act(k, x)].parts[j], hom.tuples[x].parts[(j + k) % p]);
  }
}

TEST(QPoset, Structure) {
  const GPoset q02 = q_poset(0, 2);
  EXPECT_EQ(q02.size(), 2);
  EXPECT_FALSE(q02.comparable(0, 1));
  EXPECT_EQ(order_complex(q02).maximal_simplices(), (std::vector<Simplex>{{0}, {1}}));

  const GPoset q13 = q_poset(1, 3);
  EXPECT_EQ(q13.size(), 6);
  for (int a = 0; a < 3; ++a)
    for (int b = 3; b < 6; ++b) EXPECT_TRUE(q13.less(a, b));
  const OrbitDecomposition o = orbit_decomposition(q13);
  EXPECT_EQ(o.orbits.size(), 2u);
  EXPECT_EQ(o.orbits[1].size(), 3u);
  EXPECT_TRUE(o.free);

  for (int n = 0; n <= 3; ++n) EXPECT_EQ(q_poset(n, 2).height(), n + 1);

  const SimplicialGComplex d12 = order_complex(q_poset(1, 2));
  EXPECT_EQ(d12.maximal_simplices().size(), 4u);
  EXPECT_EQ(d12.dimension(), 1);
  EXPECT_TRUE(connected(d12));
  EXPECT_EQ(serialize(q_poset(1, 2)), read_file(std::string(ZPFAN_DATA_DIR) + "/golden/q_1_2.poset"));
}

TEST(QPoset, OrderComplexMapsIntoJoinPower) {
  for (int p : {2, 3})
    for (int n = 0; n <= 2; ++n) {
      const SimplicialGComplex d = order_complex(q_poset(n, p));
      const SimplicialGComplex z = zp_join_power(p, n + 1);
      ASSERT_EQ(d.vertex_count(), z.vertex_count());
      for (int e = 0; e < p; ++e)
        for (int i = 0; i <= n; ++i) ASSERT_EQ(q_element(p, e, i), join_vertex(p, e, i));
      for (const Simplex& s : d.maximal_simplices()) EXPECT_TRUE(z.is_simplex(s));
      EXPECT_EQ(d.action(), z.action());
    }
}

TEST(OrderComplex, AntichainIsDiscrete) {
  const GPoset anti = GPoset::from_relations(FiniteGroup::cyclic(2), {"a", "b", "c", "d"},
                                             {{0, 1, 2, 3}, {1, 0, 3, 2}}, {});
  EXPECT_EQ(order_complex(anti).dimension(), 0);
  EXPECT_EQ(order_complex(anti).maximal_simplices().size(), 4u);
}

TEST(SigmaComplex, Examples) {
  const SigmaPoset s21 = sigma_poset(2, 2, 1);
  EXPECT_EQ(s21.poset.size(), 2);
  EXPECT_EQ(sigma_complex(2, 2, 1).maximal_simplices(), (std::vector<Simplex>{{0}, {1}}));
  EXPECT_EQ(sigma_poset(2, 2, 0).poset.size(), 8);
  EXPECT_TRUE(sigma_complex(3, 3, 3).empty());
  EXPECT_THROW(sigma_poset(2, 2, 3), std::invalid_argument);
  const SimplicialGComplex s = sigma_complex(3, 2, 1);
  EXPECT_EQ(s.origin.kind, ComplexOrigin::Kind::Sigma);
  EXPECT_TRUE(s.is_free());
}

TEST(SigmaComplex, VertexCountMatchesAlternationOracle) {
  for (int p : {2, 3})
    for (int n = 1; n <= 4; ++n)
      for (int alpha = 0; alpha <= n; ++alpha) {
        long long total = 1;
        for (int i = 0; i < n; ++i) total *= p + 1;
        int expected = 0;
        for (long long c = 0; c < total; ++c)
          if (alt_oracle(SignedVector::from_code(p, n, c)) >= alpha + 1) ++expected;
        const SigmaPoset s = sigma_poset(n, p, alpha);
        ASSERT_EQ(s.poset.size(), expected);
        ASSERT_TRUE(s.poset.is_free());
        for (int a = 0; a < s.poset.size(); ++a)
          for (int b = 0; b < s.poset.size(); ++b)
            ASSERT_EQ(s.poset.leq(a, b), s.vectors[a].subset_of(s.vectors[b]));
      }
}

TEST(Freeness, FixedSimplexIsDetected) {
  const SimplicialGComplex swap_edge = SimplicialGComplex::from_maximal(
      FiniteGroup::cyclic(2), {"a", "b"}, {{0, 1}, {1, 0}}, {{0, 1}});
  EXPECT_FALSE(swap_edge.is_free());
  EXPECT_FALSE(orbit_decomposition(swap_edge).free);
  const GPoset fixed = GPoset::from_relations(FiniteGroup::cyclic(2), {"a", "b", "c"}, {{0, 1, 2}, {1, 0, 2}},
                                              {{0, 2}, {1, 2}});
  EXPECT_FALSE(fixed.is_free());
  EXPECT_FALSE(orbit_decomposition(fixed).free);
}

TEST(Validation, BadInputsThrow) {
  EXPECT_THROW(SimplicialGComplex::from_maximal(FiniteGroup::cyclic(2), {"a", "b"}, {{0, 1}, {0, 0}}, {}),
               std::invalid_argument);
  EXPECT_THROW(SimplicialGComplex::from_maximal(FiniteGroup::cyclic(3), {"a", "b", "c"},
                                                {{0, 1, 2}, {1, 0, 2}, {0, 1, 2}}, {}),
               std::invalid_argument);
  EXPECT_THROW(GPoset::from_relations(FiniteGroup::cyclic(2), {"a", "b"}, {{0, 1}, {1, 0}}, {{0, 1}, {1, 0}}),
               std::invalid_argument);
  EXPECT_THROW(GPoset::from_relations(FiniteGroup::cyclic(2), {"a", "b", "c"}, {{0, 1, 2}, {1, 0, 2}}, {{0, 2}}),
               std::invalid_argument);
}

TEST(Serialization, RoundTrip) {
  const GPoset hom = hom_poset(complete_hypergraph(3, 2), 2).poset;
  const GPoset back = parse_poset(serialize(hom));
  EXPECT_EQ(serialize(back), serialize(hom));
  const SimplicialGComplex z = zp_join_power(3, 2);
  EXPECT_EQ(serialize(parse_complex(serialize(z))), serialize(z));
  const SimplicialGComplex k4 = join_power(FiniteGroup::klein_four(), 2);
  EXPECT_EQ(serialize(parse_complex(serialize(k4))), serialize(k4));
  EXPECT_THROW(parse_poset("poset\ngroup cyclic 2\nvertex 0 a\n"), std::runtime_error);
}
