#include <algorithm>
#include <set>

#include "bhv/error.hpp"
#include "bhv/link_graph.hpp"
#include "bhv/topology.hpp"
#include "doctest.h"

using namespace bhv;

namespace {

long long Binomial(int n, int k) {
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::vector<Split> Splits(std::initializer_list<std::vector<int>> sides, int n) {
  std::vector<Split> out;
  for (const auto &side : sides) out.push_back(MakeSplit(side, LeafCount(n)));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Split> Intersect(const std::vector<Split> &a, const std::vector<Split> &b) {
  std::vector<Split> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<std::vector<size_t>> StarIndexSets(const LinkGraph &layer, int k) {
  std::vector<std::vector<size_t>> sets;
  for (const auto &star : EkrIndependentSets(layer, k)) {
    std::vector<size_t> indices;
    for (const auto &s : star) indices.push_back(layer.IndexOf(s));
    std::sort(indices.begin(), indices.end());
    sets.push_back(indices);
  }
  std::sort(sets.begin(), sets.end());
  return sets;
}

}  // namespace

TEST_CASE("build_link_graph small cases") {
  const LinkGraph four = BuildLinkGraph(LeafCount(4));
  CHECK(four.vertex_count() == 3);
  CHECK(four.edge_count() == 0);

  const LinkGraph five = BuildLinkGraph(LeafCount(5));
  CHECK(five.vertex_count() == 10);
  CHECK(five.edge_count() == 15);
  for (size_t v = 0; v < five.vertex_count(); ++v) CHECK(five.degree(v) == 3);

  CHECK(BuildLinkGraph(LeafCount(6)).vertex_count() == 25);
  CHECK(BuildLinkGraph(LeafCount(3)).vertex_count() == 0);
  try {
    BuildLinkGraph(LeafCount(13));
    FAIL("expected TooLarge");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::kTooLarge);
  }
  for (size_t v = 0; v < five.vertex_count(); ++v) CHECK_FALSE(five.adjacent(v, v));
  CHECK(five.ToDot().find("--") != std::string::npos);
}

TEST_CASE("degree_formula") {
  CHECK(DegreeFormula(5, 2) == 3);
  CHECK(DegreeFormula(6, 2) == 10);
  CHECK(DegreeFormula(6, 3) == 6);
  CHECK_THROWS_AS(DegreeFormula(6, 1), Error);
  CHECK_THROWS_AS(DegreeFormula(6, 4), Error);
}

TEST_CASE("degrees match the formula for n = 5..9") {
  for (int n = 5; n <= 9; ++n) {
    const LinkGraph g = BuildLinkGraph(LeafCount(n));
    for (size_t v = 0; v < g.vertex_count(); ++v) {
      CHECK(static_cast<long long>(g.degree(v)) == DegreeFormula(n, g.vertex(v).size()));
    }
  }
}

TEST_CASE("vertex set partitions into layers, n <= 9") {
  for (int n = 4; n <= 9; ++n) {
    const LinkGraph g = BuildLinkGraph(LeafCount(n));
    size_t total = 0;
    for (int k = 2; 2 * k <= n; ++k) {
      const LinkGraph layer = KneserSubgraph(g, k);
      const long long expected = 2 * k == n ? Binomial(n, k) / 2 : Binomial(n, k);
      CHECK(static_cast<long long>(layer.vertex_count()) == expected);
      total += layer.vertex_count();
    }
    CHECK(total == g.vertex_count());
  }
}

TEST_CASE("kneser subgraphs") {
  const LinkGraph l5 = BuildLinkGraph(LeafCount(5));
  const LinkGraph petersen = KneserSubgraph(l5, 2);
  CHECK(petersen.vertex_count() == 10);
  CHECK(petersen.edge_count() == 15);

  const LinkGraph l6 = BuildLinkGraph(LeafCount(6));
  const LinkGraph g2 = KneserSubgraph(l6, 2);
  CHECK(g2.vertex_count() == 15);
  for (size_t v = 0; v < g2.vertex_count(); ++v) CHECK(g2.degree(v) == 6);
  const LinkGraph g3 = KneserSubgraph(l6, 3);
  CHECK(g3.vertex_count() == 10);
  CHECK(g3.edge_count() == 0);

  // Below the half size, adjacency in the layer is exactly disjointness.
  const LinkGraph l8 = BuildLinkGraph(LeafCount(8));
  for (int k : {2, 3}) {
    const LinkGraph layer = KneserSubgraph(l8, k);
    for (size_t u = 0; u < layer.vertex_count(); ++u) {
      for (size_t v = 0; v < layer.vertex_count(); ++v) {
        if (u == v) continue;
        CHECK(layer.adjacent(u, v) == ((layer.vertex(u).side() & layer.vertex(v).side()) == 0));
      }
    }
  }
  CHECK_THROWS_AS(KneserSubgraph(l6, 1), Error);
  CHECK_THROWS_AS(KneserSubgraph(l5, 3), Error);
}

TEST_CASE("ekr_independent_sets") {
  const LinkGraph l5 = BuildLinkGraph(LeafCount(5));
  const auto stars = EkrIndependentSets(l5, 2);
  REQUIRE(stars.size() == 5);
  CHECK(stars[0] == Splits({{1, 2}, {1, 3}, {1, 4}, {1, 5}}, 5));
  const LinkGraph l6 = BuildLinkGraph(LeafCount(6));
  for (const auto &star : EkrIndependentSets(l6, 2)) {
    CHECK(star.size() == 5);
    for (const auto &a : star) {
      for (const auto &b : star) CHECK_FALSE(l6.adjacent(l6.IndexOf(a), l6.IndexOf(b)));
    }
  }
  CHECK_THROWS_AS(EkrIndependentSets(l6, 3), Error);
}

TEST_CASE("maximum independent sets are the star sets") {
  const LinkGraph petersen = KneserSubgraph(BuildLinkGraph(LeafCount(5)), 2);
  const auto mis = MaximumIndependentSets(petersen);
  CHECK(mis.size() == 5);
  for (const auto &set : mis) CHECK(set.size() == 4);
  CHECK(mis == StarIndexSets(petersen, 2));

  const LinkGraph kg62 = KneserSubgraph(BuildLinkGraph(LeafCount(6)), 2);
  const auto mis6 = MaximumIndependentSets(kg62);
  CHECK(mis6.size() == 6);
  CHECK(mis6 == StarIndexSets(kg62, 2));

  const LinkGraph kg72 = KneserSubgraph(BuildLinkGraph(LeafCount(7)), 2);
  const auto mis7 = MaximumIndependentSets(kg72);
  CHECK(mis7.size() == 7);
  for (const auto &set : mis7) CHECK(set.size() == 6);
  CHECK(mis7 == StarIndexSets(kg72, 2));

  const LinkGraph kg73 = KneserSubgraph(BuildLinkGraph(LeafCount(7)), 3);
  CHECK_THROWS_AS(MaximumIndependentSets(kg73), Error);
  const auto mis73 = MaximumIndependentSets(kg73, 35);
  CHECK(mis73.size() == 7);
  for (const auto &set : mis73) CHECK(set.size() == 15);
  CHECK(mis73 == StarIndexSets(kg73, 3));
}

TEST_CASE("maximum independent set of an edgeless graph") {
  const LinkGraph g3 = KneserSubgraph(BuildLinkGraph(LeafCount(6)), 3);
  const auto mis = MaximumIndependentSets(g3);
  REQUIRE(mis.size() == 1);
  CHECK(mis[0].size() == 10);
}

TEST_CASE("upward and downward neighbors") {
  const LinkGraph l6 = BuildLinkGraph(LeafCount(6));
  const Split v = MakeSplit({1, 2}, 6);
  std::vector<Split> expected;
  for (const auto &s : l6.vertices()) {
    if (s.size() == 3 && ((s.side() & v.side()) == v.side() || (s.side() & v.side()) == 0)) {
      expected.push_back(s);
    }
  }
  CHECK(UpwardNeighbors(l6, v) == expected);
  CHECK(DownwardNeighbors(l6, v).empty());
  CHECK_THROWS_AS(UpwardNeighbors(l6, MakeSplit({1, 2}, 7)), Error);
}

TEST_CASE("upward intersection identity recovers a size k+1 split") {
  const int n = 7;
  const LinkGraph g = BuildLinkGraph(LeafCount(n));
  const Split target = MakeSplit({1, 2, 3}, n);
  std::vector<Split> running = UpwardNeighbors(g, MakeSplit({2, 3}, n));
  running = Intersect(running, UpwardNeighbors(g, MakeSplit({1, 3}, n)));
  running = Intersect(running, UpwardNeighbors(g, MakeSplit({1, 2}, n)));
  const std::vector<int> rest{4, 5, 6, 7};
  for (size_t i = 0; i < rest.size(); ++i) {
    for (size_t j = i + 1; j < rest.size(); ++j) {
      running = Intersect(running, UpwardNeighbors(g, MakeSplit({rest[i], rest[j]}, n)));
    }
  }
  CHECK(running == std::vector<Split>{target});
}

TEST_CASE("downward intersection identity recovers a size k split") {
  // n = 7: {1,2} from the size-3 splits {1,2,a}.
  {
    const LinkGraph g = BuildLinkGraph(LeafCount(7));
    std::vector<Split> running;
    for (int a = 3; a <= 7; ++a) {
      auto down = DownwardNeighbors(g, MakeSplit({1, 2, a}, 7));
      running = a == 3 ? down : Intersect(running, down);
    }
    CHECK(running == std::vector<Split>{MakeSplit({1, 2}, 7)});
  }
  // n = 8: {1,2,3} from the half-size splits {1,2,3,a}.
  {
    const LinkGraph g = BuildLinkGraph(LeafCount(8));
    std::vector<Split> running;
    for (int a = 4; a <= 8; ++a) {
      auto down = DownwardNeighbors(g, MakeSplit({1, 2, 3, a}, 8));
      running = a == 4 ? down : Intersect(running, down);
    }
    CHECK(running == std::vector<Split>{MakeSplit({1, 2, 3}, 8)});
  }
}

TEST_CASE("permutation_to_automorphism") {
  const LinkGraph g = BuildLinkGraph(LeafCount(5));
  const VertexMap identity = PermutationToAutomorphism(Permutation::Identity(5), g);
  for (size_t v = 0; v < identity.size(); ++v) CHECK(identity[v] == v);

  const VertexMap swap = PermutationToAutomorphism(Permutation::Cycle(5, {1, 2}), g);
  const size_t s12 = g.IndexOf(MakeSplit({1, 2}, 5));
  const size_t s13 = g.IndexOf(MakeSplit({1, 3}, 5));
  const size_t s23 = g.IndexOf(MakeSplit({2, 3}, 5));
  CHECK(swap[s12] == s12);
  CHECK(swap[s13] == s23);
  CHECK(swap[s23] == s13);
  CHECK(IsAutomorphism(g, swap));

  std::set<VertexMap> images;
  for (const auto &sigma : AllPermutations(5)) {
    const VertexMap map = PermutationToAutomorphism(sigma, g);
    CHECK(IsAutomorphism(g, map));
    images.insert(map);
  }
  CHECK(images.size() == 120);
  CHECK_THROWS_AS(PermutationToAutomorphism(Permutation::Identity(6), g), Error);
}

TEST_CASE("automorphism groups of small links") {
  const auto four = BruteForceAutomorphisms(BuildLinkGraph(LeafCount(4)));
  CHECK(four.order == 6);

  for (int n : {5, 6}) {
    const LinkGraph g = BuildLinkGraph(LeafCount(n));
    const auto group = BruteForceAutomorphisms(g);
    const std::uint64_t factorial = n == 5 ? 120 : 720;
    CHECK(group.order == factorial);
    REQUIRE(group.elements.has_value());
    CHECK(group.elements->size() == factorial);
    std::set<VertexMap> realized;
    for (const auto &sigma : AllPermutations(n)) realized.insert(PermutationToAutomorphism(sigma, g));
    CHECK(std::set<VertexMap>(group.elements->begin(), group.elements->end()) == realized);
    for (const auto &gen : group.generators) CHECK(IsAutomorphism(g, gen));
    CHECK(!group.generators.empty());

    // Only the identity fixes the size-2 layer pointwise.
    int fixing_layer = 0;
    for (const auto &element : *group.elements) {
      bool fixes = true;
      for (size_t v = 0; v < g.vertex_count(); ++v) {
        if (g.vertex(v).size() == 2 && element[v] != v) fixes = false;
      }
      fixing_layer += fixes;
    }
    CHECK(fixing_layer == 1);
  }
}

TEST_CASE("automorphism search limits") {
  const LinkGraph g = BuildLinkGraph(LeafCount(6));
  AutomorphismSearchOptions tight;
  tight.node_budget = 10;
  try {
    BruteForceAutomorphisms(g, tight);
    FAIL("expected SearchBudgetExceeded");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::kSearchBudgetExceeded);
  }
  AutomorphismSearchOptions small;
  small.max_vertices = 20;
  CHECK_THROWS_AS(BruteForceAutomorphisms(g, small), Error);

  // With the element list suppressed the order and generators survive.
  AutomorphismSearchOptions no_elements;
  no_elements.element_cap = 10;
  const auto group = BruteForceAutomorphisms(BuildLinkGraph(LeafCount(5)), no_elements);
  CHECK(group.order == 120);
  CHECK_FALSE(group.elements.has_value());
  for (const auto &gen : group.generators) CHECK(IsAutomorphism(BuildLinkGraph(LeafCount(5)), gen));
}

TEST_CASE("maximal cliques are the binary topologies") {
  for (int n : {5, 6}) {
    const LinkGraph g = BuildLinkGraph(LeafCount(n));
    std::set<Topology> from_cliques;
    for (const auto &clique : CliquesOfSize(g, n - 3)) {
      std::vector<Split> splits;
      for (size_t v : clique) splits.push_back(g.vertex(v));
      from_cliques.insert(MakeTopology(splits, LeafCount(n)));
    }
    const auto binaries = EnumerateBinaryTopologies(LeafCount(n));
    CHECK(from_cliques.size() == (n == 5 ? 15u : 105u));
    CHECK(from_cliques == std::set<Topology>(binaries.begin(), binaries.end()));
    CHECK(CliquesOfSize(g, n - 2).empty());
  }
}
