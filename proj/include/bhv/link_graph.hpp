#ifndef BHV_LINK_GRAPH_HPP_
#define BHV_LINK_GRAPH_HPP_

// The 1-skeleton of the link of the cone point: one vertex per split, one edge
// per compatible pair. The link itself is the flag complex of this graph, so
// its simplices are the cliques and need no separate storage.

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "bhv/split.hpp"

namespace bhv {

inline constexpr int kMaxLinkLeafCount = 12;

class LinkGraph {
 public:
  // Graph induced on the given splits (all over the same leaf count).
  LinkGraph(LeafCount n, std::vector<Split> vertices);

  int n() const { return n_; }
  size_t vertex_count() const { return vertices_.size(); }
  size_t edge_count() const { return edge_count_; }
  const std::vector<Split> &vertices() const { return vertices_; }
  const Split &vertex(size_t v) const { return vertices_[v]; }
  bool adjacent(size_t u, size_t v) const { return adjacency_[u * vertices_.size() + v] != 0; }
  const std::vector<size_t> &neighbors(size_t v) const { return neighbors_[v]; }
  size_t degree(size_t v) const { return neighbors_[v].size(); }
  // Throws VertexNotFound.
  size_t IndexOf(const Split &s) const;
  std::optional<size_t> FindIndex(const Split &s) const;

  std::string ToDot() const;

 private:
  int n_;
  std::vector<Split> vertices_;
  std::vector<char> adjacency_;
  std::vector<std::vector<size_t>> neighbors_;
  std::unordered_map<LeafMask, size_t> index_;
  size_t edge_count_ = 0;
};

// Throws TooLarge for n > 12.
LinkGraph BuildLinkGraph(LeafCount n);

// 2^k + 2^(n-k) - n - 4. Throws KOutOfRange unless 2 <= k <= n/2.
long long DegreeFormula(int n, int k);

// Induced subgraph on the splits of size k; 2 <= k < n/2, or k = n/2 for even n.
LinkGraph KneserSubgraph(const LinkGraph &g, int k);

// For 2 <= k < n/2, the n star families: entry i-1 holds the size-k splits
// containing leaf i.
std::vector<std::vector<Split>> EkrIndependentSets(const LinkGraph &g, int k);

// Every independent set of maximum size, each sorted by vertex index; exact
// branch and bound. Throws TooLarge above max_vertices (at most 64).
std::vector<std::vector<size_t>> MaximumIndependentSets(const LinkGraph &g,
                                                        size_t max_vertices = 25);

// Neighbors of v whose canonical side is one leaf larger (resp. smaller).
std::vector<Split> UpwardNeighbors(const LinkGraph &g, const Split &v);
std::vector<Split> DownwardNeighbors(const LinkGraph &g, const Split &v);

// All cliques with exactly `size` vertices, each sorted by vertex index.
std::vector<std::vector<size_t>> CliquesOfSize(const LinkGraph &g, size_t size);

using VertexMap = std::vector<size_t>;

struct AutomorphismGroup {
  std::uint64_t order = 0;
  std::vector<VertexMap> generators;
  // Every element, sorted, when order <= the element cap.
  std::optional<std::vector<VertexMap>> elements;
};

struct AutomorphismSearchOptions {
  size_t max_vertices = 60;
  std::uint64_t element_cap = 100'000;
  std::uint64_t node_budget = 100'000'000;
};

// Full automorphism group by backtracking over vertex images, pruned by
// (degree, sorted neighbor degrees) signatures and adjacency consistency.
AutomorphismGroup BruteForceAutomorphisms(const LinkGraph &g,
                                          const AutomorphismSearchOptions &options = {});

bool IsAutomorphism(const LinkGraph &g, const VertexMap &map);

// The vertex map v -> sigma(v). Throws LeafCountMismatch.
VertexMap PermutationToAutomorphism(const Permutation &sigma, const LinkGraph &g);

}  // namespace bhv

#endif  // BHV_LINK_GRAPH_HPP_
