#ifndef BHV_TOPOLOGY_HPP_
#define BHV_TOPOLOGY_HPP_

// Tree topologies as sets of pairwise-compatible splits, the unique unrooted
// tree realizing such a set, and orthant counting.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "bhv/split.hpp"

namespace bhv {

using BigInt = boost::multiprecision::cpp_int;

inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

// A face of tree space: n leaves and p pairwise-compatible splits, p <= n-3.
// Splits are held sorted and deduplicated, so equality is set equality.
class Topology {
 public:
  static Topology ConePoint(LeafCount n);

  int n() const { return n_; }
  int p() const { return static_cast<int>(splits_.size()); }
  const std::vector<Split> &splits() const { return splits_; }
  bool Contains(const Split &s) const;

  friend bool operator==(const Topology &, const Topology &) = default;
  friend auto operator<=>(const Topology &, const Topology &) = default;

 private:
  friend Topology MakeTopology(std::vector<Split> splits, LeafCount n);
  Topology(std::vector<Split> splits, int n) : splits_(std::move(splits)), n_(n) {}
  std::vector<Split> splits_;
  int n_;
};

// Throws IncompatiblePair naming the first violating pair (in sorted order),
// TooManySplits when more than n-3 distinct splits are given, and
// LeafCountMismatch when a split is over a different leaf count.
Topology MakeTopology(std::vector<Split> splits, LeafCount n);

bool IsBinary(const Topology &t);
Topology ApplyPermutation(const Permutation &sigma, const Topology &t);

struct InternalEdge {
  int a;
  int b;
  Split split;
};

// The unrooted tree with p+1 internal nodes whose internal edges carry the
// topology's splits. Leaves are not nodes; leaf_node()[i-1] is the internal
// node leaf i hangs from.
class InternalTree {
 public:
  int n() const { return n_; }
  int node_count() const { return node_count_; }
  const std::vector<InternalEdge> &edges() const { return edges_; }
  const std::vector<int> &leaf_node() const { return leaf_node_; }

  // Degree of each internal node, counting attached leaves and internal edges.
  std::vector<int> Degrees() const;
  // Edge indices incident to each node.
  std::vector<std::vector<int>> Incidence() const;
  // Leaf set on the far side of `edge` as seen from `from_node`.
  LeafMask LeavesBeyond(int edge, int from_node) const;
  // Leaf sets of the subtrees hanging off `node`: one singleton per attached
  // leaf followed by one set per incident edge.
  std::vector<LeafMask> Arms(int node) const;
  std::string ToDot() const;

 private:
  friend InternalTree ReconstructTree(const Topology &t);
  int n_ = 0;
  int node_count_ = 0;
  std::vector<InternalEdge> edges_;
  std::vector<int> leaf_node_;
};

InternalTree ReconstructTree(const Topology &t);

// Node degrees, largest first.
std::vector<int> DegreeSequence(const Topology &t);

// m!! for odd m >= -1, with (-1)!! = 1. Throws NegativeOrEven otherwise.
BigInt DoubleFactorial(int m);

// Number of binary topologies refining t, the product of (2d-5)!! over the
// internal node degrees d.
BigInt CountRefiningOrthants(const Topology &t);

// Every binary topology whose split set contains t's, built by choosing a
// binary resolution independently at each internal node.
std::vector<Topology> EnumerateBinaryRefinements(
    const Topology &t, std::uint64_t cap = kDefaultEnumerationCap);

// Lazily walks the (2n-5)!! binary topologies on n leaves. Tree j on n leaves
// comes from tree on n-1 leaves by attaching leaf n to one of its 2n-5 edges.
class BinaryTopologyEnumerator {
 public:
  explicit BinaryTopologyEnumerator(LeafCount n, std::uint64_t cap = kDefaultEnumerationCap);
  std::optional<Topology> Next();
  std::uint64_t total() const { return total_; }

 private:
  int n_;
  std::uint64_t total_;
  std::vector<int> choice_;
  bool done_ = false;
};

std::vector<Topology> EnumerateBinaryTopologies(LeafCount n,
                                                std::uint64_t cap = kDefaultEnumerationCap);

// All faces of tree space (every topology, cone point included), sorted.
std::vector<Topology> EnumerateFaces(LeafCount n, std::uint64_t cap = kDefaultEnumerationCap);

// Uniform over the (2n-5)!! binary topologies.
Topology RandomBinaryTopology(LeafCount n, std::mt19937_64 &rng);
// A random binary topology with each split independently kept with
// probability 1/2.
Topology RandomFace(LeafCount n, std::mt19937_64 &rng);

namespace detail {
// Internal-edge bipartitions of the binary tree on `leaves` leaves encoded by
// `choice` (choice[j] picks the edge leaf j+4 is attached to). Each mask is
// the side not containing leaf 1.
std::vector<LeafMask> BinaryTreeSplitMasks(int leaves, const std::vector<int> &choice);
}  // namespace detail

}  // namespace bhv

#endif  // BHV_TOPOLOGY_HPP_
