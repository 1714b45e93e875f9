#include "bhv/topology.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "bhv/error.hpp"

namespace bhv {

namespace {

std::string DescribeSplit(const Split &s) {
  std::ostringstream os;
  os << "{";
  auto leaves = s.leaves();
  for (size_t i = 0; i < leaves.size(); ++i) os << (i ? "," : "") << leaves[i];
  os << "}";
  return os.str();
}

bool IsSubset(LeafMask x, LeafMask y) { return (x & ~y) == 0; }

}  // namespace

Topology Topology::ConePoint(LeafCount n) { return Topology({}, n.value()); }

bool Topology::Contains(const Split &s) const {
  return std::binary_search(splits_.begin(), splits_.end(), s);
}

Topology MakeTopology(std::vector<Split> splits, LeafCount n) {
  for (const auto &s : splits) {
    if (s.n() != n.value()) {
      throw Error(ErrorCode::kLeafCountMismatch, "split " + DescribeSplit(s) +
                                                     " is over a different leaf count");
    }
  }
  std::sort(splits.begin(), splits.end());
  splits.erase(std::unique(splits.begin(), splits.end()), splits.end());
  for (size_t i = 0; i < splits.size(); ++i) {
    for (size_t j = i + 1; j < splits.size(); ++j) {
      if (!AreCompatible(splits[i], splits[j])) {
        throw Error(ErrorCode::kIncompatiblePair, "incompatible splits " +
                                                      DescribeSplit(splits[i]) + " and " +
                                                      DescribeSplit(splits[j]));
      }
    }
  }
  if (static_cast<int>(splits.size()) > n.value() - 3) {
    throw Error(ErrorCode::kTooManySplits, "a tree on " + std::to_string(n.value()) +
                                               " leaves has at most " +
                                               std::to_string(n.value() - 3) + " splits");
  }
  return Topology(std::move(splits), n.value());
}

bool IsBinary(const Topology &t) { return t.p() == t.n() - 3; }

Topology ApplyPermutation(const Permutation &sigma, const Topology &t) {
  std::vector<Split> image;
  image.reserve(t.splits().size());
  for (const auto &s : t.splits()) image.push_back(ApplyPermutation(sigma, s));
  return MakeTopology(std::move(image), LeafCount(t.n()));
}

std::vector<int> InternalTree::Degrees() const {
  std::vector<int> degree(node_count_, 0);
  for (int node : leaf_node_) ++degree[node];
  for (const auto &e : edges_) {
    ++degree[e.a];
    ++degree[e.b];
  }
  return degree;
}

std::vector<std::vector<int>> InternalTree::Incidence() const {
  std::vector<std::vector<int>> incident(node_count_);
  for (int i = 0; i < static_cast<int>(edges_.size()); ++i) {
    incident[edges_[i].a].push_back(i);
    incident[edges_[i].b].push_back(i);
  }
  return incident;
}

LeafMask InternalTree::LeavesBeyond(int edge, int from_node) const {
  const auto incident = Incidence();
  std::vector<LeafMask> attached(node_count_, 0);
  for (int leaf = 1; leaf <= n_; ++leaf) attached[leaf_node_[leaf - 1]] |= LeafBit(leaf);
  int start = edges_[edge].a == from_node ? edges_[edge].b : edges_[edge].a;
  LeafMask mask = 0;
  std::vector<std::pair<int, int>> stack{{start, edge}};
  while (!stack.empty()) {
    auto [node, via] = stack.back();
    stack.pop_back();
    mask |= attached[node];
    for (int e : incident[node]) {
      if (e == via) continue;
      stack.push_back({edges_[e].a == node ? edges_[e].b : edges_[e].a, e});
    }
  }
  return mask;
}

std::vector<LeafMask> InternalTree::Arms(int node) const {
  std::vector<LeafMask> arms;
  for (int leaf = 1; leaf <= n_; ++leaf) {
    if (leaf_node_[leaf - 1] == node) arms.push_back(LeafBit(leaf));
  }
  for (int e = 0; e < static_cast<int>(edges_.size()); ++e) {
    if (edges_[e].a == node || edges_[e].b == node) arms.push_back(LeavesBeyond(e, node));
  }
  return arms;
}

std::string InternalTree::ToDot() const {
  std::ostringstream os;
  os << "graph tree {\n";
  for (int v = 0; v < node_count_; ++v) os << "  y" << v << " [shape=point];\n";
  for (int leaf = 1; leaf <= n_; ++leaf) {
    os << "  l" << leaf << " [label=\"" << leaf << "\"];\n";
    os << "  y" << leaf_node_[leaf - 1] << " -- l" << leaf << ";\n";
  }
  for (const auto &e : edges_) {
    os << "  y" << e.a << " -- y" << e.b << " [label=\"" << DescribeSplit(e.split) << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

InternalTree ReconstructTree(const Topology &t) {
  InternalTree tree;
  tree.n_ = t.n();
  tree.node_count_ = 1;
  tree.leaf_node_.assign(t.n(), 0);
  // Splits arrive sorted by side size, so each one peels its side off a
  // single existing node.
  for (const Split &split : t.splits()) {
    const LeafMask side = split.side();
    const LeafMask other = split.complement();
    int target = -1;
    for (int node = 0; node < tree.node_count_ && target < 0; ++node) {
      int inside = 0, outside = 0;
      bool clean = true;
      for (LeafMask arm : tree.Arms(node)) {
        if (IsSubset(arm, side)) {
          ++inside;
        } else if (IsSubset(arm, other)) {
          ++outside;
        } else {
          clean = false;
          break;
        }
      }
      if (clean && inside >= 2 && outside >= 2) target = node;
    }
    if (target < 0) {
      throw Error(ErrorCode::kIncompatiblePair,
                  "split " + DescribeSplit(split) + " cannot be placed in the tree");
    }
    const int fresh = tree.node_count_++;
    for (int leaf = 1; leaf <= t.n(); ++leaf) {
      if (tree.leaf_node_[leaf - 1] == target && (side & LeafBit(leaf))) {
        tree.leaf_node_[leaf - 1] = fresh;
      }
    }
    for (int e = 0; e < static_cast<int>(tree.edges_.size()); ++e) {
      auto &edge = tree.edges_[e];
      if (edge.a != target && edge.b != target) continue;
      if (!IsSubset(tree.LeavesBeyond(e, target), side)) continue;
      (edge.a == target ? edge.a : edge.b) = fresh;
    }
    tree.edges_.push_back({target, fresh, split});
  }
  return tree;
}

std::vector<int> DegreeSequence(const Topology &t) {
  auto degrees = ReconstructTree(t).Degrees();
  std::sort(degrees.begin(), degrees.end(), std::greater<>());
  return degrees;
}

BigInt DoubleFactorial(int m) {
  if (m < -1 || m % 2 == 0) {
    throw Error(ErrorCode::kNegativeOrEven,
                "double factorial needs an odd argument >= -1, got " + std::to_string(m));
  }
  BigInt result = 1;
  for (int k = m; k > 1; k -= 2) result *= k;
  return result;
}

BigInt CountRefiningOrthants(const Topology &t) {
  BigInt count = 1;
  for (int d : DegreeSequence(t)) count *= DoubleFactorial(2 * d - 5);
  return count;
}

namespace detail {

std::vector<LeafMask> BinaryTreeSplitMasks(int leaves, const std::vector<int> &choice) {
  // Leaves are nodes 0..leaves-1, internal nodes follow.
  std::vector<std::pair<int, int>> edges{{0, leaves}, {1, leaves}, {2, leaves}};
  int next_node = leaves + 1;
  for (int leaf = 3; leaf < leaves; ++leaf) {
    auto [u, v] = edges[choice[leaf - 3]];
    int w = next_node++;
    edges[choice[leaf - 3]] = {u, w};
    edges.push_back({w, v});
    edges.push_back({w, leaf});
  }
  std::vector<std::vector<int>> adjacent(next_node);
  for (auto [u, v] : edges) {
    adjacent[u].push_back(v);
    adjacent[v].push_back(u);
  }
  // Subtree masks from a DFS rooted at leaf 0.
  std::vector<LeafMask> below(next_node, 0);
  std::vector<int> parent(next_node, -1), order;
  std::vector<int> stack{0};
  parent[0] = 0;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    order.push_back(u);
    for (int v : adjacent[u]) {
      if (parent[v] < 0) {
        parent[v] = u;
        stack.push_back(v);
      }
    }
  }
  std::vector<LeafMask> masks;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int u = *it;
    if (u < leaves) below[u] |= LeafMask{1} << u;
    if (u != 0) below[parent[u]] |= below[u];
    if (u >= leaves && parent[u] >= leaves) masks.push_back(below[u]);
  }
  return masks;
}

}  // namespace detail

namespace {

std::uint64_t BinaryCount(int leaves) {
  std::uint64_t count = 1;
  for (int k = 2 * leaves - 5; k > 1; k -= 2) count *= k;
  return count;
}

void RequireWithinCap(const BigInt &count, std::uint64_t cap) {
  if (count > cap) {
    throw Error(ErrorCode::kEnumerationTooLarge,
                "enumeration of " + count.str() + " items exceeds cap " + std::to_string(cap));
  }
}

// Advances an odometer whose digit j ranges over [0, 2(j+4)-5).
bool Advance(std::vector<int> &choice) {
  for (int j = static_cast<int>(choice.size()) - 1; j >= 0; --j) {
    if (++choice[j] < 2 * (j + 4) - 5) return true;
    choice[j] = 0;
  }
  return false;
}

}  // namespace

BinaryTopologyEnumerator::BinaryTopologyEnumerator(LeafCount n, std::uint64_t cap)
    : n_(n.value()), choice_(n.value() - 3, 0) {
  RequireWithinCap(DoubleFactorial(2 * n_ - 5), cap);
  total_ = BinaryCount(n_);
}

std::optional<Topology> BinaryTopologyEnumerator::Next() {
  if (done_) return std::nullopt;
  std::vector<Split> splits;
  for (LeafMask mask : detail::BinaryTreeSplitMasks(n_, choice_)) {
    splits.push_back(Split::FromMask(mask, LeafCount(n_)));
  }
  done_ = !Advance(choice_);
  return MakeTopology(std::move(splits), LeafCount(n_));
}

std::vector<Topology> EnumerateBinaryTopologies(LeafCount n, std::uint64_t cap) {
  BinaryTopologyEnumerator enumerator(n, cap);
  std::vector<Topology> all;
  all.reserve(enumerator.total());
  while (auto t = enumerator.Next()) all.push_back(std::move(*t));
  return all;
}

std::vector<Topology> EnumerateBinaryRefinements(const Topology &t, std::uint64_t cap) {
  RequireWithinCap(CountRefiningOrthants(t), cap);
  const InternalTree tree = ReconstructTree(t);
  const LeafCount n(t.n());
  // For each node of degree d >= 4, every binary resolution of its d arms,
  // expressed as the splits of [n] it adds.
  std::vector<std::vector<std::vector<Split>>> options;
  for (int node = 0; node < tree.node_count(); ++node) {
    const auto arms = tree.Arms(node);
    const int d = static_cast<int>(arms.size());
    if (d == 3) continue;
    std::vector<std::vector<Split>> resolutions;
    std::vector<int> choice(d - 3, 0);
    do {
      std::vector<Split> added;
      for (LeafMask pseudo : detail::BinaryTreeSplitMasks(d, choice)) {
        LeafMask side = 0;
        for (int arm : LeavesOf(pseudo)) side |= arms[arm - 1];
        added.push_back(Split::FromMask(side, n));
      }
      resolutions.push_back(std::move(added));
    } while (Advance(choice));
    options.push_back(std::move(resolutions));
  }
  std::vector<Topology> refinements;
  std::vector<size_t> pick(options.size(), 0);
  while (true) {
    std::vector<Split> splits = t.splits();
    for (size_t i = 0; i < options.size(); ++i) {
      const auto &added = options[i][pick[i]];
      splits.insert(splits.end(), added.begin(), added.end());
    }
    refinements.push_back(MakeTopology(std::move(splits), n));
    size_t i = 0;
    for (; i < options.size(); ++i) {
      if (++pick[i] < options[i].size()) break;
      pick[i] = 0;
    }
    if (i == options.size()) break;
  }
  std::sort(refinements.begin(), refinements.end());
  return refinements;
}

std::vector<Topology> EnumerateFaces(LeafCount n, std::uint64_t cap) {
  std::set<Topology> faces;
  BinaryTopologyEnumerator enumerator(n, cap);
  while (auto binary = enumerator.Next()) {
    const auto &splits = binary->splits();
    const std::uint32_t subsets = 1u << splits.size();
    for (std::uint32_t bits = 0; bits < subsets; ++bits) {
      std::vector<Split> chosen;
      for (size_t i = 0; i < splits.size(); ++i) {
        if (bits & (1u << i)) chosen.push_back(splits[i]);
      }
      faces.insert(MakeTopology(std::move(chosen), n));
    }
    if (faces.size() > cap) {
      throw Error(ErrorCode::kEnumerationTooLarge, "face enumeration exceeds cap");
    }
  }
  return {faces.begin(), faces.end()};
}

Topology RandomBinaryTopology(LeafCount n, std::mt19937_64 &rng) {
  std::vector<int> choice(n.value() - 3);
  for (size_t j = 0; j < choice.size(); ++j) {
    std::uniform_int_distribution<int> edge(0, 2 * static_cast<int>(j + 4) - 6);
    choice[j] = edge(rng);
  }
  std::vector<Split> splits;
  for (LeafMask mask : detail::BinaryTreeSplitMasks(n.value(), choice)) {
    splits.push_back(Split::FromMask(mask, n));
  }
  return MakeTopology(std::move(splits), n);
}

Topology RandomFace(LeafCount n, std::mt19937_64 &rng) {
  Topology binary = RandomBinaryTopology(n, rng);
  std::bernoulli_distribution keep(0.5);
  std::vector<Split> chosen;
  for (const auto &s : binary.splits()) {
    if (keep(rng)) chosen.push_back(s);
  }
  return MakeTopology(std::move(chosen), n);
}

}  // namespace bhv
