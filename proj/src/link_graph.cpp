#include "bhv/link_graph.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "bhv/error.hpp"

namespace bhv {

LinkGraph::LinkGraph(LeafCount n, std::vector<Split> vertices)
    : n_(n.value()), vertices_(std::move(vertices)) {
  const size_t count = vertices_.size();
  adjacency_.assign(count * count, 0);
  neighbors_.resize(count);
  for (size_t v = 0; v < count; ++v) {
    if (vertices_[v].n() != n_) {
      throw Error(ErrorCode::kLeafCountMismatch, "vertex over a different leaf count");
    }
    index_.emplace(vertices_[v].side(), v);
  }
  for (size_t u = 0; u < count; ++u) {
    for (size_t v = u + 1; v < count; ++v) {
      if (vertices_[u] == vertices_[v] || !AreCompatible(vertices_[u], vertices_[v])) continue;
      adjacency_[u * count + v] = adjacency_[v * count + u] = 1;
      neighbors_[u].push_back(v);
      neighbors_[v].push_back(u);
      ++edge_count_;
    }
  }
}

std::optional<size_t> LinkGraph::FindIndex(const Split &s) const {
  if (s.n() != n_) return std::nullopt;
  auto it = index_.find(s.side());
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

size_t LinkGraph::IndexOf(const Split &s) const {
  if (auto index = FindIndex(s)) return *index;
  throw Error(ErrorCode::kVertexNotFound, "split is not a vertex of this graph");
}

std::string LinkGraph::ToDot() const {
  std::ostringstream os;
  os << "graph link" << n_ << " {\n";
  for (size_t v = 0; v < vertices_.size(); ++v) {
    os << "  v" << v << " [label=\"";
    auto leaves = vertices_[v].leaves();
    for (size_t i = 0; i < leaves.size(); ++i) os << (i ? "," : "") << leaves[i];
    os << "\"];\n";
  }
  for (size_t u = 0; u < vertices_.size(); ++u) {
    for (size_t v : neighbors_[u]) {
      if (u < v) os << "  v" << u << " -- v" << v << ";\n";
    }
  }
  os << "}\n";
  return os.str();
}

LinkGraph BuildLinkGraph(LeafCount n) {
  if (n.value() > kMaxLinkLeafCount) {
    throw Error(ErrorCode::kTooLarge, "link graphs are built for n <= 12 only, got " +
                                          std::to_string(n.value()));
  }
  return LinkGraph(n, EnumerateSplits(n));
}

long long DegreeFormula(int n, int k) {
  if (k < 2 || 2 * k > n || n > 62) {
    throw Error(ErrorCode::kKOutOfRange, "k must satisfy 2 <= k <= n/2");
  }
  return (1LL << k) + (1LL << (n - k)) - n - 4;
}

namespace {

void RequireKneserRange(int n, int k, bool allow_half) {
  const bool below_half = k >= 2 && 2 * k < n;
  const bool half = allow_half && 2 * k == n && k >= 2;
  if (!below_half && !half) {
    throw Error(ErrorCode::kKOutOfRange, "k = " + std::to_string(k) +
                                             " outside the admissible range for n = " +
                                             std::to_string(n));
  }
}

}  // namespace

LinkGraph KneserSubgraph(const LinkGraph &g, int k) {
  RequireKneserRange(g.n(), k, true);
  std::vector<Split> layer;
  for (const auto &s : g.vertices()) {
    if (s.size() == k) layer.push_back(s);
  }
  return LinkGraph(LeafCount(g.n()), std::move(layer));
}

std::vector<std::vector<Split>> EkrIndependentSets(const LinkGraph &g, int k) {
  RequireKneserRange(g.n(), k, false);
  std::vector<std::vector<Split>> stars(g.n());
  for (const auto &s : g.vertices()) {
    if (s.size() != k) continue;
    for (int leaf : s.leaves()) stars[leaf - 1].push_back(s);
  }
  return stars;
}

namespace {

using VertexMask = std::uint64_t;

class IndependentSetSearch {
 public:
  explicit IndependentSetSearch(const LinkGraph &g) : count_(g.vertex_count()) {
    neighbors_.assign(count_, 0);
    for (size_t v = 0; v < count_; ++v) {
      for (size_t u : g.neighbors(v)) neighbors_[v] |= VertexMask{1} << u;
    }
  }

  std::vector<std::vector<size_t>> Run() {
    const VertexMask all = count_ == 64 ? ~VertexMask{0} : (VertexMask{1} << count_) - 1;
    best_ = Greedy(all);
    Search(0, 0, all);
    std::vector<std::vector<size_t>> sets;
    for (VertexMask found : found_) {
      std::vector<size_t> set;
      for (int bit : LeavesOf(found)) set.push_back(static_cast<size_t>(bit - 1));
      sets.push_back(std::move(set));
    }
    std::sort(sets.begin(), sets.end());
    return sets;
  }

 private:
  int Greedy(VertexMask candidates) const {
    int size = 0;
    while (candidates != 0) {
      int v = __builtin_ctzll(candidates);
      candidates &= ~(neighbors_[v] | (VertexMask{1} << v));
      ++size;
    }
    return size;
  }

  // Greedy clique cover: an independent set takes at most one vertex per clique.
  int CliqueCoverBound(VertexMask candidates) const {
    int cliques = 0;
    while (candidates != 0) {
      int v = __builtin_ctzll(candidates);
      VertexMask open = candidates & neighbors_[v];
      candidates &= ~(VertexMask{1} << v);
      while (open != 0) {
        int u = __builtin_ctzll(open);
        candidates &= ~(VertexMask{1} << u);
        open &= neighbors_[u];
      }
      ++cliques;
    }
    return cliques;
  }

  void Search(VertexMask chosen, int size, VertexMask candidates) {
    if (candidates == 0) {
      if (size > best_) {
        best_ = size;
        found_.clear();
      }
      if (size == best_) found_.push_back(chosen);
      return;
    }
    if (size + PopCount(candidates) < best_) return;
    if (size + CliqueCoverBound(candidates) < best_) return;
    // Candidates with no candidate neighbor belong to every maximum extension.
    VertexMask isolated = 0;
    int branch = -1, branch_degree = -1;
    for (VertexMask rest = candidates; rest != 0; rest &= rest - 1) {
      int v = __builtin_ctzll(rest);
      int degree = PopCount(neighbors_[v] & candidates);
      if (degree == 0) isolated |= VertexMask{1} << v;
      if (degree > branch_degree) {
        branch_degree = degree;
        branch = v;
      }
    }
    if (isolated != 0) {
      Search(chosen | isolated, size + PopCount(isolated), candidates & ~isolated);
      return;
    }
    const VertexMask bit = VertexMask{1} << branch;
    Search(chosen | bit, size + 1, candidates & ~neighbors_[branch] & ~bit);
    Search(chosen, size, candidates & ~bit);
  }

  size_t count_;
  std::vector<VertexMask> neighbors_;
  int best_ = 0;
  std::vector<VertexMask> found_;
};

}  // namespace

std::vector<std::vector<size_t>> MaximumIndependentSets(const LinkGraph &g, size_t max_vertices) {
  if (g.vertex_count() > std::min<size_t>(max_vertices, 64)) {
    throw Error(ErrorCode::kTooLarge, "independent set search limited to " +
                                          std::to_string(std::min<size_t>(max_vertices, 64)) +
                                          " vertices");
  }
  if (g.vertex_count() == 0) return {{}};
  return IndependentSetSearch(g).Run();
}

namespace {

std::vector<Split> NeighborsOfSize(const LinkGraph &g, const Split &v, int size) {
  std::vector<Split> result;
  for (size_t u : g.neighbors(g.IndexOf(v))) {
    if (g.vertex(u).size() == size) result.push_back(g.vertex(u));
  }
  std::sort(result.begin(), result.end());
  return result;
}

}  // namespace

std::vector<Split> UpwardNeighbors(const LinkGraph &g, const Split &v) {
  return NeighborsOfSize(g, v, v.size() + 1);
}

std::vector<Split> DownwardNeighbors(const LinkGraph &g, const Split &v) {
  return NeighborsOfSize(g, v, v.size() - 1);
}

std::vector<std::vector<size_t>> CliquesOfSize(const LinkGraph &g, size_t size) {
  std::vector<std::vector<size_t>> cliques;
  std::vector<size_t> current;
  std::function<void(size_t)> extend = [&](size_t start) {
    if (current.size() == size) {
      cliques.push_back(current);
      return;
    }
    for (size_t v = start; v < g.vertex_count(); ++v) {
      bool joins = std::all_of(current.begin(), current.end(),
                               [&](size_t u) { return g.adjacent(u, v); });
      if (!joins) continue;
      current.push_back(v);
      extend(v + 1);
      current.pop_back();
    }
  };
  extend(0);
  return cliques;
}

bool IsAutomorphism(const LinkGraph &g, const VertexMap &map) {
  const size_t count = g.vertex_count();
  if (map.size() != count) return false;
  std::vector<bool> hit(count, false);
  for (size_t image : map) {
    if (image >= count || hit[image]) return false;
    hit[image] = true;
  }
  for (size_t u = 0; u < count; ++u) {
    for (size_t v = u + 1; v < count; ++v) {
      if (g.adjacent(u, v) != g.adjacent(map[u], map[v])) return false;
    }
  }
  return true;
}

namespace {

VertexMap ComposeMaps(const VertexMap &outer, const VertexMap &inner) {
  VertexMap result(inner.size());
  for (size_t v = 0; v < inner.size(); ++v) result[v] = outer[inner[v]];
  return result;
}

std::set<VertexMap> Closure(const std::vector<VertexMap> &generators, size_t count) {
  VertexMap identity(count);
  for (size_t v = 0; v < count; ++v) identity[v] = v;
  std::set<VertexMap> seen{identity};
  std::vector<VertexMap> frontier{identity};
  while (!frontier.empty()) {
    VertexMap g = std::move(frontier.back());
    frontier.pop_back();
    for (const auto &s : generators) {
      VertexMap next = ComposeMaps(s, g);
      if (seen.insert(next).second) frontier.push_back(std::move(next));
    }
  }
  return seen;
}

class AutomorphismSearch {
 public:
  AutomorphismSearch(const LinkGraph &g, const AutomorphismSearchOptions &options)
      : g_(g), options_(options), count_(g.vertex_count()) {
    // Signature classes.
    std::map<std::pair<size_t, std::vector<size_t>>, int> classes;
    klass_.resize(count_);
    for (size_t v = 0; v < count_; ++v) {
      std::vector<size_t> around;
      for (size_t u : g.neighbors(v)) around.push_back(g.degree(u));
      std::sort(around.begin(), around.end());
      auto [it, fresh] = classes.emplace(std::make_pair(g.degree(v), around),
                                         static_cast<int>(classes.size()));
      klass_[v] = it->second;
    }
    // Assign vertices with the most already-ordered neighbors first.
    std::vector<bool> placed(count_, false);
    std::vector<int> links(count_, 0);
    for (size_t step = 0; step < count_; ++step) {
      size_t pick = count_;
      for (size_t v = 0; v < count_; ++v) {
        if (placed[v]) continue;
        if (pick == count_ || links[v] > links[pick] ||
            (links[v] == links[pick] && g.degree(v) > g.degree(pick))) {
          pick = v;
        }
      }
      placed[pick] = true;
      order_.push_back(pick);
      for (size_t u : g.neighbors(pick)) ++links[u];
    }
    image_.assign(count_, count_);
    used_.assign(count_, false);
  }

  AutomorphismGroup Run() {
    Extend(0);
    AutomorphismGroup group;
    group.order = order_count_;
    if (order_count_ <= options_.element_cap) {
      std::sort(elements_.begin(), elements_.end());
      // Thin the transversal generators to an irredundant list.
      std::vector<VertexMap> kept;
      std::set<VertexMap> span = Closure(kept, count_);
      for (const auto &t : transversal_) {
        if (span.count(t)) continue;
        kept.push_back(t);
        span = Closure(kept, count_);
      }
      group.generators = std::move(kept);
      group.elements = std::move(elements_);
    } else {
      group.generators = std::move(transversal_);
    }
    return group;
  }

 private:
  void Extend(size_t depth) {
    if (++nodes_ > options_.node_budget) {
      throw Error(ErrorCode::kSearchBudgetExceeded, "automorphism search exceeded node budget");
    }
    if (depth == count_) {
      Record();
      return;
    }
    const size_t u = order_[depth];
    for (size_t w = 0; w < count_; ++w) {
      if (used_[w] || klass_[w] != klass_[u]) continue;
      bool consistent = true;
      for (size_t j = 0; j < depth && consistent; ++j) {
        const size_t earlier = order_[j];
        consistent = g_.adjacent(earlier, u) == g_.adjacent(image_[earlier], w);
      }
      if (!consistent) continue;
      image_[u] = w;
      used_[w] = true;
      Extend(depth + 1);
      used_[w] = false;
      image_[u] = count_;
    }
  }

  void Record() {
    ++order_count_;
    if (order_count_ <= options_.element_cap) elements_.push_back(image_);
    // The first element moving order_[i] to a given vertex while fixing
    // order_[0..i) is a coset representative; together they generate.
    for (size_t i = 0; i < count_; ++i) {
      const size_t v = order_[i];
      if (image_[v] == v) continue;
      if (first_moves_.insert({i, image_[v]}).second) transversal_.push_back(image_);
      break;
    }
  }

  const LinkGraph &g_;
  AutomorphismSearchOptions options_;
  size_t count_;
  std::vector<int> klass_;
  std::vector<size_t> order_;
  VertexMap image_;
  std::vector<bool> used_;
  std::uint64_t nodes_ = 0;
  std::uint64_t order_count_ = 0;
  std::vector<VertexMap> elements_;
  std::vector<VertexMap> transversal_;
  std::set<std::pair<size_t, size_t>> first_moves_;
};

}  // namespace

AutomorphismGroup BruteForceAutomorphisms(const LinkGraph &g,
                                          const AutomorphismSearchOptions &options) {
  if (g.vertex_count() > options.max_vertices) {
    throw Error(ErrorCode::kTooLarge, "automorphism search limited to " +
                                          std::to_string(options.max_vertices) + " vertices");
  }
  return AutomorphismSearch(g, options).Run();
}

VertexMap PermutationToAutomorphism(const Permutation &sigma, const LinkGraph &g) {
  if (sigma.n() != g.n()) {
    throw Error(ErrorCode::kLeafCountMismatch, "permutation and graph leaf counts differ");
  }
  VertexMap map(g.vertex_count());
  for (size_t v = 0; v < g.vertex_count(); ++v) {
    map[v] = g.IndexOf(ApplyPermutation(sigma, g.vertex(v)));
  }
  return map;
}

}  // namespace bhv
