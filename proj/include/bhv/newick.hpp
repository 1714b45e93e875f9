#ifndef BHV_NEWICK_HPP_
#define BHV_NEWICK_HPP_

// Newick reading and writing for unrooted trees.
//
// Accepted grammar:
//   tree    := subtree ";"
//   subtree := "(" subtree ("," subtree)+ ")" [label] [":" number]
//            | label [":" number]
// Whitespace may separate tokens. Quoted labels and bracketed comments are
// rejected. A degree-two root is suppressed by merging its two edges.

#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bhv/measure.hpp"

namespace bhv {

struct NewickNode {
  std::vector<NewickNode> children;
  std::optional<std::string> label;
  std::optional<double> length;

  bool is_leaf() const { return children.empty(); }
};

// Bijection from leaf names onto 1..n.
class LabelMap {
 public:
  // Throws LeafOutOfRange unless the indices are exactly 1..size.
  explicit LabelMap(std::map<std::string, int> index);
  // Names sorted lexicographically and numbered from 1.
  static LabelMap Lexicographic(std::vector<std::string> names);

  int size() const { return static_cast<int>(index_.size()); }
  std::optional<int> Find(const std::string &name) const;
  const std::map<std::string, int> &index() const { return index_; }

 private:
  std::map<std::string, int> index_;
};

// Syntax only: builds the node tree, errors carry the byte offset.
NewickNode ParseNewickSyntax(std::string_view text);

// Labels resolve through `labels` when given. Without one, names that are
// exactly the integers 1..n are taken literally, names that are all
// non-numeric are numbered in lexicographic order, and anything else throws
// LabelMapRequired. Internal edges without a length get length 1; internal
// edges of length 0 are dropped.
TreePoint ParseNewick(std::string_view text, const std::optional<LabelMap> &labels = std::nullopt);

// One tree per line; blank lines and lines starting with '#' are skipped.
std::vector<TreePoint> ParseNewickStream(std::istream &in,
                                         const std::optional<LabelMap> &labels = std::nullopt);

struct TreeEdges {
  std::vector<std::pair<Split, double>> internal;
  std::map<int, double> leaf_lengths;
};

// One (split, length) per internal edge of the unrooted tree, zero lengths
// included. Leaf labels must be "1".."n".
TreeEdges SplitsFromTree(const NewickNode &root);

// Rooted at the internal node carrying leaf 1, children ordered by their
// smallest leaf, lengths in shortest round-trip form.
std::string ToNewick(const TreePoint &x);

}  // namespace bhv

#endif  // BHV_NEWICK_HPP_
