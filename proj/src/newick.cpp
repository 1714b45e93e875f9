#include "bhv/newick.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>

#include "bhv/error.hpp"

namespace bhv {

LabelMap::LabelMap(std::map<std::string, int> index) : index_(std::move(index)) {
  std::set<int> seen;
  for (const auto &[name, leaf] : index_) {
    if (leaf < 1 || leaf > static_cast<int>(index_.size()) || !seen.insert(leaf).second) {
      throw Error(ErrorCode::kLeafOutOfRange, "label map is not a bijection onto 1..n");
    }
  }
}

LabelMap LabelMap::Lexicographic(std::vector<std::string> names) {
  std::sort(names.begin(), names.end());
  std::map<std::string, int> index;
  for (size_t i = 0; i < names.size(); ++i) {
    if (!index.emplace(names[i], static_cast<int>(i) + 1).second) {
      throw Error(ErrorCode::kDuplicateLeaf, "duplicate leaf name '" + names[i] + "'");
    }
  }
  return LabelMap(std::move(index));
}

std::optional<int> LabelMap::Find(const std::string &name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NewickNode ParseTree() {
    NewickNode root = ParseSubtree();
    SkipSpace();
    Expect(';');
    SkipSpace();
    if (pos_ != text_.size()) Fail("trailing characters after ';'");
    return root;
  }

 private:
  [[noreturn]] void Fail(const std::string &what) const {
    throw Error(ErrorCode::kSyntaxError,
                "Newick syntax error at position " + std::to_string(pos_) + ": " + what);
  }

  void SkipSpace() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char Peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void Expect(char c) {
    if (Peek() != c) Fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  static bool IsLabelChar(char c) {
    return c != '\0' && !std::isspace(static_cast<unsigned char>(c)) &&
           std::string_view("(),:;[]'\"").find(c) == std::string_view::npos;
  }

  void RejectUnsupported() const {
    char c = Peek();
    if (c == '[') Fail("bracketed comments are not supported");
    if (c == '\'' || c == '"') Fail("quoted labels are not supported");
  }

  std::optional<std::string> ParseLabel() {
    SkipSpace();
    RejectUnsupported();
    size_t start = pos_;
    while (IsLabelChar(Peek())) ++pos_;
    if (pos_ == start) return std::nullopt;
    return std::string(text_.substr(start, pos_ - start));
  }

  std::optional<double> ParseLength() {
    SkipSpace();
    if (Peek() != ':') return std::nullopt;
    ++pos_;
    SkipSpace();
    if (Peek() == '-') {
      throw Error(ErrorCode::kNegativeLength,
                  "negative branch length at position " + std::to_string(pos_));
    }
    size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) ||
            std::string_view(".eE+-").find(text_[pos_]) != std::string_view::npos)) {
      ++pos_;
    }
    double value = 0.0;
    auto [end, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (ec != std::errc() || end != text_.data() + pos_ || start == pos_) {
      pos_ = start;
      Fail("malformed branch length");
    }
    if (value < 0.0) {
      pos_ = start;
      throw Error(ErrorCode::kNegativeLength,
                  "negative branch length at position " + std::to_string(pos_));
    }
    return value;
  }

  NewickNode ParseSubtree() {
    SkipSpace();
    RejectUnsupported();
    NewickNode node;
    if (Peek() == '(') {
      ++pos_;
      node.children.push_back(ParseSubtree());
      SkipSpace();
      while (Peek() == ',') {
        ++pos_;
        node.children.push_back(ParseSubtree());
        SkipSpace();
      }
      RejectUnsupported();
      Expect(')');
      node.label = ParseLabel();
    } else {
      node.label = ParseLabel();
      if (!node.label) Fail("expected a leaf label or '('");
    }
    node.length = ParseLength();
    return node;
  }

  std::string_view text_;
  size_t pos_ = 0;
};

void CollectLeafNames(const NewickNode &node, std::vector<std::string> &names) {
  if (node.is_leaf()) {
    names.push_back(*node.label);
    return;
  }
  for (const auto &child : node.children) CollectLeafNames(child, names);
}

bool IsDigits(const std::string &s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return std::isdigit(static_cast<unsigned char>(c));
  });
}

NewickNode Relabel(const NewickNode &node, const LabelMap &labels) {
  NewickNode copy;
  copy.length = node.length;
  if (node.is_leaf()) {
    auto leaf = labels.Find(*node.label);
    if (!leaf) {
      throw Error(ErrorCode::kLeafOutOfRange, "leaf '" + *node.label + "' is not in the label map");
    }
    copy.label = std::to_string(*leaf);
    return copy;
  }
  for (const auto &child : node.children) copy.children.push_back(Relabel(child, labels));
  return copy;
}

LabelMap ResolveLabels(const std::vector<std::string> &names,
                       const std::optional<LabelMap> &labels) {
  std::set<std::string> distinct;
  for (const auto &name : names) {
    if (!distinct.insert(name).second) {
      throw Error(ErrorCode::kDuplicateLeaf, "duplicate leaf name '" + name + "'");
    }
  }
  if (labels) {
    if (labels->size() != static_cast<int>(names.size())) {
      throw Error(ErrorCode::kLeafOutOfRange, "label map size differs from the leaf count");
    }
    return *labels;
  }
  const int n = static_cast<int>(names.size());
  const bool any_numeric = std::any_of(names.begin(), names.end(), IsDigits);
  if (!any_numeric) return LabelMap::Lexicographic(names);
  std::map<std::string, int> literal;
  for (const auto &name : names) {
    if (!IsDigits(name) || name.size() > 2 || name[0] == '0') break;
    int value = std::stoi(name);
    if (value < 1 || value > n) break;
    literal.emplace(name, value);
  }
  if (static_cast<int>(literal.size()) != n) {
    throw Error(ErrorCode::kLabelMapRequired,
                "numeric leaf names must be exactly 1..n; supply a label map otherwise");
  }
  return LabelMap(std::move(literal));
}

struct Decomposer {
  int n;
  LeafCount count;
  TreeEdges result;

  // Returns the leaf set below `node`.
  LeafMask Visit(const NewickNode &node, bool is_root) {
    if (node.is_leaf()) {
      if (!node.label || !IsDigits(*node.label) || node.label->size() > 2 ||
          std::stoi(*node.label) < 1 || std::stoi(*node.label) > n) {
        throw Error(ErrorCode::kLeafOutOfRange, "leaves are not labeled 1..n");
      }
      return LeafBit(std::stoi(*node.label));
    }
    if (node.children.size() == 1) {
      throw Error(ErrorCode::kDegreeTwoInternal, "internal node with a single child");
    }
    LeafMask below = 0;
    if (is_root && node.children.size() == 2) {
      // Suppress the root: its two edges become one.
      LeafMask left = VisitChild(node.children[0], false);
      LeafMask right = VisitChild(node.children[1], false);
      std::optional<double> merged;
      for (const auto &child : node.children) {
        if (child.length) merged = merged.value_or(0.0) + *child.length;
      }
      AddEdge(left, merged);
      return left | right;
    }
    for (const auto &child : node.children) below |= VisitChild(child, true);
    return below;
  }

  LeafMask VisitChild(const NewickNode &child, bool record) {
    LeafMask below = Visit(child, false);
    if (record) AddEdge(below, child.length);
    return below;
  }

  void AddEdge(LeafMask below, std::optional<double> length) {
    const int size = PopCount(below);
    if (size == 1 || size == n - 1) {
      const LeafMask leaf = size == 1 ? below : (~below & count.full_mask());
      if (length) result.leaf_lengths[__builtin_ctzll(leaf) + 1] += *length;
      return;
    }
    result.internal.emplace_back(Split::FromMask(below, count), length.value_or(1.0));
  }
};

int CountLeaves(const NewickNode &node) {
  if (node.is_leaf()) return 1;
  int total = 0;
  for (const auto &child : node.children) total += CountLeaves(child);
  return total;
}

}  // namespace

NewickNode ParseNewickSyntax(std::string_view text) { return Parser(text).ParseTree(); }

TreeEdges SplitsFromTree(const NewickNode &root) {
  const int n = CountLeaves(root);
  Decomposer decomposer{n, LeafCount(n), {}};
  if (root.is_leaf() || root.children.size() == 1) {
    throw Error(ErrorCode::kDegreeTwoInternal, "root must have at least two children");
  }
  LeafMask all = decomposer.Visit(root, true);
  if (all != LeafCount(n).full_mask()) {
    throw Error(ErrorCode::kLeafOutOfRange, "leaves are not labeled 1..n");
  }
  return std::move(decomposer.result);
}

TreePoint ParseNewick(std::string_view text, const std::optional<LabelMap> &labels) {
  const NewickNode parsed = ParseNewickSyntax(text);
  std::vector<std::string> names;
  CollectLeafNames(parsed, names);
  const LabelMap resolved = ResolveLabels(names, labels);
  TreeEdges edges = SplitsFromTree(Relabel(parsed, resolved));
  std::vector<std::pair<Split, double>> positive;
  for (const auto &edge : edges.internal) {
    if (edge.second > 0.0) positive.push_back(edge);
  }
  return TreePoint::Make(positive, LeafCount(static_cast<int>(names.size())),
                         std::move(edges.leaf_lengths));
}

std::vector<TreePoint> ParseNewickStream(std::istream &in, const std::optional<LabelMap> &labels) {
  std::vector<TreePoint> trees;
  std::string line;
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    trees.push_back(ParseNewick(line, labels));
  }
  return trees;
}

namespace {

std::string FormatLength(double value) {
  char buffer[64];
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, end);
}

struct Writer {
  const TreePoint &x;
  const InternalTree &tree;
  std::vector<std::vector<int>> incident;

  // Writes the subtree hanging off `node`, entered through edge `via`.
  std::pair<int, std::string> Subtree(int node, int via) {
    std::vector<std::pair<int, std::string>> parts;
    for (int leaf = 1; leaf <= x.n(); ++leaf) {
      if (tree.leaf_node()[leaf - 1] != node) continue;
      std::string text = std::to_string(leaf);
      auto it = x.leaf_lengths().find(leaf);
      if (it != x.leaf_lengths().end()) text += ":" + FormatLength(it->second);
      parts.emplace_back(leaf, std::move(text));
    }
    for (int e : incident[node]) {
      if (e == via) continue;
      const auto &edge = tree.edges()[e];
      auto [smallest, text] = Subtree(edge.a == node ? edge.b : edge.a, e);
      parts.emplace_back(smallest, text + ":" + FormatLength(*x.LengthOf(edge.split)));
    }
    std::sort(parts.begin(), parts.end());
    std::string out = "(";
    for (size_t i = 0; i < parts.size(); ++i) out += (i ? "," : "") + parts[i].second;
    return {parts.front().first, out + ")"};
  }
};

}  // namespace

std::string ToNewick(const TreePoint &x) {
  const InternalTree tree = ReconstructTree(x.topology());
  Writer writer{x, tree, tree.Incidence()};
  return writer.Subtree(tree.leaf_node()[0], -1).second + ";";
}

}  // namespace bhv
