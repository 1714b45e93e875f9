#include "bhv/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "bhv/error.hpp"
#include "bhv/json_io.hpp"
#include "bhv/link_graph.hpp"
#include "bhv/newick.hpp"

namespace bhv {

namespace {

using nlohmann::json;

struct GlobalFlags {
  std::string json_path = "-";
  std::string dot_path;
  std::optional<std::uint64_t> cap;
  std::uint64_t seed = 1;
};

std::uint64_t EffectiveCap(const GlobalFlags &flags) {
  if (flags.cap) return *flags.cap;
  if (const char *env = std::getenv("BHVKIT_CAP")) {
    try {
      return std::stoull(env);
    } catch (const std::exception &) {
      throw Error(ErrorCode::kInvalidJson, std::string("BHVKIT_CAP is not an integer: ") + env);
    }
  }
  return kDefaultEnumerationCap;
}

void Emit(const std::string &path, const std::string &text, std::ostream &out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path);
  if (!file) throw Error(ErrorCode::kInvalidJson, "cannot write " + path);
  file << text;
}

// A positional tree argument is a file of Newick lines when such a file
// exists, otherwise a literal Newick string.
std::vector<TreePoint> ReadTrees(const std::string &source, const std::optional<LabelMap> &labels) {
  if (std::filesystem::is_regular_file(source)) {
    std::ifstream in(source);
    auto trees = ParseNewickStream(in, labels);
    if (trees.empty()) throw Error(ErrorCode::kSyntaxError, "no trees in " + source);
    return trees;
  }
  return {ParseNewick(source, labels)};
}

std::optional<LabelMap> ReadLabels(const std::string &text) {
  if (text.empty()) return std::nullopt;
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw Error(ErrorCode::kInvalidJson, "--labels expects a JSON object {\"name\": index}");
  }
  std::map<std::string, int> index;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!it.value().is_number_integer()) {
      throw Error(ErrorCode::kInvalidJson, "label indices must be integers");
    }
    index[it.key()] = it.value().get<int>();
  }
  return LabelMap(std::move(index));
}

std::uint64_t Factorial(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

int RunLink(int n, const GlobalFlags &flags, std::ostream &out) {
  if (n > kMaxLinkLeafCount) {
    throw Error(ErrorCode::kTooLarge, "link graphs are built for n <= 12 only");
  }
  const LinkGraph g = BuildLinkGraph(LeafCount(n));
  bool degrees_ok = true;
  json layers = json::array();
  for (int k = 2; 2 * k <= n; ++k) {
    size_t vertices = 0;
    bool layer_ok = true;
    for (size_t v = 0; v < g.vertex_count(); ++v) {
      if (g.vertex(v).size() != k) continue;
      ++vertices;
      layer_ok &= static_cast<long long>(g.degree(v)) == DegreeFormula(n, k);
    }
    degrees_ok &= layer_ok;
    layers.push_back({{"k", k},
                      {"vertices", vertices},
                      {"degree_formula", DegreeFormula(n, k)},
                      {"degrees_ok", layer_ok}});
  }
  json report = {{"n", n},
                 {"vertices", g.vertex_count()},
                 {"edges", g.edge_count()},
                 {"degrees_ok", degrees_ok},
                 {"layers", layers}};
  if (!flags.dot_path.empty()) Emit(flags.dot_path, g.ToDot(), out);
  Emit(flags.json_path, report.dump() + "\n", out);
  return degrees_ok ? kExitOk : kExitVerificationFailed;
}

int RunAut(int n, const GlobalFlags &flags, std::ostream &out, std::ostream &err) {
  if (n == 4) {
    err << "aut: n = 4 is not supported. The leaf permutation action on the three splits of "
           "four leaves has a nontrivial kernel (e.g. (1 2)(3 4) fixes every split), so the link "
           "graph has automorphism group of order 6, not 24; the S_n identification needs a "
           "split size k with 2 <= k < n/2, which requires n >= 5.\n";
    return kExitUsageOrLimit;
  }
  if (n < 5 || n > 7) {
    err << "aut: n must lie in 5..7\n";
    return kExitUsageOrLimit;
  }
  const LinkGraph g = BuildLinkGraph(LeafCount(n));
  bool degrees_ok = true;
  for (size_t v = 0; v < g.vertex_count(); ++v) {
    degrees_ok &= static_cast<long long>(g.degree(v)) == DegreeFormula(n, g.vertex(v).size());
  }
  const AutomorphismGroup group = BruteForceAutomorphisms(g);
  std::set<VertexMap> images;
  for (const auto &sigma : AllPermutations(n)) images.insert(PermutationToAutomorphism(sigma, g));
  const bool injective = images.size() == Factorial(n);
  bool realized = injective && group.elements.has_value() &&
                  group.elements->size() == images.size() &&
                  std::equal(group.elements->begin(), group.elements->end(), images.begin());
  json report = {{"n", n},
                 {"vertices", g.vertex_count()},
                 {"edges", g.edge_count()},
                 {"degrees_ok", degrees_ok},
                 {"aut_order", group.order},
                 {"n_factorial", Factorial(n)},
                 {"order_is_n_factorial", group.order == Factorial(n)},
                 {"realized", realized},
                 {"generators", group.generators}};
  Emit(flags.json_path, report.dump() + "\n", out);
  return degrees_ok && realized && group.order == Factorial(n) ? kExitOk
                                                               : kExitVerificationFailed;
}

int RunVolume(const std::string &source, double eps, const std::string &labels,
              const GlobalFlags &flags, std::ostream &out, std::ostream &err) {
  std::ostringstream lines;
  for (const TreePoint &x : ReadTrees(source, ReadLabels(labels))) {
    BallVolume volume;
    try {
      volume = ComputeBallVolume(x, eps);
    } catch (const Error &e) {
      if (e.code() != ErrorCode::kEpsilonTooLarge) throw;
      err << "volume: " << e.what() << "\nmin_edge=" << json(x.MinEdgeLength()).dump() << "\n";
      return kExitEpsilonTooLarge;
    }
    const VolumeBounds bounds = BallVolumeBounds(LeafCount(x.n()), x.p(), eps);
    json report = {{"n", x.n()},
                   {"epsilon", eps},
                   {"p", x.p()},
                   {"degree_sequence", DegreeSequence(x.topology())},
                   {"s_F", BigIntToJson(volume.s_f)},
                   {"mu", volume.value},
                   {"lower", bounds.lower},
                   {"upper", bounds.upper},
                   {"is_binary", IsBinary(x.topology())},
                   {"is_cone_point", IsConePoint(x)}};
    lines << report.dump() << "\n";
  }
  Emit(flags.json_path, lines.str(), out);
  return kExitOk;
}

int RunCount(int n, const std::string &refine, bool oracle, int random_faces,
             const GlobalFlags &flags, std::ostream &out) {
  const LeafCount leaves(n);
  Topology face = Topology::ConePoint(leaves);
  if (!refine.empty()) {
    json sides = json::parse(refine, nullptr, false);
    if (sides.is_discarded()) throw Error(ErrorCode::kInvalidJson, "--refine is not valid JSON");
    face = TopologyFromJson({{"n", n}, {"splits", sides}});
  }
  const BigInt count = CountRefiningOrthants(face);
  if (!oracle && random_faces == 0) {
    out << count.str() << "\n";
    return kExitOk;
  }
  const std::uint64_t cap = EffectiveCap(flags);
  json report = {{"n", n}, {"count", BigIntToJson(count)}};
  bool ok = true;
  if (oracle) {
    const std::uint64_t enumerated = refine.empty()
                                         ? EnumerateBinaryTopologies(leaves, cap).size()
                                         : EnumerateBinaryRefinements(face, cap).size();
    report["oracle_count"] = enumerated;
    report["oracle_ok"] = BigInt(enumerated) == count;
    ok &= BigInt(enumerated) == count;
  }
  if (random_faces > 0) {
    std::mt19937_64 rng(flags.seed);
    bool faces_ok = true;
    for (int i = 0; i < random_faces; ++i) {
      const Topology sample = RandomFace(leaves, rng);
      faces_ok &= BigInt(EnumerateBinaryRefinements(sample, cap).size()) ==
                  CountRefiningOrthants(sample);
    }
    report["random_faces"] = random_faces;
    report["seed"] = flags.seed;
    report["random_faces_ok"] = faces_ok;
    ok &= faces_ok;
  }
  Emit(flags.json_path, report.dump() + "\n", out);
  return ok ? kExitOk : kExitVerificationFailed;
}

int RunDist(const std::string &a_source, const std::string &b_source, const GlobalFlags &flags,
            std::ostream &out) {
  const TreePoint a = ReadTrees(a_source, std::nullopt).front();
  const TreePoint b = ReadTrees(b_source, std::nullopt).front();
  if (a.n() != b.n()) {
    throw Error(ErrorCode::kLeafCountMismatch, "trees have " + std::to_string(a.n()) + " and " +
                                                   std::to_string(b.n()) + " leaves");
  }
  const auto same = SameOrthantDistance(a, b);
  json report = {{"same_orthant", same ? json(*same) : json(nullptr)},
                 {"cone_path", ConePathLength(a, b)},
                 {"upper_bound", DistanceUpperBound(a, b)}};
  Emit(flags.json_path, report.dump() + "\n", out);
  return kExitOk;
}

int RunParse(const std::string &source, bool canonical, const std::string &labels,
             const GlobalFlags &flags, std::ostream &out) {
  std::ostringstream lines, dot;
  for (const TreePoint &x : ReadTrees(source, ReadLabels(labels))) {
    lines << (canonical ? ToNewick(x) : ToJson(x).dump()) << "\n";
    dot << ReconstructTree(x.topology()).ToDot();
  }
  if (!flags.dot_path.empty()) Emit(flags.dot_path, dot.str(), out);
  Emit(flags.json_path, lines.str(), out);
  return kExitOk;
}

int ExitFor(const Error &e) {
  switch (e.code()) {
    case ErrorCode::kTooLarge:
    case ErrorCode::kEnumerationTooLarge:
    case ErrorCode::kSearchBudgetExceeded:
      return kExitUsageOrLimit;
    case ErrorCode::kEpsilonTooLarge:
      return kExitEpsilonTooLarge;
    case ErrorCode::kLeafCountMismatch:
      return kExitLeafMismatch;
    default:
      return kExitBadInput;
  }
}

}  // namespace

int RunCli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Combinatorics and local geometry of phylogenetic tree space", "bhvkit"};
  app.require_subcommand(1);
  GlobalFlags flags;
  std::uint64_t cap_value = 0;
  app.add_option("--json", flags.json_path, "Write the JSON report here ('-' for stdout)");
  app.add_option("--dot", flags.dot_path, "Write a Graphviz rendering here");
  auto *cap_option = app.add_option("--cap", cap_value, "Enumeration cap (default 1e7)");
  app.add_option("--seed", flags.seed, "Seed for sampled checks");

  int n = 0;
  auto *link = app.add_subcommand("link", "Build the link graph and check vertex degrees");
  link->add_option("n", n, "Leaf count")->required();

  auto *aut = app.add_subcommand("aut", "Compute the automorphism group of the link graph");
  aut->add_option("n", n, "Leaf count (5..7)")->required();

  std::string source, labels;
  double eps = 0.0;
  auto *volume = app.add_subcommand("volume", "Volume of small balls about trees");
  volume->add_option("trees", source, "Newick file or inline Newick")->required();
  volume->add_option("--eps", eps, "Ball radius")->required()->check(CLI::PositiveNumber);
  volume->add_option("--labels", labels, "Leaf name map as JSON {\"name\": index}");

  std::string refine;
  bool oracle = false;
  int random_faces = 0;
  auto *count = app.add_subcommand("count", "Count binary orthants refining a face");
  count->add_option("n", n, "Leaf count")->required();
  count->add_option("--refine", refine, "Face splits as JSON, e.g. [[1,2]]");
  count->add_flag("--oracle", oracle, "Cross-check against exhaustive enumeration");
  count->add_option("--random-faces", random_faces, "Also cross-check this many random faces")
      ->check(CLI::NonNegativeNumber);

  std::string other;
  auto *dist = app.add_subcommand("dist", "Distance bounds between two trees");
  dist->add_option("a", source, "First tree (Newick or file)")->required();
  dist->add_option("b", other, "Second tree (Newick or file)")->required();

  bool canonical = false;
  auto *parse = app.add_subcommand("parse", "Parse Newick into tree JSON");
  parse->add_option("trees", source, "Newick file or inline Newick")->required();
  parse->add_flag("--canonical", canonical, "Print canonical Newick instead of JSON");
  parse->add_option("--labels", labels, "Leaf name map as JSON {\"name\": index}");

  for (auto *sub : {link, aut, volume, count, dist, parse}) sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError &e) {
    const int status = app.exit(e, out, err);
    return status == 0 ? kExitOk : kExitUsageOrLimit;
  }
  if (cap_option->count() > 0) flags.cap = cap_value;

  try {
    if (link->parsed()) {
      if (n < 3) {
        err << "link: n must be at least 3\n";
        return kExitUsageOrLimit;
      }
      return RunLink(n, flags, out);
    }
    if (aut->parsed()) return RunAut(n, flags, out, err);
    if (volume->parsed()) return RunVolume(source, eps, labels, flags, out, err);
    if (count->parsed()) return RunCount(n, refine, oracle, random_faces, flags, out);
    if (dist->parsed()) return RunDist(source, other, flags, out);
    if (parse->parsed()) return RunParse(source, canonical, labels, flags, out);
  } catch (const Error &e) {
    err << "error: " << ErrorCodeName(e.code()) << ": " << e.what() << "\n";
    return ExitFor(e);
  }
  return kExitUsageOrLimit;
}

}  // namespace bhv
