#include "bhv/json_io.hpp"

#include <limits>

#include "bhv/error.hpp"

namespace bhv {

using nlohmann::json;

json ToJson(const Split &s) { return {{"n", s.n()}, {"side", s.leaves()}}; }

json ToJson(const Topology &t) {
  json splits = json::array();
  for (const auto &s : t.splits()) splits.push_back(s.leaves());
  return {{"n", t.n()}, {"splits", splits}};
}

json ToJson(const TreePoint &x) {
  json edges = json::array();
  for (size_t i = 0; i < x.lengths().size(); ++i) {
    edges.push_back({{"side", x.topology().splits()[i].leaves()}, {"length", x.lengths()[i]}});
  }
  json out = {{"n", x.n()}, {"edges", edges}};
  if (!x.leaf_lengths().empty()) {
    json leaves = json::array();
    for (const auto &[leaf, length] : x.leaf_lengths()) {
      leaves.push_back({{"leaf", leaf}, {"length", length}});
    }
    out["leaf_lengths"] = leaves;
  }
  return out;
}

namespace {

[[noreturn]] void Invalid(const std::string &what) {
  throw Error(ErrorCode::kInvalidJson, "invalid JSON: " + what);
}

int ReadN(const json &j) {
  if (!j.is_object() || !j.contains("n") || !j["n"].is_number_integer()) {
    Invalid("expected an object with integer \"n\"");
  }
  return j["n"].get<int>();
}

std::vector<int> ReadLeaves(const json &j) {
  if (!j.is_array()) Invalid("expected an array of leaves");
  std::vector<int> leaves;
  for (const auto &leaf : j) {
    if (!leaf.is_number_integer()) Invalid("leaves must be integers");
    leaves.push_back(leaf.get<int>());
  }
  return leaves;
}

double ReadLength(const json &j) {
  if (!j.is_number()) Invalid("lengths must be numbers");
  return j.get<double>();
}

}  // namespace

Split SplitFromJson(const json &j) {
  const LeafCount n(ReadN(j));
  if (!j.contains("side")) Invalid("split needs \"side\"");
  return MakeSplit(ReadLeaves(j["side"]), n);
}

Topology TopologyFromJson(const json &j) {
  const LeafCount n(ReadN(j));
  if (!j.contains("splits") || !j["splits"].is_array()) Invalid("topology needs \"splits\"");
  std::vector<Split> splits;
  for (const auto &side : j["splits"]) splits.push_back(MakeSplit(ReadLeaves(side), n));
  return MakeTopology(std::move(splits), n);
}

TreePoint TreePointFromJson(const json &j) {
  const LeafCount n(ReadN(j));
  if (!j.contains("edges") || !j["edges"].is_array()) Invalid("tree needs \"edges\"");
  std::vector<std::pair<Split, double>> edges;
  for (const auto &edge : j["edges"]) {
    if (!edge.is_object() || !edge.contains("side") || !edge.contains("length")) {
      Invalid("edge needs \"side\" and \"length\"");
    }
    edges.emplace_back(MakeSplit(ReadLeaves(edge["side"]), n), ReadLength(edge["length"]));
  }
  std::map<int, double> leaf_lengths;
  if (j.contains("leaf_lengths")) {
    if (!j["leaf_lengths"].is_array()) Invalid("\"leaf_lengths\" must be an array");
    for (const auto &entry : j["leaf_lengths"]) {
      if (!entry.is_object() || !entry.contains("leaf") || !entry["leaf"].is_number_integer() ||
          !entry.contains("length")) {
        Invalid("leaf length needs integer \"leaf\" and \"length\"");
      }
      leaf_lengths[entry["leaf"].get<int>()] = ReadLength(entry["length"]);
    }
  }
  return TreePoint::Make(edges, n, std::move(leaf_lengths));
}

json BigIntToJson(const BigInt &value) {
  if (value >= 0 && value <= std::numeric_limits<std::uint64_t>::max()) {
    return value.convert_to<std::uint64_t>();
  }
  return value.str();
}

}  // namespace bhv
