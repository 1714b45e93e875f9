#ifndef BHV_JSON_IO_HPP_
#define BHV_JSON_IO_HPP_

// JSON forms:
//   Split      {"n": 6, "side": [1, 2]}
//   Topology   {"n": 6, "splits": [[1, 2], [1, 2, 3]]}
//   TreePoint  {"n": 6, "edges": [{"side": [1, 6], "length": 0.25}, ...],
//               "leaf_lengths": [{"leaf": 1, "length": 1.0}, ...]}   (optional)
// Readers accept any side of a split and canonicalize it.

#include "bhv/measure.hpp"
#include "json.hpp"

namespace bhv {

nlohmann::json ToJson(const Split &s);
nlohmann::json ToJson(const Topology &t);
nlohmann::json ToJson(const TreePoint &x);

// Throw InvalidJson on schema violations; domain errors propagate.
Split SplitFromJson(const nlohmann::json &j);
Topology TopologyFromJson(const nlohmann::json &j);
TreePoint TreePointFromJson(const nlohmann::json &j);

// Exact integers that fit in 64 bits are numbers, larger ones decimal strings.
nlohmann::json BigIntToJson(const BigInt &value);

}  // namespace bhv

#endif  // BHV_JSON_IO_HPP_
