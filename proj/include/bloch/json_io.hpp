#ifndef BLOCH_JSON_IO_HPP
#define BLOCH_JSON_IO_HPP

#include "bloch/bloch.hpp"

#include <json.hpp>

namespace bloch {

/// Field elements serialize as a decimal/rational string when rational,
/// otherwise as {"radicands": [per-level coefficient arrays], "coeff": [...]}.
/// Deserialization additionally accepts expression trees
/// {"op": "add|mul|neg|inv|sqrt", "args": [...]} with string leaves.
nlohmann::json field_to_json(const TowerElement& x);
TowerElement field_from_json(const nlohmann::json& j,
                             int tower_depth_cap = kDefaultTowerDepthCap);

nlohmann::json class_to_json(const SquareClass& c);
SquareClass class_from_json(const nlohmann::json& j);

nlohmann::json group_ring_to_json(const GroupRing& r);
GroupRing group_ring_from_json(const nlohmann::json& j);

nlohmann::json rp_to_json(const RPElement& e);
RPElement rp_from_json(const nlohmann::json& j, int tower_depth_cap = kDefaultTowerDepthCap);

nlohmann::json sym_to_json(const SymSquareElement& s, const MultiplicativeBasis& basis);
nlohmann::json wedge_to_json(const WedgeElement& w, const MultiplicativeBasis& basis);

}  // namespace bloch

#endif
