#pragma once

#include "treepara/partition_tree.hpp"
#include "treepara/point_set.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>

namespace treepara {

/// Tree-spec document:
///   { "n": N, "levels": [ [ {"k": int, "elements": [ids], "children": [k's]} ] ] }
/// An optional "measure" key ("normalized" | "counting") is honoured.
nlohmann::json tree_to_spec(const PartitionTree& tree);

/// Schema check only; the resulting tree may violate the partition axioms.
PartitionTree parse_tree_spec(const nlohmann::json& document);

/// parse_tree_spec followed by validation; throws PartitionViolation listing
/// every violated axiom.
PartitionTree load_tree_spec(const nlohmann::json& document);

nlohmann::json validation_to_json(const ValidationReport& report);

/// CSV with header `id,x0,...,x{m-1}`; the header may be just `id`.
PointSet read_point_csv(std::istream& in, std::string name = {});

}  // namespace treepara
