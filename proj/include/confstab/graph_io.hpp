#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "confstab/family.hpp"
#include "confstab/graph.hpp"

namespace confstab {

// Graph JSON: {"basepoint": int|null, "edges": [[tail, head], ...], "labels": {...},
// "vertices": [0, 1, ...]}. Vertex ids must be dense and in order. Labels are
// {"vertices": [[v, coordinate, copy], ...], "edges": [[e, coordinate, copy], ...]} or {}.
nlohmann::json graph_to_json(const Graph& g);
Graph graph_from_json(const nlohmann::json& j);

// Family JSON: {"kind": "wedge_fi" | "interval_delta" | "circle_lambda", "base": graph,
// "summands": [{"graph": graph, "glue": {"vertices": [[b, s], ...], "edges": [[b, s], ...]}}]}
nlohmann::json family_to_json(const FamilyDescriptor& f);
FamilyDescriptor family_from_json(const nlohmann::json& j);

/// Canonical text form: compact, keys sorted.
std::string to_canonical_string(const nlohmann::json& j);

nlohmann::json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const nlohmann::json& j);

}  // namespace confstab
