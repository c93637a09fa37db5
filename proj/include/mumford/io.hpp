#pragma once

#include "mumford/graph.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace mumford {

using json = nlohmann::ordered_json;

// { "vertices": [ids], "edges": [ {"id", "src", "dst"} ], "frontier": [ids] }.
// Listed edges are positive; involutes are implicit. Vertex ids become dense
// in listing order, edges are ordered by id.
json graphToJson(const DirectedGraph& g);
DirectedGraph graphFromJson(const json& j);

std::vector<std::vector<int>> readMatrixCsv(const std::string& text);
std::string writeMatrixCsv(const std::vector<std::vector<int>>& a);

std::string readFile(const std::string& path);

} // namespace mumford
