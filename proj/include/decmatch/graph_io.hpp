#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "decmatch/errors.hpp"
#include "decmatch/graph.hpp"

namespace decmatch {

// Graph JSON: {"n": int, "edges": [[u, v, w], ...]} with 0-based vertex ids;
// edge-id = position in the list.
inline nlohmann::json graph_to_json(const DynamicGraph& g) {
    nlohmann::json j;
    j["n"] = g.vertex_count();
    nlohmann::json edges = nlohmann::json::array();
    for (const Edge& e : g.edges()) edges.push_back({e.u, e.v, e.w});
    j["edges"] = std::move(edges);
    return j;
}

inline DynamicGraph graph_from_json(const nlohmann::json& j) {
    if (!j.contains("n") || !j.contains("edges"))
        throw ParseError("graph JSON must contain \"n\" and \"edges\"");
    int n = j.at("n").get<int>();
    std::vector<Edge> edges;
    for (const auto& row : j.at("edges")) {
        if (!row.is_array() || row.size() != 3) throw ParseError("edge rows must be [u, v, w]");
        edges.push_back({row[0].get<int>(), row[1].get<int>(), row[2].get<Weight>()});
    }
    try {
        return DynamicGraph(n, edges);
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("invalid graph: ") + e.what());
    }
}

}  // namespace decmatch
