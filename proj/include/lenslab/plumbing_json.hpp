#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "plumbing.hpp"

namespace lenslab {

// accepted shape:
//   {"vertices": [{"weight": -2}, ...],
//    "edges": [[0, 1], ...],                    multiplicity defaults to 1
//    "marked": 0}                                optional
// an edge may also be [u, v, mult]
inline PlumbingGraph plumbing_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("vertices") || !j["vertices"].is_array())
        throw invalid_params("graph json needs a \"vertices\" array");
    std::vector<long> weights;
    for (const auto& v : j["vertices"]) {
        if (!v.is_object() || !v.contains("weight") || !v["weight"].is_number_integer())
            throw invalid_params("each vertex needs an integer \"weight\"");
        weights.push_back(v["weight"].get<long>());
    }
    std::vector<std::tuple<int, int, long>> edges;
    if (j.contains("edges")) {
        if (!j["edges"].is_array()) throw invalid_params("\"edges\" must be an array");
        for (const auto& e : j["edges"]) {
            if (!e.is_array() || e.size() < 2 || e.size() > 3)
                throw invalid_params("each edge must be [u, v] or [u, v, mult]");
            for (const auto& x : e)
                if (!x.is_number_integer()) throw invalid_params("edge entries must be integers");
            long mult = e.size() == 3 ? e[2].get<long>() : 1;
            edges.emplace_back(e[0].get<int>(), e[1].get<int>(), mult);
        }
    }
    std::optional<int> marked;
    if (j.contains("marked")) {
        if (!j["marked"].is_number_integer())
            throw invalid_params("\"marked\" must be a vertex index");
        marked = j["marked"].get<int>();
    }
    return PlumbingGraph(std::move(weights), edges, marked);
}

inline PlumbingGraph plumbing_from_json_text(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded()) throw invalid_params("graph file is not valid json");
    return plumbing_from_json(j);
}

}
