#pragma once

// Cluster graphs. Vertices are 0-based; edges are stored as (min, max) in
// lexicographic order, which is also the order CSIGN gates are applied.
//
// Preset vertex maps:
//   two            0 - 1
//   three          0 - 1 - 2
//   fiveLinear     0 - 1 - 2 - 3 - 4
//   fiveStar       centre 0, leaves 1..4
//   seventeenStar  centre 0 (the X qubit), inner ring 1..4 (the Z qubits),
//                  outer vertices 5+3(i-1) .. 7+3(i-1) attached to inner vertex i
//   unitCell       18-qubit cubic cell: face qubits 0..5 (-x,+x,-y,+y,-z,+z),
//                  edge qubits 6..17 (x-, y-, then z-directed, four each);
//                  each face qubit joins the four edge qubits on its
//                  boundary (24 edges)

#include <algorithm>
#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "catclust/error.hpp"
#include "json.hpp"

namespace catclust {

struct Edge {
    std::size_t u = 0;
    std::size_t v = 0;
    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

class GraphSpec {
public:
    GraphSpec() = default;

    GraphSpec(std::size_t vertexCount, std::vector<Edge> edges) : n_(vertexCount), edges_(std::move(edges)) {
        if (n_ == 0) throw FormatError("graph needs at least one vertex");
        for (auto& e : edges_) {
            if (e.u == e.v) throw FormatError("graph has a self-loop at vertex " + std::to_string(e.u));
            if (e.u >= n_ || e.v >= n_) throw FormatError("graph edge references a vertex out of range");
            if (e.u > e.v) std::swap(e.u, e.v);
        }
        std::sort(edges_.begin(), edges_.end());
        if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
            throw FormatError("graph has a duplicate edge");
    }

    std::size_t vertexCount() const { return n_; }
    const std::vector<Edge>& edges() const { return edges_; }

    std::vector<std::size_t> neighbours(std::size_t v) const {
        std::vector<std::size_t> out;
        for (const auto& e : edges_) {
            if (e.u == v) out.push_back(e.v);
            if (e.v == v) out.push_back(e.u);
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    friend bool operator==(const GraphSpec&, const GraphSpec&) = default;

private:
    std::size_t n_ = 0;
    std::vector<Edge> edges_;
};

enum class PresetName { two, three, fiveLinear, fiveStar, seventeenStar, unitCell };

inline constexpr std::array<std::pair<std::string_view, PresetName>, 6> kPresetNames = {{
    {"two", PresetName::two},
    {"three", PresetName::three},
    {"fiveLinear", PresetName::fiveLinear},
    {"fiveStar", PresetName::fiveStar},
    {"seventeenStar", PresetName::seventeenStar},
    {"unitCell", PresetName::unitCell},
}};

inline PresetName parsePresetName(std::string_view name) {
    for (const auto& [key, value] : kPresetNames)
        if (key == name) return value;
    throw FormatError("unknown graph preset '" + std::string(name) + "'");
}

inline std::string_view presetLabel(PresetName p) {
    for (const auto& [key, value] : kPresetNames)
        if (value == p) return key;
    return "?";
}

namespace detail {
// Qubits sit at face and edge midpoints of the unit cube; coordinates are
// doubled so they are integers in {0, 1, 2}. A face qubit couples to an edge
// qubit when the edge lies in that face.
inline std::vector<Edge> unitCellEdges() {
    using Point = std::array<int, 3>;
    std::vector<Point> faces;
    for (int axis = 0; axis < 3; ++axis)
        for (int side : {0, 2}) {
            Point p{1, 1, 1};
            p[axis] = side;
            faces.push_back(p);
        }
    std::vector<Point> edgeMids;
    for (int axis = 0; axis < 3; ++axis)
        for (int b : {0, 2})
            for (int a : {0, 2}) {
                Point p{};
                p[axis] = 1;
                p[(axis + 1) % 3] = a;
                p[(axis + 2) % 3] = b;
                edgeMids.push_back(p);
            }
    std::vector<Edge> edges;
    for (std::size_t f = 0; f < faces.size(); ++f) {
        const int axis = static_cast<int>(f / 2);
        for (std::size_t k = 0; k < edgeMids.size(); ++k)
            if (edgeMids[k][axis] == faces[f][axis]) edges.push_back({f, faces.size() + k});
    }
    return edges;
}
}  // namespace detail

inline GraphSpec presetGraph(PresetName name) {
    switch (name) {
        case PresetName::two:
            return GraphSpec(2, {{0, 1}});
        case PresetName::three:
            return GraphSpec(3, {{0, 1}, {1, 2}});
        case PresetName::fiveLinear:
            return GraphSpec(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
        case PresetName::fiveStar:
            return GraphSpec(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
        case PresetName::seventeenStar: {
            std::vector<Edge> edges;
            for (std::size_t i = 1; i <= 4; ++i) {
                edges.push_back({0, i});
                for (std::size_t k = 0; k < 3; ++k) edges.push_back({i, 5 + 3 * (i - 1) + k});
            }
            return GraphSpec(17, std::move(edges));
        }
        case PresetName::unitCell:
            return GraphSpec(18, detail::unitCellEdges());
    }
    throw FormatError("unknown graph preset");
}

/// Graph file: { "n": int, "edges": [[i, j], ...] }.
inline GraphSpec graphFromJson(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("edges"))
        throw FormatError("graph JSON needs 'n' and 'edges'");
    if (!j["n"].is_number_integer() || j["n"].get<long long>() <= 0)
        throw FormatError("graph 'n' must be a positive integer");
    std::vector<Edge> edges;
    for (const auto& je : j["edges"]) {
        if (!je.is_array() || je.size() != 2 || !je[0].is_number_integer() || !je[1].is_number_integer() ||
            je[0].get<long long>() < 0 || je[1].get<long long>() < 0)
            throw FormatError("graph edges must be pairs of non-negative integers");
        edges.push_back({je[0].get<std::size_t>(), je[1].get<std::size_t>()});
    }
    return GraphSpec(j["n"].get<std::size_t>(), std::move(edges));
}

inline nlohmann::json graphToJson(const GraphSpec& g) {
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& e : g.edges()) edges.push_back({e.u, e.v});
    return {{"n", g.vertexCount()}, {"edges", std::move(edges)}};
}

}  // namespace catclust
