#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "lospan/graph.hpp"

namespace testutil {

using namespace lospan;

inline NodeSetPtr nodes_of(const std::vector<Point>& pts, std::vector<std::uint32_t> ids = {}) {
    std::vector<NodeId> out;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        out.push_back(NodeId{ids.empty() ? static_cast<std::uint32_t>(i) : ids[i]});
    }
    return std::make_shared<const NodeSet>(out, pts);
}

inline SpannerGraph complete(const NodeSetPtr& nodes) {
    SpannerGraph g(nodes);
    for (std::size_t u = 0; u < nodes->size(); ++u)
        for (std::size_t v = u + 1; v < nodes->size(); ++v) g.add_edge(u, v, StepTag::Input);
    return g;
}

inline QudgInstance udg(const std::vector<Point>& pts, std::vector<std::uint32_t> ids = {}) {
    return QudgInstance(nodes_of(pts, std::move(ids)), 1.0, {});
}

inline QudgInstance random_udg(std::size_t n, std::uint64_t seed, double degree = 12.0) {
    return generate_connected(n, side_for_density(n, 1.0, degree), 1.0, AdversaryPolicy::none(), seed).instance;
}

inline std::size_t idx(const NodeSetPtr& nodes, std::uint32_t id) { return nodes->at(NodeId{id}); }

}  // namespace testutil
