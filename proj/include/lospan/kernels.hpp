#pragma once

#include <vector>

#include "lospan/graph.hpp"

namespace lospan {

struct DirectedEdge {
    std::size_t from = 0;
    std::size_t to = 0;
    EdgeId id;  // undirected ID of {from, to}

    friend bool operator==(const DirectedEdge& a, const DirectedEdge& b) {
        return a.from == b.from && a.to == b.to;
    }
};

/// Greedy (1+eps)-spanner: edges in ascending EdgeId order, each kept iff the
/// output built so far has no path of length <= (1+eps)|uv|.
SpannerGraph greedy_spanner(const NodeSetPtr& nodes, std::vector<Edge> edges, double eps,
                            StepTag tag = StepTag::Greedy);
SpannerGraph greedy_spanner(const SpannerGraph& g, double eps, StepTag tag = StepTag::Greedy);

/// For every node and every non-empty cone of k, the outgoing edge of
/// smallest ID. Sorted by (from ID, to ID).
std::vector<DirectedEdge> yao_select(const NodeSetPtr& nodes, const std::vector<Edge>& e0, int k);

/// For every node u and cone of u, only the incoming edge of smallest ID
/// among those whose source lies in that cone survives.
std::vector<DirectedEdge> reverse_yao(const NodeSetPtr& nodes, const std::vector<DirectedEdge>& ey, int k);

/// Bounded-degree planar spanner of a planar graph. Throws std::domain_error
/// when some node has more than five processed neighbours at its turn.
SpannerGraph ordered_yao(const SpannerGraph& g, StepTag tag = StepTag::OrderedYao);

/// Processing order used by ordered_yao (node indices, first processed first).
std::vector<std::size_t> ordered_yao_order(const SpannerGraph& g);

}  // namespace lospan
