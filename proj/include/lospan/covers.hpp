#pragma once

#include <array>
#include <map>
#include <unordered_map>
#include <vector>

#include "lospan/geometry.hpp"
#include "lospan/graph.hpp"

namespace lospan {

/// Nodes of each non-empty cell of an overlapping grid.
struct CliqueCover {
    explicit CliqueCover(GridSpec g) : grid(g) {}

    GridSpec grid;
    std::map<CellIndex, std::vector<std::size_t>> cells;  // members sorted by node ID
    std::vector<std::vector<CellIndex>> cells_of_node;

    bool share_cell(std::size_t u, std::size_t v) const;
};

/// Cells of the grid over the instance. Throws if beta > alpha/sqrt(2), since
/// cells would then not be guaranteed cliques.
CliqueCover clique_cover(const QudgInstance& inst, const GridSpec& g);

/// Same partition without the clique check.
CliqueCover grid_cover(const NodeSetPtr& nodes, const GridSpec& g);

struct ClusterCover {
    double r = 0.0;
    std::vector<std::size_t> center_of;  // node index -> index of its center

    std::vector<std::size_t> centers() const;
    std::map<std::size_t, std::vector<std::size_t>> clusters() const;
    bool is_center(std::size_t u) const { return center_of[u] == u; }
};

/// Nodes within graph distance r of u (u included), sorted by node ID.
/// Only edges of length <= r can lie on such paths, so only those are used.
std::vector<std::size_t> r_ball(const SpannerGraph& h, std::size_t u, double r);

/// What one clique needs to run a single cover iteration.
struct CoverCellInput {
    std::vector<NodeId> members;                             // ascending
    std::unordered_map<NodeId, std::vector<NodeId>> ball;    // r-ball of every member
    std::unordered_map<NodeId, NodeId> center_of;            // known covered nodes
};

/// Grows existing clusters of the clique, then creates new ones. Returns the
/// members covered by this step together with their centers.
std::vector<std::pair<NodeId, NodeId>> cover_cell_step(const CoverCellInput& in);

/// Centralized cluster cover processing parity classes in `order`.
ClusterCover cluster_cover_reference(const SpannerGraph& h, const CliqueCover& cover, double r,
                                     std::array<int, 4> order = {0, 1, 2, 3});

}  // namespace lospan
