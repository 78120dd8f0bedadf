#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lospan/geometry.hpp"

namespace lospan {

struct NodeId {
    std::uint32_t value = 0;

    friend auto operator<=>(const NodeId&, const NodeId&) = default;
};

/// Identifier of a directed edge: (length, source ID, target ID), ordered
/// lexicographically. For an undirected edge it is the smaller of the two
/// directions, i.e. src is always the smaller ID.
struct EdgeId {
    double length = 0.0;
    NodeId src;
    NodeId dst;

    friend bool operator==(const EdgeId&, const EdgeId&) = default;
    friend bool operator<(const EdgeId& a, const EdgeId& b) {
        if (a.length != b.length) return a.length < b.length;
        if (a.src != b.src) return a.src < b.src;
        return a.dst < b.dst;
    }
    friend bool operator>(const EdgeId& a, const EdgeId& b) { return b < a; }
    friend bool operator<=(const EdgeId& a, const EdgeId& b) { return !(b < a); }
};

bool edge_id_less(const EdgeId& e1, const EdgeId& e2);

/// Undirected edge ID of {a, b} with the given length.
EdgeId undirected_edge_id(double length, NodeId a, NodeId b);

/// Embedded nodes shared by an instance and every subgraph derived from it.
class NodeSet {
public:
    NodeSet(std::vector<NodeId> ids, std::vector<Point> points);

    std::size_t size() const { return ids_.size(); }
    NodeId id(std::size_t idx) const { return ids_[idx]; }
    const Point& point(std::size_t idx) const { return points_[idx]; }
    const std::vector<NodeId>& ids() const { return ids_; }
    const std::vector<Point>& points() const { return points_; }
    std::optional<std::size_t> index_of(NodeId id) const;
    std::size_t at(NodeId id) const;

    double length(std::size_t u, std::size_t v) const { return dist(points_[u], points_[v]); }
    EdgeId edge_id(std::size_t u, std::size_t v) const {
        return undirected_edge_id(length(u, v), ids_[u], ids_[v]);
    }

private:
    std::vector<NodeId> ids_;
    std::vector<Point> points_;
    std::unordered_map<std::uint32_t, std::size_t> index_;
};

using NodeSetPtr = std::shared_ptr<const NodeSet>;

/// Undirected edge between node indices, u < v by node ID.
struct Edge {
    std::size_t u = 0;
    std::size_t v = 0;
    EdgeId id;
};

/// Which algorithm step contributed an edge.
enum class StepTag {
    Input,
    CliqueSpanner,   // LOS step 1
    YaoConnector,    // LOS step 4
    Delaunay,
    OrderedYao,
    CellGreedy,      // PLOS step 3
    CellConnector,   // PLOS step 4
    Greedy,
    Tree,
};

std::string_view to_string(StepTag tag);
StepTag step_tag_from_string(std::string_view s);

struct TaggedEdge {
    Edge edge;
    StepTag tag;
};

/// Edge subset over a node set, each edge carrying provenance.
class SpannerGraph {
public:
    explicit SpannerGraph(NodeSetPtr nodes);

    const NodeSetPtr& nodes() const { return nodes_; }
    std::size_t node_count() const { return nodes_->size(); }
    std::size_t edge_count() const { return edge_count_; }

    /// Adds {u,v}; returns false (keeping the first tag) if already present.
    bool add_edge(std::size_t u, std::size_t v, StepTag tag);
    bool remove_edge(std::size_t u, std::size_t v);
    bool has_edge(std::size_t u, std::size_t v) const;
    std::optional<StepTag> tag_of(std::size_t u, std::size_t v) const;

    struct Arc {
        std::size_t to;
        double length;
    };
    const std::vector<Arc>& neighbors(std::size_t u) const { return adj_[u]; }
    std::size_t degree(std::size_t u) const { return adj_[u].size(); }
    std::size_t max_degree() const;
    double weight() const;

    /// All edges sorted by EdgeId.
    std::vector<TaggedEdge> edges() const;
    std::vector<Edge> edges_with_tag(StepTag tag) const;

    friend bool same_edge_set(const SpannerGraph& a, const SpannerGraph& b);

private:
    static std::uint64_t key(std::size_t u, std::size_t v);

    NodeSetPtr nodes_;
    std::vector<std::vector<Arc>> adj_;
    std::unordered_map<std::uint64_t, StepTag> tags_;
    std::size_t edge_count_ = 0;
};

bool same_edge_set(const SpannerGraph& a, const SpannerGraph& b);

struct AdversaryPolicy {
    enum class Kind { None, All, Random };

    Kind kind = Kind::None;
    double p = 0.0;

    static AdversaryPolicy none() { return {Kind::None, 0.0}; }
    static AdversaryPolicy all() { return {Kind::All, 1.0}; }
    static AdversaryPolicy random(double p) { return {Kind::Random, p}; }
    std::string describe() const;
    static AdversaryPolicy parse(std::string_view s);
};

/// alpha-quasi unit disk graph: every pair at distance <= alpha is an edge,
/// no pair beyond 1 is, and band pairs in (alpha, 1] are listed explicitly.
class QudgInstance {
public:
    QudgInstance(NodeSetPtr nodes, double alpha,
                 std::vector<std::pair<NodeId, NodeId>> band_edges);

    const NodeSetPtr& nodes() const { return nodes_; }
    std::size_t size() const { return nodes_->size(); }
    const Point& point(std::size_t idx) const { return nodes_->point(idx); }
    NodeId id(std::size_t idx) const { return nodes_->id(idx); }
    double alpha() const { return alpha_; }

    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<std::size_t>& neighbors(std::size_t u) const { return adj_[u]; }
    bool has_edge(std::size_t u, std::size_t v) const;
    /// Accepted band pairs, (smaller ID, larger ID), sorted.
    const std::vector<std::pair<NodeId, NodeId>>& band_edges() const { return band_; }

    SpannerGraph as_graph(StepTag tag = StepTag::Input) const;
    bool is_connected() const;

private:
    NodeSetPtr nodes_;
    double alpha_;
    std::vector<std::pair<NodeId, NodeId>> band_;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::size_t>> adj_;
};

QudgInstance build_qudg(const std::vector<Point>& points, double alpha,
                        const AdversaryPolicy& policy, std::uint64_t seed);
QudgInstance build_qudg(std::vector<NodeId> ids, const std::vector<Point>& points, double alpha,
                        const AdversaryPolicy& policy, std::uint64_t seed);

/// Uniform points in [0, side)^2.
std::vector<Point> random_points(std::size_t n, double side, std::uint64_t seed);

struct GeneratedInstance {
    QudgInstance instance;
    std::uint64_t seed;      // seed that produced the connected instance
    int attempts;
};

/// Random connected instance; retries with derived seeds up to max_attempts.
GeneratedInstance generate_connected(std::size_t n, double side, double alpha,
                                     const AdversaryPolicy& policy, std::uint64_t seed,
                                     int max_attempts = 200);

/// Side length giving an expected `alpha_degree` nodes within distance alpha.
double side_for_density(std::size_t n, double alpha, double alpha_degree);

class DisconnectedError : public std::runtime_error {
public:
    DisconnectedError(const std::string& what, std::vector<std::vector<NodeId>> components);
    const std::vector<std::vector<NodeId>>& components() const { return components_; }

private:
    std::vector<std::vector<NodeId>> components_;
};

struct PathResult {
    double length = 0.0;
    std::vector<NodeId> path;
};

/// Euclidean-weighted shortest path; ties resolved towards the
/// lexicographically smallest node-ID sequence. nullopt when unreachable.
std::optional<PathResult> shortest_path(const SpannerGraph& g, NodeId u, NodeId v);

/// Single-source distances (infinity when unreachable). Stops expanding
/// beyond `bound` when given.
std::vector<double> dijkstra(const SpannerGraph& g, std::size_t source,
                             double bound = std::numeric_limits<double>::infinity());

/// Distance from s to t, or infinity if it exceeds `bound`.
double bounded_distance(const SpannerGraph& g, std::size_t s, std::size_t t, double bound);

std::vector<std::vector<std::size_t>> connected_components(const SpannerGraph& g);

/// Minimum spanning tree, ties resolved by EdgeId. Throws DisconnectedError.
SpannerGraph mst(const SpannerGraph& g);
double mst_weight(const NodeSetPtr& nodes, const std::vector<Edge>& edges);

/// Longest over shortest edge length. Throws on an empty set.
double aspect_ratio(const std::vector<double>& lengths);
double aspect_ratio(const std::vector<Edge>& edges);

}  // namespace lospan

template <>
struct std::hash<lospan::NodeId> {
    std::size_t operator()(const lospan::NodeId& n) const noexcept {
        return std::hash<std::uint32_t>{}(n.value);
    }
};
