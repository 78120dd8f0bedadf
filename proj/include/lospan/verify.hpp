#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lospan/graph.hpp"

namespace lospan {

struct Metrics {
    double stretch = 1.0;
    std::size_t max_degree = 0;
    double weight_ratio = 1.0;
    bool planar = true;
    int rounds = 0;
};

/// h leaves some pair disconnected that g connects.
class NotASpannerError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct StretchOptions {
    std::size_t exact_limit = 300;  // all pairs up to this many nodes
    std::size_t sampled_sources = 64;
    std::uint64_t seed = 1;
};

/// Max over g-connected pairs of d_h / d_g. Dijkstra from every source (or
/// from sampled sources above the exact limit).
double stretch_factor(const SpannerGraph& h, const SpannerGraph& g, const StretchOptions& opt = {});

/// Same quantity through Floyd-Warshall; for cross-checking on small inputs.
double stretch_factor_floyd(const SpannerGraph& h, const SpannerGraph& g);

/// Stretch of each edge of g in h: max d_h(u,v)/|uv| over edges uv of g.
double edge_stretch(const SpannerGraph& h, const SpannerGraph& g);

struct PlanarityResult {
    bool planar = true;
    std::optional<std::pair<Edge, Edge>> witness;
};

/// Exact crossing test with grid bucketing of edge bounding boxes.
PlanarityResult planarity_check(const SpannerGraph& h);
/// Every edge pair.
PlanarityResult planarity_check_bruteforce(const SpannerGraph& h);

/// No closed disk of radius c around an endpoint holds another endpoint.
bool isolation_check(const NodeSetPtr& nodes, const std::vector<Edge>& f, double c);

struct LeapfrogResult {
    bool ok = true;
    std::vector<Edge> violating;  // ordered, as oriented in the failing inequality
    std::size_t sequences_checked = 0;
};

/// Checks the leapfrog inequality on every subset of at most m_max edges,
/// taking the longest edge first and trying every order and orientation of
/// the others. Sequences are extended only while the partial right side stays
/// at or below t' times the first edge, which never loses a violation.
LeapfrogResult leapfrog_check(const NodeSetPtr& nodes, const std::vector<Edge>& f, double t_prime, double t,
                              int m_max);

/// w(h) / w(MST of g). Throws DisconnectedError if g is disconnected.
double weight_ratio(const SpannerGraph& h, const SpannerGraph& g);
std::size_t max_degree(const SpannerGraph& h);

Metrics compute_metrics(const SpannerGraph& h, const SpannerGraph& g, int rounds = 0,
                        const StretchOptions& opt = {});

}  // namespace lospan
