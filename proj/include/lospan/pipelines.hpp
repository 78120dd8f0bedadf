#pragma once

#include <map>
#include <string_view>
#include <vector>

#include "lospan/covers.hpp"
#include "lospan/delaunay.hpp"
#include "lospan/graph.hpp"
#include "lospan/kernels.hpp"

namespace lospan {

/// How the last step picks edges between clusters.
///  Representative: the smallest-ID edge for every pair of clusters joined by a candidate.
///  Literal: candidates whose two endpoints are both cluster centers.
enum class ConnectorMode { Representative, Literal };

std::string_view to_string(ConnectorMode m);
ConnectorMode connector_mode_from_string(std::string_view s);

/// Graph in which PLOS measures cluster radii.
enum class ClusterHost { YDel, Spanner, PLDel };

std::string_view to_string(ClusterHost h);
ClusterHost cluster_host_from_string(std::string_view s);

/// Smallest k >= 6 with cos(2pi/k) - sin(2pi/k) >= (delta+1+eps)/((delta+1)(1+eps)).
int derive_k(double delta, double eps);

/// Cluster radius for LOS: min of the cone bound and delta*eps/4 (delta*eps/8
/// in representative mode). Throws if the result is not positive.
double derive_r_los(double delta, double eps, int k, ConnectorMode mode);

/// Largest radius for which clusters of same-parity cells never interact.
double cover_radius_cap(double beta, double delta);

struct LosParams {
    double alpha = 1.0;
    double beta = 0.0;
    double delta = 0.0;
    double eps = 0.0;
    int k = 6;
    double theta = 0.0;
    double r = 0.0;
    ConnectorMode mode = ConnectorMode::Representative;

    /// Derives k, theta and r. Throws std::invalid_argument on bad input.
    static LosParams make(double alpha, double beta, double delta, double eps,
                          ConnectorMode mode = ConnectorMode::Representative);
    void validate() const;
};

struct PlosParams {
    double beta = 0.0;
    double delta = 0.0;
    double eps = 0.0;
    double r = 0.0;
    ConnectorMode mode = ConnectorMode::Representative;
    ClusterHost host = ClusterHost::YDel;

    static PlosParams make(double beta, double delta, double eps,
                           ConnectorMode mode = ConnectorMode::Representative,
                           ClusterHost host = ClusterHost::YDel);
    void validate() const;
};

struct LosResult {
    SpannerGraph h;
    LosParams params;
    CliqueCover cover;
    ClusterCover clusters;
    std::vector<Edge> e0;
    std::vector<DirectedEdge> ey;
    std::vector<DirectedEdge> eyy;
    std::vector<Edge> connectors;
    std::size_t clique_greedy_max_degree = 0;  // max over cells of the per-cell spanner degree
};

LosResult los_full(const QudgInstance& inst, const LosParams& p);
SpannerGraph los(const QudgInstance& inst, double eps, double beta, double delta,
                 ConnectorMode mode = ConnectorMode::Representative);

/// State of the query graph after one parity round of PLOS step 3.
struct PlosIteration {
    int parity = 0;
    SpannerGraph state;            // YDel with eliminated edges removed
    std::vector<Edge> processed;   // edges queried in this round
};

struct PlosResult {
    SpannerGraph h;
    PlosParams params;
    CliqueCover cover;
    SpannerGraph pldel;
    SpannerGraph ydel;
    SpannerGraph ydel_after;  // after step 3
    ClusterCover clusters;
    std::vector<PlosIteration> iterations;
    std::map<CellIndex, std::vector<Edge>> accepted;  // step 3 additions per cell
    std::vector<Edge> connectors;
};

PlosResult plos_full(const QudgInstance& inst, const PlosParams& p);
SpannerGraph plos(const QudgInstance& inst, double eps, double beta, double delta,
                  ConnectorMode mode = ConnectorMode::Representative);

/// Cells whose squares form the 3x3 block around `cell`.
bool in_block(const CliqueCover& cover, std::size_t node, const CellIndex& cell, int radius = 1);

/// Is there a u-v path of length <= (1+eps)|uv| in q using only nodes of the
/// 3x3 block around `cell`?
bool restricted_sp_query(const SpannerGraph& q, std::size_t u, std::size_t v, double eps,
                         const CliqueCover& cover, const CellIndex& cell);
bool unrestricted_sp_query(const SpannerGraph& q, std::size_t u, std::size_t v, double eps);

/// For PLOS step 3: the cell in which edge uv is queried, i.e. the common cell
/// of earliest parity. nullopt if u and v share no cell.
std::optional<CellIndex> assigned_cell(const CliqueCover& cover, std::size_t u, std::size_t v);

/// Selects connectors among candidates for a cluster cover.
std::vector<Edge> select_connectors(const std::vector<Edge>& candidates, const ClusterCover& clusters,
                                    ConnectorMode mode);

}  // namespace lospan
