#pragma once

#include <array>
#include <vector>

#include "lospan/graph.hpp"

namespace lospan {

struct Triangulation {
    NodeSetPtr nodes;
    std::vector<std::array<std::size_t, 3>> triangles;  // counterclockwise
    std::vector<Edge> edges;                            // sorted by EdgeId
};

/// Delaunay triangulation with exact predicates. Cocircular quadrilaterals
/// take the diagonal of smaller EdgeId. Collinear input yields the path
/// through the sorted points and no triangles. Throws for fewer than 2 points.
Triangulation delaunay(const NodeSetPtr& nodes);

/// Delaunay edges of length at most one.
SpannerGraph udel(const NodeSetPtr& nodes, StepTag tag = StepTag::Delaunay);

struct PointRecord {
    NodeId id;
    Point p;
};

/// Triangle with corners in ascending ID order.
struct TriangleRecord {
    std::array<PointRecord, 3> corners;

    std::array<NodeId, 3> ids() const { return {corners[0].id, corners[1].id, corners[2].id}; }
    friend bool operator==(const TriangleRecord& a, const TriangleRecord& b) { return a.ids() == b.ids(); }
    friend bool operator<(const TriangleRecord& a, const TriangleRecord& b) { return a.ids() < b.ids(); }
};

TriangleRecord make_triangle(PointRecord a, PointRecord b, PointRecord c);

// Local rules. Each takes one node and its unit-range neighbours only.

/// Neighbours v of `self` whose closed diametral disk with `self` holds no other neighbour.
std::vector<NodeId> local_gabriel(const PointRecord& self, const std::vector<PointRecord>& nbrs);

/// Triangles self-v-w with all sides <= 1 whose circumcircle holds no
/// neighbour of `self` in its interior.
std::vector<TriangleRecord> local_proposals(const PointRecord& self, const std::vector<PointRecord>& nbrs);

bool triangles_cross(const TriangleRecord& t, const TriangleRecord& s);
bool triangle_crosses_segment(const TriangleRecord& t, const PointRecord& a, const PointRecord& b);

/// True iff t must be dropped because of the crossing triangle s.
bool triangle_loses(const TriangleRecord& t, const TriangleRecord& s);

/// The pieces of LDel^1: Gabriel edges and 1-localized triangles.
struct LocalizedDelaunay {
    NodeSetPtr nodes;
    std::vector<Edge> gabriel;
    std::vector<TriangleRecord> triangles;
    SpannerGraph graph;
};

/// Requires a unit disk instance (alpha = 1).
LocalizedDelaunay ldel1_structure(const QudgInstance& inst);
SpannerGraph ldel1(const QudgInstance& inst);

/// Planar subgraph of LDel^1: Gabriel edges plus every localized triangle
/// that neither crosses a Gabriel edge nor loses against a crossing triangle.
SpannerGraph pldel(const LocalizedDelaunay& l1);
SpannerGraph pldel(const SpannerGraph& l1, const QudgInstance& inst);
std::vector<TriangleRecord> pldel_triangles(const LocalizedDelaunay& l1);

}  // namespace lospan
