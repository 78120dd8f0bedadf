#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "helpers.hpp"
#include "lospan/delaunay.hpp"
#include "lospan/verify.hpp"

using namespace lospan;
using namespace testutil;

namespace {

NodeSetPtr random_nodes(std::size_t n, std::uint64_t seed, double side = 1.0) {
    std::vector<NodeId> ids;
    for (std::uint32_t i = 0; i < n; ++i) ids.push_back({i});
    return std::make_shared<const NodeSet>(ids, random_points(n, side, seed));
}

// Andrew's monotone chain keeping collinear boundary points.
std::size_t hull_size(std::vector<Point> p) {
    std::sort(p.begin(), p.end(), [](const Point& a, const Point& b) {
        return a.x() != b.x() ? a.x() < b.x() : a.y() < b.y();
    });
    std::vector<Point> h;
    for (int pass = 0; pass < 2; ++pass) {
        const auto start = h.size();
        for (const auto& q : p) {
            while (h.size() >= start + 2 && orientation(h[h.size() - 2], h.back(), q) < 0) h.pop_back();
            h.push_back(q);
        }
        h.pop_back();
        std::reverse(p.begin(), p.end());
    }
    return h.size();
}

bool subset(const SpannerGraph& a, const SpannerGraph& b) {
    for (const auto& te : a.edges()) {
        if (!b.has_edge(te.edge.u, te.edge.v)) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("delaunay triangles have empty circumcircles") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        auto nodes = random_nodes(60, seed);
        auto tri = delaunay(nodes);
        CHECK(tri.triangles.size() == 2 * nodes->size() - 2 - hull_size(nodes->points()));
        for (const auto& t : tri.triangles) {
            CHECK(orientation(nodes->point(t[0]), nodes->point(t[1]), nodes->point(t[2])) > 0);
            for (std::size_t p = 0; p < nodes->size(); ++p) {
                if (p == t[0] || p == t[1] || p == t[2]) continue;
                CHECK(incircle(nodes->point(t[0]), nodes->point(t[1]), nodes->point(t[2]), nodes->point(p)) <= 0);
            }
        }
        CHECK(tri.edges.size() == 3 * nodes->size() - 3 - hull_size(nodes->points()));
    }
}

TEST_CASE("cocircular square takes the diagonal of smaller ID") {
    auto nodes = nodes_of({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    auto tri = delaunay(nodes);
    CHECK(tri.triangles.size() == 2);
    SpannerGraph g(nodes);
    for (const auto& e : tri.edges) g.add_edge(e.u, e.v, StepTag::Delaunay);
    CHECK(g.has_edge(0, 2));
    CHECK_FALSE(g.has_edge(1, 3));
}

TEST_CASE("collinear points give the sorted path") {
    auto nodes = nodes_of({{0.3, 0.3}, {0, 0}, {0.1, 0.1}, {0.2, 0.2}});
    auto tri = delaunay(nodes);
    CHECK(tri.triangles.empty());
    CHECK(tri.edges.size() == 3);
    CHECK_THROWS(delaunay(nodes_of({{0, 0}})));
}

TEST_CASE("unit delaunay of a unit square keeps the four sides") {
    auto h = udel(nodes_of({{0, 0}, {1, 0}, {1, 1}, {0, 1}}));
    CHECK(h.edge_count() == 4);
    CHECK_FALSE(h.has_edge(0, 2));
}

TEST_CASE("local gabriel and proposals") {
    const PointRecord a{NodeId{0}, {0, 0}};
    const std::vector<PointRecord> nb{{NodeId{1}, {1, 0}}, {NodeId{2}, {0.5, 0.1}}};
    // 2 sits inside the diametral disk of 0-1
    CHECK(local_gabriel(a, nb) == std::vector<NodeId>{NodeId{2}});
    auto props = local_proposals(a, nb);
    REQUIRE(props.size() == 1);
    CHECK(props[0].ids() == std::array<NodeId, 3>{NodeId{0}, NodeId{1}, NodeId{2}});
}

TEST_CASE("triangle crossing") {
    auto t = make_triangle({NodeId{0}, {0, 0}}, {NodeId{1}, {1, 0}}, {NodeId{2}, {0, 1}});
    auto s = make_triangle({NodeId{3}, {0.4, 0.4}}, {NodeId{4}, {1, 1}}, {NodeId{5}, {1.2, 0.2}});
    auto far = make_triangle({NodeId{6}, {3, 3}}, {NodeId{7}, {4, 3}}, {NodeId{8}, {3, 4}});
    CHECK(triangles_cross(t, s));
    CHECK_FALSE(triangles_cross(t, far));
    CHECK_FALSE(triangles_cross(t, t));
    CHECK(triangle_crosses_segment(t, {NodeId{3}, {0.4, 0.4}}, {NodeId{4}, {1, 1}}));
    CHECK_FALSE(triangle_crosses_segment(t, {NodeId{0}, {0, 0}}, {NodeId{1}, {1, 0}}));
}

TEST_CASE("euclidean order of the localized structures") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        auto inst = random_udg(80 + 10 * seed, seed, 10);
        auto ud = udel(inst.nodes());
        auto l1 = ldel1_structure(inst);
        auto pl = pldel(l1);
        CHECK(subset(ud, l1.graph));
        CHECK(subset(ud, pl));
        CHECK(subset(pl, l1.graph));
        for (const auto& te : l1.graph.edges()) {
            CHECK(inst.has_edge(te.edge.u, te.edge.v));
            CHECK(te.edge.id.length <= 1.0);
        }
        CHECK(planarity_check(pl).planar);
        CHECK(same_edge_set(pldel(l1.graph, inst), pl));
    }
}

TEST_CASE("pldel requires the matching ldel1 graph and a unit instance") {
    auto inst = random_udg(30, 1);
    CHECK_THROWS_AS(pldel(inst.as_graph(), inst), std::invalid_argument);
    auto q = QudgInstance(inst.nodes(), 0.5, {});
    CHECK_THROWS_AS(ldel1_structure(q), std::invalid_argument);
}

TEST_CASE("a localized triangle crossing a gabriel edge is dropped") {
    auto inst = udg({{1.534, 1.91}, {1.53, 1.1806}, {1.51475, 1.353}, {2.47725, 1.504}, {1.54125, 1.0922}});
    auto l1 = ldel1_structure(inst);
    REQUIRE(l1.triangles.size() == 1);
    CHECK(l1.triangles[0].ids() == std::array<NodeId, 3>{NodeId{0}, NodeId{1}, NodeId{4}});
    CHECK_FALSE(planarity_check(l1.graph).planar);
    CHECK(pldel_triangles(l1).empty());
    auto pl = pldel(l1);
    CHECK(planarity_check(pl).planar);
    CHECK(pl.has_edge(2, 3));
    CHECK(subset(udel(inst.nodes()), pl));
}
