#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "lospan/graph.hpp"

using namespace lospan;

namespace {

NodeSetPtr make_nodes(const std::vector<Point>& pts) {
    std::vector<NodeId> ids;
    for (std::size_t i = 0; i < pts.size(); ++i) ids.push_back(NodeId{static_cast<std::uint32_t>(i)});
    return std::make_shared<const NodeSet>(ids, pts);
}

SpannerGraph complete_graph(const NodeSetPtr& nodes) {
    SpannerGraph g(nodes);
    for (std::size_t u = 0; u < nodes->size(); ++u)
        for (std::size_t v = u + 1; v < nodes->size(); ++v) g.add_edge(u, v, StepTag::Input);
    return g;
}

// Minimum weight over every spanning tree, by enumerating edge subsets of size n-1.
double brute_force_mst(const SpannerGraph& g) {
    const auto edges = g.edges();
    const std::size_t n = g.node_count(), m = edges.size();
    double best = INFINITY;
    std::vector<int> pick(m, 0);
    std::fill(pick.begin(), pick.begin() + static_cast<long>(n - 1), 1);
    std::sort(pick.begin(), pick.end());
    do {
        std::vector<std::size_t> parent(n);
        for (std::size_t i = 0; i < n; ++i) parent[i] = i;
        std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
            return parent[x] == x ? x : parent[x] = find(parent[x]);
        };
        double w = 0.0;
        bool tree = true;
        for (std::size_t i = 0; i < m && tree; ++i) {
            if (!pick[i]) continue;
            const auto a = find(edges[i].edge.u), b = find(edges[i].edge.v);
            if (a == b) tree = false;
            parent[a] = b;
            w += edges[i].edge.id.length;
        }
        if (tree) best = std::min(best, w);
    } while (std::next_permutation(pick.begin(), pick.end()));
    return best;
}

}  // namespace

TEST_CASE("edge id order") {
    auto e = [](double l, std::uint32_t s, std::uint32_t d) { return EdgeId{l, NodeId{s}, NodeId{d}}; };
    CHECK(edge_id_less(e(0.5, 3, 7), e(0.6, 1, 2)));
    CHECK(edge_id_less(e(0.5, 3, 7), e(0.5, 4, 1)));
    CHECK(edge_id_less(e(0.5, 3, 7), e(0.5, 3, 9)));
    CHECK_FALSE(edge_id_less(e(0.5, 3, 7), e(0.5, 3, 7)));

    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> small(0, 3);
    std::vector<EdgeId> pool;
    for (int i = 0; i < 60; ++i)
        pool.push_back(e(0.25 * small(rng), static_cast<std::uint32_t>(small(rng)), static_cast<std::uint32_t>(small(rng))));
    for (const auto& a : pool)
        for (const auto& b : pool) {
            CHECK((edge_id_less(a, b) + edge_id_less(b, a) + (a == b)) == 1);
            for (const auto& c : pool)
                if (edge_id_less(a, b) && edge_id_less(b, c)) CHECK(edge_id_less(a, c));
        }
    CHECK(undirected_edge_id(1.0, NodeId{5}, NodeId{2}).src == NodeId{2});
}

TEST_CASE("build_qudg edge rules") {
    CHECK(build_qudg({{0, 0}, {0.5, 0}}, 1.0, AdversaryPolicy::none(), 1).edges().size() == 1);
    CHECK(build_qudg({{0, 0}, {0.8, 0}}, 0.6, AdversaryPolicy::none(), 1).edges().empty());
    CHECK(build_qudg({{0, 0}, {0.8, 0}}, 0.6, AdversaryPolicy::all(), 1).edges().size() == 1);
    CHECK(build_qudg({{0, 0}, {1.2, 0}}, 1.0, AdversaryPolicy::all(), 1).edges().empty());
    CHECK_THROWS(build_qudg({{0, 0}, {0, 0}}, 1.0, AdversaryPolicy::none(), 1));
    CHECK_THROWS(build_qudg({{0, 0}, {1, 0}}, 0.0, AdversaryPolicy::none(), 1));
    CHECK_THROWS(NodeSet({NodeId{1}, NodeId{1}}, {{0, 0}, {1, 1}}));
}

TEST_CASE("qudg sandwich and determinism") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto pts = random_points(60, 3.0, seed);
        const auto lo = build_qudg(pts, 0.5, AdversaryPolicy::none(), seed);
        const auto mid = build_qudg(pts, 0.5, AdversaryPolicy::random(0.5), seed);
        const auto mid2 = build_qudg(pts, 0.5, AdversaryPolicy::random(0.5), seed);
        const auto hi = build_qudg(pts, 1.0, AdversaryPolicy::none(), seed);
        const auto ga = lo.as_graph(), gm = mid.as_graph(), gh = hi.as_graph();
        for (const auto& e : lo.edges()) CHECK(gm.has_edge(e.u, e.v));
        for (const auto& e : mid.edges()) CHECK(gh.has_edge(e.u, e.v));
        CHECK(mid.band_edges() == mid2.band_edges());
        CHECK(same_edge_set(gm, mid2.as_graph()));
        CHECK(mid.edges().size() >= lo.edges().size());
        CHECK(mid.edges().size() <= hi.edges().size());
        // every pair not listed as a band edge and above alpha is absent
        for (std::size_t u = 0; u < pts.size(); ++u)
            for (std::size_t v = u + 1; v < pts.size(); ++v)
                if (dist(pts[u], pts[v]) > 1.0) CHECK_FALSE(mid.has_edge(u, v));
    }
}

TEST_CASE("adversary policy parsing") {
    CHECK(AdversaryPolicy::parse("none").kind == AdversaryPolicy::Kind::None);
    CHECK(AdversaryPolicy::parse("all").kind == AdversaryPolicy::Kind::All);
    const auto p = AdversaryPolicy::parse("random(0.25)");
    CHECK(p.kind == AdversaryPolicy::Kind::Random);
    CHECK(p.p == 0.25);
    CHECK(AdversaryPolicy::parse(p.describe()).p == 0.25);
    CHECK_THROWS(AdversaryPolicy::parse("random(2)"));
    CHECK_THROWS(AdversaryPolicy::parse("some"));
}

TEST_CASE("generate_connected records the seed") {
    const auto gen = generate_connected(50, side_for_density(50, 1.0, 12.0), 1.0, AdversaryPolicy::none(), 99);
    CHECK(gen.instance.is_connected());
    const auto again = build_qudg(random_points(50, side_for_density(50, 1.0, 12.0), gen.seed), 1.0,
                                  AdversaryPolicy::none(), gen.seed);
    CHECK(same_edge_set(gen.instance.as_graph(), again.as_graph()));
    CHECK_THROWS(generate_connected(50, 1000.0, 0.5, AdversaryPolicy::none(), 1, 3));
}

TEST_CASE("shortest paths") {
    auto nodes = make_nodes({{0, 0}, {1, 0}, {2, 0}, {5, 5}});
    SpannerGraph g(nodes);
    g.add_edge(0, 1, StepTag::Input);
    g.add_edge(1, 2, StepTag::Input);
    auto self = shortest_path(g, NodeId{0}, NodeId{0});
    REQUIRE(self);
    CHECK(self->length == 0.0);
    CHECK(self->path == std::vector<NodeId>{NodeId{0}});
    auto p = shortest_path(g, NodeId{0}, NodeId{2});
    REQUIRE(p);
    CHECK(p->length == 2.0);
    CHECK(p->path == std::vector<NodeId>{NodeId{0}, NodeId{1}, NodeId{2}});
    CHECK_FALSE(shortest_path(g, NodeId{0}, NodeId{3}));

    // two equal routes: smaller intermediate id wins
    auto sq = make_nodes({{0, 0}, {1, 1}, {1, -1}, {2, 0}});
    SpannerGraph h(sq);
    h.add_edge(0, 1, StepTag::Input);
    h.add_edge(1, 3, StepTag::Input);
    h.add_edge(0, 2, StepTag::Input);
    h.add_edge(2, 3, StepTag::Input);
    auto q = shortest_path(h, NodeId{0}, NodeId{3});
    REQUIRE(q);
    CHECK(q->path == std::vector<NodeId>{NodeId{0}, NodeId{1}, NodeId{3}});
}

TEST_CASE("shortest path triangle inequality") {
    const auto inst = build_qudg(random_points(40, 2.0, 4), 0.7, AdversaryPolicy::random(0.3), 4);
    const auto g = inst.as_graph();
    std::vector<std::vector<double>> d;
    for (std::size_t s = 0; s < g.node_count(); ++s) d.push_back(dijkstra(g, s));
    for (std::size_t a = 0; a < 40; ++a)
        for (std::size_t b = 0; b < 40; ++b)
            for (std::size_t c = 0; c < 40; c += 3)
                if (std::isfinite(d[a][c]) && std::isfinite(d[c][b])) CHECK(d[a][b] <= d[a][c] + d[c][b] + 1e-12);
}

TEST_CASE("mst") {
    auto tri = make_nodes({{0, 0}, {1, 0}, {2, 0}});
    SpannerGraph t(tri);
    t.add_edge(0, 1, StepTag::Input);
    t.add_edge(1, 2, StepTag::Input);
    t.add_edge(0, 2, StepTag::Input);
    CHECK(mst(t).weight() == doctest::Approx(2.0));

    auto line = make_nodes({{0, 0}, {0.3, 0}, {0.6, 0}, {1, 0}});
    const auto lg = complete_graph(line);
    CHECK(mst(lg).weight() == doctest::Approx(brute_force_mst(lg)));
    CHECK(brute_force_mst(lg) == doctest::Approx(1.0));

    // equal lengths: smaller EdgeId kept
    auto eq = make_nodes({{0, 0}, {1, 0}, {0.5, std::sqrt(0.75)}});
    auto eg = complete_graph(eq);
    const auto tree = mst(eg);
    CHECK(tree.has_edge(0, 1));
    CHECK(tree.has_edge(0, 2));
    CHECK_FALSE(tree.has_edge(1, 2));

    SpannerGraph broken(make_nodes({{0, 0}, {1, 0}, {5, 5}}));
    broken.add_edge(0, 1, StepTag::Input);
    try {
        mst(broken);
        FAIL("expected DisconnectedError");
    } catch (const DisconnectedError& e) {
        CHECK(e.components().size() == 2);
    }

    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const std::size_t n = 4 + seed % 4;
        const auto g = complete_graph(make_nodes(random_points(n, 1.0, seed)));
        CHECK(mst(g).weight() == doctest::Approx(brute_force_mst(g)).epsilon(1e-12));
    }
}

TEST_CASE("aspect ratio") {
    CHECK(aspect_ratio(std::vector<double>{0.7}) == 1.0);
    CHECK(aspect_ratio(std::vector<double>{0.2, 1.0}) == doctest::Approx(5.0));
    CHECK(aspect_ratio(std::vector<double>{0.1, 1.0}) == doctest::Approx(10.0));
    CHECK_THROWS(aspect_ratio(std::vector<double>{}));
}

TEST_CASE("step tags round trip") {
    for (auto t : {StepTag::Input, StepTag::CliqueSpanner, StepTag::YaoConnector, StepTag::Delaunay,
                   StepTag::OrderedYao, StepTag::CellGreedy, StepTag::CellConnector, StepTag::Greedy, StepTag::Tree})
        CHECK(step_tag_from_string(to_string(t)) == t);
    CHECK_THROWS(step_tag_from_string("bogus"));
}
