#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "lospan/covers.hpp"
#include "lospan/verify.hpp"

using namespace lospan;
using namespace testutil;

namespace {

void check_cluster_invariants(const SpannerGraph& h, const ClusterCover& cc) {
    const auto centers = cc.centers();
    for (std::size_t u = 0; u < cc.center_of.size(); ++u) {
        const auto c = cc.center_of[u];
        CHECK(cc.is_center(c));
        const auto d = dijkstra(h, c, cc.r * 2);
        CHECK(d[u] <= cc.r);
    }
    for (auto a : centers) {
        const auto d = dijkstra(h, a, cc.r * 2);
        for (auto b : centers) {
            if (a != b) CHECK(d[b] > cc.r);
        }
    }
}

}  // namespace

TEST_CASE("clique cover of two nearby nodes") {
    auto inst = udg({{0.1, 0.1}, {0.35, 0.1}});
    auto cover = clique_cover(inst, GridSpec(0.4, 0.05));
    REQUIRE(cover.cells.count({0, 0}));
    REQUIRE(cover.cells.count({1, 0}));
    CHECK(cover.cells.at({0, 0}) == std::vector<std::size_t>{0, 1});
    CHECK(cover.cells.at({1, 0}) == std::vector<std::size_t>{1});
    CHECK(cover.share_cell(0, 1));
}

TEST_CASE("clique cover rejects cells too large for the instance") {
    auto inst = QudgInstance(nodes_of({{0, 0}}), 0.5, {});
    CHECK_THROWS_AS(clique_cover(inst, GridSpec(0.4, 0.05)), std::invalid_argument);
    CHECK_NOTHROW(clique_cover(inst, GridSpec(0.35, 0.05)));
}

TEST_CASE("single node sits in one to four singleton cells") {
    auto inst = udg({{0.5, 0.5}});
    auto cover = clique_cover(inst, GridSpec(0.6, 0.1));
    CHECK(cover.cells.size() >= 1);
    CHECK(cover.cells.size() <= 4);
    for (const auto& [c, m] : cover.cells) CHECK(m.size() == 1);
}

TEST_CASE("clique cover invariants on random instances") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        auto g = generate_connected(80, side_for_density(80, 0.5, 12), 0.5, AdversaryPolicy::random(0.5), seed);
        const auto& inst = g.instance;
        auto cover = clique_cover(inst, GridSpec(0.3, 0.03));
        std::vector<int> count(inst.size(), 0);
        for (const auto& [cell, members] : cover.cells) {
            for (std::size_t a = 0; a < members.size(); ++a) {
                ++count[members[a]];
                for (std::size_t b = a + 1; b < members.size(); ++b) CHECK(inst.has_edge(members[a], members[b]));
            }
        }
        for (int c : count) {
            CHECK(c >= 1);
            CHECK(c <= 4);
        }
        // nodes within delta share a cell
        for (std::size_t u = 0; u < inst.size(); ++u)
            for (std::size_t v = u + 1; v < inst.size(); ++v)
                if (dist(inst.point(u), inst.point(v)) <= 0.03) CHECK(cover.share_cell(u, v));
    }
}

TEST_CASE("cluster cover on a three node path picks the highest ID first") {
    // ids 1,2,3 in one cell, edges 1-2 and 2-3 of length 1/8
    auto nodes = nodes_of({{0.1875, 0.25}, {0.3125, 0.25}, {0.4375, 0.25}}, {1, 2, 3});
    SpannerGraph h(nodes);
    h.add_edge(0, 1, StepTag::Input);
    h.add_edge(1, 2, StepTag::Input);
    auto cover = grid_cover(nodes, GridSpec(0.6, 0.075));
    REQUIRE(cover.cells.size() == 1);
    auto cc = cluster_cover_reference(h, cover, 0.125);
    CHECK(cc.center_of == std::vector<std::size_t>{0, 2, 2});
    CHECK(cc.centers() == std::vector<std::size_t>{0, 2});
}

TEST_CASE("cluster cover extremes") {
    auto inst = random_udg(40, 3);
    auto h = inst.as_graph();
    const GridSpec grid(0.6, 0.075);
    auto cover = grid_cover(inst.nodes(), grid);

    SUBCASE("radius below the shortest edge gives singletons") {
        double shortest = INFINITY;
        for (const auto& e : inst.edges()) shortest = std::min(shortest, e.id.length);
        auto cc = cluster_cover_reference(h, cover, shortest / 2);
        CHECK(cc.centers().size() == inst.size());
    }
    SUBCASE("radius above the diameter of a single-cell graph gives one cluster") {
        auto small = udg({{0.2, 0.2}, {0.22, 0.2}, {0.24, 0.23}, {0.21, 0.25}});
        auto sc = grid_cover(small.nodes(), grid);
        auto cc = cluster_cover_reference(small.as_graph(), sc, 0.12);
        CHECK(cc.centers().size() == 1);
    }
}

TEST_CASE("cluster cover packing and covering on random hosts") {
    const GridSpec grid(0.6, 0.075);
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        auto inst = random_udg(120, seed, 40.0);
        auto h = inst.as_graph();
        auto cover = grid_cover(inst.nodes(), grid);
        for (double r : {0.02, 0.06, 0.15}) {
            auto cc = cluster_cover_reference(h, cover, r);
            check_cluster_invariants(h, cc);
        }
    }
}

TEST_CASE("r-ball ignores edges longer than r") {
    auto nodes = nodes_of({{0, 0}, {0.05, 0}, {0.3, 0}});
    SpannerGraph h(nodes);
    h.add_edge(0, 1, StepTag::Input);
    h.add_edge(0, 2, StepTag::Input);
    CHECK(r_ball(h, 0, 0.1) == std::vector<std::size_t>{0, 1});
    CHECK(r_ball(h, 0, 0.3) == std::vector<std::size_t>{0, 1, 2});
}
