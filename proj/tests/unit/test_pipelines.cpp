#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "helpers.hpp"
#include "lospan/pipelines.hpp"
#include "lospan/verify.hpp"

using namespace lospan;
using namespace testutil;

namespace {

bool holds(int k, double delta, double eps) {
    const double th = 2 * std::numbers::pi / k;
    return std::cos(th) - std::sin(th) >= (delta + 1 + eps) / ((delta + 1) * (1 + eps));
}

}  // namespace

TEST_CASE("derive_k") {
    CHECK(derive_k(0.1, 0.5) == 211);
    CHECK(derive_k(0.2, 1.0) == 79);
    for (double delta : {0.01, 0.05, 0.1, 0.2}) {
        int prev = 1 << 30;
        for (double eps : {0.1, 0.25, 0.5, 1.0, 2.0, 4.0}) {
            const int k = derive_k(delta, eps);
            CHECK(k >= 6);
            CHECK(holds(k, delta, eps));
            if (k > 6) CHECK_FALSE(holds(k - 1, delta, eps));
            CHECK(k <= prev);
            prev = k;
        }
    }
    CHECK_THROWS(derive_k(0, 1));
}

TEST_CASE("derive_r_los") {
    CHECK(derive_r_los(0.1, 0.5, 211, ConnectorMode::Literal) == doctest::Approx(3.55e-5).epsilon(0.01));
    CHECK(derive_r_los(0.2, 1.0, 79, ConnectorMode::Literal) == doctest::Approx(5.033e-4).epsilon(0.001));
    // the cone bound tends to delta*eps/4 from below, so only the halved term can bind
    const int k = 2000;
    CHECK(derive_r_los(0.1, 0.5, k, ConnectorMode::Literal) < 0.0125);
    CHECK(derive_r_los(0.1, 0.5, k, ConnectorMode::Representative) == doctest::Approx(0.00625));
    for (double delta : {0.01, 0.0375, 0.1})
        for (double eps : {0.1, 0.25, 0.5, 1.0})
            CHECK(derive_r_los(delta, eps, derive_k(delta, eps), ConnectorMode::Representative) > 0);
    CHECK_THROWS_AS(derive_r_los(0.1, 0.5, 6, ConnectorMode::Literal), std::invalid_argument);
}

TEST_CASE("parameter validation") {
    CHECK_NOTHROW(LosParams::make(1.0, 0.6, 0.075, 0.5));
    CHECK_THROWS_AS(LosParams::make(1.0, 0.75, 0.075, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(LosParams::make(1.0, 0.6, 0.2, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(LosParams::make(1.0, 0.6, 0.075, 0), std::invalid_argument);
    auto p = LosParams::make(0.5, 0.3, 0.0375, 1.0);
    CHECK(p.theta == doctest::Approx(2 * std::numbers::pi / p.k));
    CHECK(p.r <= cover_radius_cap(p.beta, p.delta));

    CHECK_NOTHROW(PlosParams::make(1.0 / std::sqrt(2.0), 0.1, 0.5));
    CHECK_THROWS_AS(PlosParams::make(0.6, 0.075, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(PlosParams::make(0.8, 0.075, 0.5), std::invalid_argument);
    const auto pr = PlosParams::make(0.6, 0.075, 1.0, ConnectorMode::Representative);
    const auto pl = PlosParams::make(0.6, 0.075, 1.0, ConnectorMode::Literal);
    CHECK(pr.r == doctest::Approx(0.075 / 8));
    CHECK(pl.r == doctest::Approx(0.075 / 4));
    CHECK(connector_mode_from_string(to_string(ConnectorMode::Literal)) == ConnectorMode::Literal);
    CHECK(cluster_host_from_string(to_string(ClusterHost::PLDel)) == ClusterHost::PLDel);
}

TEST_CASE("LOS on a single clique is the clique's greedy spanner") {
    // all points inside the part of cell (0,0) no other cell reaches
    auto inst = udg({{0.2, 0.2}, {0.3, 0.25}, {0.4, 0.2}, {0.25, 0.4}, {0.35, 0.35}});
    auto res = los_full(inst, LosParams::make(1.0, 0.6, 0.075, 0.1));
    CHECK(res.e0.empty());
    CHECK(same_edge_set(res.h, greedy_spanner(inst.as_graph(), 0.1)));
}

TEST_CASE("LOS keeps a lone bridge between two cliques") {
    auto inst = udg({{0.2, 0.2}, {0.1, 0.25}, {0.1, 0.15}, {1.15, 0.2}, {1.25, 0.25}, {1.25, 0.15}});
    REQUIRE(inst.edges().size() == 7);
    for (auto mode : {ConnectorMode::Representative, ConnectorMode::Literal}) {
        auto res = los_full(inst, LosParams::make(1.0, 0.6, 0.075, 0.5, mode));
        REQUIRE(res.e0.size() == 1);
        CHECK(res.h.has_edge(0, 3));
        CHECK(res.h.tag_of(0, 3) == StepTag::YaoConnector);
        CHECK(stretch_factor_floyd(res.h, inst.as_graph()) <= 1.5 + 1e-9);
    }
}

TEST_CASE("LOS stretch, degree decomposition and E0 bounds") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const double alpha = seed % 2 ? 1.0 : 0.5;
        auto pol = seed % 3 == 0 ? AdversaryPolicy::all() : AdversaryPolicy::none();
        auto g = generate_connected(90, side_for_density(90, alpha, 12), alpha, pol, seed);
        const double eps = 0.25 + 0.25 * static_cast<double>(seed % 3);
        auto p = LosParams::make(alpha, 0.6 * alpha, 0.075 * alpha, eps);
        auto res = los_full(g.instance, p);
        CHECK(stretch_factor(res.h, g.instance.as_graph()) <= (1 + eps) * (1 + 1e-9));
        std::vector<std::size_t> clique(g.instance.size()), conn(g.instance.size());
        for (const auto& te : res.h.edges()) {
            auto& v = te.tag == StepTag::CliqueSpanner ? clique : conn;
            ++v[te.edge.u];
            ++v[te.edge.v];
        }
        for (std::size_t u = 0; u < g.instance.size(); ++u) {
            CHECK(clique[u] <= 4 * res.clique_greedy_max_degree);
            CHECK(conn[u] <= static_cast<std::size_t>(2 * p.k));
        }
        for (const auto& e : res.e0) {
            CHECK(e.id.length > p.delta);
            CHECK(e.id.length <= 1.0);
        }
        if (!res.e0.empty()) CHECK(aspect_ratio(res.e0) <= 1 / p.delta);
    }
}

TEST_CASE("LOS refuses disconnected input") {
    auto inst = udg({{0, 0}, {5, 5}});
    CHECK_THROWS_AS(los(inst, 0.5, 0.6, 0.075), DisconnectedError);
}

TEST_CASE("PLOS on a single cell is greedy over ordered yao of pldel") {
    auto inst = udg({{0.2, 0.2}, {0.3, 0.25}, {0.4, 0.2}, {0.25, 0.4}, {0.35, 0.35}, {0.2, 0.3}});
    auto res = plos_full(inst, PlosParams::make(0.6, 0.075, 0.2));
    auto expect = greedy_spanner(ordered_yao(res.pldel), 0.2);
    CHECK(same_edge_set(res.h, expect));
    CHECK(planarity_check(res.h).planar);
}

TEST_CASE("PLOS planarity, stretch and iterated guarantee") {
    const double cdel = 2.4184;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        auto inst = random_udg(100, seed);
        const double eps = 0.25 + 0.25 * static_cast<double>(seed % 3);
        auto res = plos_full(inst, PlosParams::make(0.6, 0.075, eps));
        CHECK(planarity_check(res.h).planar);
        CHECK(stretch_factor(res.h, inst.as_graph()) <= cdel * (1 + eps) * (1 + std::numbers::pi / 2));
        CHECK(res.iterations.size() == 4);
        std::vector<Edge> processed;
        for (std::size_t k = 0; k < res.iterations.size(); ++k) {
            const auto& it = res.iterations[k];
            processed.insert(processed.end(), it.processed.begin(), it.processed.end());
            for (const auto& e : processed) {
                const double bound = std::pow(1 + eps, static_cast<double>(k + 1)) * e.id.length;
                CHECK(bounded_distance(it.state, e.u, e.v, bound * (1 + 1e-12)) <= bound * (1 + 1e-12));
            }
        }
        for (const auto& te : res.h.edges()) CHECK(res.ydel.has_edge(te.edge.u, te.edge.v));
    }
}

TEST_CASE("PLOS requires a unit disk instance and eps below two") {
    auto q = QudgInstance(nodes_of({{0, 0}, {0.3, 0}}), 0.5, {});
    CHECK_THROWS_AS(plos(q, 0.5, 0.3, 0.03), std::invalid_argument);
    CHECK_THROWS_AS(plos(udg({{0, 0}, {0.3, 0}}), 2.5, 0.6, 0.075), std::invalid_argument);
}

TEST_CASE("restricted query") {
    const GridSpec grid(0.6, 0.075);
    SUBCASE("direct edge") {
        auto nodes = nodes_of({{0.2, 0.2}, {0.3, 0.2}});
        SpannerGraph q(nodes);
        q.add_edge(0, 1, StepTag::Input);
        auto cover = grid_cover(nodes, grid);
        CHECK(restricted_sp_query(q, 0, 1, 0.5, cover, {0, 0}));
    }
    SUBCASE("detour through a node outside the block") {
        auto nodes = nodes_of({{0.2, 0.2}, {0.3, 0.2}, {1.2, 0.2}});
        SpannerGraph q(nodes);
        q.add_edge(0, 2, StepTag::Input);
        q.add_edge(1, 2, StepTag::Input);
        auto cover = grid_cover(nodes, grid);
        CHECK_FALSE(in_block(cover, 2, {0, 0}));
        CHECK_FALSE(restricted_sp_query(q, 0, 1, 1.9, cover, {0, 0}));
        CHECK_FALSE(unrestricted_sp_query(q, 0, 1, 1.9));
        CHECK(bounded_distance(q, 0, 1, 10) > 2.9 * 0.1);
    }
    SUBCASE("agreement on random graphs") {
        std::mt19937_64 rng(11);
        int checked = 0;
        for (std::uint64_t seed = 0; seed < 4; ++seed) {
            auto inst = random_udg(120, seed);
            auto cover = grid_cover(inst.nodes(), grid);
            auto q = pldel(ldel1_structure(inst));
            for (const auto& [cell, members] : cover.cells) {
                if (members.size() < 2) continue;
                const auto u = members[rng() % members.size()], v = members[rng() % members.size()];
                if (u == v) continue;
                const double eps = 1.999 * static_cast<double>(rng() % 1000) / 1000.0 + 0.001;
                CHECK(restricted_sp_query(q, u, v, eps, cover, cell) == unrestricted_sp_query(q, u, v, eps));
                ++checked;
            }
        }
        CHECK(checked > 50);
    }
}

TEST_CASE("connector selection modes") {
    auto nodes = nodes_of({{0, 0}, {0.25, 0}, {1, 0}, {1.5, 0}});
    ClusterCover cc{0.05, {1, 1, 3, 3}};
    std::vector<Edge> cand;
    for (auto [a, b] : std::vector<std::pair<std::size_t, std::size_t>>{{0, 2}, {1, 3}, {0, 3}, {1, 2}}) {
        cand.push_back({a, b, nodes->edge_id(a, b)});
    }
    auto rep = select_connectors(cand, cc, ConnectorMode::Representative);
    REQUIRE(rep.size() == 1);
    CHECK((rep[0].u == 1 && rep[0].v == 2));
    auto lit = select_connectors(cand, cc, ConnectorMode::Literal);
    REQUIRE(lit.size() == 1);
    CHECK((lit[0].u == 1 && lit[0].v == 3));
}
