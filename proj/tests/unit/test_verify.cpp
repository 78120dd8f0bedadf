#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "helpers.hpp"
#include "lospan/verify.hpp"

using namespace lospan;
using namespace testutil;

namespace {

// Every ordered sequence of distinct edges with any orientation, no pruning.
bool leapfrog_oracle(const NodeSetPtr& nodes, const std::vector<Edge>& f, double tp, double t, int m_max) {
    const auto& N = *nodes;
    std::vector<int> used(f.size(), 0);
    std::vector<std::pair<std::size_t, std::size_t>> seq;
    std::function<bool()> rec = [&]() -> bool {
        if (!seq.empty()) {
            const double lhs = tp * N.length(seq[0].first, seq[0].second);
            double rhs = 0.0;
            for (std::size_t i = 1; i < seq.size(); ++i) rhs += N.length(seq[i].first, seq[i].second);
            double conn = 0.0;
            for (std::size_t i = 0; i < seq.size(); ++i) {
                conn += N.length(seq[i].second, seq[(i + 1) % seq.size()].first);
            }
            if (seq.size() == 1) conn = N.length(seq[0].first, seq[0].second);
            rhs += t * conn;
            // only sequences led by a longest edge matter
            bool longest = true;
            for (std::size_t i = 1; i < seq.size(); ++i) {
                if (N.length(seq[i].first, seq[i].second) > N.length(seq[0].first, seq[0].second)) longest = false;
            }
            if (longest && !(lhs < rhs)) return false;
        }
        if (static_cast<int>(seq.size()) == m_max) return true;
        for (std::size_t i = 0; i < f.size(); ++i) {
            if (used[i]) continue;
            used[i] = 1;
            for (int o = 0; o < 2; ++o) {
                seq.emplace_back(o ? f[i].v : f[i].u, o ? f[i].u : f[i].v);
                const bool ok = rec();
                seq.pop_back();
                if (!ok) {
                    used[i] = 0;
                    return false;
                }
            }
            used[i] = 0;
        }
        return true;
    };
    return rec();
}

}  // namespace

TEST_CASE("stretch of simple graphs") {
    auto nodes = nodes_of({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    SpannerGraph g(nodes);
    g.add_edge(0, 1, StepTag::Input);
    g.add_edge(1, 2, StepTag::Input);
    g.add_edge(2, 3, StepTag::Input);
    g.add_edge(3, 0, StepTag::Input);
    CHECK(stretch_factor(g, g) == 1.0);
    SpannerGraph h = g;
    h.remove_edge(3, 0);
    CHECK(stretch_factor(h, g) == doctest::Approx(3.0));
    CHECK(stretch_factor_floyd(h, g) == doctest::Approx(3.0));
    h.remove_edge(2, 3);
    CHECK_THROWS_AS(stretch_factor(h, g), NotASpannerError);
}

TEST_CASE("dijkstra and floyd stretch agree") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        auto inst = random_udg(70, seed);
        auto g = inst.as_graph();
        auto h = mst(g);
        for (const auto& e : inst.edges()) {
            if ((e.u + e.v + seed) % 5 == 0) h.add_edge(e.u, e.v, StepTag::Input);
        }
        const double a = stretch_factor(h, g), b = stretch_factor_floyd(h, g);
        CHECK(std::abs(a - b) <= 1e-9 * b);
    }
}

TEST_CASE("planarity") {
    auto nodes = nodes_of({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    SpannerGraph tree(nodes);
    tree.add_edge(0, 1, StepTag::Input);
    tree.add_edge(1, 2, StepTag::Input);
    tree.add_edge(1, 3, StepTag::Input);
    CHECK(planarity_check(tree).planar);

    auto k4 = complete(nodes);
    auto res = planarity_check(k4);
    CHECK_FALSE(res.planar);
    REQUIRE(res.witness);
    const auto [e, f] = *res.witness;
    CHECK(segments_properly_intersect(nodes->point(e.u), nodes->point(e.v), nodes->point(f.u), nodes->point(f.v)));
}

TEST_CASE("bucketed planarity equals brute force") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 12 + trial % 20;
        std::vector<NodeId> ids;
        for (std::uint32_t i = 0; i < n; ++i) ids.push_back({i});
        auto nodes = std::make_shared<const NodeSet>(ids, random_points(n, 1.0, 100 + trial));
        SpannerGraph g(nodes);
        const std::size_t m = 3 + trial % 17;
        for (std::size_t k = 0; k < m; ++k) {
            const auto u = rng() % n, v = rng() % n;
            if (u != v) g.add_edge(u, v, StepTag::Input);
        }
        CHECK(planarity_check(g).planar == planarity_check_bruteforce(g).planar);
    }
}

TEST_CASE("isolation") {
    auto nodes = nodes_of({{0, 0}, {0.5, 0}, {0, 0.2}, {0.5, 0.2}});
    std::vector<Edge> one{{0, 1, nodes->edge_id(0, 1)}};
    CHECK(isolation_check(nodes, one, 0.49));
    CHECK_FALSE(isolation_check(nodes, one, 0.5));
    std::vector<Edge> two{{0, 1, nodes->edge_id(0, 1)}, {2, 3, nodes->edge_id(2, 3)}};
    CHECK_FALSE(isolation_check(nodes, two, 0.4));  // endpoints 0.2 = c/2 apart
    CHECK(isolation_check(nodes, two, 0.1));
}

TEST_CASE("leapfrog on small sets") {
    SUBCASE("singleton") {
        auto nodes = nodes_of({{0, 0}, {1, 0}});
        CHECK(leapfrog_check(nodes, {{0, 1, nodes->edge_id(0, 1)}}, 1.5, 2.0, 5).ok);
    }
    SUBCASE("two parallel unit edges") {
        const double tp = 1.5, t = 2.0, threshold = (tp - 1) / (2 * t);
        for (double d : {0.05, 0.1, 0.12, 0.13, 0.2, 0.5}) {
            auto nodes = nodes_of({{0, 0}, {1, 0}, {0, d}, {1, d}});
            std::vector<Edge> f{{0, 1, nodes->edge_id(0, 1)}, {2, 3, nodes->edge_id(2, 3)}};
            CHECK(leapfrog_check(nodes, f, tp, t, 2).ok == (d > threshold));
        }
    }
    SUBCASE("agrees with unpruned enumeration") {
        for (std::uint64_t seed = 0; seed < 30; ++seed) {
            const std::size_t m = 2 + seed % 4;
            auto pts = random_points(2 * m, 1.0, seed + 50);
            auto nodes = nodes_of(pts);
            std::vector<Edge> f;
            for (std::size_t i = 0; i < m; ++i) f.push_back({2 * i, 2 * i + 1, nodes->edge_id(2 * i, 2 * i + 1)});
            const double tp = 1.1 + 0.1 * (seed % 3), t = tp + 0.3;
            for (int mm = 1; mm <= static_cast<int>(m); ++mm) {
                CHECK(leapfrog_check(nodes, f, tp, t, mm).ok == leapfrog_oracle(nodes, f, tp, t, mm));
            }
        }
    }
    SUBCASE("argument checks") {
        auto nodes = nodes_of({{0, 0}, {1, 0}});
        CHECK_THROWS(leapfrog_check(nodes, {}, 1.0, 2.0, 3));
        CHECK_THROWS(leapfrog_check(nodes, {}, 2.0, 1.5, 3));
        CHECK_THROWS(leapfrog_check(nodes, {}, 1.5, 2.0, 7));
    }
}

TEST_CASE("weight ratio and degree") {
    auto inst = random_udg(50, 2);
    auto g = inst.as_graph();
    auto t = mst(g);
    CHECK(weight_ratio(t, g) == doctest::Approx(1.0));
    for (const auto& e : inst.edges()) {
        if (!t.has_edge(e.u, e.v)) {
            auto h = t;
            h.add_edge(e.u, e.v, StepTag::Input);
            CHECK(weight_ratio(h, g) == doctest::Approx(1.0 + e.id.length / t.weight()));
            break;
        }
    }
    CHECK(max_degree(t) == t.max_degree());
    auto m = compute_metrics(t, g, 3);
    CHECK(m.planar);
    CHECK(m.rounds == 3);
    CHECK(m.stretch >= 1.0);
}
