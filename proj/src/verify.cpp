#include "lospan/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <random>

namespace lospan {

namespace {

double pair_ratio(double dh, double dg) {
    if (!std::isfinite(dg) || dg == 0.0) return 1.0;
    if (!std::isfinite(dh)) throw NotASpannerError("subgraph disconnects a connected pair");
    return dh / dg;
}

void check_same_nodes(const SpannerGraph& h, const SpannerGraph& g) {
    if (h.nodes() != g.nodes() && h.node_count() != g.node_count()) {
        throw std::invalid_argument("stretch: graphs have different node sets");
    }
}

}  // namespace

double stretch_factor(const SpannerGraph& h, const SpannerGraph& g, const StretchOptions& opt) {
    check_same_nodes(h, g);
    const std::size_t n = g.node_count();
    std::vector<std::size_t> sources(n);
    std::iota(sources.begin(), sources.end(), 0);
    if (n > opt.exact_limit) {
        std::mt19937_64 rng(opt.seed);
        std::shuffle(sources.begin(), sources.end(), rng);
        sources.resize(std::min(n, opt.sampled_sources));
    }
    double worst = 1.0;
    for (auto s : sources) {
        const auto dg = dijkstra(g, s);
        const auto dh = dijkstra(h, s);
        for (std::size_t t = 0; t < n; ++t) {
            if (t != s) worst = std::max(worst, pair_ratio(dh[t], dg[t]));
        }
    }
    return worst;
}

double stretch_factor_floyd(const SpannerGraph& h, const SpannerGraph& g) {
    check_same_nodes(h, g);
    const std::size_t n = g.node_count();
    auto floyd = [n](const SpannerGraph& x) {
        std::vector<double> d(n * n, std::numeric_limits<double>::infinity());
        for (std::size_t i = 0; i < n; ++i) {
            d[i * n + i] = 0.0;
            for (const auto& a : x.neighbors(i)) d[i * n + a.to] = std::min(d[i * n + a.to], a.length);
        }
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) d[i * n + j] = std::min(d[i * n + j], d[i * n + k] + d[k * n + j]);
        return d;
    };
    const auto dg = floyd(g), dh = floyd(h);
    double worst = 1.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) worst = std::max(worst, pair_ratio(dh[i * n + j], dg[i * n + j]));
    return worst;
}

double edge_stretch(const SpannerGraph& h, const SpannerGraph& g) {
    double worst = 1.0;
    for (std::size_t s = 0; s < g.node_count(); ++s) {
        const auto dh = dijkstra(h, s);
        for (const auto& a : g.neighbors(s)) worst = std::max(worst, pair_ratio(dh[a.to], a.length));
    }
    return worst;
}

namespace {

bool edges_cross(const NodeSet& nodes, const Edge& a, const Edge& b) {
    return segments_properly_intersect(nodes.point(a.u), nodes.point(a.v), nodes.point(b.u), nodes.point(b.v));
}

}  // namespace

PlanarityResult planarity_check_bruteforce(const SpannerGraph& h) {
    const auto& nodes = *h.nodes();
    std::vector<Edge> edges;
    for (const auto& te : h.edges()) edges.push_back(te.edge);
    for (std::size_t i = 0; i < edges.size(); ++i)
        for (std::size_t j = i + 1; j < edges.size(); ++j)
            if (edges_cross(nodes, edges[i], edges[j])) return {false, std::make_pair(edges[i], edges[j])};
    return {};
}

PlanarityResult planarity_check(const SpannerGraph& h) {
    const auto& nodes = *h.nodes();
    std::vector<Edge> edges;
    double longest = 0.0;
    for (const auto& te : h.edges()) {
        edges.push_back(te.edge);
        longest = std::max(longest, te.edge.id.length);
    }
    if (edges.empty()) return {};
    const double cell = std::max(longest, 1e-9);
    std::map<std::pair<std::int64_t, std::int64_t>, std::vector<std::size_t>> buckets;
    auto key = [&](double x) { return static_cast<std::int64_t>(std::floor(x / cell)); };
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const Point& a = nodes.point(edges[i].u);
        const Point& b = nodes.point(edges[i].v);
        for (auto gx = key(std::min(a.x(), b.x())); gx <= key(std::max(a.x(), b.x())); ++gx)
            for (auto gy = key(std::min(a.y(), b.y())); gy <= key(std::max(a.y(), b.y())); ++gy)
                buckets[{gx, gy}].push_back(i);
    }
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (const auto& [k, list] : buckets) {
        for (std::size_t x = 0; x < list.size(); ++x)
            for (std::size_t y = x + 1; y < list.size(); ++y) {
                const auto i = std::min(list[x], list[y]), j = std::max(list[x], list[y]);
                if (best && std::make_pair(i, j) >= *best) continue;
                if (edges_cross(nodes, edges[i], edges[j])) best = std::make_pair(i, j);
            }
    }
    if (!best) return {};
    return {false, std::make_pair(edges[best->first], edges[best->second])};
}

bool isolation_check(const NodeSetPtr& nodes, const std::vector<Edge>& f, double c) {
    std::vector<std::size_t> ends;
    for (const auto& e : f) {
        ends.push_back(e.u);
        ends.push_back(e.v);
    }
    std::sort(ends.begin(), ends.end());
    ends.erase(std::unique(ends.begin(), ends.end()), ends.end());
    for (std::size_t i = 0; i < ends.size(); ++i)
        for (std::size_t j = i + 1; j < ends.size(); ++j)
            if (dist(nodes->point(ends[i]), nodes->point(ends[j])) <= c) return false;
    return true;
}

namespace {

struct LeapfrogSearch {
    const NodeSet& nodes;
    const std::vector<Edge>& f;
    double t_prime, t;
    int m_max;
    std::size_t first;
    std::size_t u1 = 0;
    double limit = 0.0;
    std::vector<char> used;
    std::vector<std::pair<std::size_t, bool>> seq;  // edge index, reversed
    LeapfrogResult result;

    double d(std::size_t a, std::size_t b) const { return dist(nodes.point(a), nodes.point(b)); }

    // `tail` is the current endpoint, `rhs` the right side accumulated so far.
    bool extend(std::size_t tail, double rhs) {
        ++result.sequences_checked;
        if (!(t_prime * f[first].id.length < rhs + t * d(tail, u1))) {
            result.ok = false;
            for (auto [i, rev] : seq) {
                Edge e = f[i];
                if (rev) std::swap(e.u, e.v);
                result.violating.push_back(e);
            }
            return true;
        }
        if (static_cast<int>(seq.size()) >= m_max) return false;
        for (std::size_t i = 0; i < f.size(); ++i) {
            if (used[i] || !(f[i].id < f[first].id)) continue;
            for (bool rev : {false, true}) {
                const std::size_t a = rev ? f[i].v : f[i].u;
                const std::size_t b = rev ? f[i].u : f[i].v;
                const double next = rhs + t * d(tail, a) + f[i].id.length;
                if (next >= limit) continue;
                used[i] = 1;
                seq.emplace_back(i, rev);
                if (extend(b, next)) return true;
                seq.pop_back();
                used[i] = 0;
            }
        }
        return false;
    }
};

}  // namespace

LeapfrogResult leapfrog_check(const NodeSetPtr& nodes, const std::vector<Edge>& f, double t_prime, double t,
                              int m_max) {
    if (!(t >= t_prime && t_prime > 1.0)) throw std::invalid_argument("leapfrog_check: need t >= t' > 1");
    if (m_max < 1 || m_max > 6) throw std::invalid_argument("leapfrog_check: m_max must lie in [1, 6]");
    LeapfrogResult total;
    for (std::size_t first = 0; first < f.size(); ++first) {
        for (bool rev : {false, true}) {
            LeapfrogSearch s{*nodes, f, t_prime, t, m_max, first, 0, 0.0, {}, {}, {}};
            s.used.assign(f.size(), 0);
            s.used[first] = 1;
            s.u1 = rev ? f[first].v : f[first].u;
            const std::size_t v1 = rev ? f[first].u : f[first].v;
            s.limit = t_prime * f[first].id.length;
            s.seq.emplace_back(first, rev);
            s.extend(v1, 0.0);
            total.sequences_checked += s.result.sequences_checked;
            if (!s.result.ok) {
                total.ok = false;
                total.violating = s.result.violating;
                return total;
            }
        }
    }
    return total;
}

double weight_ratio(const SpannerGraph& h, const SpannerGraph& g) { return h.weight() / mst(g).weight(); }

std::size_t max_degree(const SpannerGraph& h) { return h.max_degree(); }

Metrics compute_metrics(const SpannerGraph& h, const SpannerGraph& g, int rounds, const StretchOptions& opt) {
    Metrics m;
    m.stretch = stretch_factor(h, g, opt);
    m.max_degree = h.max_degree();
    m.weight_ratio = weight_ratio(h, g);
    m.planar = planarity_check(h).planar;
    m.rounds = rounds;
    return m;
}

}  // namespace lospan
