#include "lospan/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>
#include <stdexcept>

namespace lospan {

SpannerGraph greedy_spanner(const NodeSetPtr& nodes, std::vector<Edge> edges, double eps, StepTag tag) {
    if (!(eps > 0.0)) throw std::invalid_argument("greedy_spanner: eps must be positive");
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) { return a.id < b.id; });
    SpannerGraph out(nodes);
    for (const auto& e : edges) {
        const double bound = (1.0 + eps) * e.id.length;
        if (bounded_distance(out, e.u, e.v, bound) > bound) out.add_edge(e.u, e.v, tag);
    }
    return out;
}

SpannerGraph greedy_spanner(const SpannerGraph& g, double eps, StepTag tag) {
    std::vector<Edge> edges;
    for (const auto& te : g.edges()) edges.push_back(te.edge);
    return greedy_spanner(g.nodes(), std::move(edges), eps, tag);
}

namespace {

std::vector<DirectedEdge> sorted_by_ids(const NodeSet& nodes, std::vector<DirectedEdge> v) {
    std::sort(v.begin(), v.end(), [&](const DirectedEdge& a, const DirectedEdge& b) {
        if (a.from != b.from) return nodes.id(a.from) < nodes.id(b.from);
        return nodes.id(a.to) < nodes.id(b.to);
    });
    return v;
}

}  // namespace

std::vector<DirectedEdge> yao_select(const NodeSetPtr& nodes, const std::vector<Edge>& e0, int k) {
    std::vector<std::map<int, DirectedEdge>> best(nodes->size());
    auto offer = [&](std::size_t from, std::size_t to, const EdgeId& id) {
        const int c = cone_index(ConeSystem(k, nodes->point(from)), nodes->point(to));
        auto [it, fresh] = best[from].try_emplace(c, DirectedEdge{from, to, id});
        if (!fresh && id < it->second.id) it->second = DirectedEdge{from, to, id};
    };
    for (const auto& e : e0) {
        offer(e.u, e.v, e.id);
        offer(e.v, e.u, e.id);
    }
    std::vector<DirectedEdge> out;
    for (const auto& cones : best) {
        for (const auto& [c, de] : cones) out.push_back(de);
    }
    return sorted_by_ids(*nodes, std::move(out));
}

std::vector<DirectedEdge> reverse_yao(const NodeSetPtr& nodes, const std::vector<DirectedEdge>& ey, int k) {
    std::vector<std::map<int, DirectedEdge>> best(nodes->size());
    for (const auto& de : ey) {
        const int c = cone_index(ConeSystem(k, nodes->point(de.to)), nodes->point(de.from));
        auto [it, fresh] = best[de.to].try_emplace(c, de);
        if (!fresh && de.id < it->second.id) it->second = de;
    }
    std::vector<DirectedEdge> out;
    for (const auto& cones : best) {
        for (const auto& [c, de] : cones) out.push_back(de);
    }
    return sorted_by_ids(*nodes, std::move(out));
}

std::vector<std::size_t> ordered_yao_order(const SpannerGraph& g) {
    const auto& nodes = *g.nodes();
    const std::size_t n = g.node_count();
    std::vector<std::size_t> degree(n);
    std::set<std::pair<std::size_t, NodeId>> queue;
    for (std::size_t u = 0; u < n; ++u) {
        degree[u] = g.degree(u);
        queue.insert({degree[u], nodes.id(u)});
    }
    std::vector<char> removed(n, 0);
    std::vector<std::size_t> removal;
    removal.reserve(n);
    while (!queue.empty()) {
        const auto u = nodes.at(queue.begin()->second);
        queue.erase(queue.begin());
        removed[u] = 1;
        removal.push_back(u);
        for (const auto& arc : g.neighbors(u)) {
            if (removed[arc.to]) continue;
            queue.erase({degree[arc.to], nodes.id(arc.to)});
            --degree[arc.to];
            queue.insert({degree[arc.to], nodes.id(arc.to)});
        }
    }
    // pi_u = n - i + 1, processed by increasing pi: reverse removal order
    std::reverse(removal.begin(), removal.end());
    return removal;
}

SpannerGraph ordered_yao(const SpannerGraph& g, StepTag tag) {
    const auto& nodes = *g.nodes();
    const double two_pi = 2.0 * std::numbers::pi;
    const double max_cone = std::numbers::pi / 3.0;
    SpannerGraph out(g.nodes());
    std::vector<char> processed(g.node_count(), 0);

    struct Spoke {
        double rel;
        std::size_t to;
        EdgeId id;
    };
    for (const auto u : ordered_yao_order(g)) {
        const Point& pu = nodes.point(u);
        std::vector<double> rays;
        for (const auto& arc : g.neighbors(u)) {
            if (processed[arc.to]) rays.push_back(direction(pu, nodes.point(arc.to)));
        }
        if (rays.size() > 5) {
            throw std::domain_error("ordered_yao: node " + std::to_string(nodes.id(u).value) +
                                    " has more than five processed neighbours; input is not planar");
        }
        std::sort(rays.begin(), rays.end());
        rays.erase(std::unique(rays.begin(), rays.end()), rays.end());

        // (sector, cone) -> neighbours in that open cone
        std::map<std::pair<int, int>, std::vector<Spoke>> cones;
        for (const auto& arc : g.neighbors(u)) {
            if (processed[arc.to]) continue;
            const double t = direction(pu, nodes.point(arc.to));
            int sector = 0;
            double start = 0.0, width = two_pi;
            int parts = 6;
            if (!rays.empty()) {
                auto it = std::upper_bound(rays.begin(), rays.end(), t);
                sector = it == rays.begin() ? static_cast<int>(rays.size()) - 1
                                            : static_cast<int>(it - rays.begin()) - 1;
                start = rays[static_cast<std::size_t>(sector)];
                const double next = static_cast<std::size_t>(sector) + 1 < rays.size()
                                        ? rays[static_cast<std::size_t>(sector) + 1]
                                        : rays.front() + two_pi;
                width = next - start;
                parts = static_cast<int>(std::ceil(width / max_cone));
            }
            double rel = t - start;
            if (rel < 0.0) rel += two_pi;
            const int cone = std::clamp(static_cast<int>(std::floor(rel / (width / parts))), 0, parts - 1);
            cones[{sector, cone}].push_back({rel, arc.to, nodes.edge_id(u, arc.to)});
        }
        for (auto& [key, spokes] : cones) {
            std::sort(spokes.begin(), spokes.end(), [](const Spoke& a, const Spoke& b) {
                if (a.rel != b.rel) return a.rel < b.rel;
                return a.id < b.id;
            });
            const auto shortest = std::min_element(spokes.begin(), spokes.end(),
                                                   [](const Spoke& a, const Spoke& b) { return a.id < b.id; });
            out.add_edge(u, shortest->to, tag);
            for (std::size_t j = 0; j + 1 < spokes.size(); ++j) out.add_edge(spokes[j].to, spokes[j + 1].to, tag);
        }
        processed[u] = 1;
    }
    return out;
}

}  // namespace lospan
