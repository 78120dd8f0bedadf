#include "lospan/covers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

namespace lospan {

bool CliqueCover::share_cell(std::size_t u, std::size_t v) const {
    for (const auto& a : cells_of_node[u]) {
        for (const auto& b : cells_of_node[v]) {
            if (a == b) return true;
        }
    }
    return false;
}

CliqueCover grid_cover(const NodeSetPtr& nodes, const GridSpec& g) {
    CliqueCover cover(g);
    cover.cells_of_node.resize(nodes->size());
    for (std::size_t u = 0; u < nodes->size(); ++u) {
        cover.cells_of_node[u] = g.cells_of(nodes->point(u));
        for (const auto& c : cover.cells_of_node[u]) cover.cells[c].push_back(u);
    }
    for (auto& [cell, members] : cover.cells) {
        std::sort(members.begin(), members.end(),
                  [&](std::size_t a, std::size_t b) { return nodes->id(a) < nodes->id(b); });
    }
    return cover;
}

CliqueCover clique_cover(const QudgInstance& inst, const GridSpec& g) {
    if (g.beta() > inst.alpha() / std::sqrt(2.0)) {
        throw std::invalid_argument("clique_cover: beta must not exceed alpha/sqrt(2)");
    }
    return grid_cover(inst.nodes(), g);
}

std::vector<std::size_t> ClusterCover::centers() const {
    std::vector<std::size_t> out;
    for (std::size_t u = 0; u < center_of.size(); ++u) {
        if (center_of[u] == u) out.push_back(u);
    }
    return out;
}

std::map<std::size_t, std::vector<std::size_t>> ClusterCover::clusters() const {
    std::map<std::size_t, std::vector<std::size_t>> out;
    for (std::size_t u = 0; u < center_of.size(); ++u) out[center_of[u]].push_back(u);
    return out;
}

std::vector<std::size_t> r_ball(const SpannerGraph& h, std::size_t u, double r) {
    std::unordered_map<std::size_t, double> d;
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    d[u] = 0.0;
    pq.push({0.0, u});
    std::vector<std::size_t> out;
    while (!pq.empty()) {
        auto [du, x] = pq.top();
        pq.pop();
        if (du > d[x]) continue;
        out.push_back(x);
        for (const auto& arc : h.neighbors(x)) {
            if (arc.length > r) continue;
            const double nd = du + arc.length;
            if (nd > r) continue;
            auto it = d.find(arc.to);
            if (it == d.end() || nd < it->second) {
                d[arc.to] = nd;
                pq.push({nd, arc.to});
            }
        }
    }
    const auto& nodes = *h.nodes();
    std::sort(out.begin(), out.end(), [&](std::size_t a, std::size_t b) { return nodes.id(a) < nodes.id(b); });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<std::pair<NodeId, NodeId>> cover_cell_step(const CoverCellInput& in) {
    auto center_of = in.center_of;
    std::vector<std::pair<NodeId, NodeId>> out;
    auto covered = [&](NodeId v) { return center_of.count(v) > 0; };
    auto assign = [&](NodeId v, NodeId c) {
        center_of[v] = c;
        out.emplace_back(v, c);
    };
    auto is_member = [&](NodeId v) {
        return std::binary_search(in.members.begin(), in.members.end(), v);
    };
    auto ball_of = [&](NodeId v) -> const std::vector<NodeId>& {
        auto it = in.ball.find(v);
        if (it == in.ball.end()) {
            throw std::logic_error("cover_cell_step: missing r-ball for node " + std::to_string(v.value));
        }
        return it->second;
    };

    // (C) existing centers of the clique grow, highest ID first
    for (auto it = in.members.rbegin(); it != in.members.rend(); ++it) {
        const NodeId c = *it;
        auto s = center_of.find(c);
        if (s == center_of.end() || s->second != c) continue;
        for (NodeId v : ball_of(c)) {
            if (is_member(v) && !covered(v)) assign(v, c);
        }
    }
    // (D) highest uncovered node joins a nearby center or starts a cluster
    for (auto it = in.members.rbegin(); it != in.members.rend(); ++it) {
        const NodeId w = *it;
        if (covered(w)) continue;
        std::optional<NodeId> join;
        for (NodeId x : ball_of(w)) {
            auto s = center_of.find(x);
            if (x != w && s != center_of.end() && s->second == x) join = x;  // ball is ascending
        }
        if (join) {
            assign(w, *join);
            continue;
        }
        assign(w, w);
        for (NodeId v : ball_of(w)) {
            if (is_member(v) && !covered(v)) assign(v, w);
        }
    }
    return out;
}

ClusterCover cluster_cover_reference(const SpannerGraph& h, const CliqueCover& cover, double r,
                                     std::array<int, 4> order) {
    if (!(r > 0.0)) throw std::invalid_argument("cluster cover radius must be positive");
    const auto& nodes = *h.nodes();
    const std::size_t n = nodes.size();
    std::vector<std::vector<NodeId>> balls(n);
    for (std::size_t u = 0; u < n; ++u) {
        for (auto x : r_ball(h, u, r)) balls[u].push_back(nodes.id(x));
    }
    constexpr auto none = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> center_of(n, none);

    for (int parity : order) {
        for (const auto& [cell, members] : cover.cells) {
            if (parity_class(cell) != parity) continue;
            CoverCellInput in;
            for (auto m : members) {
                in.members.push_back(nodes.id(m));
                in.ball[nodes.id(m)] = balls[m];
                if (center_of[m] != none) in.center_of[nodes.id(m)] = nodes.id(center_of[m]);
                for (NodeId x : balls[m]) {
                    const auto xi = nodes.at(x);
                    if (center_of[xi] == xi) in.center_of[x] = x;
                }
            }
            for (auto [v, c] : cover_cell_step(in)) center_of[nodes.at(v)] = nodes.at(c);
        }
    }
    for (std::size_t u = 0; u < n; ++u) {
        if (center_of[u] == none) throw std::logic_error("cluster cover left a node uncovered");
    }
    return ClusterCover{r, std::move(center_of)};
}

}  // namespace lospan
