#include "lospan/pipelines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace lospan {

namespace {

Edge edge_between(const NodeSet& nodes, std::size_t a, std::size_t b) {
    if (nodes.id(a) > nodes.id(b)) std::swap(a, b);
    return Edge{a, b, nodes.edge_id(a, b)};
}

void require_connected(const SpannerGraph& g) {
    auto comps = connected_components(g);
    if (comps.size() <= 1) return;
    std::vector<std::vector<NodeId>> ids;
    for (const auto& c : comps) {
        std::vector<NodeId> v;
        for (auto x : c) v.push_back(g.nodes()->id(x));
        std::sort(v.begin(), v.end());
        ids.push_back(std::move(v));
    }
    throw DisconnectedError("input graph has " + std::to_string(comps.size()) + " components",
                            std::move(ids));
}

constexpr std::array<int, 4> kParityOrder{0, 1, 2, 3};

}  // namespace

std::string_view to_string(ConnectorMode m) {
    return m == ConnectorMode::Literal ? "literal" : "representative";
}

ConnectorMode connector_mode_from_string(std::string_view s) {
    if (s == "literal") return ConnectorMode::Literal;
    if (s == "representative") return ConnectorMode::Representative;
    throw std::invalid_argument("unknown connector mode: " + std::string(s));
}

std::string_view to_string(ClusterHost h) {
    switch (h) {
        case ClusterHost::YDel: return "ydel";
        case ClusterHost::Spanner: return "spanner";
        case ClusterHost::PLDel: return "pldel";
    }
    return "ydel";
}

ClusterHost cluster_host_from_string(std::string_view s) {
    if (s == "ydel") return ClusterHost::YDel;
    if (s == "spanner") return ClusterHost::Spanner;
    if (s == "pldel") return ClusterHost::PLDel;
    throw std::invalid_argument("unknown cluster host: " + std::string(s));
}

int derive_k(double delta, double eps) {
    if (!(delta > 0.0) || !(eps > 0.0)) throw std::invalid_argument("derive_k: delta and eps must be positive");
    const double rhs = (delta + 1.0 + eps) / ((delta + 1.0) * (1.0 + eps));
    for (int k = 6;; ++k) {
        const double th = 2.0 * std::numbers::pi / k;
        if (std::cos(th) - std::sin(th) >= rhs) return k;
        if (k > 100000000) throw std::invalid_argument("derive_k: no cone count found");
    }
}

double derive_r_los(double delta, double eps, int k, ConnectorMode mode) {
    const double th = 2.0 * std::numbers::pi / k;
    const double cone = ((delta + 1.0) * (1.0 + eps) * (std::cos(th) - std::sin(th)) - (delta + 1.0 + eps)) / 4.0;
    const double base = delta * eps / (mode == ConnectorMode::Representative ? 8.0 : 4.0);
    const double r = std::min(cone, base);
    if (!(r > 0.0)) throw std::invalid_argument("derive_r_los: parameters give a non-positive radius");
    return r;
}

double cover_radius_cap(double beta, double delta) { return (beta - 4.0 * delta) / 2.0; }

LosParams LosParams::make(double alpha, double beta, double delta, double eps, ConnectorMode mode) {
    LosParams p;
    p.alpha = alpha;
    p.beta = beta;
    p.delta = delta;
    p.eps = eps;
    p.mode = mode;
    if (!(eps > 0.0) || !(delta > 0.0)) throw std::invalid_argument("LosParams: eps and delta must be positive");
    p.k = derive_k(delta, eps);
    p.theta = 2.0 * std::numbers::pi / p.k;
    p.r = std::min(derive_r_los(delta, eps, p.k, mode), cover_radius_cap(beta, delta));
    p.validate();
    return p;
}

void LosParams::validate() const {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("LosParams: alpha must lie in (0, 1]");
    if (!(beta > 0.0 && beta < alpha / std::sqrt(2.0))) {
        throw std::invalid_argument("LosParams: beta must lie in (0, alpha/sqrt(2))");
    }
    if (!(delta > 0.0 && delta < beta / 4.0)) throw std::invalid_argument("LosParams: delta must lie in (0, beta/4)");
    if (!(eps > 0.0) || !std::isfinite(eps)) throw std::invalid_argument("LosParams: eps must be positive");
    if (k < 6) throw std::invalid_argument("LosParams: k must be at least 6");
    const double rhs = (delta + 1.0 + eps) / ((delta + 1.0) * (1.0 + eps));
    if (std::cos(theta) - std::sin(theta) < rhs) throw std::invalid_argument("LosParams: k too small for eps");
    const double bound = derive_r_los(delta, eps, k, mode);
    if (!(r > 0.0) || r > bound || r > cover_radius_cap(beta, delta)) {
        throw std::invalid_argument("LosParams: cluster radius out of range");
    }
}

PlosParams PlosParams::make(double beta, double delta, double eps, ConnectorMode mode, ClusterHost host) {
    PlosParams p;
    p.beta = beta;
    p.delta = delta;
    p.eps = eps;
    p.mode = mode;
    p.host = host;
    p.r = std::min(eps * delta / (mode == ConnectorMode::Representative ? 8.0 : 4.0),
                   cover_radius_cap(beta, delta));
    p.validate();
    return p;
}

void PlosParams::validate() const {
    if (!(beta > 0.0 && beta <= 1.0 / std::sqrt(2.0))) {
        throw std::invalid_argument("PlosParams: beta must lie in (0, 1/sqrt(2)]");
    }
    if (!(delta > 0.0 && delta < beta / 4.0)) throw std::invalid_argument("PlosParams: delta must lie in (0, beta/4)");
    if (!(eps > 0.0 && eps < 2.0)) throw std::invalid_argument("PlosParams: eps must lie in (0, 2)");
    const double bound = eps * delta / (mode == ConnectorMode::Representative ? 8.0 : 4.0);
    if (!(r > 0.0) || r > bound || r > cover_radius_cap(beta, delta)) {
        throw std::invalid_argument("PlosParams: cluster radius out of range");
    }
}

std::vector<Edge> select_connectors(const std::vector<Edge>& candidates, const ClusterCover& clusters,
                                    ConnectorMode mode) {
    std::vector<Edge> out;
    if (mode == ConnectorMode::Literal) {
        for (const auto& e : candidates) {
            if (clusters.is_center(e.u) && clusters.is_center(e.v)) out.push_back(e);
        }
    } else {
        std::map<std::pair<std::size_t, std::size_t>, Edge> best;
        for (const auto& e : candidates) {
            auto cu = clusters.center_of[e.u];
            auto cv = clusters.center_of[e.v];
            if (cu == cv) continue;
            if (cu > cv) std::swap(cu, cv);
            auto [it, fresh] = best.try_emplace({cu, cv}, e);
            if (!fresh && e.id < it->second.id) it->second = e;
        }
        for (const auto& [key, e] : best) out.push_back(e);
    }
    std::sort(out.begin(), out.end(), [](const Edge& a, const Edge& b) { return a.id < b.id; });
    return out;
}

LosResult los_full(const QudgInstance& inst, const LosParams& p) {
    p.validate();
    if (std::abs(inst.alpha() - p.alpha) > 0.0) throw std::invalid_argument("los: alpha differs from instance");
    const auto nodes = inst.nodes();
    require_connected(inst.as_graph());

    LosResult res{SpannerGraph(nodes), p, clique_cover(inst, GridSpec(p.beta, p.delta)), {}, {}, {}, {}, {}, 0};

    // 1. per-clique greedy spanners
    for (const auto& [cell, members] : res.cover.cells) {
        std::vector<Edge> clique;
        for (std::size_t a = 0; a < members.size(); ++a) {
            for (std::size_t b = a + 1; b < members.size(); ++b) {
                if (!inst.has_edge(members[a], members[b])) throw std::logic_error("los: cell is not a clique");
                clique.push_back(edge_between(*nodes, members[a], members[b]));
            }
        }
        auto hi = greedy_spanner(nodes, std::move(clique), p.eps, StepTag::CliqueSpanner);
        res.clique_greedy_max_degree = std::max(res.clique_greedy_max_degree, hi.max_degree());
        for (const auto& te : hi.edges()) res.h.add_edge(te.edge.u, te.edge.v, StepTag::CliqueSpanner);
    }

    // 2-3. Yao and reverse Yao on edges in no clique
    for (const auto& e : inst.edges()) {
        if (!res.cover.share_cell(e.u, e.v)) res.e0.push_back(e);
    }
    res.ey = yao_select(nodes, res.e0, p.k);
    res.eyy = reverse_yao(nodes, res.ey, p.k);

    // 4. cluster cover on H, then connectors
    res.clusters = cluster_cover_reference(res.h, res.cover, p.r, kParityOrder);
    std::vector<Edge> candidates;
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (const auto& de : res.eyy) {
        const auto e = edge_between(*nodes, de.from, de.to);
        if (seen.insert({e.u, e.v}).second) candidates.push_back(e);
    }
    res.connectors = select_connectors(candidates, res.clusters, p.mode);
    for (const auto& e : res.connectors) res.h.add_edge(e.u, e.v, StepTag::YaoConnector);
    return res;
}

SpannerGraph los(const QudgInstance& inst, double eps, double beta, double delta, ConnectorMode mode) {
    return los_full(inst, LosParams::make(inst.alpha(), beta, delta, eps, mode)).h;
}

bool in_block(const CliqueCover& cover, std::size_t node, const CellIndex& cell, int radius) {
    for (const auto& c : cover.cells_of_node[node]) {
        if (std::abs(c.i - cell.i) <= radius && std::abs(c.j - cell.j) <= radius) return true;
    }
    return false;
}

namespace {

double restricted_distance(const SpannerGraph& q, std::size_t s, std::size_t t, double bound,
                           const std::function<bool(std::size_t)>& allowed) {
    std::unordered_map<std::size_t, double> d;
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    d[s] = 0.0;
    pq.push({0.0, s});
    while (!pq.empty()) {
        auto [du, x] = pq.top();
        pq.pop();
        if (du > d[x]) continue;
        if (x == t) return du;
        for (const auto& arc : q.neighbors(x)) {
            const double nd = du + arc.length;
            if (nd > bound || !allowed(arc.to)) continue;
            auto it = d.find(arc.to);
            if (it == d.end() || nd < it->second) {
                d[arc.to] = nd;
                pq.push({nd, arc.to});
            }
        }
    }
    return std::numeric_limits<double>::infinity();
}

}  // namespace

bool restricted_sp_query(const SpannerGraph& q, std::size_t u, std::size_t v, double eps,
                         const CliqueCover& cover, const CellIndex& cell) {
    const double bound = (1.0 + eps) * q.nodes()->length(u, v);
    return restricted_distance(q, u, v, bound, [&](std::size_t x) { return in_block(cover, x, cell); }) <= bound;
}

bool unrestricted_sp_query(const SpannerGraph& q, std::size_t u, std::size_t v, double eps) {
    const double bound = (1.0 + eps) * q.nodes()->length(u, v);
    return bounded_distance(q, u, v, bound) <= bound;
}

std::optional<CellIndex> assigned_cell(const CliqueCover& cover, std::size_t u, std::size_t v) {
    std::optional<CellIndex> best;
    int best_rank = 4;
    for (const auto& a : cover.cells_of_node[u]) {
        for (const auto& b : cover.cells_of_node[v]) {
            if (!(a == b)) continue;
            const auto pos = std::find(kParityOrder.begin(), kParityOrder.end(), parity_class(a));
            const int rank = static_cast<int>(pos - kParityOrder.begin());
            if (rank < best_rank || (rank == best_rank && a < *best)) {
                best = a;
                best_rank = rank;
            }
        }
    }
    return best;
}

PlosResult plos_full(const QudgInstance& inst, const PlosParams& p) {
    p.validate();
    if (inst.alpha() != 1.0) throw std::invalid_argument("plos: requires a unit disk instance (alpha = 1)");
    const auto nodes = inst.nodes();
    require_connected(inst.as_graph());

    const auto l1 = ldel1_structure(inst);
    PlosResult res{SpannerGraph(nodes), p, grid_cover(nodes, GridSpec(p.beta, p.delta)),
                   pldel(l1), SpannerGraph(nodes), SpannerGraph(nodes), {}, {}, {}, {}};

    // 2. ordered Yao per clique over incident structure edges
    for (const auto& [cell, members] : res.cover.cells) {
        SpannerGraph gi(nodes);
        for (auto m : members) {
            for (const auto& arc : res.pldel.neighbors(m)) gi.add_edge(m, arc.to, StepTag::Delaunay);
        }
        for (const auto& te : ordered_yao(gi).edges()) res.ydel.add_edge(te.edge.u, te.edge.v, StepTag::OrderedYao);
    }

    // 3. greedy inside the cells, one parity class at a time
    std::map<CellIndex, std::vector<Edge>> assigned;
    std::vector<Edge> cross_cell;
    for (const auto& te : res.ydel.edges()) {
        if (auto c = assigned_cell(res.cover, te.edge.u, te.edge.v)) {
            assigned[*c].push_back(te.edge);
        } else {
            cross_cell.push_back(te.edge);
        }
    }
    SpannerGraph state = res.ydel;
    for (int parity : kParityOrder) {
        SpannerGraph base = state;
        for (const auto& [cell, edges] : assigned) {
            if (parity_class(cell) != parity) continue;
            for (const auto& e : edges) base.remove_edge(e.u, e.v);
        }
        PlosIteration it{parity, SpannerGraph(nodes), {}};
        std::vector<Edge> eliminated;
        for (const auto& [cell, edges] : assigned) {
            if (parity_class(cell) != parity) continue;
            SpannerGraph q = base;
            auto& acc = res.accepted[cell];
            for (const auto& e : edges) {  // already in EdgeId order
                it.processed.push_back(e);
                if (restricted_sp_query(q, e.u, e.v, p.eps, res.cover, cell)) {
                    eliminated.push_back(e);
                } else {
                    q.add_edge(e.u, e.v, StepTag::CellGreedy);
                    acc.push_back(e);
                    res.h.add_edge(e.u, e.v, StepTag::CellGreedy);
                }
            }
        }
        for (const auto& e : eliminated) state.remove_edge(e.u, e.v);
        it.state = state;
        res.iterations.push_back(std::move(it));
    }
    res.ydel_after = state;

    // 4. cluster cover and cross-cell connectors
    const SpannerGraph* host = &state;
    if (p.host == ClusterHost::Spanner) host = &res.h;
    if (p.host == ClusterHost::PLDel) host = &res.pldel;
    res.clusters = cluster_cover_reference(*host, res.cover, p.r, kParityOrder);
    res.connectors = select_connectors(cross_cell, res.clusters, p.mode);
    for (const auto& e : res.connectors) res.h.add_edge(e.u, e.v, StepTag::CellConnector);
    return res;
}

SpannerGraph plos(const QudgInstance& inst, double eps, double beta, double delta, ConnectorMode mode) {
    return plos_full(inst, PlosParams::make(beta, delta, eps, mode)).h;
}

}  // namespace lospan
