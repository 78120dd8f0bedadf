#include "lospan/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <queue>
#include <random>
#include <sstream>

namespace lospan {

bool edge_id_less(const EdgeId& e1, const EdgeId& e2) { return e1 < e2; }

EdgeId undirected_edge_id(double length, NodeId a, NodeId b) {
    return a < b ? EdgeId{length, a, b} : EdgeId{length, b, a};
}

NodeSet::NodeSet(std::vector<NodeId> ids, std::vector<Point> points)
    : ids_(std::move(ids)), points_(std::move(points)) {
    if (ids_.size() != points_.size()) {
        throw std::invalid_argument("NodeSet: id and point counts differ");
    }
    index_.reserve(ids_.size());
    for (std::size_t i = 0; i < ids_.size(); ++i) {
        if (!index_.emplace(ids_[i].value, i).second) {
            throw std::invalid_argument("NodeSet: duplicate node id " + std::to_string(ids_[i].value));
        }
    }
    std::vector<std::size_t> order(points_.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (points_[a].x() != points_[b].x()) return points_[a].x() < points_[b].x();
        return points_[a].y() < points_[b].y();
    });
    for (std::size_t k = 1; k < order.size(); ++k) {
        if (points_[order[k]] == points_[order[k - 1]]) {
            throw std::invalid_argument("NodeSet: duplicate coordinates for ids " +
                                        std::to_string(ids_[order[k - 1]].value) + " and " +
                                        std::to_string(ids_[order[k]].value));
        }
    }
}

std::optional<std::size_t> NodeSet::index_of(NodeId id) const {
    auto it = index_.find(id.value);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::size_t NodeSet::at(NodeId id) const {
    auto idx = index_of(id);
    if (!idx) throw std::out_of_range("NodeSet: unknown node id " + std::to_string(id.value));
    return *idx;
}

std::string_view to_string(StepTag tag) {
    switch (tag) {
        case StepTag::Input: return "input";
        case StepTag::CliqueSpanner: return "los-clique";
        case StepTag::YaoConnector: return "los-connector";
        case StepTag::Delaunay: return "delaunay";
        case StepTag::OrderedYao: return "ordered-yao";
        case StepTag::CellGreedy: return "plos-greedy";
        case StepTag::CellConnector: return "plos-connector";
        case StepTag::Greedy: return "greedy";
        case StepTag::Tree: return "tree";
    }
    return "unknown";
}

StepTag step_tag_from_string(std::string_view s) {
    for (auto tag : {StepTag::Input, StepTag::CliqueSpanner, StepTag::YaoConnector,
                     StepTag::Delaunay, StepTag::OrderedYao, StepTag::CellGreedy,
                     StepTag::CellConnector, StepTag::Greedy, StepTag::Tree}) {
        if (to_string(tag) == s) return tag;
    }
    throw std::invalid_argument("unknown step tag '" + std::string(s) + "'");
}

SpannerGraph::SpannerGraph(NodeSetPtr nodes) : nodes_(std::move(nodes)), adj_(nodes_->size()) {}

std::uint64_t SpannerGraph::key(std::size_t u, std::size_t v) {
    if (u > v) std::swap(u, v);
    return (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint64_t>(v);
}

bool SpannerGraph::add_edge(std::size_t u, std::size_t v, StepTag tag) {
    if (u == v) throw std::invalid_argument("SpannerGraph: self loop");
    if (u >= adj_.size() || v >= adj_.size()) throw std::out_of_range("SpannerGraph: bad node index");
    if (!tags_.emplace(key(u, v), tag).second) return false;
    const double len = nodes_->length(u, v);
    adj_[u].push_back({v, len});
    adj_[v].push_back({u, len});
    ++edge_count_;
    return true;
}

bool SpannerGraph::remove_edge(std::size_t u, std::size_t v) {
    if (tags_.erase(key(u, v)) == 0) return false;
    auto drop = [](std::vector<Arc>& arcs, std::size_t to) {
        arcs.erase(std::find_if(arcs.begin(), arcs.end(), [&](const Arc& a) { return a.to == to; }));
    };
    drop(adj_[u], v);
    drop(adj_[v], u);
    --edge_count_;
    return true;
}

bool SpannerGraph::has_edge(std::size_t u, std::size_t v) const {
    return u != v && tags_.count(key(u, v)) > 0;
}

std::optional<StepTag> SpannerGraph::tag_of(std::size_t u, std::size_t v) const {
    auto it = tags_.find(key(u, v));
    if (it == tags_.end()) return std::nullopt;
    return it->second;
}

std::size_t SpannerGraph::max_degree() const {
    std::size_t best = 0;
    for (const auto& a : adj_) best = std::max(best, a.size());
    return best;
}

double SpannerGraph::weight() const {
    double w = 0.0;
    for (const auto& te : edges()) w += te.edge.id.length;
    return w;
}

std::vector<TaggedEdge> SpannerGraph::edges() const {
    std::vector<TaggedEdge> out;
    out.reserve(edge_count_);
    for (const auto& [k, tag] : tags_) {
        auto u = static_cast<std::size_t>(k >> 32);
        auto v = static_cast<std::size_t>(k & 0xffffffffu);
        EdgeId id = nodes_->edge_id(u, v);
        if (nodes_->id(u) > nodes_->id(v)) std::swap(u, v);
        out.push_back({Edge{u, v, id}, tag});
    }
    std::sort(out.begin(), out.end(),
              [](const TaggedEdge& a, const TaggedEdge& b) { return a.edge.id < b.edge.id; });
    return out;
}

std::vector<Edge> SpannerGraph::edges_with_tag(StepTag tag) const {
    std::vector<Edge> out;
    for (const auto& te : edges()) {
        if (te.tag == tag) out.push_back(te.edge);
    }
    return out;
}

bool same_edge_set(const SpannerGraph& a, const SpannerGraph& b) {
    if (a.edge_count_ != b.edge_count_) return false;
    for (const auto& [k, tag] : a.tags_) {
        if (b.tags_.count(k) == 0) return false;
    }
    return true;
}

std::string AdversaryPolicy::describe() const {
    switch (kind) {
        case Kind::None: return "none";
        case Kind::All: return "all";
        case Kind::Random: {
            std::ostringstream os;
            os << "random(" << p << ")";
            return os.str();
        }
    }
    return "none";
}

AdversaryPolicy AdversaryPolicy::parse(std::string_view s) {
    if (s == "none") return none();
    if (s == "all") return all();
    const bool paren = s.starts_with("random(") && s.ends_with(")");
    if (paren || s.starts_with("random:")) {
        const std::string inner(paren ? s.substr(7, s.size() - 8) : s.substr(7));
        std::size_t used = 0;
        const double p = std::stod(inner, &used);
        if (used != inner.size() || !(p >= 0.0 && p <= 1.0)) {
            throw std::invalid_argument("adversary probability must lie in [0,1]");
        }
        return random(p);
    }
    throw std::invalid_argument("unknown adversary policy '" + std::string(s) + "'");
}

QudgInstance::QudgInstance(NodeSetPtr nodes, double alpha,
                           std::vector<std::pair<NodeId, NodeId>> band_edges)
    : nodes_(std::move(nodes)), alpha_(alpha), adj_(nodes_->size()) {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in (0,1]");
    const std::size_t n = nodes_->size();
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (auto [a, b] : band_edges) {
        if (a > b) std::swap(a, b);
        const std::size_t u = nodes_->at(a), v = nodes_->at(b);
        const double d = nodes_->length(u, v);
        if (!(d > alpha && d <= 1.0)) {
            throw std::invalid_argument("band edge " + std::to_string(a.value) + "-" +
                                        std::to_string(b.value) + " is not in (alpha,1]");
        }
        band_.emplace_back(a, b);
    }
    std::sort(band_.begin(), band_.end());
    band_.erase(std::unique(band_.begin(), band_.end()), band_.end());
    for (const auto& [a, b] : band_) pairs.emplace_back(nodes_->at(a), nodes_->at(b));
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = u + 1; v < n; ++v) {
            if (nodes_->length(u, v) <= alpha) pairs.emplace_back(u, v);
        }
    }
    for (auto [u, v] : pairs) {
        if (nodes_->id(u) > nodes_->id(v)) std::swap(u, v);
        edges_.push_back({u, v, nodes_->edge_id(u, v)});
        adj_[u].push_back(v);
        adj_[v].push_back(u);
    }
    std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) { return a.id < b.id; });
    for (auto& a : adj_) {
        std::sort(a.begin(), a.end(),
                  [&](std::size_t x, std::size_t y) { return nodes_->id(x) < nodes_->id(y); });
    }
}

bool QudgInstance::has_edge(std::size_t u, std::size_t v) const {
    const auto& a = adj_[u];
    return std::binary_search(a.begin(), a.end(), v, [&](std::size_t x, std::size_t y) {
        return nodes_->id(x) < nodes_->id(y);
    });
}

SpannerGraph QudgInstance::as_graph(StepTag tag) const {
    SpannerGraph g(nodes_);
    for (const auto& e : edges_) g.add_edge(e.u, e.v, tag);
    return g;
}

bool QudgInstance::is_connected() const {
    if (size() <= 1) return true;
    std::vector<char> seen(size(), 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
        const auto u = stack.back();
        stack.pop_back();
        for (auto v : adj_[u]) {
            if (!seen[v]) {
                seen[v] = 1;
                ++count;
                stack.push_back(v);
            }
        }
    }
    return count == size();
}

namespace {

double unit_draw(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

QudgInstance build_qudg(std::vector<NodeId> ids, const std::vector<Point>& points, double alpha,
                        const AdversaryPolicy& policy, std::uint64_t seed) {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in (0,1]");
    auto nodes = std::make_shared<const NodeSet>(std::move(ids), points);
    std::mt19937_64 rng(seed ^ 0xa5a5a5a55a5a5a5aULL);
    std::vector<std::pair<NodeId, NodeId>> band;
    for (std::size_t u = 0; u < nodes->size(); ++u) {
        for (std::size_t v = u + 1; v < nodes->size(); ++v) {
            const double d = nodes->length(u, v);
            if (d <= alpha || d > 1.0) continue;
            bool accept = false;
            switch (policy.kind) {
                case AdversaryPolicy::Kind::None: accept = false; break;
                case AdversaryPolicy::Kind::All: accept = true; break;
                case AdversaryPolicy::Kind::Random: accept = unit_draw(rng) < policy.p; break;
            }
            if (accept) band.emplace_back(nodes->id(u), nodes->id(v));
        }
    }
    return QudgInstance(std::move(nodes), alpha, std::move(band));
}

QudgInstance build_qudg(const std::vector<Point>& points, double alpha,
                        const AdversaryPolicy& policy, std::uint64_t seed) {
    std::vector<NodeId> ids(points.size());
    for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = NodeId{static_cast<std::uint32_t>(i)};
    return build_qudg(std::move(ids), points, alpha, policy, seed);
}

std::vector<Point> random_points(std::size_t n, double side, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Point> pts;
    pts.reserve(n);
    while (pts.size() < n) {
        const double x = unit_draw(rng) * side;
        const double y = unit_draw(rng) * side;
        pts.emplace_back(x, y);
    }
    return pts;
}

GeneratedInstance generate_connected(std::size_t n, double side, double alpha,
                                     const AdversaryPolicy& policy, std::uint64_t seed,
                                     int max_attempts) {
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        const std::uint64_t s = seed + static_cast<std::uint64_t>(attempt) * 0x9E3779B97F4A7C15ULL;
        auto inst = build_qudg(random_points(n, side, s), alpha, policy, s);
        if (inst.is_connected()) return {std::move(inst), s, attempt + 1};
    }
    throw std::runtime_error("generate_connected: no connected instance after " +
                             std::to_string(max_attempts) + " attempts");
}

double side_for_density(std::size_t n, double alpha, double alpha_degree) {
    return std::sqrt(static_cast<double>(n) * std::numbers::pi * alpha * alpha / alpha_degree);
}

DisconnectedError::DisconnectedError(const std::string& what,
                                     std::vector<std::vector<NodeId>> components)
    : std::runtime_error(what), components_(std::move(components)) {}

std::vector<double> dijkstra(const SpannerGraph& g, std::size_t source, double bound) {
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> d(g.node_count(), inf);
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    d[source] = 0.0;
    pq.push({0.0, source});
    while (!pq.empty()) {
        auto [du, u] = pq.top();
        pq.pop();
        if (du > d[u]) continue;
        for (const auto& arc : g.neighbors(u)) {
            const double nd = du + arc.length;
            if (nd < d[arc.to] && nd <= bound) {
                d[arc.to] = nd;
                pq.push({nd, arc.to});
            }
        }
    }
    return d;
}

double bounded_distance(const SpannerGraph& g, std::size_t s, std::size_t t, double bound) {
    const double inf = std::numeric_limits<double>::infinity();
    if (s == t) return 0.0;
    std::unordered_map<std::size_t, double> d;
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    d[s] = 0.0;
    pq.push({0.0, s});
    while (!pq.empty()) {
        auto [du, u] = pq.top();
        pq.pop();
        if (du > d[u]) continue;
        if (u == t) return du;
        for (const auto& arc : g.neighbors(u)) {
            const double nd = du + arc.length;
            if (nd > bound) continue;
            auto it = d.find(arc.to);
            if (it == d.end() || nd < it->second) {
                d[arc.to] = nd;
                pq.push({nd, arc.to});
            }
        }
    }
    return inf;
}

std::optional<PathResult> shortest_path(const SpannerGraph& g, NodeId u, NodeId v) {
    const auto& nodes = *g.nodes();
    const std::size_t s = nodes.at(u), t = nodes.at(v);
    if (s == t) return PathResult{0.0, {u}};
    const auto to_t = dijkstra(g, t);
    if (!std::isfinite(to_t[s])) return std::nullopt;
    PathResult out{to_t[s], {u}};
    std::size_t cur = s;
    while (cur != t) {
        std::optional<std::size_t> best;
        for (const auto& arc : g.neighbors(cur)) {
            const double slack = arc.length + to_t[arc.to] - to_t[cur];
            if (std::abs(slack) > 1e-12 * std::max(1.0, to_t[cur])) continue;
            if (to_t[arc.to] >= to_t[cur]) continue;
            if (!best || nodes.id(arc.to) < nodes.id(*best)) best = arc.to;
        }
        cur = *best;
        out.path.push_back(nodes.id(cur));
    }
    return out;
}

std::vector<std::vector<std::size_t>> connected_components(const SpannerGraph& g) {
    std::vector<std::vector<std::size_t>> comps;
    std::vector<char> seen(g.node_count(), 0);
    for (std::size_t s = 0; s < g.node_count(); ++s) {
        if (seen[s]) continue;
        comps.emplace_back();
        std::vector<std::size_t> stack{s};
        seen[s] = 1;
        while (!stack.empty()) {
            const auto u = stack.back();
            stack.pop_back();
            comps.back().push_back(u);
            for (const auto& arc : g.neighbors(u)) {
                if (!seen[arc.to]) {
                    seen[arc.to] = 1;
                    stack.push_back(arc.to);
                }
            }
        }
        std::sort(comps.back().begin(), comps.back().end());
    }
    return comps;
}

namespace {

struct DisjointSets {
    explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[a] = b;
        return true;
    }
    std::vector<std::size_t> parent;
};

}  // namespace

SpannerGraph mst(const SpannerGraph& g) {
    auto comps = connected_components(g);
    if (comps.size() > 1) {
        std::vector<std::vector<NodeId>> ids;
        for (const auto& c : comps) {
            ids.emplace_back();
            for (auto u : c) ids.back().push_back(g.nodes()->id(u));
        }
        throw DisconnectedError("mst: graph has " + std::to_string(comps.size()) + " components",
                                std::move(ids));
    }
    SpannerGraph tree(g.nodes());
    DisjointSets sets(g.node_count());
    for (const auto& te : g.edges()) {
        if (sets.unite(te.edge.u, te.edge.v)) tree.add_edge(te.edge.u, te.edge.v, StepTag::Tree);
    }
    return tree;
}

double mst_weight(const NodeSetPtr& nodes, const std::vector<Edge>& edges) {
    std::vector<Edge> sorted = edges;
    std::sort(sorted.begin(), sorted.end(), [](const Edge& a, const Edge& b) { return a.id < b.id; });
    DisjointSets sets(nodes->size());
    double w = 0.0;
    for (const auto& e : sorted) {
        if (sets.unite(e.u, e.v)) w += e.id.length;
    }
    return w;
}

double aspect_ratio(const std::vector<double>& lengths) {
    if (lengths.empty()) throw std::invalid_argument("aspect_ratio: empty edge set");
    const auto [lo, hi] = std::minmax_element(lengths.begin(), lengths.end());
    return *hi / *lo;
}

double aspect_ratio(const std::vector<Edge>& edges) {
    std::vector<double> lengths;
    lengths.reserve(edges.size());
    for (const auto& e : edges) lengths.push_back(e.id.length);
    return aspect_ratio(lengths);
}

}  // namespace lospan
