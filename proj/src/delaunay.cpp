#include "lospan/delaunay.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace lospan {

namespace {

class TriangleStore {
public:
    explicit TriangleStore(std::size_t n) : n_(n) {}

    void add(std::size_t a, std::size_t b, std::size_t c) {
        opp_[key(a, b)] = c;
        opp_[key(b, c)] = a;
        opp_[key(c, a)] = b;
    }
    void remove(std::size_t a, std::size_t b, std::size_t c) {
        opp_.erase(key(a, b));
        opp_.erase(key(b, c));
        opp_.erase(key(c, a));
    }
    std::optional<std::size_t> opposite(std::size_t a, std::size_t b) const {
        auto it = opp_.find(key(a, b));
        if (it == opp_.end()) return std::nullopt;
        return it->second;
    }
    std::vector<std::array<std::size_t, 3>> triangles() const {
        std::vector<std::array<std::size_t, 3>> out;
        for (const auto& [k, c] : opp_) {
            const auto a = static_cast<std::size_t>(k / n_), b = static_cast<std::size_t>(k % n_);
            if (a < b && a < c) out.push_back({a, b, c});
        }
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    std::uint64_t key(std::size_t a, std::size_t b) const { return static_cast<std::uint64_t>(a) * n_ + b; }

    std::size_t n_;
    std::unordered_map<std::uint64_t, std::size_t> opp_;
};

std::vector<Edge> sorted_unique_edges(const NodeSet& nodes, std::vector<std::pair<std::size_t, std::size_t>> pairs) {
    for (auto& [u, v] : pairs) {
        if (nodes.id(u) > nodes.id(v)) std::swap(u, v);
    }
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    std::vector<Edge> out;
    for (auto [u, v] : pairs) out.push_back({u, v, nodes.edge_id(u, v)});
    std::sort(out.begin(), out.end(), [](const Edge& a, const Edge& b) { return a.id < b.id; });
    return out;
}

}  // namespace

Triangulation delaunay(const NodeSetPtr& nodes_ptr) {
    const auto& nodes = *nodes_ptr;
    const std::size_t n = nodes.size();
    if (n < 2) throw std::invalid_argument("delaunay: need at least two points");
    auto pt = [&](std::size_t i) -> const Point& { return nodes.point(i); };

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (pt(a).x() != pt(b).x()) return pt(a).x() < pt(b).x();
        return pt(a).y() < pt(b).y();
    });

    std::size_t k = 2;
    while (k < n && orientation(pt(order[0]), pt(order[1]), pt(order[k])) == 0) ++k;
    if (k == n) {
        std::vector<std::pair<std::size_t, std::size_t>> path;
        for (std::size_t i = 0; i + 1 < n; ++i) path.emplace_back(order[i], order[i + 1]);
        return {nodes_ptr, {}, sorted_unique_edges(nodes, std::move(path))};
    }

    TriangleStore store(n);
    const std::size_t c = order[k];
    for (std::size_t i = 0; i + 1 < k; ++i) {
        std::size_t a = order[i], b = order[i + 1];
        if (orientation(pt(a), pt(b), pt(c)) < 0) std::swap(a, b);
        store.add(a, b, c);
    }
    std::vector<std::size_t> hull;
    if (orientation(pt(order[0]), pt(order[k - 1]), pt(c)) > 0) {
        for (std::size_t i = 0; i < k; ++i) hull.push_back(order[i]);
        hull.push_back(c);
    } else {
        hull.push_back(order[0]);
        hull.push_back(c);
        for (std::size_t i = k - 1; i >= 1; --i) hull.push_back(order[i]);
    }

    for (std::size_t idx = k + 1; idx < n; ++idx) {
        const std::size_t p = order[idx];
        const std::size_t h = hull.size();
        std::vector<char> vis(h);
        for (std::size_t i = 0; i < h; ++i) vis[i] = orientation(pt(hull[i]), pt(hull[(i + 1) % h]), pt(p)) < 0;
        std::size_t s = h;
        for (std::size_t i = 0; i < h; ++i) {
            if (vis[i] && !vis[(i + h - 1) % h]) {
                s = i;
                break;
            }
        }
        if (s == h) throw std::logic_error("delaunay: new point sees no hull edge");
        std::size_t e = s;
        while (vis[(e + 1) % h]) e = (e + 1) % h;
        for (std::size_t i = s;; i = (i + 1) % h) {
            store.add(hull[i], p, hull[(i + 1) % h]);
            if (i == e) break;
        }
        std::vector<std::size_t> next;
        for (std::size_t i = (e + 1) % h;; i = (i + 1) % h) {
            next.push_back(hull[i]);
            if (i == s) break;
        }
        next.push_back(p);
        hull = std::move(next);
    }

    std::vector<std::pair<std::size_t, std::size_t>> stack;
    for (const auto& t : store.triangles()) {
        stack.emplace_back(t[0], t[1]);
        stack.emplace_back(t[1], t[2]);
        stack.emplace_back(t[2], t[0]);
    }
    while (!stack.empty()) {
        auto [a, b] = stack.back();
        stack.pop_back();
        const auto c1 = store.opposite(a, b);
        const auto d1 = store.opposite(b, a);
        if (!c1 || !d1) continue;
        const std::size_t cc = *c1, d = *d1;
        const int ic = incircle(pt(a), pt(b), pt(cc), pt(d));
        const bool flip = ic > 0 || (ic == 0 && nodes.edge_id(cc, d) < nodes.edge_id(a, b));
        if (!flip) continue;
        store.remove(a, b, cc);
        store.remove(b, a, d);
        store.add(cc, a, d);
        store.add(d, b, cc);
        stack.emplace_back(a, d);
        stack.emplace_back(d, b);
        stack.emplace_back(b, cc);
        stack.emplace_back(cc, a);
    }

    Triangulation out{nodes_ptr, store.triangles(), {}};
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (const auto& t : out.triangles) {
        pairs.emplace_back(t[0], t[1]);
        pairs.emplace_back(t[1], t[2]);
        pairs.emplace_back(t[2], t[0]);
    }
    out.edges = sorted_unique_edges(nodes, std::move(pairs));
    return out;
}

SpannerGraph udel(const NodeSetPtr& nodes, StepTag tag) {
    SpannerGraph g(nodes);
    if (nodes->size() < 2) return g;
    for (const auto& e : delaunay(nodes).edges) {
        if (e.id.length <= 1.0) g.add_edge(e.u, e.v, tag);
    }
    return g;
}

TriangleRecord make_triangle(PointRecord a, PointRecord b, PointRecord c) {
    std::array<PointRecord, 3> t{a, b, c};
    std::sort(t.begin(), t.end(), [](const PointRecord& x, const PointRecord& y) { return x.id < y.id; });
    return TriangleRecord{t};
}

std::vector<NodeId> local_gabriel(const PointRecord& self, const std::vector<PointRecord>& nbrs) {
    std::vector<NodeId> out;
    for (const auto& v : nbrs) {
        if (dist(self.p, v.p) > 1.0) continue;
        bool empty = true;
        for (const auto& w : nbrs) {
            if (w.id == v.id) continue;
            if (diametral_sign(self.p, v.p, w.p) <= 0) {
                empty = false;
                break;
            }
        }
        if (empty) out.push_back(v.id);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<TriangleRecord> local_proposals(const PointRecord& self, const std::vector<PointRecord>& nbrs) {
    std::vector<TriangleRecord> out;
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
        if (dist(self.p, nbrs[i].p) > 1.0) continue;
        for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
            const auto& v = nbrs[i];
            const auto& w = nbrs[j];
            if (dist(self.p, w.p) > 1.0 || dist(v.p, w.p) > 1.0) continue;
            if (orientation(self.p, v.p, w.p) == 0) continue;
            bool empty = true;
            for (const auto& x : nbrs) {
                if (x.id == v.id || x.id == w.id) continue;
                if (incircle(self.p, v.p, w.p, x.p) > 0) {
                    empty = false;
                    break;
                }
            }
            if (empty) out.push_back(make_triangle(self, v, w));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

bool bbox_disjoint(const TriangleRecord& t, const Point& lo2, const Point& hi2) {
    double lx = t.corners[0].p.x(), hx = lx, ly = t.corners[0].p.y(), hy = ly;
    for (const auto& c : t.corners) {
        lx = std::min(lx, c.p.x());
        hx = std::max(hx, c.p.x());
        ly = std::min(ly, c.p.y());
        hy = std::max(hy, c.p.y());
    }
    return hx < lo2.x() || hi2.x() < lx || hy < lo2.y() || hi2.y() < ly;
}

bool edges_cross(const PointRecord& a, const PointRecord& b, const PointRecord& c, const PointRecord& d) {
    const bool same = (a.id == c.id && b.id == d.id) || (a.id == d.id && b.id == c.id);
    return !same && segments_properly_intersect(a.p, b.p, c.p, d.p);
}

int strict_inside_count(const TriangleRecord& t, const TriangleRecord& s) {
    int count = 0;
    for (const auto& x : s.corners) {
        if (x.id == t.corners[0].id || x.id == t.corners[1].id || x.id == t.corners[2].id) continue;
        if (incircle(t.corners[0].p, t.corners[1].p, t.corners[2].p, x.p) > 0) ++count;
    }
    return count;
}

std::array<EdgeId, 3> longest_first(const TriangleRecord& t) {
    const auto& c = t.corners;
    std::array<EdgeId, 3> ids{undirected_edge_id(dist(c[0].p, c[1].p), c[0].id, c[1].id),
                              undirected_edge_id(dist(c[1].p, c[2].p), c[1].id, c[2].id),
                              undirected_edge_id(dist(c[0].p, c[2].p), c[0].id, c[2].id)};
    std::sort(ids.begin(), ids.end(), [](const EdgeId& a, const EdgeId& b) { return b < a; });
    return ids;
}

bool lex_greater(const std::array<EdgeId, 3>& a, const std::array<EdgeId, 3>& b) {
    for (std::size_t i = 0; i < 3; ++i) {
        if (a[i] < b[i]) return false;
        if (b[i] < a[i]) return true;
    }
    return false;
}

}  // namespace

bool triangle_crosses_segment(const TriangleRecord& t, const PointRecord& a, const PointRecord& b) {
    const auto& c = t.corners;
    return edges_cross(c[0], c[1], a, b) || edges_cross(c[1], c[2], a, b) || edges_cross(c[0], c[2], a, b);
}

bool triangles_cross(const TriangleRecord& t, const TriangleRecord& s) {
    if (t == s) return false;
    Point lo(std::min({s.corners[0].p.x(), s.corners[1].p.x(), s.corners[2].p.x()}),
             std::min({s.corners[0].p.y(), s.corners[1].p.y(), s.corners[2].p.y()}));
    Point hi(std::max({s.corners[0].p.x(), s.corners[1].p.x(), s.corners[2].p.x()}),
             std::max({s.corners[0].p.y(), s.corners[1].p.y(), s.corners[2].p.y()}));
    if (bbox_disjoint(t, lo, hi)) return false;
    const auto& c = s.corners;
    return triangle_crosses_segment(t, c[0], c[1]) || triangle_crosses_segment(t, c[1], c[2]) ||
           triangle_crosses_segment(t, c[0], c[2]);
}

bool triangle_loses(const TriangleRecord& t, const TriangleRecord& s) {
    if (strict_inside_count(t, s) > 0) return true;
    if (strict_inside_count(s, t) > 0) return false;
    return lex_greater(longest_first(t), longest_first(s));
}

namespace {

std::vector<PointRecord> neighbour_records(const QudgInstance& inst, std::size_t u) {
    std::vector<PointRecord> out;
    for (auto v : inst.neighbors(u)) out.push_back({inst.id(v), inst.point(v)});
    return out;
}

}  // namespace

LocalizedDelaunay ldel1_structure(const QudgInstance& inst) {
    if (inst.alpha() != 1.0) throw std::invalid_argument("ldel1 requires a unit disk instance (alpha = 1)");
    const auto& nodes = *inst.nodes();
    std::vector<std::pair<std::size_t, std::size_t>> gab;
    std::map<TriangleRecord, int> votes;
    for (std::size_t u = 0; u < inst.size(); ++u) {
        const PointRecord self{inst.id(u), inst.point(u)};
        const auto nbrs = neighbour_records(inst, u);
        for (NodeId v : local_gabriel(self, nbrs)) {
            if (self.id < v) gab.emplace_back(u, nodes.at(v));
        }
        for (const auto& t : local_proposals(self, nbrs)) ++votes[t];
    }
    LocalizedDelaunay out{inst.nodes(), sorted_unique_edges(nodes, std::move(gab)), {}, SpannerGraph(inst.nodes())};
    for (const auto& [t, count] : votes) {
        if (count == 3) out.triangles.push_back(t);
    }
    for (const auto& e : out.gabriel) out.graph.add_edge(e.u, e.v, StepTag::Delaunay);
    for (const auto& t : out.triangles) {
        const auto a = nodes.at(t.corners[0].id), b = nodes.at(t.corners[1].id), c = nodes.at(t.corners[2].id);
        out.graph.add_edge(a, b, StepTag::Delaunay);
        out.graph.add_edge(b, c, StepTag::Delaunay);
        out.graph.add_edge(a, c, StepTag::Delaunay);
    }
    return out;
}

SpannerGraph ldel1(const QudgInstance& inst) { return ldel1_structure(inst).graph; }

std::vector<TriangleRecord> pldel_triangles(const LocalizedDelaunay& l1) {
    const auto& nodes = *l1.nodes;
    std::vector<TriangleRecord> out;
    for (const auto& t : l1.triangles) {
        bool killed = false;
        for (const auto& g : l1.gabriel) {
            const PointRecord a{nodes.id(g.u), nodes.point(g.u)}, b{nodes.id(g.v), nodes.point(g.v)};
            if (triangle_crosses_segment(t, a, b)) {
                killed = true;
                break;
            }
        }
        for (const auto& s : l1.triangles) {
            if (killed) break;
            if (triangles_cross(t, s) && triangle_loses(t, s)) killed = true;
        }
        if (!killed) out.push_back(t);
    }
    return out;
}

SpannerGraph pldel(const LocalizedDelaunay& l1) {
    const auto& nodes = *l1.nodes;
    SpannerGraph g(l1.nodes);
    for (const auto& e : l1.gabriel) g.add_edge(e.u, e.v, StepTag::Delaunay);
    for (const auto& t : pldel_triangles(l1)) {
        const auto a = nodes.at(t.corners[0].id), b = nodes.at(t.corners[1].id), c = nodes.at(t.corners[2].id);
        g.add_edge(a, b, StepTag::Delaunay);
        g.add_edge(b, c, StepTag::Delaunay);
        g.add_edge(a, c, StepTag::Delaunay);
    }
    return g;
}

SpannerGraph pldel(const SpannerGraph& l1, const QudgInstance& inst) {
    const auto structure = ldel1_structure(inst);
    if (!same_edge_set(structure.graph, l1)) {
        throw std::invalid_argument("pldel: graph is not the LDel^1 of this instance");
    }
    return pldel(structure);
}

}  // namespace lospan
