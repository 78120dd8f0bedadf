#include "lospan/simulator.hpp"

#include <array>
#include <map>
#include <set>
#include <sstream>

namespace lospan {

std::size_t RoundTrace::total_messages() const {
    std::size_t m = 0;
    for (const auto& r : rounds) m += r.messages;
    return m;
}

std::size_t RoundTrace::max_payload_entries() const {
    std::size_t m = 0;
    for (const auto& r : rounds) m = std::max(m, r.max_payload_entries);
    return m;
}

int RoundTrace::rounds_in_phase(std::string_view tag) const {
    int c = 0;
    for (const auto& r : rounds) {
        if (r.phase.find(tag) != std::string::npos) ++c;
    }
    return c;
}

std::string RoundTrace::to_text() const {
    std::ostringstream os;
    for (const auto& r : rounds) {
        os << "round " << r.round << " msgs " << r.messages << " max_payload_entries " << r.max_payload_entries
           << "\n";
    }
    os << "summary rounds " << rounds_elapsed << " total_msgs " << total_messages() << " max_payload_entries "
       << max_payload_entries() << "\n";
    return os.str();
}

std::string RoundTrace::to_json() const {
    std::ostringstream os;
    os << "{\"rounds_elapsed\":" << rounds_elapsed << ",\"total_messages\":" << total_messages()
       << ",\"max_payload_entries\":" << max_payload_entries() << ",\"rounds\":[";
    for (std::size_t i = 0; i < rounds.size(); ++i) {
        const auto& r = rounds[i];
        if (i) os << ",";
        os << "{\"round\":" << r.round << ",\"phase\":\"" << r.phase << "\",\"msgs\":" << r.messages
           << ",\"deliveries\":" << r.deliveries << ",\"max_payload_entries\":" << r.max_payload_entries << "}";
    }
    os << "]}";
    return os.str();
}

EdgeRecord make_edge_record(PointRecord p, PointRecord q) {
    if (q.id < p.id) std::swap(p, q);
    return {p, q};
}

std::size_t Message::entries() const {
    return (point ? 1 : 0) + (center ? 1 : 0) + ids.size() + ball.size() + centers.size() + edges.size() +
           3 * triangles.size() + 2 * candidates.size();
}

namespace {

using Key = std::pair<NodeId, NodeId>;
using Inbox = std::vector<Envelope<Message>>;
constexpr std::array<int, 4> kOrder{0, 1, 2, 3};

Key key_of(const EdgeRecord& e) { return {e.a.id, e.b.id}; }

EdgeId id_of(const EdgeRecord& e) { return undirected_edge_id(dist(e.a.p, e.b.p), e.a.id, e.b.id); }

NodeSetPtr make_nodes(const std::map<NodeId, Point>& pts) {
    std::vector<NodeId> ids;
    std::vector<Point> ps;
    for (const auto& [id, p] : pts) {
        ids.push_back(id);
        ps.push_back(p);
    }
    return std::make_shared<NodeSet>(std::move(ids), std::move(ps));
}

bool share_cell(const GridSpec& g, const Point& a, const Point& b) {
    for (const auto& c : g.cells_of(a)) {
        if (g.contains(c, b)) return true;
    }
    return false;
}

/// Node state common to every protocol: own record and the neighbour table
/// learned in the first round.
class LocalNode : public NodeProgram<Message> {
public:
    explicit LocalNode(PointRecord self) : self_(self) {}
    bool done() const override { return done_; }

protected:
    void learn_neighbours(const Inbox& inbox) {
        for (const auto& env : inbox) {
            if (!env.msg.point || env.msg.point->id != env.from) {
                throw LocalityError("first-round message without sender coordinates");
            }
            nbrs_[env.from] = env.msg.point->p;
        }
    }
    void check_senders(const Inbox& inbox) const {
        for (const auto& env : inbox) {
            if (!nbrs_.count(env.from)) {
                throw LocalityError("node " + std::to_string(self_.id.value) + " heard from unknown node " +
                                    std::to_string(env.from.value));
            }
        }
    }
    PointRecord record(NodeId id) const { return id == self_.id ? self_ : PointRecord{id, nbrs_.at(id)}; }
    std::vector<PointRecord> neighbour_records() const {
        std::vector<PointRecord> out;
        for (const auto& [id, p] : nbrs_) out.push_back({id, p});
        return out;
    }

    PointRecord self_;
    std::map<NodeId, Point> nbrs_;
    bool done_ = false;
};

// ---- cluster cover, shared by all three protocols ----

class CoverAgent {
public:
    CoverAgent(PointRecord self, GridSpec grid, double r) : self_(self), grid_(grid), r_(r) {}

    void set_known(const std::map<NodeId, Point>* nbrs) { nbrs_ = nbrs; }

    /// Incident host edges; only those of length <= r are kept.
    void set_host_edges(const std::vector<EdgeRecord>& incident) {
        for (const auto& e : incident) {
            if (id_of(e).length <= r_) own_short_.push_back(e);
        }
        for (const auto& e : own_short_) short_.insert({key_of(e), e});
    }
    const std::vector<EdgeRecord>& own_short_edges() const { return own_short_; }
    void add_short_edges(const std::vector<EdgeRecord>& edges) {
        for (const auto& e : edges) short_.insert({key_of(e), e});
    }

    void compute_ball() {
        std::map<NodeId, Point> pts{{self_.id, self_.p}};
        for (const auto& [k, e] : short_) {
            pts[e.a.id] = e.a.p;
            pts[e.b.id] = e.b.p;
        }
        auto nodes = make_nodes(pts);
        SpannerGraph g(nodes);
        for (const auto& [k, e] : short_) g.add_edge(nodes->at(e.a.id), nodes->at(e.b.id), StepTag::Input);
        for (auto x : r_ball(g, nodes->at(self_.id), r_)) ball_.push_back(nodes->id(x));
        balls_[self_.id] = ball_;
    }
    const std::vector<NodeId>& ball() const { return ball_; }
    void add_ball(NodeId from, std::vector<NodeId> b) { balls_[from] = std::move(b); }

    std::optional<NodeId> status() const { return status_of(self_.id); }
    void add_status(NodeId from, std::optional<NodeId> c) {
        if (c) status_[from] = *c;
    }
    std::vector<NodeId> centers_in_ball() const {
        std::vector<NodeId> out;
        for (NodeId x : ball_) {
            auto s = status_of(x);
            if (s && *s == x) out.push_back(x);
        }
        return out;
    }
    void add_centers(NodeId from, std::vector<NodeId> c) { centers_[from] = std::move(c); }

    /// Runs iteration s for this node's cell of parity kOrder[s], if any.
    void iterate(int s) {
        std::optional<CellIndex> cell;
        for (const auto& c : grid_.cells_of(self_.p)) {
            if (parity_class(c) == kOrder[static_cast<std::size_t>(s)]) cell = c;
        }
        centers_[self_.id] = centers_in_ball();
        if (!cell) return;
        CoverCellInput in;
        in.members.push_back(self_.id);
        for (const auto& [id, p] : *nbrs_) {
            if (grid_.contains(*cell, p)) in.members.push_back(id);
        }
        std::sort(in.members.begin(), in.members.end());
        for (NodeId m : in.members) {
            in.ball[m] = balls_.at(m);
            if (auto st = status_of(m)) in.center_of[m] = *st;
            if (s > 0) {
                for (NodeId x : centers_.at(m)) in.center_of[x] = x;
            }
        }
        for (auto [v, c] : cover_cell_step(in)) status_[v] = c;
    }

private:
    std::optional<NodeId> status_of(NodeId x) const {
        auto it = status_.find(x);
        if (it == status_.end()) return std::nullopt;
        return it->second;
    }

    PointRecord self_;
    GridSpec grid_;
    double r_;
    const std::map<NodeId, Point>* nbrs_ = nullptr;
    std::vector<EdgeRecord> own_short_;
    std::map<Key, EdgeRecord> short_;
    std::vector<NodeId> ball_;
    std::map<NodeId, std::vector<NodeId>> balls_;
    std::map<NodeId, NodeId> status_;
    std::map<NodeId, std::vector<NodeId>> centers_;
};

/// Drives the cover schedule from round `start`: short edges, r-balls, then
/// three iterations of (status, centers). Occupies rounds start..start+7.
struct CoverSchedule {
    int start = 1;

    bool owns(int t) const { return t >= start && t < start + 8; }
    int last() const { return start + 7; }

    void fill(int t, const CoverAgent& a, Message& m) const {
        const int k = t - start;
        if (k == 0) {
            m.edges = a.own_short_edges();
        } else if (k == 1) {
            m.ball = a.ball();
        } else if (k % 2 == 0) {
            m.center = a.status();
        } else {
            m.centers = a.centers_in_ball();
        }
    }
    void absorb(int t, CoverAgent& a, const Inbox& inbox) const {
        const int k = t - start;
        for (const auto& env : inbox) {
            if (k == 0) {
                a.add_short_edges(env.msg.edges);
            } else if (k == 1) {
                a.add_ball(env.from, env.msg.ball);
            } else if (k % 2 == 0) {
                a.add_status(env.from, env.msg.center);
            } else {
                a.add_centers(env.from, env.msg.centers);
            }
        }
        if (k == 0) a.compute_ball();
        if (k == 1) a.iterate(0);
        if (k >= 3 && k % 2 == 1) a.iterate((k - 1) / 2);
    }
};

SpannerGraph merge_outputs(const NodeSetPtr& nodes, const std::vector<std::vector<std::tuple<NodeId, NodeId, StepTag>>>& outs,
                           const std::vector<StepTag>& tag_order) {
    SpannerGraph g(nodes);
    for (StepTag tag : tag_order) {
        for (const auto& o : outs) {
            for (const auto& [a, b, t] : o) {
                if (t == tag) g.add_edge(nodes->at(a), nodes->at(b), t);
            }
        }
    }
    return g;
}

// ---- broadcast IDs ----

class BroadcastNode : public LocalNode {
public:
    BroadcastNode(PointRecord self, std::vector<NodeId>* heard) : LocalNode(self), heard_(heard) {}
    void send(int, Outbox<Message>& out) override {
        Message m;
        m.point = self_;
        out.broadcast(std::move(m));
    }
    void receive(int, const Inbox& inbox) override {
        for (const auto& env : inbox) heard_->push_back(env.from);
        done_ = true;
    }
    std::string phase(int) const override { return "broadcast-id"; }

private:
    std::vector<NodeId>* heard_;
};

// ---- standalone cluster cover ----

class CoverNode : public LocalNode {
public:
    CoverNode(PointRecord self, GridSpec grid, double r, std::vector<EdgeRecord> incident)
        : LocalNode(self), agent_(self, grid, r) {
        agent_.set_known(&nbrs_);
        agent_.set_host_edges(incident);
    }
    void send(int t, Outbox<Message>& out) override {
        Message m;
        if (t == 1) m.point = self_;
        sched_.fill(t, agent_, m);
        out.broadcast(std::move(m));
    }
    void receive(int t, const Inbox& inbox) override {
        if (t == 1) learn_neighbours(inbox);
        check_senders(inbox);
        sched_.absorb(t, agent_, inbox);
        if (t == sched_.last()) done_ = true;
    }
    std::string phase(int) const override { return "cover"; }
    std::optional<NodeId> center() const { return agent_.status(); }

private:
    CoverAgent agent_;
    CoverSchedule sched_{1};
};

// ---- LOS ----

class LosNode : public LocalNode {
public:
    LosNode(PointRecord self, const LosParams& p)
        : LocalNode(self), p_(p), grid_(p.beta, p.delta), agent_(self, grid_, p.r) {
        agent_.set_known(&nbrs_);
    }

    int last_round() const { return p_.mode == ConnectorMode::Literal ? 10 : 11; }

    std::string phase(int t) const override {
        if (t == 1) return "coords";
        if (t == 2) return "yao+cover";
        if (t == 3) return "reverse-yao+cover";
        if (t <= 9) return "cover";
        return "connect";
    }

    void send(int t, Outbox<Message>& out) override {
        Message m;
        if (t == 1) {
            m.point = self_;
        } else if (t == 2) {
            m.ids = yao_targets_;
        } else if (t == 3) {
            m.ids = survivors_;
        } else if (t == 10) {
            m.center = agent_.status();
        } else if (t == 11) {
            const NodeId c = *agent_.status();
            if (c == self_.id || candidates_.empty()) return;
            m.candidates = candidates_;
            out.send(c, std::move(m));
            return;
        }
        if (cover_.owns(t)) cover_.fill(t, agent_, m);
        out.broadcast(std::move(m));
    }

    void receive(int t, const Inbox& inbox) override {
        if (t == 1) {
            learn_neighbours(inbox);
            if (nbrs_.empty()) {
                done_ = true;
                return;
            }
            local_steps();
            return;
        }
        check_senders(inbox);
        if (t == 2) {
            std::vector<NodeId> sources;
            for (const auto& env : inbox) {
                if (std::binary_search(env.msg.ids.begin(), env.msg.ids.end(), self_.id)) sources.push_back(env.from);
            }
            reverse_yao_step(sources);
        } else if (t == 3) {
            for (const auto& env : inbox) {
                if (std::binary_search(env.msg.ids.begin(), env.msg.ids.end(), self_.id)) eyy_.insert(env.from);
            }
        }
        if (cover_.owns(t)) cover_.absorb(t, agent_, inbox);
        if (t == 10) {
            std::map<NodeId, NodeId> centre_of;
            for (const auto& env : inbox) {
                if (env.msg.center) centre_of[env.from] = *env.msg.center;
            }
            const NodeId mine = *agent_.status();
            for (NodeId v : eyy_) {
                const NodeId cv = centre_of.at(v);
                if (p_.mode == ConnectorMode::Literal) {
                    if (mine == self_.id && cv == v) output_.emplace_back(self_.id, v, StepTag::YaoConnector);
                } else if (cv != mine) {
                    candidates_.push_back({make_edge_record(self_, record(v)), cv});
                }
            }
        }
        if (t == 11 && *agent_.status() == self_.id) {
            std::vector<CandidateRecord> all = candidates_;
            for (const auto& env : inbox) all.insert(all.end(), env.msg.candidates.begin(), env.msg.candidates.end());
            std::map<NodeId, CandidateRecord> best;
            for (const auto& c : all) {
                auto [it, fresh] = best.try_emplace(c.far_center, c);
                if (!fresh && id_of(c.edge) < id_of(it->second.edge)) it->second = c;
            }
            for (const auto& [fc, c] : best) output_.emplace_back(c.edge.a.id, c.edge.b.id, StepTag::YaoConnector);
        }
        if (t == last_round()) done_ = true;
    }

    const std::vector<std::tuple<NodeId, NodeId, StepTag>>& output() const { return output_; }

private:
    void local_steps() {
        std::map<NodeId, Point> pts = nbrs_;
        pts[self_.id] = self_.p;
        auto nodes = make_nodes(pts);
        const auto me = nodes->at(self_.id);

        // step 1 on each of this node's cells
        std::set<NodeId> h_nbrs;
        for (const auto& cell : grid_.cells_of(self_.p)) {
            std::vector<std::size_t> members;
            for (std::size_t x = 0; x < nodes->size(); ++x) {
                if (grid_.contains(cell, nodes->point(x))) members.push_back(x);
            }
            std::vector<Edge> clique;
            for (std::size_t a = 0; a < members.size(); ++a) {
                for (std::size_t b = a + 1; b < members.size(); ++b) {
                    auto u = members[a], v = members[b];
                    if (nodes->id(u) > nodes->id(v)) std::swap(u, v);
                    clique.push_back({u, v, nodes->edge_id(u, v)});
                }
            }
            auto hi = greedy_spanner(nodes, std::move(clique), p_.eps, StepTag::CliqueSpanner);
            for (const auto& arc : hi.neighbors(me)) h_nbrs.insert(nodes->id(arc.to));
        }
        std::vector<EdgeRecord> incident;
        for (NodeId v : h_nbrs) {
            incident.push_back(make_edge_record(self_, record(v)));
            output_.emplace_back(std::min(self_.id, v), std::max(self_.id, v), StepTag::CliqueSpanner);
        }
        agent_.set_host_edges(incident);

        // step 2: Yao over incident edges that share no cell
        const ConeSystem cones(p_.k, self_.p);
        std::map<int, std::pair<EdgeId, NodeId>> best;
        for (const auto& [v, pv] : nbrs_) {
            if (share_cell(grid_, self_.p, pv)) continue;
            e0_nbrs_.insert(v);
            const EdgeId id = undirected_edge_id(dist(self_.p, pv), self_.id, v);
            const int c = cone_index(cones, pv);
            auto [it, fresh] = best.try_emplace(c, id, v);
            if (!fresh && id < it->second.first) it->second = {id, v};
        }
        for (const auto& [c, sel] : best) yao_targets_.push_back(sel.second);
        std::sort(yao_targets_.begin(), yao_targets_.end());
    }

    void reverse_yao_step(const std::vector<NodeId>& sources) {
        const ConeSystem cones(p_.k, self_.p);
        std::map<int, std::pair<EdgeId, NodeId>> best;
        for (NodeId s : sources) {
            const Point& ps = nbrs_.at(s);
            const EdgeId id = undirected_edge_id(dist(self_.p, ps), self_.id, s);
            const int c = cone_index(cones, ps);
            auto [it, fresh] = best.try_emplace(c, id, s);
            if (!fresh && id < it->second.first) it->second = {id, s};
        }
        for (const auto& [c, sel] : best) {
            survivors_.push_back(sel.second);
            eyy_.insert(sel.second);
        }
        std::sort(survivors_.begin(), survivors_.end());
    }

    LosParams p_;
    GridSpec grid_;
    CoverAgent agent_;
    CoverSchedule cover_{2};
    std::set<NodeId> e0_nbrs_;
    std::vector<NodeId> yao_targets_;
    std::vector<NodeId> survivors_;
    std::set<NodeId> eyy_;
    std::vector<CandidateRecord> candidates_;
    std::vector<std::tuple<NodeId, NodeId, StepTag>> output_;
};

// ---- PLOS ----
//
// Schedule:
//   1        coordinates
//   2-4      localized Delaunay (proposals, accepted triangles + Gabriel edges, kills)
//   5        incident structure edges
//   6        per-cell ordered Yao edges
//   7-12     gather of YDel edges around each cell
//   then per parity class: local greedy, followed by a 6-round flood of eliminations
//   (after the last class no flood is needed)
//   31-38    cluster cover
//   39       final status
//   40       candidates to centers (representative mode)

constexpr int kHops = 6;
constexpr int kGatherStart = 7;
constexpr int kFirstFlood = kGatherStart + kHops;       // 13
constexpr int kCoverStart = kFirstFlood + 3 * kHops;    // 31

class PlosNode : public LocalNode {
public:
    PlosNode(PointRecord self, const PlosParams& p)
        : LocalNode(self), p_(p), grid_(p.beta, p.delta), agent_(self, grid_, p.r) {
        agent_.set_known(&nbrs_);
        my_cells_ = grid_.cells_of(self_.p);
    }

    int last_round() const { return cover_.last() + (p_.mode == ConnectorMode::Literal ? 1 : 2); }

    std::string phase(int t) const override {
        if (t == 1) return "pldel:coords";
        if (t <= 4) return "pldel";
        if (t == 5) return "structure";
        if (t == 6) return "ordered-yao";
        if (t < kFirstFlood) return "gather";
        if (t < kCoverStart) return "eliminate";
        if (cover_.owns(t)) return "cover";
        return "connect";
    }

    void send(int t, Outbox<Message>& out) override {
        Message m;
        if (t == 1) {
            m.point = self_;
        } else if (t == 2) {
            m.triangles = proposals_;
        } else if (t == 3) {
            m.triangles = accepted_tris_;
            for (NodeId v : gabriel_) m.edges.push_back(make_edge_record(self_, record(v)));
        } else if (t == 4) {
            m.triangles = killed_;
        } else if (t == 5) {
            m.edges = structure_;
        } else if (t == 6) {
            for (const auto& [k, e] : computed_) m.edges.push_back(e);
        } else if (t < kCoverStart) {
            m.edges.swap(forward_);
        } else if (cover_.owns(t)) {
            cover_.fill(t, agent_, m);
        } else if (t == cover_.last() + 1) {
            m.center = agent_.status();
        } else {
            const NodeId c = *agent_.status();
            if (c == self_.id || candidates_.empty()) return;
            m.candidates = candidates_;
            out.send(c, std::move(m));
            return;
        }
        out.broadcast(std::move(m));
    }

    void receive(int t, const Inbox& inbox) override {
        if (t == 1) {
            learn_neighbours(inbox);
            points_ = nbrs_;
            points_[self_.id] = self_.p;
            if (nbrs_.empty()) {
                done_ = true;
                return;
            }
            const auto nb = neighbour_records();
            gabriel_ = local_gabriel(self_, nb);
            proposals_ = local_proposals(self_, nb);
            std::sort(proposals_.begin(), proposals_.end());
            return;
        }
        check_senders(inbox);
        if (t == 2) {
            for (const auto& tri : proposals_) {
                int votes = 1;
                for (const auto& env : inbox) {
                    const auto ids = tri.ids();
                    if (std::find(ids.begin(), ids.end(), env.from) == ids.end()) continue;
                    if (std::find(env.msg.triangles.begin(), env.msg.triangles.end(), tri) != env.msg.triangles.end()) {
                        ++votes;
                    }
                }
                if (votes == 3) accepted_tris_.push_back(tri);
            }
        } else if (t == 3) {
            std::set<TriangleRecord> tris(accepted_tris_.begin(), accepted_tris_.end());
            std::map<Key, EdgeRecord> gab;
            for (NodeId v : gabriel_) {
                auto e = make_edge_record(self_, record(v));
                gab.insert({key_of(e), e});
            }
            for (const auto& env : inbox) {
                tris.insert(env.msg.triangles.begin(), env.msg.triangles.end());
                for (const auto& e : env.msg.edges) gab.insert({key_of(e), e});
            }
            for (const auto& tri : accepted_tris_) {
                bool dead = false;
                for (const auto& [k, g] : gab) {
                    if (triangle_crosses_segment(tri, g.a, g.b)) {
                        dead = true;
                        break;
                    }
                }
                for (const auto& s : tris) {
                    if (dead) break;
                    if (triangles_cross(tri, s) && triangle_loses(tri, s)) dead = true;
                }
                if (dead) killed_.push_back(tri);
            }
        } else if (t == 4) {
            std::set<TriangleRecord> dead(killed_.begin(), killed_.end());
            for (const auto& env : inbox) dead.insert(env.msg.triangles.begin(), env.msg.triangles.end());
            std::set<NodeId> adj(gabriel_.begin(), gabriel_.end());
            for (const auto& tri : accepted_tris_) {
                if (dead.count(tri)) continue;
                for (const auto& c : tri.corners) {
                    if (c.id != self_.id) adj.insert(c.id);
                }
            }
            for (NodeId v : adj) structure_.push_back(make_edge_record(self_, record(v)));
        } else if (t == 5) {
            std::map<Key, EdgeRecord> all;
            for (const auto& e : structure_) all.insert({key_of(e), e});
            for (const auto& env : inbox) {
                for (const auto& e : env.msg.edges) all.insert({key_of(e), e});
            }
            ordered_yao_step(all);
        } else if (t == 6) {
            for (const auto& [k, e] : computed_) learn_edge(e);
            for (const auto& env : inbox) {
                for (const auto& e : env.msg.edges) learn_edge(e);
            }
            for (const auto& [k, e] : ydel_) {
                if (relevant(e)) queue_forward(e);
            }
        } else if (t < kFirstFlood) {
            for (const auto& env : inbox) {
                for (const auto& e : env.msg.edges) {
                    if (learn_edge(e) && relevant(e)) queue_forward(e);
                }
            }
            if (t == kFirstFlood - 1) greedy_iteration(0);
        } else if (t < kCoverStart) {
            for (const auto& env : inbox) {
                for (const auto& e : env.msg.edges) {
                    if (eliminated_.insert(key_of(e)).second && relevant(e)) queue_forward(e);
                }
            }
            const int k = t - kFirstFlood + 1;
            if (k % kHops == 0) greedy_iteration(k / kHops);
            if (t == kCoverStart - 1) prepare_cover();
        } else if (cover_.owns(t)) {
            cover_.absorb(t, agent_, inbox);
        } else if (t == cover_.last() + 1) {
            connector_candidates(inbox);
        } else if (*agent_.status() == self_.id) {
            std::vector<CandidateRecord> all = candidates_;
            for (const auto& env : inbox) all.insert(all.end(), env.msg.candidates.begin(), env.msg.candidates.end());
            std::map<NodeId, CandidateRecord> best;
            for (const auto& c : all) {
                auto [it, fresh] = best.try_emplace(c.far_center, c);
                if (!fresh && id_of(c.edge) < id_of(it->second.edge)) it->second = c;
            }
            for (const auto& [fc, c] : best) output_.emplace_back(c.edge.a.id, c.edge.b.id, StepTag::CellConnector);
        }
        if (t == last_round()) done_ = true;
    }

    const std::vector<std::tuple<NodeId, NodeId, StepTag>>& output() const { return output_; }

private:
    void ordered_yao_step(const std::map<Key, EdgeRecord>& structure) {
        for (const auto& cell : my_cells_) {
            std::map<NodeId, Point> pts;
            std::vector<EdgeRecord> ei;
            for (const auto& [k, e] : structure) {
                if (grid_.contains(cell, e.a.p) || grid_.contains(cell, e.b.p)) {
                    ei.push_back(e);
                    pts[e.a.id] = e.a.p;
                    pts[e.b.id] = e.b.p;
                }
            }
            if (ei.empty()) continue;
            auto nodes = make_nodes(pts);
            SpannerGraph gi(nodes);
            for (const auto& e : ei) gi.add_edge(nodes->at(e.a.id), nodes->at(e.b.id), StepTag::Delaunay);
            for (const auto& te : ordered_yao(gi).edges()) {
                auto e = make_edge_record({nodes->id(te.edge.u), nodes->point(te.edge.u)},
                                          {nodes->id(te.edge.v), nodes->point(te.edge.v)});
                computed_.insert({key_of(e), e});
            }
        }
    }

    bool learn_edge(const EdgeRecord& e) {
        points_[e.a.id] = e.a.p;
        points_[e.b.id] = e.b.p;
        return ydel_.insert({key_of(e), e}).second;
    }

    bool near_me(const Point& q) const {
        for (const auto& c : grid_.cells_of(q)) {
            for (const auto& m : my_cells_) {
                if (std::abs(c.i - m.i) <= 2 && std::abs(c.j - m.j) <= 2) return true;
            }
        }
        return false;
    }
    bool relevant(const EdgeRecord& e) const { return near_me(e.a.p) && near_me(e.b.p); }

    void queue_forward(const EdgeRecord& e) { forward_.push_back(e); }

    void greedy_iteration(int s) {
        forward_.clear();
        const int parity = kOrder[static_cast<std::size_t>(s)];
        std::optional<CellIndex> mine;
        for (const auto& c : my_cells_) {
            if (parity_class(c) == parity) mine = c;
        }
        if (!mine) return;
        auto nodes = make_nodes(points_);
        const auto cover = grid_cover(nodes, grid_);
        SpannerGraph q(nodes);
        std::vector<Edge> todo;
        for (const auto& [k, e] : ydel_) {
            if (eliminated_.count(k)) continue;
            const auto u = nodes->at(e.a.id), v = nodes->at(e.b.id);
            const auto cell = assigned_cell(cover, u, v);
            if (cell && parity_class(*cell) == parity) {
                if (*cell == *mine) todo.push_back({u, v, nodes->edge_id(u, v)});
                continue;
            }
            q.add_edge(u, v, StepTag::OrderedYao);
        }
        std::sort(todo.begin(), todo.end(), [](const Edge& a, const Edge& b) { return a.id < b.id; });
        for (const auto& e : todo) {
            const auto rec = make_edge_record({nodes->id(e.u), nodes->point(e.u)}, {nodes->id(e.v), nodes->point(e.v)});
            if (restricted_sp_query(q, e.u, e.v, p_.eps, cover, *mine)) {
                eliminated_.insert(key_of(rec));
                queue_forward(rec);
            } else {
                q.add_edge(e.u, e.v, StepTag::CellGreedy);
                accepted_.insert(key_of(rec));
                if (rec.a.id == self_.id || rec.b.id == self_.id) {
                    output_.emplace_back(rec.a.id, rec.b.id, StepTag::CellGreedy);
                }
            }
        }
    }

    std::vector<EdgeRecord> incident_ydel() const {
        std::vector<EdgeRecord> out;
        for (const auto& [k, e] : ydel_) {
            if ((e.a.id == self_.id || e.b.id == self_.id) && !eliminated_.count(k)) out.push_back(e);
        }
        return out;
    }

    void prepare_cover() {
        forward_.clear();
        std::vector<EdgeRecord> host;
        if (p_.host == ClusterHost::YDel) {
            host = incident_ydel();
        } else if (p_.host == ClusterHost::Spanner) {
            for (const auto& e : incident_ydel()) {
                if (accepted_.count(key_of(e))) host.push_back(e);
            }
        } else {
            host = structure_;
        }
        agent_.set_host_edges(host);
    }

    void connector_candidates(const Inbox& inbox) {
        std::map<NodeId, NodeId> centre_of;
        for (const auto& env : inbox) {
            if (env.msg.center) centre_of[env.from] = *env.msg.center;
        }
        const NodeId mine = *agent_.status();
        for (const auto& e : incident_ydel()) {
            if (share_cell(grid_, e.a.p, e.b.p)) continue;
            const NodeId v = e.a.id == self_.id ? e.b.id : e.a.id;
            const NodeId cv = centre_of.at(v);
            if (p_.mode == ConnectorMode::Literal) {
                if (mine == self_.id && cv == v) output_.emplace_back(e.a.id, e.b.id, StepTag::CellConnector);
            } else if (cv != mine) {
                candidates_.push_back({e, cv});
            }
        }
    }

    PlosParams p_;
    GridSpec grid_;
    CoverAgent agent_;
    CoverSchedule cover_{kCoverStart};
    std::vector<CellIndex> my_cells_;
    std::vector<NodeId> gabriel_;
    std::vector<TriangleRecord> proposals_;
    std::vector<TriangleRecord> accepted_tris_;
    std::vector<TriangleRecord> killed_;
    std::vector<EdgeRecord> structure_;
    std::map<Key, EdgeRecord> computed_;
    std::map<NodeId, Point> points_;
    std::map<Key, EdgeRecord> ydel_;
    std::set<Key> eliminated_;
    std::set<Key> accepted_;
    std::vector<EdgeRecord> forward_;
    std::vector<CandidateRecord> candidates_;
    std::vector<std::tuple<NodeId, NodeId, StepTag>> output_;
};

template <class Node, class... Args>
std::vector<Node*> install(const QudgInstance& inst, ProgramList<Message>& progs, Args&&... args) {
    std::vector<Node*> raw;
    for (std::size_t u = 0; u < inst.size(); ++u) {
        auto node = std::make_unique<Node>(PointRecord{inst.id(u), inst.point(u)}, args...);
        raw.push_back(node.get());
        progs.push_back(std::move(node));
    }
    return raw;
}

}  // namespace

RoundTrace broadcast_ids(const QudgInstance& inst, std::vector<std::vector<NodeId>>& heard, const RunOptions& opt) {
    heard.assign(inst.size(), {});
    ProgramList<Message> progs;
    for (std::size_t u = 0; u < inst.size(); ++u) {
        progs.push_back(std::make_unique<BroadcastNode>(PointRecord{inst.id(u), inst.point(u)}, &heard[u]));
    }
    return run_protocol(inst, progs, opt);
}

CoverRun distributed_cluster_cover(const QudgInstance& inst, const SpannerGraph& h, const GridSpec& grid, double r,
                                   const RunOptions& opt) {
    if (!(r > 0.0)) throw std::invalid_argument("cluster cover radius must be positive");
    if (h.nodes() != inst.nodes()) throw std::invalid_argument("distributed_cluster_cover: node sets differ");
    ProgramList<Message> progs;
    std::vector<CoverNode*> raw;
    const auto& nodes = *inst.nodes();
    for (std::size_t u = 0; u < inst.size(); ++u) {
        std::vector<EdgeRecord> incident;
        for (const auto& arc : h.neighbors(u)) {
            if (arc.length <= r && !inst.has_edge(u, arc.to)) {
                throw std::invalid_argument("distributed_cluster_cover: short host edge is not a link");
            }
            incident.push_back(make_edge_record({nodes.id(u), nodes.point(u)}, {nodes.id(arc.to), nodes.point(arc.to)}));
        }
        auto node = std::make_unique<CoverNode>(PointRecord{nodes.id(u), nodes.point(u)}, grid, r, std::move(incident));
        raw.push_back(node.get());
        progs.push_back(std::move(node));
    }
    CoverRun run{ClusterCover{r, std::vector<std::size_t>(inst.size())}, run_protocol(inst, progs, opt)};
    for (std::size_t u = 0; u < inst.size(); ++u) {
        auto c = raw[u]->center();
        if (!c) throw std::logic_error("distributed cluster cover left a node uncovered");
        run.cover.center_of[u] = nodes.at(*c);
    }
    return run;
}

ProtocolRun distributed_los(const QudgInstance& inst, const LosParams& p, const RunOptions& opt) {
    p.validate();
    ProgramList<Message> progs;
    auto raw = install<LosNode>(inst, progs, p);
    auto trace = run_protocol(inst, progs, opt);
    std::vector<std::vector<std::tuple<NodeId, NodeId, StepTag>>> outs;
    for (auto* node : raw) outs.push_back(node->output());
    return {merge_outputs(inst.nodes(), outs, {StepTag::CliqueSpanner, StepTag::YaoConnector}), std::move(trace)};
}

ProtocolRun distributed_plos(const QudgInstance& inst, const PlosParams& p, const RunOptions& opt) {
    p.validate();
    if (inst.alpha() != 1.0) throw std::invalid_argument("distributed_plos: requires a unit disk instance");
    ProgramList<Message> progs;
    auto raw = install<PlosNode>(inst, progs, p);
    auto trace = run_protocol(inst, progs, opt);
    std::vector<std::vector<std::tuple<NodeId, NodeId, StepTag>>> outs;
    for (auto* node : raw) outs.push_back(node->output());
    return {merge_outputs(inst.nodes(), outs, {StepTag::CellGreedy, StepTag::CellConnector}), std::move(trace)};
}

}  // namespace lospan
