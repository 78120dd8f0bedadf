#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "lospan/covers.hpp"
#include "lospan/delaunay.hpp"
#include "lospan/graph.hpp"
#include "lospan/pipelines.hpp"

namespace lospan {

class LocalityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class RoundLimitError : public std::runtime_error {
public:
    RoundLimitError(int limit, std::string phase)
        : std::runtime_error("round limit " + std::to_string(limit) + " exceeded in phase '" + phase + "'"),
          phase_(std::move(phase)) {}
    const std::string& phase() const { return phase_; }

private:
    std::string phase_;
};

struct RoundRecord {
    int round = 0;
    std::string phase;
    std::size_t messages = 0;       // transmissions; a broadcast counts once
    std::size_t deliveries = 0;
    std::size_t max_payload_entries = 0;
};

struct RoundTrace {
    int rounds_elapsed = 0;
    std::vector<RoundRecord> rounds;

    std::size_t total_messages() const;
    std::size_t max_payload_entries() const;
    /// Rounds whose phase label contains `tag`.
    int rounds_in_phase(std::string_view tag) const;
    std::string to_text() const;
    std::string to_json() const;
};

/// Fault injection for the delivery layer.
enum class Fault {
    None,
    DropAll,          // every inbox arrives empty
    ForgeNonNeighbor, // a non-neighbour's message is slipped into an inbox
};

struct RunOptions {
    int max_rounds = 200;
    std::optional<std::uint64_t> schedule_seed;  // shuffles node processing order each round
    Fault fault = Fault::None;
};

template <class Msg>
struct Envelope {
    NodeId from;
    Msg msg;
};

template <class Msg>
class Outbox {
public:
    void broadcast(Msg m) { items_.push_back({std::nullopt, std::move(m)}); }
    void send(NodeId to, Msg m) { items_.push_back({to, std::move(m)}); }

    struct Item {
        std::optional<NodeId> to;
        Msg msg;
    };
    std::vector<Item>& items() { return items_; }

private:
    std::vector<Item> items_;
};

/// One node's program. The engine calls send() then receive() once per round
/// until done() holds.
template <class Msg>
class NodeProgram {
public:
    virtual ~NodeProgram() = default;
    virtual void send(int round, Outbox<Msg>& out) = 0;
    virtual void receive(int round, const std::vector<Envelope<Msg>>& inbox) = 0;
    virtual bool done() const = 0;
    virtual std::string phase(int round) const = 0;
};

template <class Msg>
using ProgramList = std::vector<std::unique_ptr<NodeProgram<Msg>>>;

/// Runs one program per instance node (programs[i] belongs to node index i)
/// in barrier-synchronised rounds. Messages sent in a round are delivered,
/// sorted by sender ID, before any node receives.
template <class Msg>
RoundTrace run_protocol(const QudgInstance& inst, ProgramList<Msg>& programs, const RunOptions& opt = {}) {
    const std::size_t n = inst.size();
    if (programs.size() != n) throw std::invalid_argument("run_protocol: one program per node required");
    RoundTrace trace;
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::mt19937_64 rng(opt.schedule_seed.value_or(0));

    auto all_done = [&] {
        return std::all_of(programs.begin(), programs.end(), [](const auto& p) { return p->done(); });
    };
    for (int t = 1; !all_done(); ++t) {
        std::size_t first_active = 0;
        while (programs[first_active]->done()) ++first_active;
        if (t > opt.max_rounds) throw RoundLimitError(opt.max_rounds, programs[first_active]->phase(t));
        if (opt.schedule_seed) std::shuffle(order.begin(), order.end(), rng);

        RoundRecord rec;
        rec.round = t;
        rec.phase = programs[first_active]->phase(t);
        std::vector<std::vector<Envelope<Msg>>> inbox(n);
        std::vector<bool> active(n);
        for (std::size_t i = 0; i < n; ++i) active[i] = !programs[i]->done();

        for (std::size_t u : order) {
            if (!active[u]) continue;
            Outbox<Msg> out;
            programs[u]->send(t, out);
            for (auto& item : out.items()) {
                ++rec.messages;
                rec.max_payload_entries = std::max(rec.max_payload_entries, item.msg.entries());
                if (item.to) {
                    const auto v = inst.nodes()->index_of(*item.to);
                    if (!v || !inst.has_edge(u, *v)) {
                        throw LocalityError("node " + std::to_string(inst.id(u).value) +
                                            " sent to non-neighbour " + std::to_string(item.to->value));
                    }
                    inbox[*v].push_back({inst.id(u), item.msg});
                } else {
                    for (auto v : inst.neighbors(u)) inbox[v].push_back({inst.id(u), item.msg});
                }
            }
        }

        if (opt.fault == Fault::DropAll) {
            for (auto& box : inbox) box.clear();
        } else if (opt.fault == Fault::ForgeNonNeighbor) {
            for (std::size_t v = 0; v < n; ++v) {
                for (std::size_t w = 0; w < n; ++w) {
                    if (w == v || inst.has_edge(v, w) || inbox[w].empty()) continue;
                    inbox[v].push_back({inst.id(w), inbox[w].front().msg});
                    break;
                }
            }
        }

        for (std::size_t v = 0; v < n; ++v) {
            for (const auto& env : inbox[v]) {
                const auto w = inst.nodes()->index_of(env.from);
                if (!w || !inst.has_edge(v, *w)) {
                    throw LocalityError("message from non-neighbour " + std::to_string(env.from.value) +
                                        " reached node " + std::to_string(inst.id(v).value));
                }
            }
            std::stable_sort(inbox[v].begin(), inbox[v].end(),
                             [](const auto& a, const auto& b) { return a.from < b.from; });
            rec.deliveries += inbox[v].size();
        }
        for (std::size_t u : order) {
            if (active[u]) programs[u]->receive(t, inbox[u]);
        }
        trace.rounds.push_back(std::move(rec));
        trace.rounds_elapsed = t;
    }
    return trace;
}

// ---- protocol messages ----

struct EdgeRecord {
    PointRecord a;  // smaller ID
    PointRecord b;

    friend bool operator==(const EdgeRecord& x, const EdgeRecord& y) { return x.a.id == y.a.id && x.b.id == y.b.id; }
    friend bool operator<(const EdgeRecord& x, const EdgeRecord& y) {
        return std::pair(x.a.id, x.b.id) < std::pair(y.a.id, y.b.id);
    }
};

EdgeRecord make_edge_record(PointRecord p, PointRecord q);

/// A candidate connector reported to a cluster center.
struct CandidateRecord {
    EdgeRecord edge;
    NodeId far_center;
};

/// Shared message for all protocols; unused sections stay empty.
struct Message {
    std::optional<PointRecord> point;
    std::optional<NodeId> center;           // sender's cluster center
    std::vector<NodeId> ids;                // Yao targets or survivors
    std::vector<NodeId> ball;               // r-ball of the sender
    std::vector<NodeId> centers;            // centers inside the sender's r-ball
    std::vector<EdgeRecord> edges;
    std::vector<TriangleRecord> triangles;
    std::vector<CandidateRecord> candidates;

    /// Identifiers, coordinate pairs and edge records, each counted once;
    /// a triangle counts as its three corners.
    std::size_t entries() const;
};

struct ProtocolRun {
    SpannerGraph output;
    RoundTrace trace;
};

struct CoverRun {
    ClusterCover cover;
    RoundTrace trace;
};

/// Every node broadcasts its ID once; returns the IDs each node heard.
RoundTrace broadcast_ids(const QudgInstance& inst, std::vector<std::vector<NodeId>>& heard,
                         const RunOptions& opt = {});

/// Cluster cover of h (whose short edges must be instance edges) computed by
/// node programs over the communication graph `inst`.
CoverRun distributed_cluster_cover(const QudgInstance& inst, const SpannerGraph& h, const GridSpec& grid,
                                   double r, const RunOptions& opt = {});

ProtocolRun distributed_los(const QudgInstance& inst, const LosParams& p, const RunOptions& opt = {});
ProtocolRun distributed_plos(const QudgInstance& inst, const PlosParams& p, const RunOptions& opt = {});

}  // namespace lospan
