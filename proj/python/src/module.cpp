// Python bindings for the spanner pipelines, the simulator and the checks.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lospan/delaunay.hpp"
#include "lospan/kernels.hpp"
#include "lospan/pipelines.hpp"
#include "lospan/simulator.hpp"
#include "lospan/verify.hpp"

namespace py = pybind11;
using namespace lospan;

namespace {

using EdgeTuple = std::tuple<std::uint32_t, std::uint32_t, double, std::string>;

std::vector<EdgeTuple> edge_tuples(const SpannerGraph& g) {
    std::vector<EdgeTuple> out;
    for (const auto& te : g.edges())
        out.emplace_back(te.edge.id.src.value, te.edge.id.dst.value, te.edge.id.length, std::string(to_string(te.tag)));
    return out;
}

QudgInstance make_instance(const std::vector<std::pair<double, double>>& pts, double alpha,
                           const std::string& adversary, std::uint64_t seed,
                           std::optional<std::vector<std::uint32_t>> ids) {
    std::vector<Point> points;
    for (auto [x, y] : pts) points.emplace_back(x, y);
    const auto pol = AdversaryPolicy::parse(adversary);
    if (!ids) return build_qudg(points, alpha, pol, seed);
    std::vector<NodeId> nid;
    for (auto v : *ids) nid.push_back({v});
    return build_qudg(std::move(nid), points, alpha, pol, seed);
}

}  // namespace

PYBIND11_MODULE(_lospan, m) {
    m.doc() = "Localized LOS and PLOS spanners for quasi unit disk graphs";

    py::register_exception<DisconnectedError>(m, "DisconnectedError", PyExc_ValueError);
    py::register_exception<NotASpannerError>(m, "NotASpannerError", PyExc_ValueError);
    py::register_exception<LocalityError>(m, "LocalityError", PyExc_RuntimeError);
    py::register_exception<RoundLimitError>(m, "RoundLimitError", PyExc_RuntimeError);

    py::enum_<StepTag>(m, "StepTag")
        .value("Input", StepTag::Input)
        .value("CliqueSpanner", StepTag::CliqueSpanner)
        .value("YaoConnector", StepTag::YaoConnector)
        .value("Delaunay", StepTag::Delaunay)
        .value("OrderedYao", StepTag::OrderedYao)
        .value("CellGreedy", StepTag::CellGreedy)
        .value("CellConnector", StepTag::CellConnector)
        .value("Greedy", StepTag::Greedy)
        .value("Tree", StepTag::Tree);

    py::class_<SpannerGraph>(m, "Graph")
        .def_property_readonly("node_count", &SpannerGraph::node_count)
        .def_property_readonly("edge_count", &SpannerGraph::edge_count)
        .def("edges", &edge_tuples, "(id1, id2, length, step-tag) tuples in edge-ID order")
        .def("has_edge",
             [](const SpannerGraph& g, std::uint32_t a, std::uint32_t b) {
                 return g.has_edge(g.nodes()->at({a}), g.nodes()->at({b}));
             })
        .def("degree", [](const SpannerGraph& g, std::uint32_t a) { return g.degree(g.nodes()->at({a})); })
        .def("max_degree", &SpannerGraph::max_degree)
        .def("weight", &SpannerGraph::weight)
        .def("same_edges", [](const SpannerGraph& a, const SpannerGraph& b) { return same_edge_set(a, b); });

    py::class_<QudgInstance>(m, "Instance")
        .def(py::init(&make_instance), py::arg("points"), py::arg("alpha") = 1.0, py::arg("adversary") = "none",
             py::arg("seed") = 0, py::arg("ids") = py::none())
        .def_property_readonly("size", &QudgInstance::size)
        .def_property_readonly("alpha", &QudgInstance::alpha)
        .def_property_readonly("ids",
                               [](const QudgInstance& q) {
                                   std::vector<std::uint32_t> v;
                                   for (auto id : q.nodes()->ids()) v.push_back(id.value);
                                   return v;
                               })
        .def_property_readonly("points",
                               [](const QudgInstance& q) {
                                   std::vector<std::pair<double, double>> v;
                                   for (const auto& p : q.nodes()->points()) v.emplace_back(p.x(), p.y());
                                   return v;
                               })
        .def("graph", [](const QudgInstance& q) { return q.as_graph(); })
        .def("is_connected", &QudgInstance::is_connected);

    m.def(
        "random_instance",
        [](std::size_t n, double alpha, const std::string& adversary, std::uint64_t seed, double side,
           double density) {
            if (side <= 0) side = side_for_density(n, alpha, density);
            return generate_connected(n, side, alpha, AdversaryPolicy::parse(adversary), seed).instance;
        },
        py::arg("n"), py::arg("alpha") = 1.0, py::arg("adversary") = "none", py::arg("seed") = 0,
        py::arg("side") = 0.0, py::arg("density") = 12.0, "Random connected instance");

    m.def("derive_k", &derive_k, py::arg("delta"), py::arg("eps"));

    auto mode_of = [](const std::string& s) { return connector_mode_from_string(s); };
    m.def(
        "los",
        [mode_of](const QudgInstance& q, double eps, std::optional<double> beta, std::optional<double> delta,
                  const std::string& mode) {
            const double b = beta.value_or(0.6 * q.alpha());
            return los(q, eps, b, delta.value_or(b / 8), mode_of(mode));
        },
        py::arg("instance"), py::arg("eps"), py::arg("beta") = py::none(), py::arg("delta") = py::none(),
        py::arg("mode") = "representative", "Centralized LOS spanner");
    m.def(
        "plos",
        [mode_of](const QudgInstance& q, double eps, double beta, std::optional<double> delta,
                  const std::string& mode) { return plos(q, eps, beta, delta.value_or(beta / 8), mode_of(mode)); },
        py::arg("instance"), py::arg("eps"), py::arg("beta") = 0.6, py::arg("delta") = py::none(),
        py::arg("mode") = "representative", "Centralized PLOS planar spanner");
    m.def(
        "distributed_los",
        [mode_of](const QudgInstance& q, double eps, std::optional<double> beta, std::optional<double> delta,
                  const std::string& mode) {
            const double b = beta.value_or(0.6 * q.alpha());
            auto run = distributed_los(q, LosParams::make(q.alpha(), b, delta.value_or(b / 8), eps, mode_of(mode)));
            return py::make_tuple(std::move(run.output), run.trace.rounds_elapsed, run.trace.max_payload_entries());
        },
        py::arg("instance"), py::arg("eps"), py::arg("beta") = py::none(), py::arg("delta") = py::none(),
        py::arg("mode") = "representative", "Simulated LOS protocol: (graph, rounds, max payload entries)");
    m.def(
        "distributed_plos",
        [mode_of](const QudgInstance& q, double eps, double beta, std::optional<double> delta,
                  const std::string& mode) {
            auto run = distributed_plos(q, PlosParams::make(beta, delta.value_or(beta / 8), eps, mode_of(mode)));
            return py::make_tuple(std::move(run.output), run.trace.rounds_elapsed, run.trace.max_payload_entries());
        },
        py::arg("instance"), py::arg("eps"), py::arg("beta") = 0.6, py::arg("delta") = py::none(),
        py::arg("mode") = "representative", "Simulated PLOS protocol: (graph, rounds, max payload entries)");

    m.def("greedy_spanner", py::overload_cast<const SpannerGraph&, double, StepTag>(&greedy_spanner), py::arg("graph"),
          py::arg("eps"), py::arg("tag") = StepTag::Greedy);
    m.def("ordered_yao", &ordered_yao, py::arg("graph"), py::arg("tag") = StepTag::OrderedYao);
    m.def("mst", &mst);
    m.def("udel", [](const QudgInstance& q) { return udel(q.nodes()); });
    m.def("ldel1", py::overload_cast<const QudgInstance&>(&ldel1));
    m.def("pldel", [](const QudgInstance& q) { return pldel(ldel1_structure(q)); });

    m.def("stretch_factor", [](const SpannerGraph& h, const SpannerGraph& g) { return stretch_factor(h, g); });
    m.def("weight_ratio", &weight_ratio);
    m.def("is_planar", [](const SpannerGraph& h) { return planarity_check(h).planar; });
    m.def(
        "metrics",
        [](const SpannerGraph& h, const SpannerGraph& g) {
            const Metrics x = compute_metrics(h, g);
            py::dict d;
            d["stretch"] = x.stretch;
            d["max_degree"] = x.max_degree;
            d["weight_ratio"] = x.weight_ratio;
            d["planar"] = x.planar;
            return d;
        },
        py::arg("h"), py::arg("g"));
}
