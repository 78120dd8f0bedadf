// lospan: generate instances, run the spanner pipelines and protocols, verify
// results, and sweep parameter ranges into CSV tables and SVG plots.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "lospan/io.hpp"
#include "lospan/kernels.hpp"
#include "lospan/pipelines.hpp"
#include "lospan/simulator.hpp"
#include "lospan/verify.hpp"

#ifndef LOSPAN_VERSION
#define LOSPAN_VERSION "0.0.0"
#endif

namespace fs = std::filesystem;
using namespace lospan;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerify = 1;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;
constexpr double kCdel = 2.4184;
constexpr double kRelTol = 1e-9;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

const std::vector<std::string> kAlgorithms = {"los", "plos", "reference", "distributed-los", "distributed-plos"};

struct RunConfig {
    std::size_t n = 100;
    double side = 0.0;  // 0: derived from density
    double density = 12.0;
    double alpha = 1.0;
    std::string adversary = "none";
    double beta = 0.0;   // 0: 0.6 * alpha
    double delta = 0.0;  // 0: beta / 8
    double eps = 0.5;
    std::string mode = "representative";
    std::string host = "ydel";
    std::uint64_t seed = 1;
    std::string algorithm = "los";

    double beta_value() const { return beta > 0 ? beta : 0.6 * alpha; }
    double delta_value() const { return delta > 0 ? delta : beta_value() / 8; }
    double side_value() const { return side > 0 ? side : side_for_density(n, alpha, density); }

    Header header() const {
        return {{"version", LOSPAN_VERSION},
                {"n", std::to_string(n)},
                {"side", format_double(side_value())},
                {"density", format_double(density)},
                {"alpha", format_double(alpha)},
                {"adversary", AdversaryPolicy::parse(adversary).describe()},
                {"beta", format_double(beta_value())},
                {"delta", format_double(delta_value())},
                {"eps", format_double(eps)},
                {"mode", mode},
                {"host", host},
                {"seed", std::to_string(seed)},
                {"algorithm", algorithm}};
    }

    void validate() const {
        if (std::find(kAlgorithms.begin(), kAlgorithms.end(), algorithm) == kAlgorithms.end())
            throw ConfigError("unknown algorithm '" + algorithm + "'");
        if (!(alpha > 0 && alpha <= 1)) throw ConfigError("alpha must lie in (0, 1]");
        if (!(eps > 0) || !std::isfinite(eps)) throw ConfigError("eps must be positive");
        try {
            (void)AdversaryPolicy::parse(adversary);
            const auto m = connector_mode_from_string(mode);
            const auto h = cluster_host_from_string(host);
            if (is_plos()) {
                if (alpha != 1.0) throw ConfigError("plos requires a unit disk graph (alpha = 1)");
                (void)PlosParams::make(beta_value(), delta_value(), eps, m, h);
            } else if (algorithm != "reference") {
                (void)LosParams::make(alpha, beta_value(), delta_value(), eps, m);
            }
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
    }

    bool is_plos() const { return algorithm == "plos" || algorithm == "distributed-plos"; }
};

// Overrides fields of `cfg` with values stored in an output header.
RunConfig config_from_header(const Header& h, RunConfig cfg) {
    auto get = [&](const char* k) { return header_value(h, k); };
    try {
        if (auto v = get("n"); !v.empty()) cfg.n = std::stoul(v);
        if (auto v = get("side"); !v.empty()) cfg.side = parse_double(v);
        if (auto v = get("alpha"); !v.empty()) cfg.alpha = parse_double(v);
        if (auto v = get("adversary"); !v.empty()) cfg.adversary = v;
        if (auto v = get("beta"); !v.empty()) cfg.beta = parse_double(v);
        if (auto v = get("delta"); !v.empty()) cfg.delta = parse_double(v);
        if (auto v = get("eps"); !v.empty()) cfg.eps = parse_double(v);
        if (auto v = get("mode"); !v.empty()) cfg.mode = v;
        if (auto v = get("host"); !v.empty()) cfg.host = v;
        if (auto v = get("seed"); !v.empty()) cfg.seed = std::stoull(v);
        if (auto v = get("algorithm"); !v.empty()) cfg.algorithm = v;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("bad header value: ") + e.what());
    }
    return cfg;
}

fs::path default_out_dir() {
    if (const char* d = std::getenv("LOSPAN_OUT_DIR"); d && *d) return d;
    return ".";
}

void write_atomically(const fs::path& path, const std::string& content) {
    std::error_code ec;
    if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary);
        if (!os) throw IoError("cannot write " + tmp.string());
        os << content;
        if (!os) throw IoError("write failed for " + tmp.string());
    }
    fs::rename(tmp, path, ec);
    if (ec) throw IoError("cannot rename " + tmp.string() + ": " + ec.message());
}

QudgInstance load_instance(const fs::path& path, Header* header) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot open " + path.string());
    try {
        return read_instance(is, header);
    } catch (const ParseError& e) {
        throw IoError(path.string() + ": " + e.what());
    }
}

QudgInstance generate(const RunConfig& cfg) {
    return generate_connected(cfg.n, cfg.side_value(), cfg.alpha, AdversaryPolicy::parse(cfg.adversary), cfg.seed)
        .instance;
}

struct Outcome {
    SpannerGraph h;
    Metrics metrics;
    std::optional<RoundTrace> trace;
    std::vector<std::string> failed;  // names of failed checks
};

SpannerGraph centralized(const RunConfig& cfg, const QudgInstance& inst) {
    const auto mode = connector_mode_from_string(cfg.mode);
    if (cfg.algorithm == "reference") return greedy_spanner(inst.as_graph(), cfg.eps);
    if (cfg.is_plos())
        return plos_full(inst, PlosParams::make(cfg.beta_value(), cfg.delta_value(), cfg.eps, mode,
                                                cluster_host_from_string(cfg.host)))
            .h;
    return los_full(inst, LosParams::make(inst.alpha(), cfg.beta_value(), cfg.delta_value(), cfg.eps, mode)).h;
}

std::vector<std::string> check(const RunConfig& cfg, const SpannerGraph& h, const QudgInstance& inst,
                               const Metrics& m) {
    std::vector<std::string> failed;
    if (cfg.is_plos()) {
        if (!m.planar) failed.push_back("plos-planarity");
        if (m.stretch > kCdel * (1 + cfg.eps) * (1 + std::numbers::pi / 2) * (1 + kRelTol))
            failed.push_back("plos-stretch");
    } else if (m.stretch > (1 + cfg.eps) * (1 + kRelTol)) {
        failed.push_back(cfg.algorithm == "reference" ? "greedy-stretch" : "los-stretch");
    }
    if (h.node_count() != inst.size()) failed.push_back("node-set");
    return failed;
}

Outcome execute(const RunConfig& cfg, const QudgInstance& inst, bool verify) {
    const auto mode = connector_mode_from_string(cfg.mode);
    std::optional<RoundTrace> trace;
    std::optional<SpannerGraph> h;
    if (cfg.algorithm == "distributed-los") {
        if (!inst.is_connected()) throw ConfigError("instance is disconnected");
        auto run = distributed_los(inst, LosParams::make(inst.alpha(), cfg.beta_value(), cfg.delta_value(), cfg.eps, mode));
        h = std::move(run.output);
        trace = std::move(run.trace);
    } else if (cfg.algorithm == "distributed-plos") {
        auto run = distributed_plos(inst, PlosParams::make(cfg.beta_value(), cfg.delta_value(), cfg.eps, mode,
                                                           cluster_host_from_string(cfg.host)));
        h = std::move(run.output);
        trace = std::move(run.trace);
    } else {
        h = centralized(cfg, inst);
    }
    Outcome out{std::move(*h), {}, std::move(trace), {}};
    out.metrics = compute_metrics(out.h, inst.as_graph(), out.trace ? out.trace->rounds_elapsed : 0);
    if (verify) {
        out.failed = check(cfg, out.h, inst, out.metrics);
        if (out.trace && !same_edge_set(out.h, centralized(cfg, inst))) out.failed.push_back("distributed-equivalence");
    }
    return out;
}

Header metrics_header(const Metrics& m) {
    return {{"stretch", format_double(m.stretch)},
            {"max_degree", std::to_string(m.max_degree)},
            {"weight_ratio", format_double(m.weight_ratio)},
            {"planar", m.planar ? "true" : "false"},
            {"rounds", std::to_string(m.rounds)}};
}

std::string json_number(double v) { return std::isfinite(v) ? format_double(v) : "null"; }

std::string metrics_json(const RunConfig& cfg, const Metrics& m, const std::vector<std::string>& failed) {
    std::ostringstream os;
    os << "{\"algorithm\":\"" << cfg.algorithm << "\",\"n\":" << cfg.n << ",\"alpha\":" << format_double(cfg.alpha)
       << ",\"eps\":" << format_double(cfg.eps) << ",\"beta\":" << format_double(cfg.beta_value())
       << ",\"delta\":" << format_double(cfg.delta_value()) << ",\"mode\":\"" << cfg.mode << "\",\"seed\":" << cfg.seed
       << ",\"stretch\":" << json_number(m.stretch) << ",\"max_degree\":" << m.max_degree
       << ",\"weight_ratio\":" << json_number(m.weight_ratio) << ",\"planar\":" << (m.planar ? "true" : "false")
       << ",\"rounds\":" << m.rounds << ",\"failed_checks\":[";
    for (std::size_t i = 0; i < failed.size(); ++i) os << (i ? "," : "") << '"' << failed[i] << '"';
    os << "]}";
    return os.str();
}

// ---------------------------------------------------------------- plots

struct Series {
    std::string name;
    std::vector<std::pair<double, double>> points;
};

std::string svg_plot(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                     std::vector<Series> series) {
    constexpr double W = 640, H = 420, L = 70, R = 170, T = 40, B = 55;
    double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
    for (auto& s : series) {
        std::sort(s.points.begin(), s.points.end());
        for (auto [x, y] : s.points) {
            x0 = std::min(x0, x), x1 = std::max(x1, x);
            y0 = std::min(y0, y), y1 = std::max(y1, y);
        }
    }
    if (!std::isfinite(x0)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    if (x1 == x0) x0 -= 0.5, x1 += 0.5;
    y0 = std::min(y0, 0.0);
    if (y1 <= y0) y1 = y0 + 1;
    y1 += 0.05 * (y1 - y0);
    auto px = [&](double x) { return L + (x - x0) / (x1 - x0) * (W - L - R); };
    auto py = [&](double y) { return H - B - (y - y0) / (y1 - y0) * (H - T - B); };
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf"};

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
       << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << title << "</text>\n";
    os << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
       << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double xv = x0 + (x1 - x0) * i / 4, yv = y0 + (y1 - y0) * i / 4;
        char bx[32], by[32];
        std::snprintf(bx, sizeof bx, "%g", xv);
        std::snprintf(by, sizeof by, "%.3g", yv);
        os << "<text x=\"" << px(xv) << "\" y=\"" << H - B + 16 << "\" text-anchor=\"middle\">" << bx << "</text>\n";
        os << "<text x=\"" << L - 6 << "\" y=\"" << py(yv) + 4 << "\" text-anchor=\"end\">" << by << "</text>\n";
        os << "<line x1=\"" << L << "\" y1=\"" << py(yv) << "\" x2=\"" << W - R << "\" y2=\"" << py(yv)
           << "\" stroke=\"#ddd\"/>\n";
    }
    os << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 15 << "\" text-anchor=\"middle\">" << xlabel
       << "</text>\n";
    os << "<text x=\"16\" y=\"" << (T + H - B) / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
       << (T + H - B) / 2 << ")\">" << ylabel << "</text>\n";
    for (std::size_t s = 0; s < series.size(); ++s) {
        const char* c = colors[s % 7];
        std::string pts;
        for (auto [x, y] : series[s].points) pts += std::to_string(px(x)) + "," + std::to_string(py(y)) + " ";
        os << "<polyline fill=\"none\" stroke=\"" << c << "\" stroke-width=\"2\" points=\"" << pts << "\"/>\n";
        for (auto [x, y] : series[s].points)
            os << "<circle cx=\"" << px(x) << "\" cy=\"" << py(y) << "\" r=\"3\" fill=\"" << c << "\"/>\n";
        const double ly = T + 16 * static_cast<double>(s);
        os << "<line x1=\"" << W - R + 12 << "\" y1=\"" << ly << "\" x2=\"" << W - R + 32 << "\" y2=\"" << ly
           << "\" stroke=\"" << c << "\" stroke-width=\"2\"/>\n";
        os << "<text x=\"" << W - R + 38 << "\" y=\"" << ly + 4 << "\">" << series[s].name << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

// ---------------------------------------------------------------- sweep

const char* kCsvColumns =
    "algorithm,n,alpha,adversary,eps,beta,delta,mode,seed,edges,stretch,max_degree,weight_ratio,planar,rounds,status,"
    "error";

struct Row {
    RunConfig cfg;
    std::size_t edges = 0;
    Metrics m;
    std::string status = "ok";
    std::string error;
};

std::string csv_escape(std::string s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c == '\n' ? ' ' : c);
    return out + "\"";
}

std::string csv_line(const Row& r) {
    const auto& c = r.cfg;
    std::ostringstream os;
    os << c.algorithm << ',' << c.n << ',' << format_double(c.alpha) << ',' << c.adversary << ','
       << format_double(c.eps) << ',' << format_double(c.beta_value()) << ',' << format_double(c.delta_value()) << ','
       << c.mode << ',' << c.seed << ',' << r.edges << ',';
    if (r.status == "error") {
        os << ",,,,,";
    } else {
        os << format_double(r.m.stretch) << ',' << r.m.max_degree << ',' << format_double(r.m.weight_ratio) << ','
           << (r.m.planar ? "true" : "false") << ',' << r.m.rounds << ',';
    }
    os << r.status << ',' << csv_escape(r.error);
    return os.str();
}

Row sweep_row(const RunConfig& cfg) {
    Row row{cfg, 0, {}, "ok", ""};
    try {
        cfg.validate();
        const auto inst = generate(cfg);
        auto out = execute(cfg, inst, true);
        row.edges = out.h.edge_count();
        row.m = out.metrics;
        if (!out.failed.empty()) {
            row.status = "verify-failed";
            for (const auto& f : out.failed) row.error += (row.error.empty() ? "" : ";") + f;
        }
    } catch (const std::exception& e) {
        row.status = "error";
        row.error = e.what();
    }
    return row;
}

template <typename T>
std::string join(const std::vector<T>& v) {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
    return os.str();
}

// Mean of `value` over rows grouped by series key and x.
std::vector<Series> mean_series(const std::vector<Row>& rows, auto key, auto x, auto value, auto keep) {
    std::map<std::string, std::map<double, std::pair<double, int>>> acc;
    for (const auto& r : rows) {
        if (r.status == "error" || !keep(r)) continue;
        auto& cell = acc[key(r)][x(r)];
        cell.first += value(r);
        ++cell.second;
    }
    std::vector<Series> out;
    for (auto& [name, pts] : acc) {
        Series s{name, {}};
        for (auto& [xv, sum] : pts) s.points.emplace_back(xv, sum.first / sum.second);
        out.push_back(std::move(s));
    }
    return out;
}

std::string eps_label(const Row& r) {
    char b[64];
    std::snprintf(b, sizeof b, "%s eps=%g", r.cfg.algorithm.c_str(), r.cfg.eps);
    return b;
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    CLI::App app{"Localized spanner construction: generate, run, verify, sweep"};
    app.set_version_flag("--version", LOSPAN_VERSION);
    app.fallthrough();
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value file; command-line flags take precedence");

    std::string out_path, instance_path, result_path, trace_path, out_dir;
    bool no_verify = false;
    app.add_option("--n", cfg.n, "number of nodes");
    app.add_option("--side", cfg.side, "side of the square deployment area (0: from --density)");
    app.add_option("--density", cfg.density, "expected nodes within distance alpha, used when side is 0");
    app.add_option("--alpha", cfg.alpha, "quasi unit disk parameter");
    app.add_option("--adversary", cfg.adversary, "band policy: none, all, random:<p> or random(<p>)");
    app.add_option("--beta", cfg.beta, "grid cell side (0: 0.6*alpha)");
    app.add_option("--delta", cfg.delta, "grid overlap (0: beta/8)");
    app.add_option("--eps", cfg.eps, "stretch parameter");
    app.add_option("--mode", cfg.mode, "connector mode: representative or literal");
    app.add_option("--host", cfg.host, "PLOS cluster cover host: ydel, spanner or pldel");
    app.add_option("--seed", cfg.seed, "random seed");
    app.add_option("--algorithm", cfg.algorithm, "los, plos, reference, distributed-los, distributed-plos");
    app.add_option("--out", out_path, "output file");
    app.add_option("--out-dir", out_dir, "output directory (default: $LOSPAN_OUT_DIR or .)");

    auto* gen = app.add_subcommand("generate", "write a random connected instance");
    auto* run = app.add_subcommand("run", "run an algorithm on an instance");
    run->add_option("--instance", instance_path, "instance file (generated from the config when omitted)");
    run->add_option("--trace", trace_path, "round trace output (distributed algorithms)");
    run->add_flag("--no-verify", no_verify, "skip the guarantee checks");
    auto* ver = app.add_subcommand("verify", "recompute metrics of a result file and check its guarantees");
    ver->add_option("--instance", instance_path, "instance file")->required();
    ver->add_option("--result", result_path, "result file")->required();
    auto* sweep = app.add_subcommand("sweep", "run a grid of configurations");
    std::vector<std::size_t> n_values;
    std::vector<double> eps_values, alpha_values;
    std::vector<std::string> algorithms;
    int seeds = 3;
    unsigned jobs = 1;
    sweep->add_option("--n-values", n_values, "node counts")->delimiter(',');
    sweep->add_option("--eps-values", eps_values, "eps values")->delimiter(',');
    sweep->add_option("--alpha-values", alpha_values, "alpha values (default: --alpha)")->delimiter(',');
    sweep->add_option("--algorithms", algorithms, "algorithms (default: --algorithm)")->delimiter(',');
    sweep->add_option("--seeds", seeds, "seeds per combination, starting at --seed")->check(CLI::NonNegativeNumber);
    sweep->add_option("--jobs", jobs, "parallel rows")->check(CLI::PositiveNumber);
    for (auto* sc : {gen, run, ver, sweep}) sc->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    const fs::path dir = out_dir.empty() ? default_out_dir() : fs::path(out_dir);
    try {
        if (gen->parsed()) {
            cfg.validate();
            QudgInstance inst = [&] {
                try {
                    return generate(cfg);
                } catch (const std::runtime_error& e) {
                    throw ConfigError(e.what());
                }
            }();
            const fs::path path = out_path.empty() ? dir / ("instance-" + std::to_string(cfg.seed) + ".txt") : fs::path(out_path);
            std::ostringstream os;
            Header h = cfg.header();
            h.erase(std::remove_if(h.begin(), h.end(), [](const auto& kv) { return kv.first == "algorithm"; }), h.end());
            write_instance(os, inst, h);
            write_atomically(path, os.str());
            std::cout << "nodes " << inst.size() << " edges " << inst.edges().size() << " band "
                      << inst.band_edges().size() << " -> " << path.string() << "\n";
            return kExitOk;
        }

        if (run->parsed()) {
            std::optional<QudgInstance> inst;
            Header ih;
            if (!instance_path.empty()) {
                inst = load_instance(instance_path, &ih);
                for (const char* key : {"side", "density", "adversary", "seed"})
                    if (auto v = header_value(ih, key); !v.empty() && run->get_parent()->count(std::string("--") + key) == 0) {
                        if (std::string(key) == "adversary") cfg.adversary = v;
                        else if (std::string(key) == "seed") cfg.seed = std::stoull(v);
                        else if (std::string(key) == "side") cfg.side = parse_double(v);
                        else cfg.density = parse_double(v);
                    }
                cfg.n = inst->size();
                cfg.alpha = inst->alpha();
            } else {
                cfg.validate();
                inst = generate(cfg);
            }
            cfg.validate();
            Outcome out = [&] {
                try {
                    return execute(cfg, *inst, !no_verify);
                } catch (const DisconnectedError& e) {
                    throw ConfigError(e.what());
                }
            }();
            Header h = cfg.header();
            if (!instance_path.empty()) h.emplace_back("instance", instance_path);
            for (auto& kv : metrics_header(out.metrics)) h.push_back(kv);
            h.emplace_back("failed_checks", join(out.failed));
            const fs::path path = out_path.empty() ? dir / ("result-" + cfg.algorithm + "-" + std::to_string(cfg.seed) + ".txt")
                                                   : fs::path(out_path);
            std::ostringstream os;
            write_result(os, out.h, h);
            write_atomically(path, os.str());
            const std::string json = metrics_json(cfg, out.metrics, out.failed);
            write_atomically(path.string() + ".metrics.json", json + "\n");
            if (out.trace && !trace_path.empty()) write_atomically(trace_path, out.trace->to_text());
            std::cout << json << "\n";
            for (const auto& f : out.failed) std::cerr << "verification failed: " << f << "\n";
            return out.failed.empty() ? kExitOk : kExitVerify;
        }

        if (ver->parsed()) {
            Header ih;
            const auto inst = load_instance(instance_path, &ih);
            std::ifstream is(result_path);
            if (!is) throw IoError("cannot open " + result_path);
            ResultFile rf;
            try {
                rf = read_result(is);
            } catch (const ParseError& e) {
                throw IoError(result_path + ": " + e.what());
            }
            RunConfig rc = config_from_header(rf.header, cfg);
            rc.n = inst.size();
            rc.alpha = inst.alpha();
            rc.validate();
            SpannerGraph h = [&] {
                try {
                    return result_graph(rf, inst.nodes());
                } catch (const std::exception& e) {
                    throw IoError(result_path + ": " + e.what());
                }
            }();
            std::vector<std::string> failed;
            for (const auto& e : rf.edges) {
                const auto u = inst.nodes()->index_of(e.a), v = inst.nodes()->index_of(e.b);
                if (!u || !v || !inst.has_edge(*u, *v)) {
                    failed.push_back("subgraph");
                    break;
                }
            }
            Metrics m;
            try {
                m = compute_metrics(h, inst.as_graph(), std::atoi(header_value(rf.header, "rounds", "0").c_str()));
                for (auto& f : check(rc, h, inst, m)) failed.push_back(f);
            } catch (const NotASpannerError&) {
                m.stretch = INFINITY;
                failed.push_back("connectivity");
            }
            if (!same_edge_set(h, centralized(rc, inst))) failed.push_back("replay");
            std::cout << metrics_json(rc, m, failed) << "\n";
            for (const auto& f : failed) std::cerr << "verification failed: " << f << "\n";
            return failed.empty() ? kExitOk : kExitVerify;
        }

        if (sweep->parsed()) {
            if (alpha_values.empty()) alpha_values = {cfg.alpha};
            if (algorithms.empty()) algorithms = {cfg.algorithm};
            std::vector<RunConfig> grid;
            for (const auto& alg : algorithms)
                for (double a : alpha_values)
                    for (std::size_t n : n_values)
                        for (double e : eps_values)
                            for (int s = 0; s < seeds; ++s) {
                                RunConfig c = cfg;
                                c.algorithm = alg;
                                c.alpha = a;
                                c.n = n;
                                c.eps = e;
                                c.seed = cfg.seed + static_cast<std::uint64_t>(s);
                                c.validate();
                                grid.push_back(c);
                            }
            if (grid.empty()) std::cerr << "warning: empty parameter range, writing an empty table\n";

            std::vector<Row> rows(grid.size());
            std::atomic<std::size_t> next{0};
            auto worker = [&] {
                for (std::size_t i; (i = next++) < grid.size();) rows[i] = sweep_row(grid[i]);
            };
            {
                std::vector<std::jthread> pool;
                for (unsigned t = 1; t < std::min<std::size_t>(jobs, grid.size()); ++t) pool.emplace_back(worker);
                worker();
            }

            std::ostringstream csv;
            for (const auto& [k, v] : cfg.header()) csv << "# " << k << "=" << v << "\n";
            csv << "# n-values=" << join(n_values) << "\n# eps-values=" << join(eps_values) << "\n# alpha-values="
                << join(alpha_values) << "\n# algorithms=" << join(algorithms) << "\n# seeds=" << seeds << "\n";
            csv << kCsvColumns << "\n";
            for (const auto& r : rows) csv << csv_line(r) << "\n";
            const fs::path csv_path = out_path.empty() ? dir / "sweep.csv" : fs::path(out_path);
            write_atomically(csv_path, csv.str());
            const fs::path plot_dir = csv_path.has_parent_path() ? csv_path.parent_path() : fs::path(".");

            auto all = [](const Row&) { return true; };
            auto by_n = [](const Row& r) { return static_cast<double>(r.cfg.n); };
            write_atomically(plot_dir / "weight_ratio_vs_n.svg",
                             svg_plot("weight ratio vs n", "n", "mean w(H)/w(MST)",
                                      mean_series(rows, eps_label, by_n, [](const Row& r) { return r.m.weight_ratio; }, all)));
            write_atomically(plot_dir / "stretch_vs_eps.svg",
                             svg_plot("stretch vs eps", "eps", "max stretch",
                                      [&] {
                                          // worst case per (algorithm, eps)
                                          std::map<std::string, std::map<double, double>> acc;
                                          for (const auto& r : rows)
                                              if (r.status != "error") {
                                                  auto& v = acc[r.cfg.algorithm][r.cfg.eps];
                                                  v = std::max(v, r.m.stretch);
                                              }
                                          std::vector<Series> out;
                                          for (auto& [name, pts] : acc) out.push_back({name, {pts.begin(), pts.end()}});
                                          return out;
                                      }()));
            write_atomically(plot_dir / "rounds_vs_n.svg",
                             svg_plot("rounds vs n", "n", "rounds",
                                      mean_series(rows, eps_label, by_n, [](const Row& r) { return double(r.m.rounds); },
                                                  [](const Row& r) { return r.cfg.algorithm.starts_with("distributed"); })));
            std::size_t bad = 0;
            for (const auto& r : rows) bad += r.status != "ok";
            std::cout << rows.size() << " rows (" << bad << " not ok) -> " << csv_path.string() << "\n";
            return bad == 0 ? kExitOk : kExitVerify;
        }
    } catch (const ConfigError& e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return kExitConfig;
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kExitIo;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerify;
    }
    return kExitConfig;
}
