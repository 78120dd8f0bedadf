#include "lospan/io.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

namespace lospan {

std::string format_double(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc()) throw std::runtime_error("format_double failed");
    return std::string(buf, end);
}

double parse_double(const std::string& s) {
    double v = 0.0;
    auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || end != s.data() + s.size()) throw std::invalid_argument("not a number: " + s);
    return v;
}

namespace {

void write_header(std::ostream& os, const Header& header) {
    for (const auto& [k, v] : header) os << "# " << k << "=" << v << "\n";
}

// Reads the next non-empty line, collecting comment lines into `header`.
bool next_line(std::istream& is, std::string& line, int& lineno, Header* header) {
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (header) {
                auto body = line.substr(1);
                if (!body.empty() && body[0] == ' ') body.erase(0, 1);
                const auto eq = body.find('=');
                if (eq != std::string::npos) header->emplace_back(body.substr(0, eq), body.substr(eq + 1));
            }
            continue;
        }
        return true;
    }
    return false;
}

std::vector<std::string> split(const std::string& line) {
    std::istringstream ss(line);
    std::vector<std::string> out;
    std::string tok;
    while (ss >> tok) out.push_back(tok);
    return out;
}

std::uint32_t parse_id(const std::string& s, int lineno) {
    std::uint32_t v = 0;
    auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || end != s.data() + s.size()) throw ParseError(lineno, "bad node id '" + s + "'");
    return v;
}

double parse_num(const std::string& s, int lineno) {
    try {
        return parse_double(s);
    } catch (const std::invalid_argument&) {
        throw ParseError(lineno, "bad number '" + s + "'");
    }
}

}  // namespace

void write_instance(std::ostream& os, const QudgInstance& inst, const Header& header) {
    write_header(os, header);
    os << "qudg " << inst.size() << " " << format_double(inst.alpha()) << "\n";
    for (std::size_t u = 0; u < inst.size(); ++u) {
        os << inst.id(u).value << " " << format_double(inst.point(u).x()) << " "
           << format_double(inst.point(u).y()) << "\n";
    }
    for (const auto& [a, b] : inst.band_edges()) os << "band " << a.value << " " << b.value << "\n";
}

QudgInstance read_instance(std::istream& is, Header* header) {
    std::string line;
    int lineno = 0;
    if (!next_line(is, line, lineno, header)) throw ParseError(lineno, "empty instance file");
    auto tok = split(line);
    if (tok.size() != 3 || tok[0] != "qudg") throw ParseError(lineno, "expected 'qudg <n> <alpha>'");
    const auto n = parse_id(tok[1], lineno);
    const double alpha = parse_num(tok[2], lineno);
    std::vector<NodeId> ids;
    std::vector<Point> pts;
    for (std::uint32_t i = 0; i < n; ++i) {
        if (!next_line(is, line, lineno, header)) throw ParseError(lineno, "missing node lines");
        tok = split(line);
        if (tok.size() != 3) throw ParseError(lineno, "expected '<id> <x> <y>'");
        ids.push_back({parse_id(tok[0], lineno)});
        try {
            pts.emplace_back(parse_num(tok[1], lineno), parse_num(tok[2], lineno));
        } catch (const std::invalid_argument& e) {
            throw ParseError(lineno, e.what());
        }
    }
    std::vector<std::pair<NodeId, NodeId>> band;
    while (next_line(is, line, lineno, header)) {
        tok = split(line);
        if (tok.size() != 3 || tok[0] != "band") throw ParseError(lineno, "expected 'band <id1> <id2>'");
        band.emplace_back(NodeId{parse_id(tok[1], lineno)}, NodeId{parse_id(tok[2], lineno)});
    }
    try {
        auto nodes = std::make_shared<NodeSet>(std::move(ids), std::move(pts));
        return QudgInstance(std::move(nodes), alpha, std::move(band));
    } catch (const std::invalid_argument& e) {
        throw ParseError(lineno, e.what());
    }
}

void write_result(std::ostream& os, const SpannerGraph& h, const Header& header) {
    write_header(os, header);
    const auto& nodes = *h.nodes();
    for (const auto& te : h.edges()) {
        os << nodes.id(te.edge.u).value << " " << nodes.id(te.edge.v).value << " " << format_double(te.edge.id.length)
           << " " << to_string(te.tag) << "\n";
    }
}

ResultFile read_result(std::istream& is) {
    ResultFile out;
    std::string line;
    int lineno = 0;
    while (next_line(is, line, lineno, &out.header)) {
        auto tok = split(line);
        if (tok.size() != 4) throw ParseError(lineno, "expected '<id1> <id2> <length> <step-tag>'");
        ResultEdge e;
        e.a = {parse_id(tok[0], lineno)};
        e.b = {parse_id(tok[1], lineno)};
        e.length = parse_num(tok[2], lineno);
        try {
            e.tag = step_tag_from_string(tok[3]);
        } catch (const std::invalid_argument& ex) {
            throw ParseError(lineno, ex.what());
        }
        out.edges.push_back(e);
    }
    return out;
}

SpannerGraph result_graph(const ResultFile& r, const NodeSetPtr& nodes) {
    SpannerGraph g(nodes);
    for (const auto& e : r.edges) g.add_edge(nodes->at(e.a), nodes->at(e.b), e.tag);
    return g;
}

std::string header_value(const Header& h, const std::string& key, const std::string& fallback) {
    for (const auto& [k, v] : h) {
        if (k == key) return v;
    }
    return fallback;
}

}  // namespace lospan
