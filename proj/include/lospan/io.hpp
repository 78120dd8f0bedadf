#pragma once

#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "lospan/graph.hpp"

namespace lospan {

class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

/// Shortest decimal text that reads back to the same double.
std::string format_double(double v);
double parse_double(const std::string& s);

/// Ordered key=value block written as "# key=value" comment lines.
using Header = std::vector<std::pair<std::string, std::string>>;

/// `qudg <n> <alpha>`, then `<id> <x> <y>` per node, then `band <id1> <id2>`.
void write_instance(std::ostream& os, const QudgInstance& inst, const Header& header = {});
QudgInstance read_instance(std::istream& is, Header* header = nullptr);

struct ResultEdge {
    NodeId a;
    NodeId b;
    double length = 0.0;
    StepTag tag = StepTag::Input;
};

struct ResultFile {
    Header header;
    std::vector<ResultEdge> edges;
};

/// One `<id1> <id2> <length> <step-tag>` line per edge, EdgeId order.
void write_result(std::ostream& os, const SpannerGraph& h, const Header& header = {});
ResultFile read_result(std::istream& is);

/// Rebuilds a spanner over `nodes` from a result; throws on unknown IDs.
SpannerGraph result_graph(const ResultFile& r, const NodeSetPtr& nodes);

std::string header_value(const Header& h, const std::string& key, const std::string& fallback = "");

}  // namespace lospan
