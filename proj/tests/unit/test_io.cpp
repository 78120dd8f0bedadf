#include <doctest.h>

#include <cstring>
#include <sstream>

#include "helpers.hpp"
#include "lospan/io.hpp"

using namespace lospan;
using namespace testutil;

namespace {

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST_CASE("doubles round-trip exactly") {
    for (double v : {0.1, 1.0 / 3.0, 5e-324, 1.7976931348623157e308, -0.0, 123456.789}) {
        CHECK(same_bits(parse_double(format_double(v)), v));
    }
    CHECK_THROWS(parse_double("1.5x"));
}

TEST_CASE("instance files round-trip") {
    auto g = generate_connected(60, side_for_density(60, 0.5, 12), 0.5, AdversaryPolicy::random(0.5), 9);
    std::stringstream ss;
    write_instance(ss, g.instance, {{"seed", "9"}, {"version", "x"}});
    const std::string first = ss.str();
    Header h;
    auto back = read_instance(ss, &h);
    CHECK(header_value(h, "seed") == "9");
    REQUIRE(back.size() == g.instance.size());
    for (std::size_t u = 0; u < back.size(); ++u) {
        CHECK(back.id(u) == g.instance.id(u));
        CHECK(same_bits(back.point(u).x(), g.instance.point(u).x()));
        CHECK(same_bits(back.point(u).y(), g.instance.point(u).y()));
    }
    CHECK(back.band_edges() == g.instance.band_edges());
    CHECK(back.edges().size() == g.instance.edges().size());
    std::stringstream again;
    write_instance(again, back, {{"seed", "9"}, {"version", "x"}});
    CHECK(again.str() == first);
}

TEST_CASE("instance parse errors carry the line") {
    std::istringstream bad("qudg 2 1\n0 0 0\n1 x 0\n");
    try {
        read_instance(bad);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
    }
    std::istringstream far("qudg 2 0.5\n0 0 0\n1 0.9 0\nband 0 1\n");
    CHECK_NOTHROW(read_instance(far));
    std::istringstream too_far("qudg 2 0.5\n0 0 0\n1 1.5 0\nband 0 1\n");
    CHECK_THROWS_AS(read_instance(too_far), ParseError);
}

TEST_CASE("result files round-trip") {
    auto inst = random_udg(30, 2);
    auto g = inst.as_graph();
    auto t = mst(g);
    std::stringstream ss;
    write_result(ss, t, {{"stretch", "1.5"}});
    auto r = read_result(ss);
    CHECK(header_value(r.header, "stretch") == "1.5");
    CHECK(r.edges.size() == t.edge_count());
    auto back = result_graph(r, inst.nodes());
    CHECK(same_edge_set(back, t));
    CHECK(r.edges[0].tag == StepTag::Tree);
}
