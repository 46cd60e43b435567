#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>

#include "cavs/errors.hpp"
#include "cavs/io.hpp"
#include "fixtures.hpp"

using namespace cavs;

namespace {

const char* kTwoNodeNet = R"(# tiny test network
[variables]
A: a0,a1
B: b0,b1,b2

[edges]
A -> B

[cpts]
A:
0.25 0.75
B:
0.2 0.3 0.5   # row for A = a0
0.1 0.1 0.8
)";

}  // namespace

TEST_CASE("a minimal two-node file parses into a CPT network") {
    NetworkFile file = parse_network(kTwoNodeNet);
    REQUIRE(file.has_cpts());
    CptNetwork net = file.cpt_network();
    CHECK(net.graph.node_count() == 2);
    CHECK(net.graph.has_directed(0, 1));
    CHECK(net.alphabets[0] == std::vector<std::string>{"a0", "a1"});
    REQUIRE(net.cpts[0].size() == 1);   // root: one row
    REQUIRE(net.cpts[1].size() == 2);   // |A| rows
    CHECK(net.cpts[1][0][2] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("a structural file without CPTs yields a bare graph") {
    NetworkFile file = parse_network(
        "[variables]\nX: 0,1\nZ1: 0,1\n\n[edges]\nX -- Z1\n");
    CHECK_FALSE(file.has_cpts());
    CHECK(file.graph.has_undirected(0, 1));
    CHECK_THROWS_AS(file.cpt_network(), ValidationError);
}

TEST_CASE("the demo DAG round-trips through its file form") {
    NetworkFile file;
    file.graph = fixtures::enumeration_demo_dag();
    file.alphabets.assign(static_cast<std::size_t>(file.graph.node_count()),
                          {"0", "1"});
    std::string text = emit_network(file);
    NetworkFile again = parse_network(text);
    CHECK(again.graph == file.graph);
    CHECK(again.alphabets == file.alphabets);
}

TEST_CASE("parse errors carry line numbers and name the offender") {
    SUBCASE("bad row sum") {
        const char* text =
            "[variables]\nA: 0,1\n\n[cpts]\nA:\n0.4 0.5\n";
        CHECK_THROWS_WITH_AS(parse_network(text), doctest::Contains("sums to"),
                             ParseError);
        try {
            parse_network(text);
        } catch (const ParseError& e) {
            CHECK(e.line() == 6);
        }
    }
    SUBCASE("cycle") {
        CHECK_THROWS_WITH_AS(
            parse_network("[variables]\nA: 0,1\nB: 0,1\nC: 0,1\n\n"
                          "[edges]\nA -> B\nB -> C\nC -> A\n"),
            doctest::Contains("cycle"), ParseError);
    }
    SUBCASE("duplicate edge") {
        CHECK_THROWS_AS(
            parse_network("[variables]\nA: 0,1\nB: 0,1\n\n[edges]\nA -> B\nA -> B\n"),
            ParseError);
    }
    SUBCASE("unknown variable in an edge") {
        CHECK_THROWS_AS(parse_network("[variables]\nA: 0,1\n\n[edges]\nA -> Q\n"),
                        ParseError);
    }
    SUBCASE("undirected edges cannot carry CPTs") {
        CHECK_THROWS_WITH_AS(
            parse_network("[variables]\nA: 0,1\nB: 0,1\n\n[edges]\nA -- B\n\n"
                          "[cpts]\nA:\n0.5 0.5\nB:\n0.5 0.5\n"),
            doctest::Contains("undirected"), ParseError);
    }
    SUBCASE("missing CPT block") {
        CHECK_THROWS_WITH_AS(
            parse_network("[variables]\nA: 0,1\nB: 0,1\n\n[edges]\nA -> B\n\n"
                          "[cpts]\nA:\n0.5 0.5\n"),
            doctest::Contains("missing CPT"), ParseError);
    }
    SUBCASE("short CPT block") {
        CHECK_THROWS_WITH_AS(
            parse_network("[variables]\nA: 0,1\nB: 0,1\n\n[edges]\nA -> B\n\n"
                          "[cpts]\nB:\n0.5 0.5\nA:\n0.5 0.5\n"),
            doctest::Contains("ended early"), ParseError);
    }
    SUBCASE("content before any section") {
        CHECK_THROWS_AS(parse_network("A: 0,1\n"), ParseError);
    }
}

TEST_CASE("emitted networks are value-stable across a reparse") {
    CptNetwork net = random_network(8, 10, 3, 99);
    std::string text = emit_network(net);
    NetworkFile parsed = parse_network(text);
    REQUIRE(parsed.has_cpts());
    CptNetwork again = parsed.cpt_network();
    CHECK(again.graph == net.graph);
    CHECK(again.alphabets == net.alphabets);
    REQUIRE(again.cpts.size() == net.cpts.size());
    for (std::size_t v = 0; v < net.cpts.size(); ++v) {
        REQUIRE(again.cpts[v].size() == net.cpts[v].size());
        for (std::size_t r = 0; r < net.cpts[v].size(); ++r)
            for (std::size_t c = 0; c < net.cpts[v][r].size(); ++c)
                CHECK(again.cpts[v][r][c] == net.cpts[v][r][c]);
    }
    // And the emission itself is reproducible.
    CHECK(emit_network(again) == text);
}

TEST_CASE("deterministic one-hot CPTs force a single record") {
    CptNetwork net;
    net.graph = MixedGraph({"A", "B"});
    net.graph.add_directed_edge(0, 1);
    net.alphabets = {{"0", "1"}, {"0", "1"}};
    net.cpts = {{{0.0, 1.0}}, {{1.0, 0.0}, {0.0, 1.0}}};
    net.validate();
    Dataset d = forward_sample(net, 50, 1);
    for (std::int64_t r = 0; r < d.row_count(); ++r) {
        CHECK(d.value(r, 0) == 1);
        CHECK(d.value(r, 1) == 1);
    }
}

TEST_CASE("a fair binary root concentrates near one half") {
    CptNetwork net;
    net.graph = MixedGraph({"R"});
    net.alphabets = {{"0", "1"}};
    net.cpts = {{{0.5, 0.5}}};
    net.validate();
    Dataset d = forward_sample(net, 100000, 12345);
    std::int64_t ones = 0;
    for (std::int64_t r = 0; r < d.row_count(); ++r) ones += d.value(r, 0);
    double freq = static_cast<double>(ones) / 100000.0;
    CHECK(std::abs(freq - 0.5) < 0.01);
}

TEST_CASE("sampling is reproducible bit for bit") {
    CptNetwork net = random_network(6, 7, 3, 31);
    Dataset a = forward_sample(net, 500, 777);
    Dataset b = forward_sample(net, 500, 777);
    Dataset c = forward_sample(net, 500, 778);
    CHECK(write_csv_dataset(a) == write_csv_dataset(b));
    CHECK(write_csv_dataset(a) != write_csv_dataset(c));
}

TEST_CASE("empirical conditionals converge to the CPT entries") {
    CptNetwork net = random_network(5, 5, 3, 404);
    Dataset d = forward_sample(net, 100000, 55);
    const MixedGraph& g = net.graph;
    for (NodeId v = 0; v < g.node_count(); ++v) {
        const auto& ps = g.parents(v);
        if (ps.size() != 1) continue;  // spot-check the single-parent tables
        NodeId p = ps[0];
        for (int pc = 0; pc < net.cardinality(p); ++pc) {
            std::int64_t denom = 0;
            std::vector<std::int64_t> num(
                static_cast<std::size_t>(net.cardinality(v)), 0);
            for (std::int64_t r = 0; r < d.row_count(); ++r) {
                if (d.value(r, p) != pc) continue;
                ++denom;
                ++num[static_cast<std::size_t>(d.value(r, v))];
            }
            double stratum_p = static_cast<double>(denom) / 100000.0;
            if (stratum_p < 0.05) continue;
            for (int c = 0; c < net.cardinality(v); ++c) {
                double want = net.cpts[static_cast<std::size_t>(v)]
                                      [static_cast<std::size_t>(pc)]
                                      [static_cast<std::size_t>(c)];
                double got = static_cast<double>(num[static_cast<std::size_t>(c)]) /
                             static_cast<double>(denom);
                if (want >= 0.05) CHECK(std::abs(got - want) < 0.02);
            }
        }
    }
}

TEST_CASE("random networks honour their parameters and determinism") {
    CptNetwork net = random_network(30, 40, 4, 7);
    CHECK(net.graph.node_count() == 30);
    CHECK(net.graph.directed_edge_count() == 40);
    for (NodeId v = 0; v < 30; ++v) CHECK(net.cardinality(v) == 4);
    CHECK(emit_network(net) == emit_network(random_network(30, 40, 4, 7)));
    CHECK(emit_network(net) != emit_network(random_network(30, 40, 4, 8)));

    CptNetwork tiny = random_network(2, 1, 3, 5);
    CHECK(tiny.graph.directed_edge_count() == 1);
    bool has_child_rows = tiny.cpts[0].size() == 3 || tiny.cpts[1].size() == 3;
    CHECK(has_child_rows);

    CHECK_THROWS_WITH_AS(random_network(3, 5, 2, 1), doctest::Contains("infeasible"),
                         ValidationError);
    CHECK_THROWS_AS(random_network(3, 1, 1, 1), ValidationError);
}

TEST_CASE("random network invariants hold across many seeds") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        CptNetwork net = random_network(8, 11, 3, seed);
        net.validate();  // row sums, row counts, acyclicity
        CHECK(net.graph.is_dag());
    }
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        CptNetwork net = random_network(6, 7, 2, seed, CptPrior::dirichlet_flat);
        net.validate();
    }
}

TEST_CASE("CSV round trip preserves counts") {
    CptNetwork net = random_network(4, 4, 3, 17);
    Dataset d = forward_sample(net, 300, 3);
    std::string text = write_csv_dataset(d);
    std::map<std::string, std::vector<std::string>> alphabets;
    for (int c = 0; c < d.var_count(); ++c) alphabets[d.variable(c)] = d.alphabet(c);
    Dataset back = read_csv_dataset(text, alphabets);
    REQUIRE(back.row_count() == d.row_count());
    REQUIRE(back.var_count() == d.var_count());
    for (std::int64_t r = 0; r < d.row_count(); ++r)
        for (int c = 0; c < d.var_count(); ++c) CHECK(back.value(r, c) == d.value(r, c));
    CHECK(write_csv_dataset(back) == text);
}

TEST_CASE("CSV parsing") {
    SUBCASE("three columns, two rows") {
        Dataset d = read_csv_dataset("A,B,C\nx,y,z\nx,q,z\n");
        CHECK(d.var_count() == 3);
        CHECK(d.row_count() == 2);
        CHECK(d.alphabet(1) == std::vector<std::string>{"q", "y"});  // sorted
    }
    SUBCASE("ragged rows are rejected with the line number") {
        try {
            read_csv_dataset("A,B\nx\n");
            FAIL("expected a parse error");
        } catch (const ParseError& e) {
            CHECK(e.line() == 2);
        }
    }
    SUBCASE("labels outside a provided alphabet name row and column") {
        std::map<std::string, std::vector<std::string>> alphabets{
            {"A", {"x"}}, {"B", {"y"}}};
        CHECK_THROWS_WITH_AS(read_csv_dataset("A,B\nx,y\nx,w\n", alphabets),
                             doctest::Contains("column 'B'"), ParseError);
    }
    SUBCASE("missing header") {
        CHECK_THROWS_AS(read_csv_dataset(""), ParseError);
    }
    SUBCASE("labels with other characters are rejected") {
        CHECK_THROWS_AS(read_csv_dataset("A\nhas space\n"), ParseError);
    }
}

TEST_CASE("DOT dump lists nodes and both edge kinds") {
    MixedGraph g = fixtures::orientation_demo_cpdag();
    std::string dot = emit_dot(g);
    CHECK(dot.find("digraph") != std::string::npos);
    CHECK(dot.find("X -> V;") != std::string::npos);
    CHECK(dot.find("[dir=none]") != std::string::npos);
}
