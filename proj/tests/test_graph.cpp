// Graph construction, the text codec, random generation, flattening, and the
// graph-space counting function.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "eccn/graph.hpp"
#include "eccn/rng.hpp"

using namespace eccn;

namespace {

Graph triangle() {
    Graph g(3);
    g.add_edge(0, 1);
    g.add_edge(0, 2);
    g.add_edge(1, 2);
    return g;
}

// Independent reconstruction from the padded flat encoding: the true n x n
// matrix occupies the first n^2 slots row-major, so entry (i,j) is at i*n + j.
Graph unflatten_oracle(const FlatEncoding& e) {
    const int n = e.true_n;
    Graph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (e.bits[static_cast<std::size_t>(i) * n + j]) g.add_edge(i, j);
    return g;
}

}  // namespace

TEST_CASE("graph construction validates edges and exposes basic queries", "[graph]") {
    Graph g(4);
    CHECK_THROWS_AS(g.add_edge(0, 0), std::invalid_argument);
    CHECK_THROWS_AS(g.add_edge(0, 4), std::invalid_argument);
    CHECK_THROWS_AS(g.add_edge(-1, 2), std::invalid_argument);
    CHECK_THROWS_AS(Graph(0), std::invalid_argument);
    CHECK_THROWS_AS(Graph(65), std::invalid_argument);

    g.add_edge(2, 0);
    CHECK(g.has_edge(0, 2));
    CHECK(g.has_edge(2, 0));
    CHECK_FALSE(g.has_edge(0, 1));
    CHECK(g.edge_count() == 1);
    CHECK(g.degree(0) == 1);
    CHECK(g.degree(2) == 1);
    CHECK(g.degree(3) == 0);
}

TEST_CASE("edge_index enumerates the upper triangle row-major without gaps", "[graph]") {
    for (int n = 2; n <= 9; ++n) {
        Graph g(n);
        std::set<int> seen;
        int expect = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                const int idx = g.edge_index(i, j);
                CHECK(idx == expect);  // row-major order is the file format's bit order
                ++expect;
                seen.insert(idx);
            }
        CHECK(static_cast<int>(seen.size()) == g.max_edges());
        CHECK(g.max_edges() == n * (n - 1) / 2);
    }
}

TEST_CASE("graph text codec matches the documented format", "[graph]") {
    CHECK(encode_graph(triangle()) == "3\t111");
    CHECK(encode_graph(Graph(2)) == "2\t0");

    Graph t = decode_graph("3\t111");
    CHECK(t == triangle());
    Graph e2 = decode_graph("2\t0");
    CHECK(e2 == Graph(2));

    // A one-vertex graph has no pair bits; the record is just the count.
    CHECK(encode_graph(Graph(1)) == "1\t");
    CHECK(decode_graph("1\t") == Graph(1));
}

TEST_CASE("graph codec round-trips 10,000 random graphs", "[graph]") {
    Rng rng(42);
    const double ps[3] = {0.1, 0.5, 0.9};
    for (int iter = 0; iter < 10'000; ++iter) {
        const int n = 1 + static_cast<int>(rng.uniform_int(12));
        Graph g = er_generate(n, ps[iter % 3], rng.next_u64());
        Graph back = decode_graph(encode_graph(g));
        REQUIRE(back == g);
    }
}

TEST_CASE("malformed graph records name the line and field", "[graph]") {
    auto msg = [](auto&& fn) {
        try {
            fn();
        } catch (const ParseError& e) {
            return std::string(e.what());
        }
        return std::string("no error");
    };

    CHECK_THROWS_AS(decode_graph("3\t11", 7), ParseError);
    CHECK(msg([] { decode_graph("3\t11", 7); }).find("line 7") != std::string::npos);
    CHECK(msg([] { decode_graph("3\t11", 7); }).find("adjacency bits") != std::string::npos);

    CHECK_THROWS_AS(decode_graph("0\t", 1), ParseError);
    CHECK_THROWS_AS(decode_graph("65\t000", 1), ParseError);
    CHECK_THROWS_AS(decode_graph("x\t111", 1), ParseError);
    CHECK_THROWS_AS(decode_graph("3 111", 1), ParseError);   // missing tab
    CHECK_THROWS_AS(decode_graph("3\t1a1", 1), ParseError);  // non-binary character
    CHECK(msg([] { decode_graph("3\t1a1", 9); }).find("line 9") != std::string::npos);
}

TEST_CASE("random graph generation is a pure function of (n, p, seed)", "[graph]") {
    CHECK(er_generate(8, 0.5, 123) == er_generate(8, 0.5, 123));
    CHECK_FALSE(er_generate(8, 0.5, 123) == er_generate(8, 0.5, 124));

    Graph empty = er_generate(9, 0.0, 5);
    CHECK(empty.edge_count() == 0);
    Graph full = er_generate(9, 1.0, 5);
    CHECK(full.edge_count() == full.max_edges());

    CHECK_THROWS_AS(er_generate(0, 0.5, 1), std::invalid_argument);
    CHECK_THROWS_AS(er_generate(5, 1.5, 1), std::invalid_argument);
    CHECK_THROWS_AS(er_generate(5, -0.1, 1), std::invalid_argument);
}

TEST_CASE("adjacency bit matrix is symmetric with a zero diagonal", "[graph]") {
    Rng rng(7);
    for (int iter = 0; iter < 200; ++iter) {
        const int n = 2 + static_cast<int>(rng.uniform_int(10));
        Graph g = er_generate(n, 0.5, rng.next_u64());
        for (int i = 0; i < n; ++i) {
            CHECK_FALSE(g.has_edge(i, i));
            for (int j = 0; j < n; ++j)
                if (i != j) CHECK(g.has_edge(i, j) == g.has_edge(j, i));
        }
    }
}

TEST_CASE("flattening pads with zeros beyond the true matrix", "[graph]") {
    Rng rng(11);
    for (int iter = 0; iter < 300; ++iter) {
        const int n = 1 + static_cast<int>(rng.uniform_int(8));
        const int n_max = n + static_cast<int>(rng.uniform_int(4));
        Graph g = er_generate(n, 0.5, rng.next_u64());
        FlatEncoding e = flatten(g, n_max);

        REQUIRE(e.bits.size() == static_cast<std::size_t>(n_max) * n_max);
        CHECK(e.true_n == n);
        CHECK(e.true_len() == static_cast<std::size_t>(n) * n);

        // The true n x n matrix fills the first n^2 slots row-major; everything
        // after that prefix is zero padding.
        int nonzero = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const bool bit = e.bits[static_cast<std::size_t>(i) * n + j] != 0;
                if (i != j)
                    CHECK(bit == g.has_edge(i, j));
                else
                    CHECK_FALSE(bit);
                nonzero += bit;
            }
        for (std::size_t k = e.true_len(); k < e.bits.size(); ++k) CHECK(e.bits[k] == 0);
        CHECK(nonzero == 2 * g.edge_count());
        CHECK(unflatten_oracle(e) == g);
    }
}

TEST_CASE("graph space size follows the exact doubling recurrence", "[graph]") {
    CHECK(graph_space_size(1) == 1);
    CHECK(graph_space_size(2) == 3);
    CHECK(graph_space_size(3) == 11);
    CHECK(graph_space_size(4) == 75);
    CHECK(graph_space_size(10) == BigInt("35253362132043"));
    CHECK(graph_space_size(11) == BigInt("36064050381096011"));

    for (int n = 2; n <= 20; ++n) {
        const BigInt diff = graph_space_size(n) - graph_space_size(n - 1);
        CHECK(diff == BigInt(1) << ((n * n - n) / 2));
    }
    CHECK_THROWS_AS(graph_space_size(0), std::invalid_argument);
}
