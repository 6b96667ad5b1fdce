// Cover verification, the exact cover-number search, and the greedy heuristic,
// cross-checked against an independent search over all cliques (not only the
// maximal ones).

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <vector>

#include "eccn/cliques.hpp"
#include "eccn/cover.hpp"
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

Graph fig_left() {
    // Complete graph on {0..4} plus the edges {0,5}, {4,5}, {4,6}.
    Graph g(7);
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j) g.add_edge(i, j);
    g.add_edge(0, 5);
    g.add_edge(4, 5);
    g.add_edge(4, 6);
    return g;
}

Graph die_graph() {
    Graph g(8);
    bool non[8][8] = {};
    auto mark = [&](int a, int b) { non[a][b] = non[b][a] = true; };
    mark(0, 6);
    mark(1, 7);
    mark(2, 4);
    mark(3, 5);
    for (int i = 0; i < 8; ++i)
        for (int j = i + 1; j < 8; ++j)
            if (!non[i][j]) g.add_edge(i, j);
    return g;
}

Graph complete(int n) {
    Graph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
}

bool is_clique(const Graph& g, VertexSet s) {
    bool ok = true;
    vs_for_each(s, [&](int a) {
        vs_for_each(s, [&](int b) {
            if (a < b && !g.has_edge(a, b)) ok = false;
        });
    });
    return ok;
}

// All cliques with >= 2 vertices, by subset enumeration.
std::vector<VertexSet> all_cliques(const Graph& g) {
    std::vector<VertexSet> out;
    for (VertexSet s = 1; s < (VertexSet(1) << g.n()); ++s)
        if (vs_count(s) >= 2 && is_clique(g, s)) out.push_back(s);
    return out;
}

EdgeMask clique_edges(const Graph& g, VertexSet s) {
    EdgeMask m(g.max_edges());
    vs_for_each(s, [&](int a) {
        vs_for_each(s, [&](int b) {
            if (a < b) m.set(g.edge_index(a, b));
        });
    });
    return m;
}

bool oracle_coverable(const Graph& g, const std::vector<VertexSet>& cliques,
                      const std::vector<EdgeMask>& masks, const EdgeMask& covered, int left) {
    // Find the first uncovered edge and try every clique that contains it.
    int missing = -1;
    for (int i = 0; i < g.n() && missing < 0; ++i)
        for (int j = i + 1; j < g.n() && missing < 0; ++j)
            if (g.has_edge(i, j) && !covered.test(g.edge_index(i, j))) missing = g.edge_index(i, j);
    if (missing < 0) return true;
    if (left == 0) return false;
    for (std::size_t k = 0; k < cliques.size(); ++k) {
        if (!masks[k].test(missing)) continue;
        EdgeMask next = covered;
        next |= masks[k];
        if (oracle_coverable(g, cliques, masks, next, left - 1)) return true;
    }
    return false;
}

// Independent minimum-cover search over ALL cliques of the graph, by
// iterative deepening. Every clique in an optimal cover could be replaced by
// a maximal superset, so this must agree with the production search that only
// considers maximal cliques.
int eccn_oracle(const Graph& g) {
    if (g.edge_count() == 0) return 0;
    auto cliques = all_cliques(g);
    std::vector<EdgeMask> masks;
    masks.reserve(cliques.size());
    for (VertexSet s : cliques) masks.push_back(clique_edges(g, s));
    for (int k = 1;; ++k) {
        EdgeMask none(g.max_edges());
        if (oracle_coverable(g, cliques, masks, none, k)) return k;
    }
}

}  // namespace

TEST_CASE("cover verification accepts valid covers and localizes violations", "[cover]") {
    Graph tri = triangle();

    EdgeCliqueCover whole{{vs_bit(0) | vs_bit(1) | vs_bit(2)}};
    CHECK(verify_cover(tri, whole).valid);

    EdgeCliqueCover partial{{vs_bit(0) | vs_bit(1)}};
    CoverCheck c = verify_cover(tri, partial);
    REQUIRE_FALSE(c.valid);
    CHECK(c.kind == CoverCheck::Violation::UncoveredEdge);
    // Scan order: higher endpoint ascending, lower endpoint descending under
    // it, so (1,2) is reported before (0,2).
    CHECK(c.u == 1);
    CHECK(c.v == 2);

    Graph path(3);
    path.add_edge(0, 1);
    path.add_edge(1, 2);
    EdgeCliqueCover notclique{{vs_bit(0) | vs_bit(1) | vs_bit(2)}};
    CoverCheck nc = verify_cover(path, notclique);
    REQUIRE_FALSE(nc.valid);
    CHECK(nc.kind == CoverCheck::Violation::NotAClique);
    CHECK(nc.clique_index == 0);
    CHECK(nc.u == 0);
    CHECK(nc.v == 2);

    EdgeCliqueCover outside{{vs_bit(0) | vs_bit(5)}};
    CoverCheck bv = verify_cover(tri, outside);
    REQUIRE_FALSE(bv.valid);
    CHECK(bv.kind == CoverCheck::Violation::BadVertex);
    CHECK(bv.u == 5);

    CHECK(verify_cover(fig_left(), EdgeCliqueCover{{
                                       vs_bit(0) | vs_bit(1) | vs_bit(2) | vs_bit(3) | vs_bit(4),
                                       vs_bit(0) | vs_bit(4) | vs_bit(5),
                                       vs_bit(4) | vs_bit(6),
                                   }})
              .valid);
}

TEST_CASE("exact cover numbers on reference graphs", "[cover]") {
    CHECK(exact_eccn(Graph(4)).eccn == 0);
    CHECK(exact_eccn(Graph(4)).solved);
    CHECK(exact_eccn(triangle()).eccn == 1);

    Graph path(3);
    path.add_edge(0, 1);
    path.add_edge(1, 2);
    CHECK(exact_eccn(path).eccn == 2);

    EccnResult left = exact_eccn(fig_left());
    REQUIRE(left.solved);
    CHECK(left.eccn == 3);
    CHECK(verify_cover(fig_left(), left.witness).valid);
    CHECK(left.witness.size() == 3);

    EccnResult die = exact_eccn(die_graph());
    REQUIRE(die.solved);
    CHECK(die.eccn == 5);
    CHECK(verify_cover(die_graph(), die.witness).valid);

    for (int n = 2; n <= 10; ++n) CHECK(exact_eccn(complete(n)).eccn == 1);
}

TEST_CASE("an exhausted budget reports unsolved, never a wrong number", "[cover]") {
    EccnResult r = exact_eccn(die_graph(), 3);
    CHECK_FALSE(r.solved);
    CHECK(r.eccn == -1);
    CHECK(r.attempts > 3);  // unsolved only because the cap was the binding constraint

    // A budget that merely truncates the optimum-size certificate must not
    // produce a smaller-than-true answer on any tested graph.
    Rng rng(5);
    for (int iter = 0; iter < 50; ++iter) {
        Graph g = er_generate(6, 0.5, rng.next_u64());
        EccnResult full = exact_eccn(g);
        EccnResult tight = exact_eccn(g, 10);
        if (tight.solved) CHECK(tight.eccn == full.eccn);
    }
}

TEST_CASE("every witness passes verification", "[cover]") {
    Rng rng(31);
    const double ps[3] = {0.1, 0.5, 0.9};
    for (int iter = 0; iter < 200; ++iter) {
        const int n = 1 + static_cast<int>(rng.uniform_int(8));
        Graph g = er_generate(n, ps[iter % 3], rng.next_u64());
        EccnResult r = exact_eccn(g);
        REQUIRE(r.solved);
        CHECK(verify_cover(g, r.witness).valid);
        CHECK(r.witness.size() == r.eccn);
        CHECK(r.eccn <= static_cast<int>(maximal_cliques(g).size()));
    }
}

TEST_CASE("restricting the search to maximal cliques loses nothing", "[cover]") {
    // Exhaustive over every graph on 4 labeled vertices...
    for (unsigned bits = 0; bits < 64; ++bits) {
        Graph g(4);
        unsigned k = 0;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j, ++k)
                if (bits >> k & 1) g.add_edge(i, j);
        CHECK(exact_eccn(g).eccn == eccn_oracle(g));
    }
    // ...plus random graphs with 5-6 vertices.
    Rng rng(77);
    const double ps[3] = {0.1, 0.5, 0.9};
    for (int iter = 0; iter < 100; ++iter) {
        const int n = 5 + static_cast<int>(rng.uniform_int(2));
        Graph g = er_generate(n, ps[iter % 3], rng.next_u64());
        CHECK(exact_eccn(g).eccn == eccn_oracle(g));
    }
}

TEST_CASE("greedy heuristic covers on fixed examples", "[cover]") {
    CHECK(kellerman_cover(triangle()).size() == 1);

    Graph star(4);  // center 0; no two edges share a clique
    star.add_edge(0, 1);
    star.add_edge(0, 2);
    star.add_edge(0, 3);
    EdgeCliqueCover sc = kellerman_cover(star);
    CHECK(sc.size() == 3);
    CHECK(verify_cover(star, sc).valid);

    for (int n = 2; n <= 10; ++n) {
        EdgeCliqueCover c = kellerman_cover(complete(n));
        CHECK(c.size() == 1);  // matches the exact optimum on complete graphs
        CHECK(verify_cover(complete(n), c).valid);
    }

    CHECK(kellerman_cover(Graph(5)).size() == 0);
}

TEST_CASE("greedy heuristic is valid and never beats the optimum", "[cover]") {
    Rng rng(404);
    const double ps[3] = {0.1, 0.5, 0.9};
    for (int iter = 0; iter < 500; ++iter) {
        const int n = 1 + static_cast<int>(rng.uniform_int(9));
        Graph g = er_generate(n, ps[iter % 3], rng.next_u64());
        EdgeCliqueCover c = kellerman_cover(g);
        CHECK(verify_cover(g, c).valid);
        EccnResult e = exact_eccn(g);
        REQUIRE(e.solved);
        CHECK(c.size() >= e.eccn);
    }
}

TEST_CASE("witness serialization lists cliques as brace groups", "[cover]") {
    EdgeCliqueCover c{{vs_bit(0) | vs_bit(1) | vs_bit(2), vs_bit(2) | vs_bit(3)}};
    CHECK(format_witness(c) == "{0,1,2};{2,3}");
    CHECK(format_witness(EdgeCliqueCover{}) == "");
}
