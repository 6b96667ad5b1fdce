#pragma once

// Edge clique covers: verification, the exact cover number by bounded search
// over maximal cliques, and the Kellerman greedy heuristic with redundancy
// removal.

#include <cstdint>
#include <string>
#include <vector>

#include "eccn/bits.hpp"
#include "eccn/cliques.hpp"
#include "eccn/graph.hpp"

namespace eccn {

struct EdgeCliqueCover {
    std::vector<VertexSet> cliques;

    int size() const { return static_cast<int>(cliques.size()); }
};

// Outcome of verify_cover. On failure, `kind` plus the location fields
// identify the first violation found.
struct CoverCheck {
    enum class Violation { None, BadVertex, NotAClique, UncoveredEdge };

    bool valid = true;
    Violation kind = Violation::None;
    int clique_index = -1;  // offending clique (BadVertex / NotAClique)
    int u = -1, v = -1;     // offending pair or uncovered edge

    std::string describe() const {
        switch (kind) {
            case Violation::None:
                return "valid";
            case Violation::BadVertex:
                return "clique " + std::to_string(clique_index) + " names vertex " +
                       std::to_string(u) + " outside the graph";
            case Violation::NotAClique:
                return "clique " + std::to_string(clique_index) + " has non-adjacent pair (" +
                       std::to_string(u) + "," + std::to_string(v) + ")";
            case Violation::UncoveredEdge:
                return "uncovered edge (" + std::to_string(u) + "," + std::to_string(v) + ")";
        }
        return "?";
    }
};

// True iff every listed set is a clique of g and the union of their induced
// edges is the whole edge set. Cliques are checked in list order, pairs within
// a clique in ascending (u,v) order. Coverage is then scanned with the higher
// endpoint ascending and the lower endpoint descending beneath it, i.e.
// (0,1), (1,2), (0,2), (2,3), (1,3), (0,3), ...; the first uncovered edge in
// that order is reported.
inline CoverCheck verify_cover(const Graph& g, const EdgeCliqueCover& c) {
    CoverCheck res;
    for (std::size_t k = 0; k < c.cliques.size(); ++k) {
        VertexSet s = c.cliques[k];
        if (s >> g.n()) {
            res.valid = false;
            res.kind = CoverCheck::Violation::BadVertex;
            res.clique_index = static_cast<int>(k);
            res.u = vs_lowest(s >> g.n()) + g.n();
            return res;
        }
        bool bad = false;
        vs_for_each(s, [&](int a) {
            if (bad) return;
            vs_for_each(s & ~((vs_bit(a) << 1) - 1), [&](int b) {
                if (!bad && !g.has_edge(a, b)) {
                    res.valid = false;
                    res.kind = CoverCheck::Violation::NotAClique;
                    res.clique_index = static_cast<int>(k);
                    res.u = a;
                    res.v = b;
                    bad = true;
                }
            });
        });
        if (bad) return res;
    }
    EdgeMask covered(g.max_edges());
    for (VertexSet s : c.cliques) {
        vs_for_each(s, [&](int a) {
            vs_for_each(s & ~((vs_bit(a) << 1) - 1),
                        [&](int b) { covered.set(g.edge_index(a, b)); });
        });
    }
    for (int j = 1; j < g.n(); ++j)
        for (int i = j - 1; i >= 0; --i)
            if (g.has_edge(i, j) && !covered.test(g.edge_index(i, j))) {
                res.valid = false;
                res.kind = CoverCheck::Violation::UncoveredEdge;
                res.u = i;
                res.v = j;
                return res;
            }
    return res;
}

// Report serialization of a cover: semicolon-separated vertex lists, e.g.
// "{0,1,2};{2,3}", vertices 0-indexed ascending within each clique.
inline std::string format_witness(const EdgeCliqueCover& c) {
    std::string out;
    for (std::size_t k = 0; k < c.cliques.size(); ++k) {
        if (k) out += ';';
        out += '{';
        bool first = true;
        vs_for_each(c.cliques[k], [&](int v) {
            if (!first) out += ',';
            first = false;
            out += std::to_string(v);
        });
        out += '}';
    }
    return out;
}

struct EccnResult {
    bool solved = false;       // false: budget exhausted before a cover was proven minimal
    int eccn = -1;             // minimum cover size when solved
    EdgeCliqueCover witness;   // a minimum cover when solved
    std::uint64_t attempts = 0;  // clique placements tried during the search
};

namespace detail {

struct CoverSearch {
    const std::vector<EdgeMask>* clique_edges;
    const std::vector<std::vector<int>>* covering;  // per edge: cliques covering it
    int max_clique_edges = 0;
    std::uint64_t budget = 0;
    std::uint64_t attempts = 0;
    bool exhausted = false;
    std::vector<int> chosen;

    // Depth-limited: can `depth` more cliques finish covering the target set?
    bool extend(const EdgeMask& covered, const EdgeMask& target, int depth) {
        EdgeMask remaining = target.minus(covered);
        int rem = remaining.count();
        if (rem == 0) return true;
        if (depth == 0) return false;
        // No subset of `depth` cliques can cover more than this many edges.
        if (static_cast<long long>(depth) * max_clique_edges < rem) return false;
        int e = remaining.first_set();
        for (int ci : (*covering)[e]) {
            if (exhausted) return false;
            if (++attempts > budget) {
                exhausted = true;
                return false;
            }
            EdgeMask next = covered;
            next |= (*clique_edges)[ci];
            chosen.push_back(ci);
            if (extend(next, target, depth - 1)) return true;
            chosen.pop_back();
        }
        return false;
    }
};

inline EdgeMask clique_edge_mask(const Graph& g, VertexSet s) {
    EdgeMask m(g.max_edges());
    vs_for_each(s, [&](int a) {
        vs_for_each(s & ~((vs_bit(a) << 1) - 1), [&](int b) { m.set(g.edge_index(a, b)); });
    });
    return m;
}

}  // namespace detail

// Minimum number of maximal cliques covering every edge, with a witness.
// Restricting the search to maximal cliques loses nothing: any clique in a
// cover can be grown to a maximal one without uncovering anything. The search
// deepens k = 1, 2, ... and at each node branches over the cliques containing
// the first still-uncovered edge (complete, since some chosen clique must
// cover that edge). `budget` caps the total number of clique placements
// tried; when it runs out the result reports unsolved rather than a guess.
inline EccnResult exact_eccn(const Graph& g, std::uint64_t budget = 20'000'000) {
    EccnResult res;
    EdgeMask target = g.edge_mask();
    if (target.none()) {
        res.solved = true;
        res.eccn = 0;
        return res;
    }
    std::vector<VertexSet> cliques = maximal_cliques(g);
    std::vector<EdgeMask> clique_edges;
    clique_edges.reserve(cliques.size());
    for (VertexSet s : cliques) clique_edges.push_back(detail::clique_edge_mask(g, s));

    std::vector<std::vector<int>> covering(target.size());
    int max_clique_edges = 0;
    for (std::size_t ci = 0; ci < clique_edges.size(); ++ci) {
        max_clique_edges = std::max(max_clique_edges, clique_edges[ci].count());
        for (int e = 0; e < target.size(); ++e)
            if (clique_edges[ci].test(e)) covering[e].push_back(static_cast<int>(ci));
    }

    detail::CoverSearch search;
    search.clique_edges = &clique_edges;
    search.covering = &covering;
    search.max_clique_edges = max_clique_edges;
    search.budget = budget;

    EdgeMask empty(target.size());
    for (int k = 1; k <= static_cast<int>(cliques.size()); ++k) {
        if (search.extend(empty, target, k)) {
            res.solved = true;
            res.eccn = k;
            for (int ci : search.chosen) res.witness.cliques.push_back(cliques[ci]);
            res.attempts = search.attempts;
            return res;
        }
        if (search.exhausted) break;
    }
    res.attempts = search.attempts;
    res.solved = false;  // budget ran out (a cover of size = clique count always exists)
    return res;
}

// Kellerman's greedy cover heuristic. Vertices are processed in index order;
// for vertex i let W = its already-processed neighbors. If W is empty, i
// starts no clique. Otherwise i first joins every existing clique wholly
// contained in W; then, while some back-edges of i remain uncovered (U), the
// existing clique C maximizing |C ∩ U| (tie: lowest clique index) spawns the
// new clique (C ∩ W) ∪ {i}. When no existing clique meets U (including the
// very first edge processed), the pair {i, min U} is emitted instead so the
// loop always advances. A final pass deletes, in creation order, any clique
// whose edges are all covered by the others.
inline EdgeCliqueCover kellerman_cover(const Graph& g) {
    std::vector<VertexSet> cliques;
    EdgeMask covered(g.max_edges());

    for (int i = 0; i < g.n(); ++i) {
        VertexSet w = g.neighbors(i) & (vs_bit(i) - 1);
        if (w == 0) continue;

        for (VertexSet& c : cliques)
            if ((c & ~w) == 0) {
                vs_for_each(c, [&](int a) { covered.set(g.edge_index(a, i)); });
                c |= vs_bit(i);
            }

        auto uncovered_back = [&]() {
            VertexSet u = 0;
            vs_for_each(w, [&](int a) {
                if (!covered.test(g.edge_index(a, i))) u |= vs_bit(a);
            });
            return u;
        };

        for (VertexSet u = uncovered_back(); u != 0; u = uncovered_back()) {
            int best = -1;
            int best_overlap = 0;
            for (std::size_t k = 0; k < cliques.size(); ++k) {
                int overlap = vs_count(cliques[k] & u);
                if (overlap > best_overlap) {
                    best_overlap = overlap;
                    best = static_cast<int>(k);
                }
            }
            VertexSet fresh;
            if (best < 0) {
                fresh = vs_bit(i) | vs_bit(vs_lowest(u));
            } else {
                fresh = (cliques[best] & w) | vs_bit(i);
            }
            vs_for_each(fresh & ~vs_bit(i), [&](int a) { covered.set(g.edge_index(a, i)); });
            cliques.push_back(fresh);
        }
    }

    // Redundancy pass: drop any clique all of whose edges have multiplicity
    // ≥ 2, scanning in creation order and updating counts as cliques go.
    std::vector<int> owners(g.max_edges(), 0);
    std::vector<EdgeMask> masks;
    masks.reserve(cliques.size());
    for (VertexSet s : cliques) {
        EdgeMask m = detail::clique_edge_mask(g, s);
        for (int e = 0; e < g.max_edges(); ++e)
            if (m.test(e)) ++owners[e];
        masks.push_back(std::move(m));
    }
    std::vector<bool> keep(cliques.size(), true);
    for (std::size_t k = 0; k < cliques.size(); ++k) {
        bool redundant = true;
        for (int e = 0; e < g.max_edges() && redundant; ++e)
            if (masks[k].test(e) && owners[e] < 2) redundant = false;
        if (redundant) {
            keep[k] = false;
            for (int e = 0; e < g.max_edges(); ++e)
                if (masks[k].test(e)) --owners[e];
        }
    }

    EdgeCliqueCover out;
    for (std::size_t k = 0; k < cliques.size(); ++k)
        if (keep[k]) out.cliques.push_back(cliques[k]);
    return out;
}

}  // namespace eccn
