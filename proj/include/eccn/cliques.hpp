#pragma once

// Maximal-clique enumeration: Bron-Kerbosch with pivoting. Cliques are 64-bit
// vertex masks; the pivot is the vertex of P∪X with the most candidates in P
// (ties broken toward the lowest vertex index), which keeps the recursion
// shallow on dense graphs.

#include <algorithm>
#include <vector>

#include "eccn/bits.hpp"
#include "eccn/graph.hpp"

namespace eccn {

namespace detail {

inline void bron_kerbosch(const Graph& g, VertexSet r, VertexSet p, VertexSet x,
                          std::vector<VertexSet>& out) {
    if (p == 0 && x == 0) {
        out.push_back(r);
        return;
    }
    int pivot = -1;
    int best = -1;
    vs_for_each(p | x, [&](int u) {
        int c = vs_count(p & g.neighbors(u));
        if (c > best) {
            best = c;
            pivot = u;
        }
    });
    VertexSet ext = p & ~g.neighbors(pivot);
    vs_for_each(ext, [&](int v) {
        VertexSet nb = g.neighbors(v);
        bron_kerbosch(g, r | vs_bit(v), p & nb, x & nb, out);
        p &= ~vs_bit(v);
        x |= vs_bit(v);
    });
}

}  // namespace detail

// All inclusion-maximal cliques, each exactly once, in ascending order of the
// vertex bitmask (vertex 0 is the least-significant bit). Isolated vertices
// appear as singleton cliques.
inline std::vector<VertexSet> maximal_cliques(const Graph& g) {
    std::vector<VertexSet> out;
    detail::bron_kerbosch(g, 0, g.all_vertices(), 0, out);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace eccn
