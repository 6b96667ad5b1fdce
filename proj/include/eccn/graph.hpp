#pragma once

// Undirected simple graphs on at most 64 vertices, adjacency stored as one
// 64-bit neighbor mask per vertex. Includes the Erdos-Renyi generator, the
// flat 0/1 encoding fed to the sequence models, the tab-separated text codec,
// and the exact count of labeled graphs with at most n vertices.

#include <boost/multiprecision/cpp_int.hpp>

#include <charconv>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "eccn/bits.hpp"
#include "eccn/rng.hpp"

namespace eccn {

using BigInt = boost::multiprecision::cpp_int;

// Thrown by the text codecs; message carries line number and field name.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
    ParseError(int line, const std::string& field, const std::string& detail)
        : std::runtime_error("line " + std::to_string(line) + ": " + field + ": " + detail) {}
};

class Graph {
public:
    Graph() = default;

    explicit Graph(int n) : n_(n), adj_(static_cast<std::size_t>(n), 0) {
        if (n < 1 || n > 64)
            throw std::invalid_argument("Graph: vertex count must be in [1, 64], got " +
                                        std::to_string(n));
    }

    int n() const { return n_; }

    void add_edge(int i, int j) {
        check_vertex(i);
        check_vertex(j);
        if (i == j) throw std::invalid_argument("Graph::add_edge: self-loop rejected");
        adj_[i] |= vs_bit(j);
        adj_[j] |= vs_bit(i);
    }

    bool has_edge(int i, int j) const {
        check_vertex(i);
        check_vertex(j);
        return vs_test(adj_[i], j);
    }

    VertexSet neighbors(int v) const {
        check_vertex(v);
        return adj_[v];
    }

    int degree(int v) const { return vs_count(neighbors(v)); }

    int edge_count() const {
        int twice = 0;
        for (VertexSet s : adj_) twice += vs_count(s);
        return twice / 2;
    }

    VertexSet all_vertices() const {
        return n_ == 64 ? ~VertexSet{0} : (vs_bit(n_) - 1);
    }

    // Index of edge (i, j), i < j, in row-major upper-triangle order:
    // (0,1), (0,2), ..., (0,n-1), (1,2), ...
    int edge_index(int i, int j) const {
        if (i > j) std::swap(i, j);
        return i * n_ - i * (i + 1) / 2 + (j - i - 1);
    }

    int max_edges() const { return n_ * (n_ - 1) / 2; }

    // Mask with one bit per present edge, indexed by edge_index.
    EdgeMask edge_mask() const {
        EdgeMask m(max_edges());
        for (int i = 0; i < n_; ++i)
            for (int j = i + 1; j < n_; ++j)
                if (vs_test(adj_[i], j)) m.set(edge_index(i, j));
        return m;
    }

    bool operator==(const Graph& o) const { return n_ == o.n_ && adj_ == o.adj_; }

private:
    void check_vertex(int v) const {
        if (v < 0 || v >= n_)
            throw std::invalid_argument("Graph: vertex index " + std::to_string(v) +
                                        " out of range for n=" + std::to_string(n_));
    }

    int n_ = 0;
    std::vector<VertexSet> adj_;
};

// G(n, p): each of the C(n,2) pairs drawn independently. Pairs are visited in
// row-major order (0,1), (0,2), ..., so a fixed seed fixes the graph.
// Stream variant: draws the pair coin flips from a caller-owned generator so a
// record's vertex count and edges can come from one per-record stream.
inline Graph er_generate(int n, double p, Rng& rng) {
    if (n < 1 || n > 64)
        throw std::invalid_argument("er_generate: vertex count must be in [1, 64]");
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("er_generate: edge probability must be in [0, 1]");
    Graph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.uniform() < p) g.add_edge(i, j);
    return g;
}

inline Graph er_generate(int n, double p, std::uint64_t seed) {
    Rng rng(seed);
    return er_generate(n, p, rng);
}

// Flat 0/1 input for the models: the full n x n adjacency matrix in row-major
// order (entry (i,j) at position i*n + j), zero-padded out to n_max^2 slots.
// true_n keeps the original vertex count so consumers can address the
// unpadded prefix of length true_n^2.
struct FlatEncoding {
    std::vector<std::uint8_t> bits;
    int true_n = 0;

    std::size_t true_len() const { return static_cast<std::size_t>(true_n) * true_n; }
};

inline FlatEncoding flatten(const Graph& g, int n_max) {
    if (n_max < g.n() || n_max > 64)
        throw std::invalid_argument("flatten: n_max must satisfy g.n() <= n_max <= 64");
    FlatEncoding e;
    e.true_n = g.n();
    e.bits.assign(static_cast<std::size_t>(n_max) * n_max, 0);
    int n = g.n();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && g.has_edge(i, j)) e.bits[static_cast<std::size_t>(i) * n + j] = 1;
    return e;
}

// Text record: "<n>\t<upper-triangle bits row-major>". A single-vertex graph
// has an empty bit field ("1\t").
inline std::string encode_graph(const Graph& g) {
    std::string s = std::to_string(g.n());
    s.push_back('\t');
    for (int i = 0; i < g.n(); ++i)
        for (int j = i + 1; j < g.n(); ++j) s.push_back(g.has_edge(i, j) ? '1' : '0');
    return s;
}

namespace detail {

inline int parse_vertex_count(std::string_view field, int line) {
    int n = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), n);
    if (ec != std::errc{} || ptr != field.data() + field.size())
        throw ParseError(line, "vertex count", "expected integer, got '" + std::string(field) + "'");
    if (n < 1 || n > 64)
        throw ParseError(line, "vertex count", "must be in [1, 64], got " + std::to_string(n));
    return n;
}

inline Graph parse_graph_bits(int n, std::string_view bits, int line) {
    std::size_t want = static_cast<std::size_t>(n) * (n - 1) / 2;
    if (bits.size() != want)
        throw ParseError(line, "adjacency bits",
                         "expected " + std::to_string(want) + " bits for n=" + std::to_string(n) +
                             ", got " + std::to_string(bits.size()));
    Graph g(n);
    std::size_t k = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            char c = bits[k++];
            if (c == '1')
                g.add_edge(i, j);
            else if (c != '0')
                throw ParseError(line, "adjacency bits",
                                 std::string("invalid character '") + c + "' at position " +
                                     std::to_string(k - 1));
        }
    return g;
}

}  // namespace detail

// Decode one "<n>\t<bits>" record. `line` is used for error messages only.
inline Graph decode_graph(std::string_view record, int line = 1) {
    std::size_t tab = record.find('\t');
    if (tab == std::string_view::npos)
        throw ParseError(line, "record", "expected '<n>\\t<bits>', no tab found");
    int n = detail::parse_vertex_count(record.substr(0, tab), line);
    return detail::parse_graph_bits(n, record.substr(tab + 1), line);
}

// Number of labeled simple graphs with at most n vertices:
// sum_{i=1}^{n} 2^(i*(i-1)/2). Exceeds 64-bit range from n=12 on.
inline BigInt graph_space_size(int n) {
    if (n < 1 || n > 64)
        throw std::invalid_argument("graph_space_size: n must be in [1, 64]");
    BigInt total = 0;
    for (int i = 1; i <= n; ++i) total += BigInt(1) << (i * (i - 1) / 2);
    return total;
}

}  // namespace eccn
