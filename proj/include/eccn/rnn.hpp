#pragma once

// The models: single- and multi-layer ReLU RNNs (with the constraint set that
// pins their outputs inside [0,1]) and a three-hidden-layer feed-forward
// baseline. Forward passes accumulate strictly left-to-right in index order so
// results are bit-stable across runs and platforms.

#include <cassert>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

#include "eccn/graph.hpp"
#include "eccn/projection.hpp"
#include "eccn/rng.hpp"

namespace eccn {

struct Matrix {
    int rows = 0, cols = 0;
    std::vector<double> a;

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0.0) {}

    double& at(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
    double at(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }
    double* row(int r) { return a.data() + static_cast<std::size_t>(r) * cols; }
    const double* row(int r) const { return a.data() + static_cast<std::size_t>(r) * cols; }
};

enum class Mode { Constrained, Unconstrained };

// One recurrent layer of width w. rec.row(i) holds the weights feeding hidden
// unit i from the previous hidden state (the i-th column of the conventional
// recurrent matrix, stored row-contiguous so both the forward dot product and
// the per-column L1 constraint walk contiguous memory). in_w is the scalar
// input's weight per unit, h0 the (fixed, untrained) initial state.
struct RnnLayer {
    int width = 0;
    Matrix rec;                  // width x width
    std::vector<double> in_w;    // width
    std::vector<double> bias;    // width
    std::vector<double> h0;      // width; kept at zero, not a trainable tensor

    explicit RnnLayer(int w = 0)
        : width(w), rec(w, w), in_w(w, 0.0), bias(w, 0.0), h0(w, 0.0) {}
};

struct SingleLayerRnn {
    RnnLayer layer;
    std::vector<double> w_out;  // width
    double b_out = 0.0;
    Mode mode = Mode::Constrained;

    int width() const { return layer.width; }
};

struct MultiLayerRnn {
    std::vector<RnnLayer> layers;
    std::vector<double> w_out;  // width of last layer
    double b_out = 0.0;
    Mode mode = Mode::Constrained;

    int depth() const { return static_cast<int>(layers.size()); }
};

// Three ReLU hidden layers of equal width, then a linear unit. Consumes the
// whole padded encoding (fixed input dimension).
struct FeedForward {
    int in_dim = 0, hidden = 0;
    Matrix w1;                  // hidden x in_dim
    std::vector<double> b1;
    Matrix w2;                  // hidden x hidden
    std::vector<double> b2;
    Matrix w3;                  // hidden x hidden
    std::vector<double> b3;
    std::vector<double> w_out;  // hidden
    double b_out = 0.0;

    FeedForward() = default;
    FeedForward(int in, int h)
        : in_dim(in), hidden(h), w1(h, in), b1(h, 0.0), w2(h, h), b2(h, 0.0), w3(h, h),
          b3(h, 0.0), w_out(h, 0.0) {}
};

using Model = std::variant<SingleLayerRnn, MultiLayerRnn, FeedForward>;

namespace detail {

// h_next = relu(bias + Rec·h_prev + in_w·x), accumulated bias first, then the
// recurrent terms in index order, then the input term.
inline void rnn_step(const RnnLayer& l, const std::vector<double>& h_prev, double x,
                     std::vector<double>& h_next) {
    for (int i = 0; i < l.width; ++i) {
        double acc = l.bias[i];
        const double* w = l.rec.row(i);
        for (int j = 0; j < l.width; ++j) acc += w[j] * h_prev[j];
        acc += l.in_w[i] * x;
        h_next[i] = acc > 0.0 ? acc : 0.0;
    }
}

inline double inf_norm(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::fabs(x));
    return m;
}

// Run a stack of layers over the scalar sequence x. Layer 0 consumes x; each
// deeper layer consumes the components of the previous layer's final hidden
// state, one per step. Returns w_out·h_final + b_out.
inline double run_layers(const RnnLayer* layers, int depth, const std::vector<double>& w_out,
                         double b_out, Mode mode, std::span<const double> x) {
    std::vector<double> input(x.begin(), x.end());
    std::vector<double> h, h_next;
    for (int j = 0; j < depth; ++j) {
        const RnnLayer& l = layers[j];
        h = l.h0;
        h_next.assign(l.width, 0.0);
        for (double xi : input) {
            rnn_step(l, h, xi, h_next);
            h.swap(h_next);
            // Constraint chain: each step contracts toward the unit ball.
            assert(mode != Mode::Constrained || inf_norm(h) <= 1.0 + 1e-9);
        }
        input.assign(h.begin(), h.end());
    }
    (void)mode;
    double out = 0.0;
    for (std::size_t i = 0; i < w_out.size(); ++i) out += w_out[i] * input[i];
    return out + b_out;
}

}  // namespace detail

inline double forward_single(const SingleLayerRnn& m, std::span<const double> x) {
    return detail::run_layers(&m.layer, 1, m.w_out, m.b_out, m.mode, x);
}

inline double forward_multi(const MultiLayerRnn& m, std::span<const double> x) {
    if (m.layers.empty()) throw std::invalid_argument("forward_multi: no layers");
    return detail::run_layers(m.layers.data(), m.depth(), m.w_out, m.b_out, m.mode, x);
}

inline double forward_ffn(const FeedForward& m, std::span<const double> x) {
    if (static_cast<int>(x.size()) != m.in_dim)
        throw std::invalid_argument("forward_ffn: input length " + std::to_string(x.size()) +
                                    " does not match input dimension " +
                                    std::to_string(m.in_dim));
    auto dense = [](const Matrix& w, const std::vector<double>& b,
                    std::span<const double> in, std::vector<double>& out) {
        out.assign(w.rows, 0.0);
        for (int i = 0; i < w.rows; ++i) {
            double acc = b[i];
            const double* wr = w.row(i);
            for (int j = 0; j < w.cols; ++j) acc += wr[j] * in[j];
            out[i] = acc > 0.0 ? acc : 0.0;
        }
    };
    std::vector<double> h1, h2, h3;
    dense(m.w1, m.b1, x, h1);
    dense(m.w2, m.b2, h1, h2);
    dense(m.w3, m.b3, h2, h3);
    double out = 0.0;
    for (int i = 0; i < m.hidden; ++i) out += m.w_out[i] * h3[i];
    return out + m.b_out;
}

// Flat-encoding entry points: the sequence models consume the unpadded prefix
// (the true n^2 matrix entries); the feed-forward net consumes the whole
// padded vector.
namespace detail {
inline std::vector<double> as_doubles(const FlatEncoding& e, std::size_t len) {
    std::vector<double> x(len);
    for (std::size_t i = 0; i < len; ++i) x[i] = e.bits[i];
    return x;
}
}  // namespace detail

inline double forward_single(const SingleLayerRnn& m, const FlatEncoding& e) {
    return forward_single(m, detail::as_doubles(e, e.true_len()));
}
inline double forward_multi(const MultiLayerRnn& m, const FlatEncoding& e) {
    return forward_multi(m, detail::as_doubles(e, e.true_len()));
}
inline double forward_ffn(const FeedForward& m, const FlatEncoding& e) {
    return forward_ffn(m, std::span<const double>(detail::as_doubles(e, e.bits.size())));
}

// ---- Constraint projection -------------------------------------------------

inline void project_layer_constraints(RnnLayer& l) {
    for (int i = 0; i < l.width; ++i)
        project_l1(std::span<double>(l.rec.row(i), l.width), 0.25);
    clamp_box(l.in_w, -0.25, 0.25);
    clamp_box(l.bias, -0.5, 0.5);
    clamp_box(l.h0, -1.0, 1.0);
}

inline void project_output_constraints(std::vector<double>& w_out, double& b_out) {
    project_nonneg_l1(w_out, 0.5);
    b_out = std::min(0.5, std::max(0.0, b_out));
}

inline void project_constraints(SingleLayerRnn& m) {
    project_layer_constraints(m.layer);
    project_output_constraints(m.w_out, m.b_out);
}

inline void project_constraints(MultiLayerRnn& m) {
    for (RnnLayer& l : m.layers) project_layer_constraints(l);
    project_output_constraints(m.w_out, m.b_out);
}

// ---- Initialization ---------------------------------------------------------

namespace detail {

// Uniform draw inside the L1 ball of the given radius: uniform direction on
// the cross-polytope surface (normalized exponentials with random signs)
// scaled by a radius with the correct radial density.
inline void draw_in_l1_ball(Rng& rng, std::span<double> out, double radius, bool nonneg) {
    double sum = 0.0;
    for (double& x : out) {
        double u;
        do {
            u = rng.uniform();
        } while (u <= 0.0);
        x = -std::log(u);
        sum += x;
    }
    for (double& x : out) x /= sum;
    if (!nonneg)
        for (double& x : out)
            if (rng.uniform() < 0.5) x = -x;
    double rho = radius * std::pow(rng.uniform(), 1.0 / static_cast<double>(out.size()));
    for (double& x : out) x *= rho;
}

inline void init_layer(RnnLayer& l, Rng& rng, Mode mode) {
    if (mode == Mode::Constrained) {
        for (int i = 0; i < l.width; ++i)
            draw_in_l1_ball(rng, std::span<double>(l.rec.row(i), l.width), 0.25, false);
        for (double& x : l.in_w) x = rng.uniform(-0.25, 0.25);
        for (double& x : l.bias) x = rng.uniform(-0.5, 0.5);
    } else {
        double s = 1.0 / std::sqrt(static_cast<double>(l.width));
        for (double& x : l.rec.a) x = rng.uniform(-s, s);
        for (double& x : l.in_w) x = rng.uniform(-s, s);
        for (double& x : l.bias) x = 0.0;
    }
    for (double& x : l.h0) x = 0.0;  // fixed initial state
}

inline void init_output(std::vector<double>& w_out, double& b_out, Rng& rng, Mode mode) {
    if (mode == Mode::Constrained) {
        draw_in_l1_ball(rng, w_out, 0.5, true);
        b_out = rng.uniform(0.0, 0.5);
    } else {
        double s = 1.0 / std::sqrt(static_cast<double>(w_out.size()));
        for (double& x : w_out) x = rng.uniform(-s, s);
        b_out = 0.0;
    }
}

}  // namespace detail

inline SingleLayerRnn init_single(int width, std::uint64_t seed, Mode mode) {
    if (width < 1) throw std::invalid_argument("init_single: width must be >= 1");
    SingleLayerRnn m;
    m.layer = RnnLayer(width);
    m.w_out.assign(width, 0.0);
    m.mode = mode;
    Rng rng(seed);
    detail::init_layer(m.layer, rng, mode);
    detail::init_output(m.w_out, m.b_out, rng, mode);
    return m;
}

inline MultiLayerRnn init_multi(int width, int depth, std::uint64_t seed, Mode mode) {
    if (width < 1 || depth < 1)
        throw std::invalid_argument("init_multi: width and depth must be >= 1");
    MultiLayerRnn m;
    m.mode = mode;
    Rng rng(seed);
    for (int j = 0; j < depth; ++j) {
        m.layers.emplace_back(width);
        detail::init_layer(m.layers.back(), rng, mode);
    }
    m.w_out.assign(width, 0.0);
    detail::init_output(m.w_out, m.b_out, rng, mode);
    return m;
}

inline FeedForward init_ffn(int in_dim, int hidden, std::uint64_t seed) {
    if (in_dim < 1 || hidden < 1)
        throw std::invalid_argument("init_ffn: dimensions must be >= 1");
    FeedForward m(in_dim, hidden);
    Rng rng(seed);
    auto fill = [&](std::vector<double>& v, int fan_in) {
        double s = 1.0 / std::sqrt(static_cast<double>(fan_in));
        for (double& x : v) x = rng.uniform(-s, s);
    };
    fill(m.w1.a, in_dim);
    fill(m.w2.a, hidden);
    fill(m.w3.a, hidden);
    fill(m.w_out, hidden);
    return m;
}

// ---- Trainable-parameter traversal ------------------------------------------
// Canonical flat order (h0 excluded everywhere):
//   per layer: rec row-major, in_w, bias; then w_out, b_out.
// The flat index space is shared by gradients and the optimizer state.

template <typename F>
void visit_params(SingleLayerRnn& m, F&& f) {
    for (double& x : m.layer.rec.a) f(x);
    for (double& x : m.layer.in_w) f(x);
    for (double& x : m.layer.bias) f(x);
    for (double& x : m.w_out) f(x);
    f(m.b_out);
}

template <typename F>
void visit_params(MultiLayerRnn& m, F&& f) {
    for (RnnLayer& l : m.layers) {
        for (double& x : l.rec.a) f(x);
        for (double& x : l.in_w) f(x);
        for (double& x : l.bias) f(x);
    }
    for (double& x : m.w_out) f(x);
    f(m.b_out);
}

template <typename F>
void visit_params(FeedForward& m, F&& f) {
    for (double& x : m.w1.a) f(x);
    for (double& x : m.b1) f(x);
    for (double& x : m.w2.a) f(x);
    for (double& x : m.b2) f(x);
    for (double& x : m.w3.a) f(x);
    for (double& x : m.b3) f(x);
    for (double& x : m.w_out) f(x);
    f(m.b_out);
}

template <typename M>
std::size_t trainable_param_count(const M& m) {
    std::size_t n = 0;
    visit_params(const_cast<M&>(m), [&](double&) { ++n; });
    return n;
}

inline std::size_t trainable_param_count(const Model& m) {
    return std::visit([](const auto& net) { return trainable_param_count(net); }, m);
}

}  // namespace eccn
