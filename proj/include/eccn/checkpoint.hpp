#pragma once

// Model checkpoints. Binary layout (all integers and floats little-endian):
//   bytes 0..7   magic "ECCNCKPT"
//   u32          format version (currently 1)
//   u32          model kind: 0 single-layer RNN, 1 multi-layer RNN, 2 FFN
//   u32          mode: 0 constrained, 1 unconstrained
//   u32          layer count (FFN: 3)
//   u32          hidden width
//   u32          FFN input dimension (0 for the RNNs)
//   u32          tensor count
//   per tensor:  u16 name length, name bytes, u32 ndim, u64 dims[ndim],
//                f64 values in row-major order
// Tensor names: layer<j>.rec, layer<j>.in_w, layer<j>.bias, layer<j>.h0 per
// recurrent layer and out.w, out.b; the FFN uses dense<k>.w, dense<k>.b for
// k = 1..3 plus out.w, out.b. Readers should validate names and shapes.

#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "eccn/rnn.hpp"
#include "eccn/train.hpp"

namespace eccn {

static_assert(std::endian::native == std::endian::little,
              "checkpoint format assumes a little-endian host");

namespace detail {

struct CkptWriter {
    std::string buf;

    void raw(const void* p, std::size_t n) {
        buf.append(static_cast<const char*>(p), n);
    }
    void u16(std::uint16_t v) { raw(&v, 2); }
    void u32(std::uint32_t v) { raw(&v, 4); }
    void u64(std::uint64_t v) { raw(&v, 8); }
    void f64s(const double* p, std::size_t n) { raw(p, n * 8); }

    void tensor(const std::string& name, std::vector<std::uint64_t> dims, const double* data) {
        u16(static_cast<std::uint16_t>(name.size()));
        raw(name.data(), name.size());
        u32(static_cast<std::uint32_t>(dims.size()));
        std::size_t total = 1;
        for (std::uint64_t d : dims) {
            u64(d);
            total *= d;
        }
        f64s(data, total);
    }
};

struct CkptReader {
    std::string buf;
    std::size_t pos = 0;
    std::string path;

    void need(std::size_t n) const {
        if (pos + n > buf.size())
            throw std::runtime_error(path + ": truncated checkpoint");
    }
    void raw(void* p, std::size_t n) {
        need(n);
        std::memcpy(p, buf.data() + pos, n);
        pos += n;
    }
    std::uint16_t u16() { std::uint16_t v; raw(&v, 2); return v; }
    std::uint32_t u32() { std::uint32_t v; raw(&v, 4); return v; }
    std::uint64_t u64() { std::uint64_t v; raw(&v, 8); return v; }

    void tensor(const std::string& name, std::vector<std::uint64_t> dims, double* data) {
        std::uint16_t len = u16();
        need(len);
        std::string got(buf.data() + pos, len);
        pos += len;
        if (got != name)
            throw std::runtime_error(path + ": expected tensor '" + name + "', found '" + got +
                                     "'");
        std::uint32_t ndim = u32();
        if (ndim != dims.size())
            throw std::runtime_error(path + ": tensor '" + name + "' rank mismatch");
        std::size_t total = 1;
        for (std::uint64_t want : dims) {
            std::uint64_t d = u64();
            if (d != want)
                throw std::runtime_error(path + ": tensor '" + name + "' shape mismatch");
            total *= static_cast<std::size_t>(d);
        }
        raw(data, total * 8);
    }
};

inline void write_layer(CkptWriter& w, const RnnLayer& l, int j) {
    std::string p = "layer" + std::to_string(j) + ".";
    std::uint64_t width = static_cast<std::uint64_t>(l.width);
    w.tensor(p + "rec", {width, width}, l.rec.a.data());
    w.tensor(p + "in_w", {width}, l.in_w.data());
    w.tensor(p + "bias", {width}, l.bias.data());
    w.tensor(p + "h0", {width}, l.h0.data());
}

inline void read_layer(CkptReader& r, RnnLayer& l, int j) {
    std::string p = "layer" + std::to_string(j) + ".";
    std::uint64_t width = static_cast<std::uint64_t>(l.width);
    r.tensor(p + "rec", {width, width}, l.rec.a.data());
    r.tensor(p + "in_w", {width}, l.in_w.data());
    r.tensor(p + "bias", {width}, l.bias.data());
    r.tensor(p + "h0", {width}, l.h0.data());
}

}  // namespace detail

inline void save_checkpoint(const std::string& path, const Model& model) {
    detail::CkptWriter w;
    w.raw("ECCNCKPT", 8);
    w.u32(1);
    if (const auto* s = std::get_if<SingleLayerRnn>(&model)) {
        w.u32(0);
        w.u32(s->mode == Mode::Constrained ? 0 : 1);
        w.u32(1);
        w.u32(static_cast<std::uint32_t>(s->width()));
        w.u32(0);
        w.u32(6);
        detail::write_layer(w, s->layer, 0);
        w.tensor("out.w", {static_cast<std::uint64_t>(s->width())}, s->w_out.data());
        w.tensor("out.b", {1}, &s->b_out);
    } else if (const auto* m = std::get_if<MultiLayerRnn>(&model)) {
        w.u32(1);
        w.u32(m->mode == Mode::Constrained ? 0 : 1);
        w.u32(static_cast<std::uint32_t>(m->depth()));
        w.u32(static_cast<std::uint32_t>(m->layers.front().width));
        w.u32(0);
        w.u32(static_cast<std::uint32_t>(4 * m->depth() + 2));
        for (int j = 0; j < m->depth(); ++j) detail::write_layer(w, m->layers[j], j);
        w.tensor("out.w", {static_cast<std::uint64_t>(m->layers.back().width)},
                 m->w_out.data());
        w.tensor("out.b", {1}, &m->b_out);
    } else {
        const FeedForward& f = std::get<FeedForward>(model);
        w.u32(2);
        w.u32(1);
        w.u32(3);
        w.u32(static_cast<std::uint32_t>(f.hidden));
        w.u32(static_cast<std::uint32_t>(f.in_dim));
        w.u32(8);
        std::uint64_t h = static_cast<std::uint64_t>(f.hidden);
        std::uint64_t in = static_cast<std::uint64_t>(f.in_dim);
        w.tensor("dense1.w", {h, in}, f.w1.a.data());
        w.tensor("dense1.b", {h}, f.b1.data());
        w.tensor("dense2.w", {h, h}, f.w2.a.data());
        w.tensor("dense2.b", {h}, f.b2.data());
        w.tensor("dense3.w", {h, h}, f.w3.a.data());
        w.tensor("dense3.b", {h}, f.b3.data());
        w.tensor("out.w", {h}, f.w_out.data());
        w.tensor("out.b", {1}, &f.b_out);
    }
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp);
        out.write(w.buf.data(), static_cast<std::streamsize>(w.buf.size()));
        if (!out) throw std::runtime_error("short write to " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

inline Model load_checkpoint(const std::string& path) {
    detail::CkptReader r;
    r.path = path;
    {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw std::runtime_error("cannot open " + path);
        std::ostringstream ss;
        ss << in.rdbuf();
        r.buf = ss.str();
    }
    char magic[8];
    r.raw(magic, 8);
    if (std::memcmp(magic, "ECCNCKPT", 8) != 0)
        throw std::runtime_error(path + ": not a checkpoint file (bad magic)");
    std::uint32_t version = r.u32();
    if (version != 1)
        throw std::runtime_error(path + ": unsupported checkpoint version " +
                                 std::to_string(version));
    std::uint32_t kind = r.u32();
    std::uint32_t mode_raw = r.u32();
    std::uint32_t layers = r.u32();
    std::uint32_t hidden = r.u32();
    std::uint32_t in_dim = r.u32();
    std::uint32_t tensors = r.u32();
    Mode mode = mode_raw == 0 ? Mode::Constrained : Mode::Unconstrained;
    if (hidden < 1 || hidden > 1u << 20)
        throw std::runtime_error(path + ": implausible hidden width");

    if (kind == 0) {
        if (layers != 1 || tensors != 6)
            throw std::runtime_error(path + ": malformed single-layer checkpoint");
        SingleLayerRnn m;
        m.layer = RnnLayer(static_cast<int>(hidden));
        m.w_out.assign(hidden, 0.0);
        m.mode = mode;
        detail::read_layer(r, m.layer, 0);
        r.tensor("out.w", {hidden}, m.w_out.data());
        r.tensor("out.b", {1}, &m.b_out);
        return m;
    }
    if (kind == 1) {
        if (layers < 1 || tensors != 4 * layers + 2)
            throw std::runtime_error(path + ": malformed multi-layer checkpoint");
        MultiLayerRnn m;
        m.mode = mode;
        for (std::uint32_t j = 0; j < layers; ++j) {
            m.layers.emplace_back(static_cast<int>(hidden));
            detail::read_layer(r, m.layers.back(), static_cast<int>(j));
        }
        m.w_out.assign(hidden, 0.0);
        r.tensor("out.w", {hidden}, m.w_out.data());
        r.tensor("out.b", {1}, &m.b_out);
        return m;
    }
    if (kind == 2) {
        if (layers != 3 || tensors != 8 || in_dim < 1)
            throw std::runtime_error(path + ": malformed feed-forward checkpoint");
        FeedForward f(static_cast<int>(in_dim), static_cast<int>(hidden));
        std::uint64_t h = hidden, in = in_dim;
        r.tensor("dense1.w", {h, in}, f.w1.a.data());
        r.tensor("dense1.b", {h}, f.b1.data());
        r.tensor("dense2.w", {h, h}, f.w2.a.data());
        r.tensor("dense2.b", {h}, f.b2.data());
        r.tensor("dense3.w", {h, h}, f.w3.a.data());
        r.tensor("dense3.b", {h}, f.b3.data());
        r.tensor("out.w", {h}, f.w_out.data());
        r.tensor("out.b", {1}, &f.b_out);
        return f;
    }
    throw std::runtime_error(path + ": unknown model kind " + std::to_string(kind));
}

}  // namespace eccn
