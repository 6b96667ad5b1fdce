#pragma once

// Labeled datasets: the on-disk text format (header + one record per line),
// the stratified 70/10/20 split, label normalization, and Gaussian label
// noise. Files are written atomically (temp file + rename) with '\n' line
// ends, '.' decimal separator, and locale-independent number formatting.

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "eccn/graph.hpp"
#include "eccn/rng.hpp"

namespace eccn {

// An a-priori cap on the cover number of any graph with <= n_max vertices,
// used as the normalization divisor so labels land in [0,1].
inline int label_scale_for(int n_max) { return n_max * n_max / 4; }

struct DatasetRecord {
    Graph g;
    FlatEncoding enc;
    std::vector<double> x;  // padded encoding as doubles; models read prefixes of this
    int raw_label = 0;
    double norm_label = 0.0;

    std::span<const double> seq() const {  // the unpadded model input
        return std::span<const double>(x.data(), enc.true_len());
    }
};

struct DatasetProvenance {
    std::string scenario;  // sparse | medium | dense | mixed | (empty when unknown)
    int n_min = 0, n_max_gen = 0;
    std::uint64_t base_seed = 0;
};

struct LabeledDataset {
    int n_max = 0;
    double label_scale = 0.0;
    std::vector<DatasetRecord> records;
    DatasetProvenance prov;  // in-memory only; not serialized
};

// Shortest round-trip decimal text for a double (locale-independent). All
// real numbers in emitted files go through this, so equal file text means
// bitwise-equal values.
inline std::string format_double(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) throw std::runtime_error("format_double failed");
    return std::string(buf, p);
}

namespace detail {

inline void finish_record(DatasetRecord& rec, int n_max) {
    rec.enc = flatten(rec.g, n_max);
    rec.x.assign(rec.enc.bits.size(), 0.0);
    for (std::size_t i = 0; i < rec.enc.bits.size(); ++i) rec.x[i] = rec.enc.bits[i];
}

}  // namespace detail

inline DatasetRecord make_record(Graph g, int raw_label, int n_max, double label_scale) {
    DatasetRecord rec;
    rec.g = std::move(g);
    rec.raw_label = raw_label;
    rec.norm_label = raw_label / label_scale;
    detail::finish_record(rec, n_max);
    return rec;
}

// Header line: "#eccn-dataset v1 n_max=<k> label_scale=<float>"
// Record lines: "<n>\t<upper-triangle bits>\t<eccn>"
inline void write_dataset(const std::string& path, const LabeledDataset& ds) {
    std::string body = "#eccn-dataset v1 n_max=" + std::to_string(ds.n_max) +
                       " label_scale=" + format_double(ds.label_scale) + "\n";
    for (const DatasetRecord& r : ds.records) {
        body += encode_graph(r.g);
        body.push_back('\t');
        body += std::to_string(r.raw_label);
        body.push_back('\n');
    }
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp);
        out.write(body.data(), static_cast<std::streamsize>(body.size()));
        if (!out) throw std::runtime_error("short write to " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

inline LabeledDataset read_dataset(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    LabeledDataset ds;
    std::string line;
    if (!std::getline(in, line)) throw ParseError(1, "header", "empty file");

    const std::string prefix = "#eccn-dataset v1 n_max=";
    if (line.rfind(prefix, 0) != 0)
        throw ParseError(1, "header", "expected '#eccn-dataset v1 n_max=...'");
    std::size_t pos = prefix.size();
    std::size_t sp = line.find(' ', pos);
    if (sp == std::string::npos || line.compare(sp, 13, " label_scale=") != 0)
        throw ParseError(1, "header", "missing label_scale field");
    {
        auto [p, ec] = std::from_chars(line.data() + pos, line.data() + sp, ds.n_max);
        if (ec != std::errc{} || p != line.data() + sp || ds.n_max < 1 || ds.n_max > 64)
            throw ParseError(1, "n_max", "expected integer in [1,64]");
    }
    {
        std::string scale = line.substr(sp + 13);
        try {
            std::size_t used = 0;
            ds.label_scale = std::stod(scale, &used);
            if (used != scale.size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw ParseError(1, "label_scale", "expected a number, got '" + scale + "'");
        }
        if (!(ds.label_scale > 0.0))
            throw ParseError(1, "label_scale", "must be positive");
    }

    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::size_t t1 = line.find('\t');
        if (t1 == std::string::npos)
            throw ParseError(lineno, "record", "expected '<n>\\t<bits>\\t<label>'");
        std::size_t t2 = line.find('\t', t1 + 1);
        if (t2 == std::string::npos)
            throw ParseError(lineno, "record", "missing label field");
        Graph g = decode_graph(std::string_view(line).substr(0, t2), lineno);
        if (g.n() > ds.n_max)
            throw ParseError(lineno, "vertex count",
                             "record has n=" + std::to_string(g.n()) + " > header n_max=" +
                                 std::to_string(ds.n_max));
        int label = 0;
        std::string_view lf = std::string_view(line).substr(t2 + 1);
        auto [p, ec] = std::from_chars(lf.data(), lf.data() + lf.size(), label);
        if (ec != std::errc{} || p != lf.data() + lf.size())
            throw ParseError(lineno, "label", "expected integer, got '" + std::string(lf) + "'");
        if (label < 0 || label > ds.label_scale)
            throw ParseError(lineno, "label",
                             "label " + std::to_string(label) + " outside [0, label_scale]");
        ds.records.push_back(make_record(std::move(g), label, ds.n_max, ds.label_scale));
    }
    return ds;
}

struct Split {
    std::vector<int> train, val, test;
};

// Deterministic 70/10/20 partition, stratified by vertex count: each size
// class is shuffled and cut separately so every split sees every size in
// proportion. Index lists come back sorted ascending.
inline Split split_dataset(const LabeledDataset& ds, std::uint64_t seed) {
    if (ds.records.size() < 10)
        throw std::invalid_argument("split_dataset: need at least 10 records, have " +
                                    std::to_string(ds.records.size()));
    std::map<int, std::vector<int>> by_size;
    for (std::size_t i = 0; i < ds.records.size(); ++i)
        by_size[ds.records[i].g.n()].push_back(static_cast<int>(i));

    Split s;
    Rng rng(seed);
    for (auto& [n, idx] : by_size) {
        shuffle(idx, rng);
        std::size_t g = idx.size();
        std::size_t n_train = static_cast<std::size_t>(g * 0.7 + 0.5);
        std::size_t n_val = static_cast<std::size_t>(g * 0.1 + 0.5);
        if (n_train + n_val > g) n_val = g - n_train;
        for (std::size_t k = 0; k < g; ++k) {
            if (k < n_train)
                s.train.push_back(idx[k]);
            else if (k < n_train + n_val)
                s.val.push_back(idx[k]);
            else
                s.test.push_back(idx[k]);
        }
    }
    std::sort(s.train.begin(), s.train.end());
    std::sort(s.val.begin(), s.val.end());
    std::sort(s.test.begin(), s.test.end());
    return s;
}

// y' = y + e, e ~ N(0, sigma), independently per label, in normalized label
// space, without clipping.
inline std::vector<double> add_label_noise(std::span<const double> labels, double sigma,
                                           std::uint64_t seed) {
    if (sigma < 0.0) throw std::invalid_argument("add_label_noise: sigma must be >= 0");
    std::vector<double> out(labels.begin(), labels.end());
    if (sigma == 0.0) return out;
    Rng rng(seed);
    for (double& y : out) y += rng.normal(0.0, sigma);
    return out;
}

}  // namespace eccn
