#pragma once

// Supervised training: exact backpropagation through the recurrent and
// feed-forward models, Adam with bias correction, projected steps for the
// constrained models, early stopping on validation MSE, the majority-vote
// baseline, and the SEM-style selection report. Everything is deterministic
// given the config seed: minibatch order, initialization, and accumulation
// order are all fixed.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <limits>
#include <map>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "eccn/dataset.hpp"
#include "eccn/rnn.hpp"

namespace eccn {

class TrainError : public std::runtime_error {
public:
    explicit TrainError(const std::string& msg) : std::runtime_error(msg) {}
};

// Mean squared error, accumulated left-to-right in index order.
inline double mse(std::span<const double> pred, std::span<const double> labels) {
    if (pred.size() != labels.size())
        throw std::invalid_argument("mse: length mismatch (" + std::to_string(pred.size()) +
                                    " vs " + std::to_string(labels.size()) + ")");
    if (pred.empty()) throw std::invalid_argument("mse: empty input");
    double acc = 0.0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        double d = pred[i] - labels[i];
        acc += d * d;
    }
    return acc / static_cast<double>(pred.size());
}

// ---- Model kinds and configuration ------------------------------------------

enum class ModelKind { ConstrainedRnn, MultiRnn, Ffn, UnconstrainedRnn };

inline std::string kind_to_string(ModelKind k) {
    switch (k) {
        case ModelKind::ConstrainedRnn: return "constrained_rnn";
        case ModelKind::MultiRnn: return "multi_rnn";
        case ModelKind::Ffn: return "ffn";
        case ModelKind::UnconstrainedRnn: return "unconstrained_rnn";
    }
    return "?";
}

inline ModelKind kind_from_string(const std::string& s) {
    if (s == "constrained_rnn") return ModelKind::ConstrainedRnn;
    if (s == "multi_rnn") return ModelKind::MultiRnn;
    if (s == "ffn") return ModelKind::Ffn;
    if (s == "unconstrained_rnn") return ModelKind::UnconstrainedRnn;
    throw std::invalid_argument("unknown model kind '" + s + "'");
}

struct TrainConfig {
    ModelKind model = ModelKind::ConstrainedRnn;
    int hidden = 8;
    int layers = 1;
    double lr = 0.001;
    int batch = 64;
    int max_epochs = 2000;
    int patience = 20;
    std::uint64_t seed = 0;
};

inline void validate_train_config(const TrainConfig& c) {
    if (c.hidden < 1) throw std::invalid_argument("config: hidden_width must be >= 1");
    if (c.layers < 1) throw std::invalid_argument("config: layer_count must be >= 1");
    if (!(c.lr > 0.0)) throw std::invalid_argument("config: learning_rate must be > 0");
    if (c.batch < 1) throw std::invalid_argument("config: batch_size must be >= 1");
    if (c.max_epochs < 1) throw std::invalid_argument("config: max_epochs must be >= 1");
    if (c.patience < 1) throw std::invalid_argument("config: patience must be >= 1");
}

// Flat key=value text; '#' starts a comment line. Recognized keys: model,
// hidden_width, layer_count, learning_rate, batch_size, max_epochs, patience,
// seed.
inline TrainConfig parse_train_config(std::istream& in) {
    TrainConfig c;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view sv(line);
        while (!sv.empty() && (sv.front() == ' ' || sv.front() == '\t')) sv.remove_prefix(1);
        while (!sv.empty() && (sv.back() == ' ' || sv.back() == '\t' || sv.back() == '\r'))
            sv.remove_suffix(1);
        if (sv.empty() || sv.front() == '#') continue;
        std::size_t eq = sv.find('=');
        if (eq == std::string_view::npos)
            throw ParseError(lineno, "config", "expected key=value, got '" + std::string(sv) + "'");
        auto trim = [](std::string_view v) {
            while (!v.empty() && (v.front() == ' ' || v.front() == '\t')) v.remove_prefix(1);
            while (!v.empty() && (v.back() == ' ' || v.back() == '\t')) v.remove_suffix(1);
            return v;
        };
        std::string key(trim(sv.substr(0, eq)));
        std::string val(trim(sv.substr(eq + 1)));
        try {
            if (key == "model")
                c.model = kind_from_string(val);
            else if (key == "hidden_width")
                c.hidden = std::stoi(val);
            else if (key == "layer_count")
                c.layers = std::stoi(val);
            else if (key == "learning_rate")
                c.lr = std::stod(val);
            else if (key == "batch_size")
                c.batch = std::stoi(val);
            else if (key == "max_epochs")
                c.max_epochs = std::stoi(val);
            else if (key == "patience")
                c.patience = std::stoi(val);
            else if (key == "seed")
                c.seed = std::stoull(val);
            else
                throw std::invalid_argument("unknown key '" + key + "'");
        } catch (const ParseError&) {
            throw;
        } catch (const std::exception& e) {
            throw ParseError(lineno, key, e.what());
        }
    }
    validate_train_config(c);
    return c;
}

inline TrainConfig parse_train_config_string(const std::string& text) {
    std::istringstream in(text);
    return parse_train_config(in);
}

inline Model make_model(const TrainConfig& cfg, int n_max) {
    switch (cfg.model) {
        case ModelKind::ConstrainedRnn:
            return init_single(cfg.hidden, cfg.seed, Mode::Constrained);
        case ModelKind::UnconstrainedRnn:
            return init_single(cfg.hidden, cfg.seed, Mode::Unconstrained);
        case ModelKind::MultiRnn:
            return init_multi(cfg.hidden, cfg.layers, cfg.seed, Mode::Constrained);
        case ModelKind::Ffn:
            return init_ffn(n_max * n_max, cfg.hidden, cfg.seed);
    }
    throw std::logic_error("make_model: bad kind");
}

// Sequence models read the unpadded prefix of the encoding; the FFN reads the
// whole padded vector.
inline double predict(const Model& m, const DatasetRecord& rec) {
    if (const auto* s = std::get_if<SingleLayerRnn>(&m)) return forward_single(*s, rec.seq());
    if (const auto* mu = std::get_if<MultiLayerRnn>(&m)) return forward_multi(*mu, rec.seq());
    return forward_ffn(std::get<FeedForward>(m), std::span<const double>(rec.x));
}

// ---- Backpropagation ---------------------------------------------------------
// Each accumulate_gradient adds d(e^2)/dtheta for one sample into `grad`
// (canonical visit_params order) and returns the squared error. Batch
// gradients are the mean of per-sample gradients; the caller scales by 1/B.
// The ReLU derivative at exactly 0 is 0, so the activation mask is h > 0.

namespace detail {

// BPTT through one layer. h_states holds rows h^0..h^L (row stride = width).
// d_final is dLoss/dh^L on entry. Writes tensor grads at the given offsets,
// fills d_input[t] = dLoss/dx_{t+1} if requested, and uses delta/delta_prev as
// scratch.
inline void backprop_layer(const RnnLayer& l, const std::vector<double>& h_states,
                           std::size_t steps, const double* input,
                           const std::vector<double>& d_final, std::span<double> grad,
                           std::size_t rec_off, std::size_t inw_off, std::size_t bias_off,
                           std::vector<double>* d_input, std::vector<double>& delta,
                           std::vector<double>& delta_prev) {
    const int w = l.width;
    delta.assign(w, 0.0);
    for (int i = 0; i < w; ++i) {
        double h = h_states[steps * w + i];
        delta[i] = h > 0.0 ? d_final[i] : 0.0;
    }
    if (d_input) d_input->assign(steps, 0.0);
    for (std::size_t t = steps; t >= 1; --t) {
        const double* h_prev = h_states.data() + (t - 1) * w;
        double xt = input[t - 1];
        for (int i = 0; i < w; ++i) {
            double d = delta[i];
            grad[bias_off + i] += d;
            grad[inw_off + i] += d * xt;
            double* gr = grad.data() + rec_off + static_cast<std::size_t>(i) * w;
            for (int j = 0; j < w; ++j) gr[j] += d * h_prev[j];
        }
        if (d_input) {
            double dx = 0.0;
            for (int i = 0; i < w; ++i) dx += delta[i] * l.in_w[i];
            (*d_input)[t - 1] = dx;
        }
        if (t > 1) {
            delta_prev.assign(w, 0.0);
            for (int i = 0; i < w; ++i) {
                double d = delta[i];
                const double* wr = l.rec.row(i);
                for (int j = 0; j < w; ++j) delta_prev[j] += d * wr[j];
            }
            for (int j = 0; j < w; ++j)
                if (!(h_prev[j] > 0.0)) delta_prev[j] = 0.0;
            delta.swap(delta_prev);
        }
    }
}

inline void run_layer_forward(const RnnLayer& l, const double* input, std::size_t steps,
                              std::vector<double>& h_states) {
    const int w = l.width;
    h_states.assign((steps + 1) * w, 0.0);
    for (int i = 0; i < w; ++i) h_states[i] = l.h0[i];
    for (std::size_t t = 1; t <= steps; ++t) {
        const double* h_prev = h_states.data() + (t - 1) * w;
        double* h_next = h_states.data() + t * w;
        for (int i = 0; i < w; ++i) {
            double acc = l.bias[i];
            const double* wr = l.rec.row(i);
            for (int j = 0; j < w; ++j) acc += wr[j] * h_prev[j];
            acc += l.in_w[i] * input[t - 1];
            h_next[i] = acc > 0.0 ? acc : 0.0;
        }
    }
}

}  // namespace detail

inline double accumulate_gradient(const SingleLayerRnn& m, std::span<const double> x, double y,
                                  std::span<double> grad) {
    const int w = m.width();
    const std::size_t pw = static_cast<std::size_t>(w);
    if (grad.size() != pw * pw + 3 * pw + 1)
        throw std::invalid_argument("accumulate_gradient: gradient size mismatch");
    static thread_local std::vector<double> h_states, d_final, delta, delta_prev;
    detail::run_layer_forward(m.layer, x.data(), x.size(), h_states);

    const double* h_last = h_states.data() + x.size() * pw;
    double yhat = 0.0;
    for (int i = 0; i < w; ++i) yhat += m.w_out[i] * h_last[i];
    yhat += m.b_out;
    double e2 = 2.0 * (yhat - y);

    std::size_t rec_off = 0, inw_off = pw * pw, bias_off = pw * pw + pw,
                wout_off = pw * pw + 2 * pw, bout_off = pw * pw + 3 * pw;
    for (int i = 0; i < w; ++i) grad[wout_off + i] += e2 * h_last[i];
    grad[bout_off] += e2;

    d_final.assign(pw, 0.0);
    for (int i = 0; i < w; ++i) d_final[i] = e2 * m.w_out[i];
    detail::backprop_layer(m.layer, h_states, x.size(), x.data(), d_final, grad, rec_off,
                           inw_off, bias_off, nullptr, delta, delta_prev);
    double e = yhat - y;
    return e * e;
}

inline double accumulate_gradient(const MultiLayerRnn& m, std::span<const double> x, double y,
                                  std::span<double> grad) {
    const int d = m.depth();
    if (grad.size() != trainable_param_count(m))
        throw std::invalid_argument("accumulate_gradient: gradient size mismatch");
    static thread_local std::vector<std::vector<double>> h_states;
    static thread_local std::vector<double> d_final, delta, delta_prev, d_input;
    h_states.resize(d);

    // Forward, keeping every layer's full state history.
    std::vector<std::size_t> steps(d);
    const double* input = x.data();
    std::size_t in_len = x.size();
    for (int j = 0; j < d; ++j) {
        steps[j] = in_len;
        detail::run_layer_forward(m.layers[j], input, in_len, h_states[j]);
        input = h_states[j].data() + in_len * m.layers[j].width;
        in_len = static_cast<std::size_t>(m.layers[j].width);
    }
    const double* h_last = input;  // final hidden state of the last layer
    const int w_last = m.layers[d - 1].width;
    double yhat = 0.0;
    for (int i = 0; i < w_last; ++i) yhat += m.w_out[i] * h_last[i];
    yhat += m.b_out;
    double e2 = 2.0 * (yhat - y);

    // Per-layer offsets in the canonical flat order.
    std::vector<std::size_t> base(d);
    std::size_t off = 0;
    for (int j = 0; j < d; ++j) {
        base[j] = off;
        std::size_t w = static_cast<std::size_t>(m.layers[j].width);
        off += w * w + 2 * w;
    }
    std::size_t wout_off = off, bout_off = off + w_last;
    for (int i = 0; i < w_last; ++i) grad[wout_off + i] += e2 * h_last[i];
    grad[bout_off] += e2;

    d_final.assign(w_last, 0.0);
    for (int i = 0; i < w_last; ++i) d_final[i] = e2 * m.w_out[i];
    for (int j = d - 1; j >= 0; --j) {
        const RnnLayer& l = m.layers[j];
        std::size_t w = static_cast<std::size_t>(l.width);
        const double* layer_input =
            j == 0 ? x.data() : h_states[j - 1].data() + steps[j - 1] * m.layers[j - 1].width;
        detail::backprop_layer(l, h_states[j], steps[j], layer_input, d_final, grad, base[j],
                               base[j] + w * w, base[j] + w * w + w,
                               j > 0 ? &d_input : nullptr, delta, delta_prev);
        if (j > 0) d_final = d_input;  // dLoss/d(final state of layer j-1)
    }
    double e = yhat - y;
    return e * e;
}

inline double accumulate_gradient(const FeedForward& m, std::span<const double> x, double y,
                                  std::span<double> grad) {
    if (static_cast<int>(x.size()) != m.in_dim)
        throw std::invalid_argument("accumulate_gradient: input length mismatch");
    if (grad.size() != trainable_param_count(m))
        throw std::invalid_argument("accumulate_gradient: gradient size mismatch");
    const int h = m.hidden;
    static thread_local std::vector<double> a1, a2, a3, d3, d2, d1;
    auto dense = [](const Matrix& wmat, const std::vector<double>& b,
                    std::span<const double> in, std::vector<double>& out) {
        out.assign(wmat.rows, 0.0);
        for (int i = 0; i < wmat.rows; ++i) {
            double acc = b[i];
            const double* wr = wmat.row(i);
            for (int j = 0; j < wmat.cols; ++j) acc += wr[j] * in[j];
            out[i] = acc > 0.0 ? acc : 0.0;
        }
    };
    dense(m.w1, m.b1, x, a1);
    dense(m.w2, m.b2, a1, a2);
    dense(m.w3, m.b3, a2, a3);
    double yhat = 0.0;
    for (int i = 0; i < h; ++i) yhat += m.w_out[i] * a3[i];
    yhat += m.b_out;
    double e2 = 2.0 * (yhat - y);

    const std::size_t hs = static_cast<std::size_t>(h), in = static_cast<std::size_t>(m.in_dim);
    std::size_t w1o = 0, b1o = hs * in, w2o = b1o + hs, b2o = w2o + hs * hs, w3o = b2o + hs,
                b3o = w3o + hs * hs, wouto = b3o + hs, bouto = wouto + hs;

    for (int i = 0; i < h; ++i) grad[wouto + i] += e2 * a3[i];
    grad[bouto] += e2;

    auto backward = [&](const Matrix& wmat, std::span<const double> act_in,
                        const std::vector<double>& act_out, const std::vector<double>& d_out,
                        std::size_t wo, std::size_t bo, std::vector<double>* d_in) {
        for (int i = 0; i < wmat.rows; ++i) {
            double di = act_out[i] > 0.0 ? d_out[i] : 0.0;
            grad[bo + i] += di;
            double* gr = grad.data() + wo + static_cast<std::size_t>(i) * wmat.cols;
            for (int j = 0; j < wmat.cols; ++j) gr[j] += di * act_in[j];
        }
        if (d_in) {
            d_in->assign(wmat.cols, 0.0);
            for (int i = 0; i < wmat.rows; ++i) {
                double di = act_out[i] > 0.0 ? d_out[i] : 0.0;
                const double* wr = wmat.row(i);
                for (int j = 0; j < wmat.cols; ++j) (*d_in)[j] += di * wr[j];
            }
        }
    };

    d3.assign(h, 0.0);
    for (int i = 0; i < h; ++i) d3[i] = e2 * m.w_out[i];
    backward(m.w3, a2, a3, d3, w3o, b3o, &d2);
    backward(m.w2, a1, a2, d2, w2o, b2o, &d1);
    backward(m.w1, x, a1, d1, w1o, b1o, nullptr);
    double e = yhat - y;
    return e * e;
}

inline double accumulate_gradient(const Model& m, const DatasetRecord& rec, double y,
                                  std::span<double> grad) {
    if (const auto* s = std::get_if<SingleLayerRnn>(&m))
        return accumulate_gradient(*s, rec.seq(), y, grad);
    if (const auto* mu = std::get_if<MultiLayerRnn>(&m))
        return accumulate_gradient(*mu, rec.seq(), y, grad);
    return accumulate_gradient(std::get<FeedForward>(m), std::span<const double>(rec.x), y,
                               grad);
}

// ---- Adam --------------------------------------------------------------------

struct AdamState {
    std::vector<double> m, v;
    std::int64_t t = 0;
    double beta1_pow = 1.0, beta2_pow = 1.0;
};

namespace detail {
template <typename GetParam>
void adam_step_core(std::size_t n, GetParam&& param, std::span<const double> g, AdamState& st,
                    double lr) {
    constexpr double b1 = 0.9, b2 = 0.999, eps = 1e-8;
    if (st.m.empty()) {
        st.m.assign(n, 0.0);
        st.v.assign(n, 0.0);
    } else if (st.m.size() != n) {
        throw std::invalid_argument("adam_step: state size mismatch");
    }
    if (g.size() != n) throw std::invalid_argument("adam_step: gradient size mismatch");
    ++st.t;
    st.beta1_pow *= b1;
    st.beta2_pow *= b2;
    for (std::size_t i = 0; i < n; ++i) {
        st.m[i] = b1 * st.m[i] + (1.0 - b1) * g[i];
        st.v[i] = b2 * st.v[i] + (1.0 - b2) * g[i] * g[i];
        double mhat = st.m[i] / (1.0 - st.beta1_pow);
        double vhat = st.v[i] / (1.0 - st.beta2_pow);
        param(i) -= lr * mhat / (std::sqrt(vhat) + eps);
    }
}
}  // namespace detail

inline void adam_step(std::span<double> params, std::span<const double> grads, AdamState& st,
                      double lr) {
    detail::adam_step_core(
        params.size(), [&](std::size_t i) -> double& { return params[i]; }, grads, st, lr);
}

inline void project_if_constrained(Model& m) {
    if (auto* s = std::get_if<SingleLayerRnn>(&m)) {
        if (s->mode == Mode::Constrained) project_constraints(*s);
    } else if (auto* mu = std::get_if<MultiLayerRnn>(&m)) {
        if (mu->mode == Mode::Constrained) project_constraints(*mu);
    }
}

// ---- Early stopping and the training loop ------------------------------------

// Stops after `patience` consecutive epochs without strict improvement.
struct EarlyStopper {
    int patience;
    double best = std::numeric_limits<double>::infinity();
    int best_epoch = 0;
    int since_improvement = 0;

    explicit EarlyStopper(int p) : patience(p) {}

    // Returns true when this epoch improved on the best value seen.
    bool update(int epoch, double val) {
        if (val < best) {
            best = val;
            best_epoch = epoch;
            since_improvement = 0;
            return true;
        }
        ++since_improvement;
        return false;
    }

    bool should_stop() const { return since_improvement >= patience; }
};

struct EpochRow {
    int epoch;
    double train_mse;
    double val_mse;
    bool best;
};

struct TrainResult {
    Model model;  // parameters from the best validation epoch
    std::vector<EpochRow> history;
    int best_epoch = 0;
    double best_val_mse = std::numeric_limits<double>::infinity();
    double train_mse_at_best = std::numeric_limits<double>::infinity();
};

inline double mse_over(const Model& m, const LabeledDataset& ds, std::span<const int> idx,
                       std::span<const double> labels) {
    std::vector<double> pred(idx.size()), lab(idx.size());
    for (std::size_t k = 0; k < idx.size(); ++k) {
        pred[k] = predict(m, ds.records[idx[k]]);
        lab[k] = labels[idx[k]];
    }
    return mse(pred, lab);
}

// `labels` is a full-length normalized label vector; training entries may be
// noise-perturbed, validation entries are read from the same vector.
// Determinism contract: initialization draws from cfg.seed and the minibatch
// shuffle stream from cfg.seed + 1.
inline TrainResult train(const LabeledDataset& ds, const Split& split,
                         std::span<const double> labels, const TrainConfig& cfg) {
    validate_train_config(cfg);
    if (split.train.empty()) throw std::invalid_argument("train: empty training split");
    if (split.val.empty()) throw std::invalid_argument("train: empty validation split");
    if (labels.size() != ds.records.size())
        throw std::invalid_argument("train: label vector length mismatch");

    Model model = make_model(cfg, ds.n_max);
    std::vector<double*> ptrs;
    std::visit([&](auto& net) { visit_params(net, [&](double& x) { ptrs.push_back(&x); }); },
               model);
    const std::size_t P = ptrs.size();

    std::vector<double> grad(P, 0.0);
    AdamState adam;
    Rng shuffle_rng(cfg.seed + 1);
    std::vector<int> order(split.train.begin(), split.train.end());

    TrainResult res;
    res.model = model;
    EarlyStopper stopper(cfg.patience);

    for (int epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
        shuffle(order, shuffle_rng);
        for (std::size_t start = 0; start < order.size(); start += cfg.batch) {
            std::size_t stop = std::min(order.size(), start + cfg.batch);
            std::fill(grad.begin(), grad.end(), 0.0);
            for (std::size_t k = start; k < stop; ++k) {
                int idx = order[k];
                accumulate_gradient(model, ds.records[idx], labels[idx], grad);
            }
            double inv = 1.0 / static_cast<double>(stop - start);
            for (double& g : grad) g *= inv;
            detail::adam_step_core(
                P, [&](std::size_t i) -> double& { return *ptrs[i]; }, grad, adam, cfg.lr);
            project_if_constrained(model);
        }

        double train_mse = mse_over(model, ds, split.train, labels);
        double val_mse = mse_over(model, ds, split.val, labels);
        if (!std::isfinite(train_mse) || !std::isfinite(val_mse))
            throw TrainError("training diverged: non-finite loss at epoch " +
                             std::to_string(epoch));
        bool improved = stopper.update(epoch, val_mse);
        res.history.push_back({epoch, train_mse, val_mse, improved});
        if (improved) {
            res.model = model;
            res.best_epoch = epoch;
            res.best_val_mse = val_mse;
            res.train_mse_at_best = train_mse;
        }
        if (stopper.should_stop()) break;
    }
    return res;
}

// ---- Baseline and SEM-style selection -----------------------------------------

// Most frequent raw label; ties go to the smallest label.
inline int majority_vote_baseline(std::span<const int> raw_labels) {
    if (raw_labels.empty())
        throw std::invalid_argument("majority_vote_baseline: empty labels");
    std::map<int, int> counts;
    for (int y : raw_labels) ++counts[y];
    int best_label = 0, best_count = -1;
    for (const auto& [label, count] : counts)
        if (count > best_count) {
            best_count = count;
            best_label = label;
        }
    return best_label;
}

inline double sem_tolerance(std::size_t m) {
    if (m < 1) throw std::invalid_argument("sem_tolerance: m must be >= 1");
    return 8.0 / (3.0 * std::sqrt(static_cast<double>(m)));
}

struct SemReport {
    TrainResult selected;      // best validation MSE across restarts
    double tolerance = 0.0;    // 8 / (3 sqrt(train size))
    double best_train_seen = std::numeric_limits<double>::infinity();
    double selected_train_mse = std::numeric_limits<double>::infinity();
    bool attained = false;     // selected train MSE within tolerance of the best seen
};

// Trains `restarts` times (seeds cfg.seed, cfg.seed+1, ...), keeps the best
// validation model, and reports whether its train MSE is within 8/(3 sqrt(m))
// of the best train MSE observed anywhere in the sweep.
inline SemReport sem_select(const LabeledDataset& ds, const Split& split,
                            std::span<const double> labels, const TrainConfig& cfg,
                            int restarts = 1) {
    if (restarts < 1) throw std::invalid_argument("sem_select: restarts must be >= 1");
    SemReport rep;
    rep.tolerance = sem_tolerance(split.train.size());
    bool have = false;
    for (int r = 0; r < restarts; ++r) {
        TrainConfig c = cfg;
        c.seed = cfg.seed + static_cast<std::uint64_t>(r);
        TrainResult res = train(ds, split, labels, c);
        for (const EpochRow& row : res.history)
            rep.best_train_seen = std::min(rep.best_train_seen, row.train_mse);
        if (!have || res.best_val_mse < rep.selected.best_val_mse) {
            rep.selected = std::move(res);
            have = true;
        }
    }
    rep.selected_train_mse = rep.selected.train_mse_at_best;
    rep.attained = rep.selected_train_mse - rep.best_train_seen <= rep.tolerance;
    return rep;
}

}  // namespace eccn
