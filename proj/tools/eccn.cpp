// Command-line workbench for learning edge clique cover numbers: labeled
// dataset generation with exact solvers, cover solving, capacity and
// sample-complexity bounds, constrained-RNN training, evaluation against
// baselines, and sweep reports.  File formats and examples: see README.md.

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "eccn/bounds.hpp"
#include "eccn/checkpoint.hpp"
#include "eccn/cover.hpp"
#include "eccn/dataset.hpp"
#include "eccn/graph.hpp"
#include "eccn/train.hpp"

namespace {

using namespace eccn;

// Exit codes: 0 success, 1 usage error, 2 data error, 3 solver budget
// exhausted for every record.
constexpr int kExitBudget = 3;

// Semantic flag errors beyond CLI11's syntax checks; mapped to exit code 1.
struct UsageError : std::runtime_error {
    explicit UsageError(const std::string& m) : std::runtime_error(m) {}
};

void atomic_write_text(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write '" + tmp + "'");
        out << content;
        out.flush();
        if (!out) throw std::runtime_error("write failed for '" + tmp + "'");
    }
    std::filesystem::rename(tmp, path);
}

// Route a finished text product to --out (atomic) or stdout.
void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty())
        std::cout << content;
    else
        atomic_write_text(out_path, content);
}

double scenario_p(const std::string& scenario, std::size_t i) {
    if (scenario == "sparse") return 0.1;
    if (scenario == "medium") return 0.5;
    if (scenario == "dense") return 0.9;
    if (scenario == "mixed") {
        constexpr double ps[3] = {0.1, 0.5, 0.9};
        return ps[i % 3];
    }
    throw UsageError("unknown scenario '" + scenario + "' (need sparse|medium|dense|mixed)");
}

std::size_t parse_size_arg(const std::string& s, const char* what) {
    std::size_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        throw UsageError(std::string(what) + ": '" + s + "' is not a nonnegative integer");
    return v;
}

double parse_double_arg(const std::string& s, const char* what) {
    double v = 0.0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        throw UsageError(std::string(what) + ": '" + s + "' is not a number");
    return v;
}

TrainConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config '" + path + "'");
    return parse_train_config(in);
}

std::vector<double> clean_labels(const LabeledDataset& ds) {
    std::vector<double> v(ds.records.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = ds.records[i].norm_label;
    return v;
}

// Perturb only the training entries of a full-length label vector.  The noise
// stream walks the training indices in split order, so it is independent of
// how many validation/test records surround them.
void noise_train_labels(std::vector<double>& labels, const Split& split, double sigma,
                        std::uint64_t seed) {
    std::vector<double> tl(split.train.size());
    for (std::size_t k = 0; k < tl.size(); ++k) tl[k] = labels[split.train[k]];
    std::vector<double> noised = add_label_noise(tl, sigma, seed);
    for (std::size_t k = 0; k < tl.size(); ++k) labels[split.train[k]] = noised[k];
}

// ---------------------------------------------------------------------------
// generate

struct GenerateOpts {
    std::string out;
    std::string scenario = "mixed";
    double p_override = -1.0;  // < 0: use the scenario's edge probabilities
    int nmin = 6;
    int nmax = 10;
    std::int64_t count = 20000;
    std::uint64_t seed = 1000;
    int workers = 1;
    std::uint64_t budget = 20'000'000;
    bool paranoid = false;
    bool force_large = false;
};

int run_generate(const GenerateOpts& o) {
    if (o.nmin < 1 || o.nmax > 64 || o.nmin > o.nmax)
        throw UsageError("need 1 <= nmin <= nmax <= 64");
    if (o.nmax > 10 && !o.force_large)
        throw UsageError("exact labeling above 10 vertices can take very long; "
                         "pass --force-large to lift the cap");
    if (o.count < 10) throw UsageError("--count must be >= 10");
    if (o.workers < 1) throw UsageError("--workers must be >= 1");
    const bool fixed_p = o.p_override >= 0.0;
    if (fixed_p && o.p_override > 1.0) throw UsageError("--p must lie in [0, 1]");
    if (!fixed_p) scenario_p(o.scenario, 0);  // validates the name

    const int n_max = o.nmax;
    const double scale = label_scale_for(n_max);
    std::vector<std::optional<DatasetRecord>> slots(static_cast<std::size_t>(o.count));
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> dropped{0};
    std::atomic<bool> failed{false};
    std::mutex fail_mu;
    std::string fail_msg;

    // Record i is a pure function of seed+i: one per-record stream yields the
    // vertex count and then the edge coin flips, so output is byte-identical
    // for any worker count.
    auto work = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= slots.size() || failed.load()) return;
            Rng rng(o.seed + i);
            const int span = o.nmax - o.nmin + 1;
            const int n = o.nmin + static_cast<int>(rng.uniform_int(
                                       static_cast<std::uint64_t>(span)));
            const double p = fixed_p ? o.p_override : scenario_p(o.scenario, i);
            Graph g = er_generate(n, p, rng);
            EccnResult ex = exact_eccn(g, o.budget);
            if (!ex.solved) {
                dropped.fetch_add(1);
                continue;
            }
            if (o.paranoid || i % 100 == 0) {
                CoverCheck chk = verify_cover(g, ex.witness);
                if (!chk.valid || ex.witness.size() != ex.eccn) {
                    std::lock_guard<std::mutex> lk(fail_mu);
                    failed.store(true);
                    fail_msg = "internal error: bad witness for record " + std::to_string(i) +
                               ": " + chk.describe();
                    return;
                }
            }
            slots[i] = make_record(std::move(g), ex.eccn, n_max, scale);
        }
    };

    if (o.workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(o.workers));
        for (int t = 0; t < o.workers; ++t) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    if (failed.load()) throw std::runtime_error(fail_msg);

    LabeledDataset ds;
    ds.n_max = n_max;
    ds.label_scale = scale;
    const std::string scen = fixed_p ? "p=" + format_double(o.p_override) : o.scenario;
    ds.prov = {scen, o.nmin, o.nmax, o.seed};
    for (auto& s : slots)
        if (s) ds.records.push_back(std::move(*s));
    if (ds.records.empty()) {
        std::cerr << "error: solver budget exhausted for all " << o.count << " records\n";
        return kExitBudget;
    }
    write_dataset(o.out, ds);
    std::cout << "wrote " << ds.records.size() << " records to " << o.out << " ("
              << dropped.load() << " unsolved dropped, scenario " << scen << ", n in [" << o.nmin
              << "," << o.nmax << "], seed " << o.seed << ")\n";
    return 0;
}

// ---------------------------------------------------------------------------
// solve

struct SolveOpts {
    std::string in;
    std::string method = "exact";
    std::string out;
    std::uint64_t budget = 20'000'000;
};

int run_solve(const SolveOpts& o) {
    if (o.method != "exact" && o.method != "kellerman")
        throw UsageError("--method must be exact or kellerman");
    std::ifstream in(o.in);
    if (!in) throw std::runtime_error("cannot open '" + o.in + "'");

    std::string csv = "graph_id,size,witness,valid\n";
    std::string line;
    int lineno = 0;
    std::size_t id = 0, unsolved = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        // The graph is the first two tab-separated fields; anything after (for
        // example a dataset label column) is ignored, so dataset files can be
        // solved directly.
        const std::size_t t1 = line.find('\t');
        const std::size_t t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
        const std::string record = t2 == std::string::npos ? line : line.substr(0, t2);
        Graph g = decode_graph(record, lineno);
        EdgeCliqueCover cover;
        bool solved = true;
        if (o.method == "exact") {
            EccnResult ex = exact_eccn(g, o.budget);
            solved = ex.solved;
            cover = std::move(ex.witness);
        } else {
            cover = kellerman_cover(g);
        }
        if (!solved) {
            ++unsolved;
            csv += std::to_string(id) + ",unsolved,,\n";
        } else {
            CoverCheck chk = verify_cover(g, cover);
            csv += std::to_string(id) + "," + std::to_string(cover.size()) + ",\"" +
                   format_witness(cover) + "\"," + (chk.valid ? "true" : "false") + "\n";
        }
        ++id;
    }
    if (id == 0) throw std::runtime_error("no graph records in '" + o.in + "'");
    emit(o.out, csv);
    if (unsolved == id) {
        std::cerr << "error: solver budget exhausted for all " << id << " records\n";
        return kExitBudget;
    }
    return 0;
}

// ---------------------------------------------------------------------------
// bounds

struct BoundsOpts {
    std::int64_t a = 0;
    std::vector<std::int64_t> widths;
    std::int64_t b = 0;
    bool graph = false;
    std::int64_t n = 0;
    std::int64_t d = 1;
    double eps = 0.1;
    double delta = 0.1;
    bool diagnostic = false;
    std::string out;
};

std::string join_widths(const std::vector<std::int64_t>& widths) {
    std::string s;
    for (std::size_t i = 0; i < widths.size(); ++i) {
        if (i) s += 'x';
        s += std::to_string(widths[i]);
    }
    return s;
}

int run_bounds(const BoundsOpts& o) {
    if (!(o.eps > 0.0 && o.eps <= 1.0) || !(o.delta > 0.0 && o.delta <= 1.0))
        throw UsageError("--eps and --delta must lie in (0, 1]");

    BoundReport rep;
    if (o.graph) {
        if (o.a != 0 || !o.widths.empty() || o.b != 0)
            throw UsageError("--graph mode takes -n and -d, not -a/--widths/-b");
        if (o.n < 1) throw UsageError("--graph mode needs -n >= 1");
        if (o.d < 1) throw UsageError("-d must be >= 1");
        rep = make_report_graph(o.n, o.d, o.eps, o.delta);
    } else {
        std::vector<std::int64_t> widths = o.widths;
        if (o.a != 0) {
            if (!widths.empty()) throw UsageError("give either -a or --widths, not both");
            widths = {o.a};
        }
        if (widths.empty()) throw UsageError("need -a/--widths and -b, or --graph with -n");
        for (std::int64_t w : widths)
            if (w < 1) throw UsageError("all widths must be >= 1");
        if (o.b < 1) throw UsageError("-b (max input length) must be >= 1");
        rep = make_report_multi(widths, o.b, o.eps, o.delta);
    }

    const std::string widths_str = join_widths(rep.widths);
    std::ostringstream text;
    text << "shape             : widths=" << widths_str << " (d=" << rep.d
         << "), max input length b=" << rep.b << "\n"
         << "trainable params  : W = " << rep.w << "\n"
         << "operation count   : T = " << rep.t << "\n"
         << "vcdim bound       : " << format_sig(rep.vcdim_real) << "  (floor " << rep.vcdim_floor
         << ")\n"
         << "pdim bound        : " << format_sig(rep.pdim) << "\n"
         << "sample complexity : M(eps=" << format_sig(o.eps, 6) << ", delta="
         << format_sig(o.delta, 6) << ") = " << format_sig(rep.sample_complexity) << "\n";
    if (rep.graph_mode) {
        const BigInt gss = graph_space_size(static_cast<int>(o.n));
        text << "graph space size  : |G<=" << o.n << "| = " << gss.str() << "\n"
             << "break-even ratio  : " << format_sig(rep.breakeven * 100.0L)
             << " % of the graph space\n";
        if (o.diagnostic) {
            const long double sub =
                sample_complexity_graph_substituted(o.n, o.d, o.eps, o.delta);
            if (o.d == 1)
                text << "diagnostic        : one-layer graph closed form carries prefactor "
                        "4(n^2+4n+3); composing the generic width-n chain gives 4(n^2+3n+3)\n";
            else
                text << "diagnostic        : multi-layer graph closed form coincides with the "
                        "generic parameter chain\n";
            text << "  closed form     : M = " << format_sig(rep.sample_complexity) << "\n"
                 << "  parameter chain : M = " << format_sig(sub) << "\n";
        }
    }

    std::ostringstream csv;
    csv << "widths,b,d,W,T,vcdim_bound,pdim_bound,sample_complexity,breakeven_ratio\n"
        << widths_str << ',' << rep.b << ',' << rep.d << ',' << rep.w << ',' << rep.t << ','
        << format_sig(rep.vcdim_real) << ',' << format_sig(rep.pdim) << ','
        << format_sig(rep.sample_complexity) << ','
        << (rep.graph_mode ? format_sig(rep.breakeven) : std::string()) << "\n";

    emit(o.out, text.str() + "\n" + csv.str());
    return 0;
}

// ---------------------------------------------------------------------------
// train

struct TrainOpts {
    std::string data;
    std::string config;
    std::string out;
    std::string history;
    std::uint64_t split_seed = 1;
    double sigma = 0.0;
};

int run_train(const TrainOpts& o) {
    if (o.sigma < 0.0) throw UsageError("--sigma must be >= 0");
    const TrainConfig cfg = load_config(o.config);
    const LabeledDataset ds = read_dataset(o.data);
    const Split split = split_dataset(ds, o.split_seed);
    std::vector<double> labels = clean_labels(ds);
    if (o.sigma > 0.0) noise_train_labels(labels, split, o.sigma, cfg.seed + 2);

    const TrainResult res = train(ds, split, labels, cfg);
    save_checkpoint(o.out, res.model);
    if (!o.history.empty()) {
        std::string csv = "epoch,train_mse,val_mse,best_flag\n";
        for (const EpochRow& row : res.history)
            csv += std::to_string(row.epoch) + "," + format_double(row.train_mse) + "," +
                   format_double(row.val_mse) + "," + (row.best ? "1" : "0") + "\n";
        atomic_write_text(o.history, csv);
    }
    std::cout << "trained " << kind_to_string(cfg.model) << " hidden=" << cfg.hidden
              << " layers=" << cfg.layers << " on " << ds.records.size()
              << " records (train/val/test " << split.train.size() << "/" << split.val.size()
              << "/" << split.test.size() << ")\n";
    if (o.sigma > 0.0)
        std::cout << "train-label noise sigma=" << format_double(o.sigma) << "\n";
    std::cout << "epochs=" << res.history.size() << " best_epoch=" << res.best_epoch
              << " best_val_mse=" << format_double(res.best_val_mse)
              << " train_mse_at_best=" << format_double(res.train_mse_at_best) << "\n"
              << "checkpoint -> " << o.out << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// eval

struct EvalOpts {
    std::string data;
    std::string ckpt;
    std::string out;
    std::uint64_t split_seed = 1;
};

int run_eval(const EvalOpts& o) {
    const LabeledDataset ds = read_dataset(o.data);
    const Split split = split_dataset(ds, o.split_seed);
    const Model model = load_checkpoint(o.ckpt);
    const std::vector<double> labels = clean_labels(ds);
    const double scale2 = ds.label_scale * ds.label_scale;

    std::vector<double> pred(split.test.size()), lab(split.test.size());
    for (std::size_t k = 0; k < pred.size(); ++k) {
        pred[k] = predict(model, ds.records[static_cast<std::size_t>(split.test[k])]);
        lab[k] = labels[static_cast<std::size_t>(split.test[k])];
    }
    const double m_ckpt = mse(pred, lab);

    std::vector<int> train_raw(split.train.size());
    for (std::size_t k = 0; k < train_raw.size(); ++k)
        train_raw[k] = ds.records[static_cast<std::size_t>(split.train[k])].raw_label;
    const int maj = majority_vote_baseline(train_raw);
    const double maj_norm = static_cast<double>(maj) / ds.label_scale;
    for (std::size_t k = 0; k < pred.size(); ++k) pred[k] = maj_norm;
    const double m_maj = mse(pred, lab);

    for (std::size_t k = 0; k < pred.size(); ++k) {
        const auto& rec = ds.records[static_cast<std::size_t>(split.test[k])];
        pred[k] = static_cast<double>(kellerman_cover(rec.g).size()) / ds.label_scale;
    }
    const double m_kell = mse(pred, lab);

    std::string csv = "predictor,test_mse,test_mse_raw\n";
    csv += "checkpoint," + format_double(m_ckpt) + "," + format_double(m_ckpt * scale2) + "\n";
    csv += "majority_vote," + format_double(m_maj) + "," + format_double(m_maj * scale2) + "\n";
    csv += "kellerman," + format_double(m_kell) + "," + format_double(m_kell * scale2) + "\n";
    emit(o.out, csv);
    return 0;
}

// ---------------------------------------------------------------------------
// report

struct ReportOpts {
    std::string data;
    std::string config;
    std::string out;
    std::string scenario;
    std::string sweep;
    std::vector<std::string> points;
    std::vector<std::uint64_t> seeds;
    std::uint64_t split_seed = 1;
};

int run_report(const ReportOpts& o) {
    if (o.sweep != "train_size" && o.sweep != "sigma")
        throw UsageError("--sweep must be train_size or sigma");
    if (o.points.empty()) throw UsageError("--points must list at least one sweep point");
    const TrainConfig base = load_config(o.config);
    const LabeledDataset ds = read_dataset(o.data);
    const Split split = split_dataset(ds, o.split_seed);
    const std::vector<double> clean = clean_labels(ds);
    const std::string scen =
        o.scenario.empty() ? std::filesystem::path(o.data).stem().string() : o.scenario;
    const std::vector<std::uint64_t> seeds =
        o.seeds.empty() ? std::vector<std::uint64_t>{base.seed} : o.seeds;

    std::string csv = "scenario,model,sweep_value,seed,test_mse\n";
    for (const std::string& pt : o.points) {
        for (const std::uint64_t seed : seeds) {
            TrainConfig cfg = base;
            cfg.seed = seed;
            std::string sweep_value;
            std::optional<TrainResult> res;
            std::string fail;
            if (o.sweep == "train_size") {
                const std::size_t k =
                    pt == "full" ? split.train.size() : parse_size_arg(pt, "--points");
                if (k < 1 || k > split.train.size())
                    throw UsageError("train_size point " + pt + " outside [1, " +
                                     std::to_string(split.train.size()) + "]");
                // Seeded subsample: shuffle a copy of the training indices, keep
                // the first k (nested across points for one seed), and train on
                // them in ascending order.
                std::vector<int> order = split.train;
                Rng r(seed + 3);
                shuffle(order, r);
                order.resize(k);
                std::sort(order.begin(), order.end());
                Split sub = split;
                sub.train = std::move(order);
                sweep_value = std::to_string(k);
                try {
                    res = train(ds, sub, clean, cfg);
                } catch (const TrainError& e) {
                    fail = e.what();
                }
            } else {
                const double sigma = parse_double_arg(pt, "--points");
                if (sigma < 0.0) throw UsageError("sigma points must be >= 0");
                std::vector<double> labels = clean;
                noise_train_labels(labels, split, sigma, seed + 2);
                sweep_value = format_double(sigma);
                try {
                    res = train(ds, split, labels, cfg);
                } catch (const TrainError& e) {
                    fail = e.what();
                }
            }
            std::string cell;
            if (res) {
                cell = format_double(mse_over(res->model, ds, split.test, clean));
            } else {
                cell = "FAILED";
                std::cerr << "report cell failed (" << o.sweep << "=" << sweep_value
                          << " seed=" << seed << "): " << fail << "\n";
            }
            csv += scen + "," + kind_to_string(cfg.model) + "," + sweep_value + "," +
                   std::to_string(seed) + "," + cell + "\n";
            std::cerr << "report: " << o.sweep << "=" << sweep_value << " seed=" << seed
                      << " -> test_mse " << cell << "\n";
        }
    }
    emit(o.out, csv);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"workbench for learning edge clique cover numbers of random graphs:\n"
                 "exact + heuristic solvers, capacity/sample-complexity bounds, labeled\n"
                 "dataset generation, constrained-RNN training, evaluation, and sweeps"};
    app.require_subcommand(1);

    GenerateOpts g;
    SolveOpts s;
    BoundsOpts b;
    TrainOpts t;
    EvalOpts e;
    ReportOpts r;

    CLI::App* cg = app.add_subcommand(
        "generate", "write a labeled random-graph dataset (exact cover-number labels)");
    cg->add_option("--out", g.out, "output dataset file")->required();
    cg->add_option("--scenario", g.scenario, "sparse|medium|dense|mixed (default mixed)");
    cg->add_option("--p", g.p_override, "fixed edge probability overriding the scenario");
    cg->add_option("--nmin", g.nmin, "smallest vertex count (default 6)");
    cg->add_option("--nmax", g.nmax, "largest vertex count (default 10, capped; see --force-large)");
    cg->add_option("--count", g.count, "number of records to draw (default 20000)");
    cg->add_option("--seed", g.seed, "base seed; record i uses stream seed+i (default 1000)");
    cg->add_option("--workers", g.workers, "labeling worker threads (default 1)");
    cg->add_option("--budget", g.budget, "per-record search budget in clique placements");
    cg->add_flag("--paranoid", g.paranoid, "verify every witness (default: 1% spot check)");
    cg->add_flag("--force-large", g.force_large, "allow nmax > 10 (labeling may be very slow)");

    CLI::App* cs = app.add_subcommand("solve", "solve cover numbers for a file of graph records");
    cs->add_option("--in", s.in, "graph or dataset file (one record per line)")->required();
    cs->add_option("--method", s.method, "exact|kellerman (default exact)");
    cs->add_option("--budget", s.budget, "exact-search budget per graph");
    cs->add_option("--out", s.out, "output CSV (default stdout)");

    CLI::App* cb = app.add_subcommand(
        "bounds", "capacity and sample-complexity bounds for a model shape or graph size");
    cb->add_option("-a", b.a, "single-layer hidden width");
    cb->add_option("--widths", b.widths, "per-layer widths, comma separated")->delimiter(',');
    cb->add_option("-b", b.b, "max input sequence length");
    cb->add_flag("--graph", b.graph, "graph mode: width-n net reading n^2 adjacency entries");
    cb->add_option("-n", b.n, "graph mode: max vertex count");
    cb->add_option("-d", b.d, "graph mode: recurrent layer count (default 1)");
    cb->add_option("--eps", b.eps, "accuracy parameter in (0,1] (default 0.1)");
    cb->add_option("--delta", b.delta, "confidence parameter in (0,1] (default 0.1)");
    cb->add_flag("--diagnostic", b.diagnostic,
                 "also print the parameter-chain variant of the graph bound");
    cb->add_option("--out", b.out, "write the report here instead of stdout");

    CLI::App* ct = app.add_subcommand("train", "train a model on a labeled dataset");
    ct->add_option("--data", t.data, "dataset file")->required();
    ct->add_option("--config", t.config, "key=value training config file")->required();
    ct->add_option("--out", t.out, "output checkpoint path")->required();
    ct->add_option("--history", t.history, "per-epoch metrics CSV path");
    ct->add_option("--split-seed", t.split_seed, "train/val/test split seed (default 1)");
    ct->add_option("--sigma", t.sigma, "Gaussian stddev for training-label noise (default 0)");

    CLI::App* ce = app.add_subcommand(
        "eval", "test-set MSE for a checkpoint vs. majority-vote and heuristic baselines");
    ce->add_option("--data", e.data, "dataset file")->required();
    ce->add_option("--checkpoint", e.ckpt, "model checkpoint")->required();
    ce->add_option("--split-seed", e.split_seed, "split seed used at training time (default 1)");
    ce->add_option("--out", e.out, "output CSV (default stdout)");

    CLI::App* cr = app.add_subcommand(
        "report", "sweep training-set size or label noise; one CSV row per (point, seed)");
    cr->add_option("--data", r.data, "dataset file")->required();
    cr->add_option("--config", r.config, "key=value training config file")->required();
    cr->add_option("--sweep", r.sweep, "train_size|sigma")->required();
    cr->add_option("--points", r.points,
                   "sweep points, comma separated (train_size accepts the word 'full')")
        ->required()
        ->delimiter(',');
    cr->add_option("--seeds", r.seeds, "training seeds, comma separated (default: config seed)")
        ->delimiter(',');
    cr->add_option("--scenario", r.scenario, "scenario column value (default: data file stem)");
    cr->add_option("--split-seed", r.split_seed, "train/val/test split seed (default 1)");
    cr->add_option("--out", r.out, "output CSV (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        const int rc = app.exit(err);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (*cg) return run_generate(g);
        if (*cs) return run_solve(s);
        if (*cb) return run_bounds(b);
        if (*ct) return run_train(t);
        if (*ce) return run_eval(e);
        if (*cr) return run_report(r);
    } catch (const UsageError& err) {
        std::cerr << "usage error: " << err.what() << "\n";
        return 1;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    }
    return 1;
}
