// On-disk formats: the dataset text file, the binary checkpoint, and the
// key=value training config, including their failure messages.

#include <catch2/catch_amalgamated.hpp>

#include <unistd.h>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "eccn/checkpoint.hpp"
#include "eccn/dataset.hpp"
#include "eccn/rng.hpp"
#include "eccn/rnn.hpp"
#include "eccn/train.hpp"

using namespace eccn;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::MessageMatches;
namespace fs = std::filesystem;

namespace {

struct ScratchDir {
    fs::path dir;
    explicit ScratchDir(const std::string& tag) {
        dir = fs::temp_directory_path() / ("eccn_io_" + tag + "_" + std::to_string(::getpid()));
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    ~ScratchDir() { fs::remove_all(dir); }
    std::string file(const std::string& name) const { return (dir / name).string(); }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    REQUIRE(out.good());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

std::vector<double> collect_params(Model m) {
    std::vector<double> out;
    std::visit([&](auto& net) { visit_params(net, [&](double& x) { out.push_back(x); }); }, m);
    return out;
}

}  // namespace

TEST_CASE("dataset files round-trip and keep the documented shape", "[io]") {
    ScratchDir tmp("ds");
    LabeledDataset ds;
    ds.n_max = 6;
    ds.label_scale = label_scale_for(6);
    Rng rng(404);
    for (int i = 0; i < 50; ++i) {
        const int n = 1 + static_cast<int>(rng.uniform_int(6));
        const int label = static_cast<int>(rng.uniform_int(9 + 1));
        ds.records.push_back(
            make_record(er_generate(n, 0.4, rng.next_u64()), label, 6, ds.label_scale));
    }

    const std::string path = tmp.file("sample.txt");
    write_dataset(path, ds);
    CHECK_FALSE(fs::exists(path + ".tmp"));

    const std::string text = slurp(path);
    CHECK(text.rfind("#eccn-dataset v1 n_max=6 label_scale=9\n", 0) == 0);
    CHECK(text.find('\r') == std::string::npos);
    CHECK(text.back() == '\n');

    LabeledDataset back = read_dataset(path);
    CHECK(back.n_max == 6);
    CHECK(back.label_scale == 9.0);
    REQUIRE(back.records.size() == ds.records.size());
    for (std::size_t i = 0; i < ds.records.size(); ++i) {
        CHECK(back.records[i].g == ds.records[i].g);
        CHECK(back.records[i].raw_label == ds.records[i].raw_label);
        CHECK(back.records[i].norm_label == ds.records[i].norm_label);
        CHECK(back.records[i].x == ds.records[i].x);
        CHECK(back.records[i].enc.true_n == ds.records[i].enc.true_n);
    }

    // Writing the re-read dataset reproduces the file byte for byte.
    const std::string path2 = tmp.file("sample2.txt");
    write_dataset(path2, back);
    CHECK(slurp(path2) == text);
}

TEST_CASE("dataset parse errors carry the line number and field", "[io]") {
    ScratchDir tmp("dserr");
    auto expect_error = [&](const std::string& content, const std::string& line_tag,
                            const std::string& field_tag) {
        const std::string p = tmp.file("bad.txt");
        spit(p, content);
        CHECK_THROWS_MATCHES(read_dataset(p), ParseError,
                             MessageMatches(ContainsSubstring(line_tag) &&
                                            ContainsSubstring(field_tag)));
    };

    expect_error("", "line 1", "header");
    expect_error("#wrong header\n", "line 1", "header");
    expect_error("#eccn-dataset v1 n_max=zero label_scale=9\n", "line 1", "n_max");
    expect_error("#eccn-dataset v1 n_max=6\n", "line 1", "header");
    expect_error("#eccn-dataset v1 n_max=6 label_scale=bad\n", "line 1", "label_scale");
    expect_error("#eccn-dataset v1 n_max=6 label_scale=-2\n", "line 1", "label_scale");

    const std::string head = "#eccn-dataset v1 n_max=6 label_scale=9\n";
    expect_error(head + "3\t111\t1\nnotab\n", "line 3", "record");
    expect_error(head + "3\t111\n", "line 2", "record");          // missing label field
    expect_error(head + "3\t1x1\t1\n", "line 2", "adjacency");    // non-binary bits
    expect_error(head + "3\t11\t1\n", "line 2", "adjacency");     // wrong bit count
    expect_error(head + "7\t" + std::string(21, '0') + "\t1\n", "line 2", "vertex count");
    expect_error(head + "3\t111\tx\n", "line 2", "label");
    expect_error(head + "3\t111\t-1\n", "line 2", "label");
    expect_error(head + "3\t111\t10\n", "line 2", "label");       // above label_scale

    // Blank lines are skipped, not errors, and line numbers still count them.
    const std::string p = tmp.file("blank.txt");
    spit(p, head + "\n3\t111\t1\n\n2\t1\t1\n");
    CHECK(read_dataset(p).records.size() == 2);
    spit(p, head + "\n3\t111\t1\n\n3\t1x1\t1\n");
    CHECK_THROWS_MATCHES(read_dataset(p), ParseError,
                         MessageMatches(ContainsSubstring("line 5")));
}

TEST_CASE("checkpoints round-trip every model family bitwise", "[io]") {
    ScratchDir tmp("ckpt");
    Rng rng(31337);

    std::vector<Model> models;
    models.push_back(init_single(5, rng.next_u64(), Mode::Constrained));
    models.push_back(init_single(3, rng.next_u64(), Mode::Unconstrained));
    models.push_back(init_multi(4, 3, rng.next_u64(), Mode::Constrained));
    models.push_back(init_ffn(16, 6, rng.next_u64()));

    // A non-zero initial state must survive the trip too (it is stored even
    // though it is not a trainable tensor).
    std::get<SingleLayerRnn>(models[0]).layer.h0[1] = 0.25;

    for (std::size_t k = 0; k < models.size(); ++k) {
        const std::string path = tmp.file("m" + std::to_string(k) + ".ckpt");
        save_checkpoint(path, models[k]);
        CHECK_FALSE(fs::exists(path + ".tmp"));
        Model back = load_checkpoint(path);

        CHECK(back.index() == models[k].index());
        CHECK(collect_params(back) == collect_params(models[k]));
        if (const auto* s = std::get_if<SingleLayerRnn>(&models[k])) {
            const auto& b = std::get<SingleLayerRnn>(back);
            CHECK(b.mode == s->mode);
            CHECK(b.layer.h0 == s->layer.h0);
        }
        if (const auto* m = std::get_if<MultiLayerRnn>(&models[k])) {
            const auto& b = std::get<MultiLayerRnn>(back);
            CHECK(b.mode == m->mode);
            CHECK(b.depth() == m->depth());
        }

        // Identical parameters mean identical predictions.
        LabeledDataset probe;
        probe.n_max = 4;
        probe.label_scale = label_scale_for(4);
        for (int i = 0; i < 5; ++i)
            probe.records.push_back(
                make_record(er_generate(4, 0.5, rng.next_u64()), 1, 4, probe.label_scale));
        if (std::holds_alternative<FeedForward>(models[k])) {
            if (std::get<FeedForward>(models[k]).in_dim != 16) continue;
        }
        for (const DatasetRecord& rec : probe.records)
            CHECK(predict(back, rec) == predict(models[k], rec));
    }

    // Saving twice produces identical bytes.
    const std::string a = tmp.file("twice_a.ckpt"), b = tmp.file("twice_b.ckpt");
    save_checkpoint(a, models[2]);
    save_checkpoint(b, models[2]);
    CHECK(slurp(a) == slurp(b));
}

TEST_CASE("corrupt checkpoints are rejected with a reason", "[io]") {
    ScratchDir tmp("ckptbad");
    Model m = init_single(4, 99, Mode::Constrained);
    const std::string good = tmp.file("good.ckpt");
    save_checkpoint(good, m);
    const std::string bytes = slurp(good);

    const std::string bad = tmp.file("bad.ckpt");

    std::string magic = bytes;
    magic[0] = 'X';
    spit(bad, magic);
    CHECK_THROWS_MATCHES(load_checkpoint(bad), std::runtime_error,
                         MessageMatches(ContainsSubstring("magic")));

    std::string version = bytes;
    version[8] = 9;  // format version u32 lives right after the 8-byte magic
    spit(bad, version);
    CHECK_THROWS_MATCHES(load_checkpoint(bad), std::runtime_error,
                         MessageMatches(ContainsSubstring("version")));

    spit(bad, bytes.substr(0, bytes.size() - 10));
    CHECK_THROWS_MATCHES(load_checkpoint(bad), std::runtime_error,
                         MessageMatches(ContainsSubstring("truncated")));

    spit(bad, "");
    CHECK_THROWS_AS(load_checkpoint(bad), std::runtime_error);
    CHECK_THROWS_MATCHES(load_checkpoint(tmp.file("missing.ckpt")), std::runtime_error,
                         MessageMatches(ContainsSubstring("cannot open")));
}

TEST_CASE("training configs parse comments, whitespace, and all keys", "[io]") {
    TrainConfig c = parse_train_config_string(
        "# a comment\n"
        "\n"
        "model = multi_rnn\n"
        "  hidden_width=12\r\n"
        "layer_count\t=\t2\n"
        "learning_rate = 0.005\n"
        "batch_size = 32\n"
        "max_epochs = 77\n"
        "patience = 9\n"
        "seed = 123456789012345\n");
    CHECK(c.model == ModelKind::MultiRnn);
    CHECK(c.hidden == 12);
    CHECK(c.layers == 2);
    CHECK(c.lr == 0.005);
    CHECK(c.batch == 32);
    CHECK(c.max_epochs == 77);
    CHECK(c.patience == 9);
    CHECK(c.seed == 123456789012345ULL);

    // Defaults survive an empty config.
    TrainConfig d = parse_train_config_string("# nothing here\n");
    CHECK(d.model == ModelKind::ConstrainedRnn);
    CHECK(d.hidden == 8);
    CHECK(d.layers == 1);

    for (const char* kind : {"constrained_rnn", "unconstrained_rnn", "multi_rnn", "ffn"}) {
        TrainConfig k = parse_train_config_string(std::string("model=") + kind + "\n");
        CHECK(kind_to_string(k.model) == kind);
    }

    CHECK_THROWS_MATCHES(parse_train_config_string("model=perceptron\n"), ParseError,
                         MessageMatches(ContainsSubstring("perceptron")));
    CHECK_THROWS_MATCHES(parse_train_config_string("# ok\nwingspan=3\n"), ParseError,
                         MessageMatches(ContainsSubstring("line 2") &&
                                        ContainsSubstring("wingspan")));
    CHECK_THROWS_MATCHES(parse_train_config_string("hidden_width=8\nbatch_size=many\n"),
                         ParseError, MessageMatches(ContainsSubstring("line 2")));
    CHECK_THROWS_MATCHES(parse_train_config_string("just words\n"), ParseError,
                         MessageMatches(ContainsSubstring("key=value")));

    CHECK_THROWS_MATCHES(parse_train_config_string("patience=0\n"), std::invalid_argument,
                         MessageMatches(ContainsSubstring("patience")));
    CHECK_THROWS_MATCHES(parse_train_config_string("learning_rate=0\n"), std::invalid_argument,
                         MessageMatches(ContainsSubstring("learning_rate")));
    CHECK_THROWS_MATCHES(parse_train_config_string("hidden_width=-3\n"), std::invalid_argument,
                         MessageMatches(ContainsSubstring("hidden_width")));
    CHECK_THROWS_MATCHES(parse_train_config_string("batch_size=0\n"), std::invalid_argument,
                         MessageMatches(ContainsSubstring("batch_size")));
    CHECK_THROWS_MATCHES(parse_train_config_string("max_epochs=0\n"), std::invalid_argument,
                         MessageMatches(ContainsSubstring("max_epochs")));
}

TEST_CASE("shortest round-trip formatting for emitted numbers", "[io]") {
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(9.0) == "9");
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(-0.25) == "-0.25");

    // Round-trip: parsing the text recovers the exact bits.
    Rng rng(2718);
    for (int i = 0; i < 2000; ++i) {
        const double v = rng.normal(0.0, 100.0);
        CHECK(std::stod(format_double(v)) == v);
    }
}
