/*
 * Copyright 2026 The embias Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include "embias/cli/cli.hpp"
#include "embias/corpus/corpus.hpp"
#include "embias/embed/model.hpp"
#include "embias/error.hpp"
#include "embias/util.hpp"

#include "test_helpers.hpp"

using namespace embias;
using namespace embias::cli;

namespace {

namespace fs = std::filesystem;

int run(const std::vector<std::string>& args) {
    std::vector<const char*> argv;
    argv.push_back("embias");
    for (const auto& a : args) argv.push_back(a.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data());
}

/// Four-culture world small enough to regenerate in microseconds; used by
/// the tests that only care about file plumbing, not signal.
void write_micro_spec(const fs::path& path) {
    write_text_file(path,
                    "n_cultures = 4\n"
                    "sentences_per_culture = 40\n"
                    "seed = 9\n"
                    "filler_count = 12\n"
                    "filler_lambda = 2.0\n"
                    "themed_per_sentence = 2\n"
                    "female_anchors = she her\n"
                    "male_anchors = he him\n"
                    "theme.work.tokens = career office salary job\n"
                    "theme.work.bias = linear:-0.8:0.8\n"
                    "theme.home.tokens = family home kitchen care\n"
                    "theme.home.bias = linear:0.8:-0.8\n");
}

}  // namespace

TEST_CASE("config pairs route to their fields") {
    RunConfig cfg;
    apply_config_pair(cfg, "corpus_dir", "/x/c");
    apply_config_pair(cfg, "output_dir", "/x/o");
    apply_config_pair(cfg, "algorithm", "glove");
    apply_config_pair(cfg, "algorithms", "skipgram  fasttext-sg");
    apply_config_pair(cfg, "inputs", "a.jsonl b.jsonl");
    apply_config_pair(cfg, "dim", "32");
    apply_config_pair(cfg, "window", "4");
    apply_config_pair(cfg, "min_count", "2");
    apply_config_pair(cfg, "epochs", "7");
    apply_config_pair(cfg, "learning_rate", "0.01");
    apply_config_pair(cfg, "subsample", "0");
    apply_config_pair(cfg, "threads", "2");
    apply_config_pair(cfg, "repeats", "9");
    apply_config_pair(cfg, "subset_frac", "0.5");
    apply_config_pair(cfg, "threshold", "0.2");
    apply_config_pair(cfg, "top_k", "3");
    apply_config_pair(cfg, "metric", "l2-ratio");
    apply_config_pair(cfg, "normalize", "raw");
    apply_config_pair(cfg, "random_sets", "4");
    apply_config_pair(cfg, "stat", "gap");
    apply_config_pair(cfg, "cap", "123");
    apply_config_pair(cfg, "seed", "77");
    apply_config_pair(cfg, "no_train", "yes");

    CHECK(cfg.corpus_dir == fs::path("/x/c"));
    CHECK(cfg.output_dir == fs::path("/x/o"));
    CHECK(cfg.train.algorithm == embed::Algorithm::Glove);
    REQUIRE(cfg.algorithms.size() == 2);
    CHECK(cfg.algorithms[0] == embed::Algorithm::Skipgram);
    CHECK(cfg.algorithms[1] == embed::Algorithm::FasttextSg);
    REQUIRE(cfg.inputs.size() == 2);
    CHECK(cfg.inputs[1] == fs::path("b.jsonl"));
    CHECK(cfg.train.dim == 32);
    CHECK(cfg.train.window == 4);
    CHECK(cfg.train.min_count == 2);
    CHECK(cfg.train.epochs == 7);
    CHECK(cfg.train.learning_rate == 0.01);
    CHECK(cfg.train.subsample_threshold == 0.0);
    CHECK(cfg.train.threads == 2);
    CHECK(cfg.repeats == 9);
    CHECK(cfg.subset_frac == 0.5);
    CHECK(cfg.threshold == 0.2);
    CHECK(cfg.top_k == 3);
    CHECK(cfg.metric == bias::Metric::L2Ratio);
    CHECK_FALSE(cfg.unit_normalize);
    CHECK(cfg.random_sets == 4);
    CHECK(cfg.stat_name == "gap");
    CHECK(cfg.cap == 123);
    CHECK(cfg.seed == 77);
    CHECK(cfg.no_train);
}

TEST_CASE("config pairs reject unknown keys and bad values") {
    RunConfig cfg;
    CHECK_THROWS_AS(apply_config_pair(cfg, "wat", "1"), ConfigError);
    CHECK_THROWS_AS(apply_config_pair(cfg, "dim", "abc"), ConfigError);
    CHECK_THROWS_AS(apply_config_pair(cfg, "dim", "-3"), ConfigError);
    CHECK_THROWS_AS(apply_config_pair(cfg, "dim", "2.5"), ConfigError);
    CHECK_THROWS_AS(apply_config_pair(cfg, "metric", "cosine"), ConfigError);
    CHECK_THROWS_AS(apply_config_pair(cfg, "algorithm", "word2vec"), ConfigError);
    CHECK_THROWS_AS(apply_config_pair(cfg, "normalize", "maybe"), ConfigError);
    CHECK_THROWS_AS(apply_config_pair(cfg, "no_train", "si"), ConfigError);
}

TEST_CASE("run config validation bounds the analysis parameters") {
    RunConfig ok;
    CHECK_NOTHROW(ok.validate());
    RunConfig bad;
    bad.repeats = 0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = RunConfig{};
    bad.subset_frac = 0.0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = RunConfig{};
    bad.subset_frac = 1.5;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = RunConfig{};
    bad.threshold = -0.1;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = RunConfig{};
    bad.top_k = 0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = RunConfig{};
    bad.random_coverage = 1.5;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("config file, environment and flags layer in precedence order") {
    test::TempDir tmp("cli-prec");
    fs::path spec = tmp / "micro.spec";
    write_micro_spec(spec);

    // Environment-supplied config file alone.
    write_text_file(tmp / "env.conf",
                    "synth_spec = " + spec.string() + "\n" +
                    "output_dir = " + (tmp / "envout").string() + "\n");
    ::setenv("EMBIAS_CONFIG", (tmp / "env.conf").string().c_str(), 1);
    CHECK(run({"synth", "--no-train"}) == 0);
    CHECK(fs::exists(tmp / "envout/corpus/c000.txt"));

    // --config wins over the environment.
    write_text_file(tmp / "file.conf",
                    "synth_spec = " + spec.string() + "\n" +
                    "output_dir = " + (tmp / "cfgout").string() + "\n");
    CHECK(run({"--config", (tmp / "file.conf").string(), "synth", "--no-train"}) == 0);
    CHECK(fs::exists(tmp / "cfgout/corpus/c000.txt"));
    ::unsetenv("EMBIAS_CONFIG");

    // A flag wins over the config file it rides with.
    CHECK(run({"--config", (tmp / "file.conf").string(), "--output-dir",
               (tmp / "flagout").string(), "synth", "--no-train"}) == 0);
    CHECK(fs::exists(tmp / "flagout/corpus/c000.txt"));
    CHECK_FALSE(fs::exists(tmp / "cfgout/corpus/c001.txt.tmp"));

    // The spec pins the seed, so all three runs wrote the same world.
    std::string a = test::read_file_bytes(tmp / "envout/corpus/c000.txt");
    std::string b = test::read_file_bytes(tmp / "cfgout/corpus/c000.txt");
    std::string c = test::read_file_bytes(tmp / "flagout/corpus/c000.txt");
    CHECK(a == b);
    CHECK(b == c);
}

TEST_CASE("exit codes separate usage, config, data and oracle failures") {
    test::TempDir tmp("cli-exit");

    // Usage errors from the argument parser.
    CHECK(run({"--definitely-not-a-flag", "synth"}) == 1);
    CHECK(run({}) == 1);  // a subcommand is required
    CHECK(run({"frobnicate"}) == 1);

    // Configuration errors: bad parameter values and missing directories.
    CHECK(run({"--repeats", "0", "synth", "--no-train"}) == 1);
    CHECK(run({"--corpus-dir", (tmp / "nope").string(), "train"}) == 1);
    write_text_file(tmp / "bad.conf", "unknown_key = 1\n");
    CHECK(run({"--config", (tmp / "bad.conf").string(), "synth", "--no-train"}) == 1);
    CHECK(run({"--config", (tmp / "missing.conf").string(), "synth", "--no-train"}) == 1);

    // Data error: every region fails to train (nothing clears min_count).
    fs::create_directories(tmp / "thin");
    write_text_file(tmp / "thin/r1.txt", "hello world\n");
    CHECK(run({"--corpus-dir", (tmp / "thin").string(), "--model-dir",
               (tmp / "models").string(), "train"}) == 2);
}

TEST_CASE("synth exits three when the oracle rejects a mush world") {
    test::TempDir tmp("cli-oracle");
    // Far too little text for the null ceiling: random filler sets pick up
    // the shared small-corpus noise and blow past 0.25 in most trials.
    write_text_file(tmp / "mush.spec",
                    "n_cultures = 6\n"
                    "sentences_per_culture = 400\n"
                    "seed = 9\n"
                    "filler_count = 20\n"
                    "filler_lambda = 3.0\n"
                    "themed_per_sentence = 2\n"
                    "female_anchors = she her\n"
                    "male_anchors = he him\n"
                    "theme.work.tokens = career office salary job\n"
                    "theme.work.bias = linear:-0.8:0.8\n"
                    "theme.home.tokens = family home kitchen care\n"
                    "theme.home.bias = linear:0.8:-0.8\n");
    int rc = run({"--synth-spec", (tmp / "mush.spec").string(), "--output-dir",
                  (tmp / "world").string(), "--dim", "8", "--window", "3", "--epochs", "1",
                  "synth"});
    CHECK(rc == 3);
    CHECK(fs::exists(tmp / "world/oracle_report.csv"));
    std::string report = test::read_file_bytes(tmp / "world/oracle_report.csv");
    CHECK(report.find(",fail,") != std::string::npos);
}

TEST_CASE("preprocess cleans records into per-region files with a manifest") {
    test::TempDir tmp("cli-pre");
    write_text_file(
        tmp / "records.jsonl",
        R"({"id":"1","text":"Commuting to the office every day by train","lang":"en","region":"us"})"
        "\n"
        R"({"id":"2","text":"Reading a long novel in the park #reading","lang":"en","region":"us"})"
        "\n"
        R"({"id":"3","text":"El tren llega tarde otra vez","lang":"es","region":"us"})"
        "\n"
        R"({"id":"4","text":"too short","lang":"en","region":"gb"})"
        "\n"
        R"({"id":"5","text":"Watching the match at the pub tonight","lang":"en","region":"gb"})"
        "\n"
        "this line is not json\n");
    CHECK(run({"--inputs", (tmp / "records.jsonl").string(), "--corpus-dir",
               (tmp / "corpus").string(), "--cap", "1000", "preprocess"}) == 0);

    CHECK(fs::exists(tmp / "corpus/us.txt"));
    CHECK(fs::exists(tmp / "corpus/gb.txt"));
    corpus::CorpusManifest manifest = corpus::read_corpus_manifest(tmp / "corpus/manifest.json");
    CHECK(manifest.cap == 1000);
    CHECK(manifest.malformed_lines == 1);
    REQUIRE(manifest.regions.count("us") == 1);
    REQUIRE(manifest.regions.count("gb") == 1);
    CHECK(manifest.regions.at("us").accepted == 2);
    CHECK(manifest.regions.at("us").written == 2);
    CHECK(manifest.regions.at("us").rejected_non_english == 1);
    CHECK(manifest.regions.at("gb").accepted == 1);
    CHECK(manifest.regions.at("gb").rejected_too_short == 1);
    CHECK_FALSE(manifest.regions.at("us").sampled);

    corpus::CultureCorpus us = corpus::read_corpus_file(tmp / "corpus/us.txt", "us");
    REQUIRE(us.sentences.size() == 2);
    CHECK(us.sentences[0].tokens[0] == "commuting");
}

TEST_CASE("cli pipeline runs end to end on the small shipped world") {
    test::TempDir tmp("cli-e2e");
    fs::path spec = test::source_root() / "data/synth/small.spec";
    fs::path world = tmp / "world";

    REQUIRE(run({"--synth-spec", spec.string(), "--output-dir", world.string(), "synth",
                 "--no-train"}) == 0);
    for (const char* name : {"c000", "c001", "c002", "c003", "c004", "c005"})
        CHECK(fs::exists(world / "corpus" / (std::string(name) + ".txt")));
    CHECK(fs::exists(world / "stats/career-stat.csv"));
    CHECK(fs::exists(world / "stats/family-stat.csv"));
    CHECK(fs::exists(world / "stats/stats.json"));
    CHECK(fs::exists(world / "wordsets/sets.json"));
    CHECK(fs::exists(world / "wordsets/female.txt"));
    CHECK(fs::exists(world / "wordsets/career.txt"));

    // Train two algorithms over all six regions.
    REQUIRE(run({"--corpus-dir", (world / "corpus").string(), "--model-dir",
                 (tmp / "models").string(), "--algorithms", "skipgram cbow", "--dim", "24",
                 "--window", "5", "--epochs", "3", "--subsample", "0", "--seed", "11",
                 "train"}) == 0);
    for (const char* alg : {"skipgram", "cbow"})
        for (int c = 0; c < 6; ++c)
            CHECK(fs::exists(tmp / "models" /
                             ("c00" + std::to_string(c) + "." + alg + ".bin")));
    embed::EmbeddingModel m = embed::load_model(tmp / "models/c000.skipgram.bin");
    CHECK(m.region() == "c000");
    CHECK(m.config().dim == 24);
    CHECK(m.config().seed == 11);

    // A rerun skips every existing model and still succeeds.
    REQUIRE(run({"--corpus-dir", (world / "corpus").string(), "--model-dir",
                 (tmp / "models").string(), "--algorithms", "skipgram cbow", "--dim", "24",
                 "--window", "5", "--epochs", "3", "--subsample", "0", "--seed", "11",
                 "train"}) == 0);

    std::vector<std::string> common = {"--model-dir",   (tmp / "models").string(),
                                       "--wordset-dir", (world / "wordsets").string(),
                                       "--stats-dir",   (world / "stats").string(),
                                       "--seed",        "11"};

    // Correlate: matrix, cells and one scatter per (set, stat).
    {
        std::vector<std::string> args = common;
        args.insert(args.end(), {"--output-dir", (tmp / "out").string(), "--repeats", "3",
                                 "correlate"});
        REQUIRE(run(args) == 0);
        std::string matrix = test::read_file_bytes(tmp / "out/correlation_matrix.csv");
        CHECK(matrix.rfind("statistic,career,family\n", 0) == 0);
        CHECK(matrix.find("career-stat,") != std::string::npos);
        CHECK(matrix.find("family-stat,") != std::string::npos);
        std::string cells = test::read_file_bytes(tmp / "out/cells.csv");
        CHECK(cells.rfind("statistic,set,signed_r2,n_cultures,repeats,selected,error\n", 0) == 0);
        CHECK(cells.find("career-stat,career,") != std::string::npos);
        for (const char* f : {"scatter_career_career-stat.csv", "scatter_career_family-stat.csv",
                              "scatter_family_career-stat.csv", "scatter_family_family-stat.csv"})
            CHECK(fs::exists(tmp / "out" / f));
        std::string scatter = test::read_file_bytes(tmp / "out/scatter_career_career-stat.csv");
        CHECK(scatter.rfind("culture,bias,stat\n", 0) == 0);
        // Header plus one row per culture.
        CHECK(std::count(scatter.begin(), scatter.end(), '\n') == 7);
    }

    // Adjectives against one stat, with the affect lexicon attached.
    {
        write_text_file(tmp / "adjectives.txt",
                        "career\noffice\nsalary\njob\nfamily\nhome\nkitchen\nchildren\n");
        std::string affect = "word,valence,dominance\n";
        for (const char* w : {"career", "office", "salary", "job"})
            affect += std::string(w) + ",7.1,6.2\n";
        for (const char* w : {"family", "home", "kitchen", "children"})
            affect += std::string(w) + ",3.2,4.1\n";
        write_text_file(tmp / "affect.csv", affect);

        std::vector<std::string> args = common;
        args.insert(args.end(),
                    {"--output-dir", (tmp / "out2").string(), "--adjectives",
                     (tmp / "adjectives.txt").string(), "--affect-lexicon",
                     (tmp / "affect.csv").string(), "--stat", "career-stat", "--threshold",
                     "0.001", "adjectives"});
        REQUIRE(run(args) == 0);
        std::string report = test::read_file_bytes(tmp / "out2/adjective_report.csv");
        CHECK(report.rfind("section,name,value,t,p,df,mean_lo,mean_hi\n", 0) == 0);
        CHECK(report.find("meta,stat,career-stat,") != std::string::npos);
        CHECK(report.find("meta,scanned,8,") != std::string::npos);
        CHECK(report.find("lo_gap,") != std::string::npos);
        CHECK(report.find("hi_gap,") != std::string::npos);
        CHECK(report.find("affect,valence,") != std::string::npos);
        CHECK(report.find("affect,dominance,") != std::string::npos);

        // Two stats exist, so omitting --stat is a usage error.
        std::vector<std::string> ambiguous = common;
        ambiguous.insert(ambiguous.end(), {"--output-dir", (tmp / "out2").string(),
                                           "--adjectives", (tmp / "adjectives.txt").string(),
                                           "adjectives"});
        CHECK(run(ambiguous) == 1);
    }

    // Compare: both trained algorithms, all three metrics.
    {
        std::vector<std::string> args = common;
        args.insert(args.end(), {"--output-dir", (tmp / "out3").string(), "compare"});
        REQUIRE(run(args) == 0);
        std::string csv = test::read_file_bytes(tmp / "out3/compare.csv");
        CHECK(csv.rfind("algorithm,metric,set,statistic,signed_r2,selected,recommended,error\n",
                        0) == 0);
        CHECK(csv.find("skipgram,axis-projection,") != std::string::npos);
        CHECK(csv.find("cbow,l2-ratio,") != std::string::npos);
        CHECK(csv.find("glove,") == std::string::npos);  // not trained, warns and skips
        // 2 algorithms x 3 metrics x 2 stats x 2 sets data rows plus header.
        CHECK(std::count(csv.begin(), csv.end(), '\n') == 25);
    }
}
