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

#include <cstdio>
#include <cstdlib>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "embias/cli/cli.hpp"
#include "embias/error.hpp"
#include "embias/log.hpp"

namespace embias::cli {

namespace {

// Every value flag maps 1:1 onto a config key and is funneled through
// apply_config_pair, so flag parsing and config parsing cannot diverge.
struct FlagSpec {
    const char* key;
    const char* flag;
    const char* help;
};

constexpr FlagSpec kFlags[] = {
    {"corpus_dir", "--corpus-dir", "Per-region token file directory (default: corpus)"},
    {"model_dir", "--model-dir", "Model file directory (default: models)"},
    {"wordset_dir", "--wordset-dir", "Word-set directory with sets.json (default: wordsets)"},
    {"stats_dir", "--stats-dir", "Statistics directory of culture,value CSVs (default: stats)"},
    {"affect_lexicon", "--affect-lexicon",
     "word,valence,dominance CSV; enables the affect t-tests"},
    {"output_dir", "--output-dir", "Report output directory (default: out)"},
    {"inputs", "--inputs", "Raw record files for preprocess, space-separated"},
    {"adjectives", "--adjectives", "Adjective list file for the adjectives command"},
    {"synth_spec", "--synth-spec", "Synthetic world spec file (default: built-in world)"},
    {"algorithm", "--algorithm",
     "Embedding algorithm: skipgram, cbow, glove or fasttext-sg (default: skipgram)"},
    {"algorithms", "--algorithms", "Algorithms for the train command, space-separated"},
    {"window", "--window", "Context window size (default: 10)"},
    {"dim", "--dim", "Embedding dimensionality (default: 200)"},
    {"min_count", "--min-count", "Minimum token count for the vocabulary (default: 5)"},
    {"negatives", "--negatives", "Negative samples per positive (default: 5)"},
    {"epochs", "--epochs", "Training epochs; 0 = algorithm default (5, GloVe 15)"},
    {"learning_rate", "--learning-rate",
     "Initial learning rate; 0 = algorithm default (0.025; CBOW and GloVe 0.05)"},
    {"subsample", "--subsample", "Frequent-word subsampling threshold; 0 disables (default: 1e-4)"},
    {"glove_xmax", "--glove-xmax", "GloVe weighting cutoff (default: 100)"},
    {"glove_alpha", "--glove-alpha", "GloVe weighting exponent (default: 0.75)"},
    {"ngram_min", "--ngram-min", "fastText minimum n-gram length (default: 3)"},
    {"ngram_max", "--ngram-max", "fastText maximum n-gram length (default: 6)"},
    {"buckets", "--buckets", "fastText n-gram hash buckets (default: 2000000)"},
    {"threads", "--threads", "Worker threads; 1 guarantees determinism (default: 1)"},
    {"repeats", "--repeats", "Feature-selection repeats per cell (default: 5)"},
    {"subset_frac", "--subset-frac", "Culture fraction for feature selection (default: 0.2)"},
    {"threshold", "--threshold", "Adjective |signed R^2| floor (default: 0.1)"},
    {"top_k", "--top-k", "Adjectives kept per direction (default: 10)"},
    {"metric", "--metric", "Bias metric: axis-projection, l2-diff or l2-ratio"},
    {"normalize", "--normalize", "Vector normalization: unit or raw (default: unit)"},
    {"random_sets", "--random-sets", "Random baseline sets added to correlate (default: 0)"},
    {"random_set_size", "--random-set-size", "Words per random baseline set (default: 10)"},
    {"random_coverage", "--random-coverage",
     "Vocabulary coverage required of random-set words (default: 0.8)"},
    {"stat", "--stat", "Statistic name the adjectives command scans against"},
    {"cap", "--cap", "Per-region sentence cap for preprocess (default: 10000000)"},
    {"seed", "--seed", "Master seed for sampling, training and analysis (default: 1)"},
};

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"embias: per-culture word embeddings, gender-bias metrics and gender-gap"
                 " correlation"};
    app.require_subcommand(1);

    std::string config_path;
    CLI::Option* opt_config = app.add_option(
        "--config", config_path,
        "Config file (flat 'key = value'); EMBIAS_CONFIG supplies a default path");
    bool quiet = false;
    app.add_flag("--quiet", quiet, "Suppress info logging (warnings remain)");
    CLI::Option* opt_no_train =
        app.add_flag("--no-train", "synth: write the world files only, skip training and oracle");

    std::map<std::string, std::string> storage;
    std::vector<std::pair<std::string, CLI::Option*>> value_opts;
    for (const FlagSpec& f : kFlags)
        value_opts.emplace_back(f.key, app.add_option(f.flag, storage[f.key], f.help));

    CLI::App* sc_preprocess = app.add_subcommand(
        "preprocess", "Clean raw region-tagged records into per-region token files");
    CLI::App* sc_train =
        app.add_subcommand("train", "Train embedding models from the token files");
    CLI::App* sc_correlate = app.add_subcommand(
        "correlate", "Correlate word-set biases against gender-gap statistics");
    CLI::App* sc_adjectives = app.add_subcommand(
        "adjectives", "Scan adjectives against one statistic and run the affect t-tests");
    CLI::App* sc_compare = app.add_subcommand(
        "compare", "Signed R^2 grid across all four algorithms and all three metrics");
    CLI::App* sc_synth = app.add_subcommand(
        "synth", "Generate a synthetic world, train on it and run the ground-truth oracle");
    for (CLI::App* sc :
         {sc_preprocess, sc_train, sc_correlate, sc_adjectives, sc_compare, sc_synth})
        sc->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }
    if (quiet) set_log_quiet(true);

    try {
        RunConfig cfg;
        if (opt_config->count() > 0) {
            load_config_file(cfg, config_path);
        } else if (const char* env = std::getenv("EMBIAS_CONFIG")) {
            if (env[0] != '\0') load_config_file(cfg, env);
        }
        for (const auto& [key, opt] : value_opts)
            if (opt->count() > 0) apply_config_pair(cfg, key, storage[key]);
        if (opt_no_train->count() > 0) apply_config_pair(cfg, "no_train", "true");
        cfg.validate();

        if (sc_preprocess->parsed()) {
            cmd_preprocess(cfg);
        } else if (sc_train->parsed()) {
            cmd_train(cfg);
        } else if (sc_correlate->parsed()) {
            cmd_correlate(cfg);
        } else if (sc_adjectives->parsed()) {
            cmd_adjectives(cfg);
        } else if (sc_compare->parsed()) {
            cmd_compare(cfg);
        } else if (sc_synth->parsed()) {
            synth::OracleReport report = cmd_synth(cfg);
            if (!report.all_pass()) {
                std::fprintf(stderr, "embias: oracle checks failed\n");
                return 3;
            }
        }
        return 0;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "embias: config error: %s\n", e.what());
        return 1;
    } catch (const DataError& e) {
        std::fprintf(stderr, "embias: data error: %s\n", e.what());
        return 2;
    }
}

}  // namespace embias::cli
