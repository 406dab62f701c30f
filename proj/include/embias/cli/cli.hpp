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

#ifndef EMBIAS_CLI_CLI_HPP
#define EMBIAS_CLI_CLI_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "embias/bias/metrics.hpp"
#include "embias/embed/config.hpp"
#include "embias/synth/synth.hpp"

namespace embias::cli {

/// Everything a subcommand needs, resolved from (defaults <- config file
/// <- command-line flags). Config files are flat "key = value" text; every
/// flag overrides its key. The config path comes from --config or, when
/// that flag is absent, the EMBIAS_CONFIG environment variable.
struct RunConfig {
    // Paths.
    std::filesystem::path corpus_dir = "corpus";
    std::filesystem::path model_dir = "models";
    std::filesystem::path wordset_dir = "wordsets";
    std::filesystem::path stats_dir = "stats";
    std::filesystem::path affect_lexicon;  // empty: skip the affect t-tests
    std::filesystem::path output_dir = "out";
    std::vector<std::filesystem::path> inputs;  // raw record files (preprocess)
    std::filesystem::path adjectives;           // adjective list (adjectives)
    std::filesystem::path synth_spec;           // empty: built-in default world

    // Training. train.algorithm is the single algorithm used by correlate,
    // adjectives and synth; cmd_train trains every entry of `algorithms`
    // (defaulting to just train.algorithm).
    embed::TrainConfig train;
    std::vector<embed::Algorithm> algorithms;

    // Analysis.
    uint32_t repeats = 5;
    double subset_frac = 0.2;
    double threshold = 0.1;  // adjective |signed R^2| floor
    uint32_t top_k = 10;
    bias::Metric metric = bias::Metric::AxisProjection;
    bool unit_normalize = true;
    uint32_t random_sets = 0;  // extra random baseline columns in correlate
    uint32_t random_set_size = 10;
    double random_coverage = 0.8;
    std::string stat_name;  // adjectives: statistic to scan against

    // Corpus.
    uint64_t cap = 10000000;  // per-region sentence cap (preprocess)

    uint64_t seed = 1;      // master seed; also feeds train.seed
    bool no_train = false;  // synth: write the world files only

    /// ConfigError on out-of-range analysis parameters (training parameters
    /// are validated by TrainConfig itself at training time).
    void validate() const;
};

/// Applies one config-file pair onto cfg. ConfigError on unknown keys or
/// unparsable values. Key names match the long command-line flags with
/// underscores, e.g. "min_count" for --min-count.
void apply_config_pair(RunConfig& cfg, const std::string& key, const std::string& value);

/// Reads a flat key-value config file into cfg.
void load_config_file(RunConfig& cfg, const std::filesystem::path& path);

// Subcommand bodies. Each validates the paths it needs, writes data files
// under the configured directories and logs to stderr only. Errors are
// ConfigError (usage, exit 1) or DataError (content, exit 2).
void cmd_preprocess(const RunConfig& cfg);
void cmd_train(const RunConfig& cfg);
void cmd_correlate(const RunConfig& cfg);
void cmd_adjectives(const RunConfig& cfg);
void cmd_compare(const RunConfig& cfg);

/// Generates the world, writes corpus/stats/word-set files, then (unless
/// cfg.no_train) trains models and runs the ground-truth oracle; the report
/// lands in <output_dir>/oracle_report.csv. Returns the report (empty when
/// no_train). Subsampling is disabled for synthetic training: the anchor
/// words are deliberately frequent and must not be thinned.
synth::OracleReport cmd_synth(const RunConfig& cfg);

/// Full argv entry point. Exit codes: 0 success, 1 usage or configuration
/// error, 2 data error, 3 oracle failure.
int run_cli(int argc, const char* const* argv);

}  // namespace embias::cli

#endif  // EMBIAS_CLI_CLI_HPP
