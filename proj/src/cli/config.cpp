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

#include <cmath>

#include "embias/cli/cli.hpp"
#include "embias/error.hpp"
#include "embias/util.hpp"

namespace embias::cli {

namespace {

uint64_t parse_u64(const std::string& value, const std::string& key) {
    double d = parse_double_field(value, key);
    if (d < 0 || d != std::floor(d))
        throw ConfigError(key + ": expected a non-negative integer, got '" + value + "'");
    return static_cast<uint64_t>(d);
}

bool parse_bool(const std::string& value, const std::string& key) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw ConfigError(key + ": expected true/false, got '" + value + "'");
}

}  // namespace

void RunConfig::validate() const {
    if (repeats < 1) throw ConfigError("repeats must be >= 1");
    if (!(subset_frac > 0.0) || subset_frac > 1.0)
        throw ConfigError("subset_frac must lie in (0, 1]");
    if (!(threshold >= 0.0)) throw ConfigError("threshold must be >= 0");
    if (top_k < 1) throw ConfigError("top_k must be >= 1");
    if (random_set_size < 1) throw ConfigError("random_set_size must be >= 1");
    if (!(random_coverage > 0.0) || random_coverage > 1.0)
        throw ConfigError("random_coverage must lie in (0, 1]");
}

void apply_config_pair(RunConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "corpus_dir") cfg.corpus_dir = value;
    else if (key == "model_dir") cfg.model_dir = value;
    else if (key == "wordset_dir") cfg.wordset_dir = value;
    else if (key == "stats_dir") cfg.stats_dir = value;
    else if (key == "affect_lexicon") cfg.affect_lexicon = value;
    else if (key == "output_dir") cfg.output_dir = value;
    else if (key == "adjectives") cfg.adjectives = value;
    else if (key == "synth_spec") cfg.synth_spec = value;
    else if (key == "inputs") {
        cfg.inputs.clear();
        for (const auto& p : split(value, ' '))
            if (!p.empty()) cfg.inputs.emplace_back(p);
    } else if (key == "algorithm") {
        cfg.train.algorithm = embed::parse_algorithm(value);
    } else if (key == "algorithms") {
        cfg.algorithms.clear();
        for (const auto& a : split(value, ' '))
            if (!a.empty()) cfg.algorithms.push_back(embed::parse_algorithm(a));
    } else if (key == "window") cfg.train.window = static_cast<uint32_t>(parse_u64(value, key));
    else if (key == "dim") cfg.train.dim = static_cast<uint32_t>(parse_u64(value, key));
    else if (key == "min_count") cfg.train.min_count = static_cast<uint32_t>(parse_u64(value, key));
    else if (key == "negatives") cfg.train.negatives = static_cast<uint32_t>(parse_u64(value, key));
    else if (key == "epochs") cfg.train.epochs = static_cast<uint32_t>(parse_u64(value, key));
    else if (key == "learning_rate") cfg.train.learning_rate = parse_double_field(value, key);
    else if (key == "subsample") cfg.train.subsample_threshold = parse_double_field(value, key);
    else if (key == "glove_xmax") cfg.train.glove_xmax = parse_double_field(value, key);
    else if (key == "glove_alpha") cfg.train.glove_alpha = parse_double_field(value, key);
    else if (key == "ngram_min") cfg.train.ngram_min = static_cast<uint32_t>(parse_u64(value, key));
    else if (key == "ngram_max") cfg.train.ngram_max = static_cast<uint32_t>(parse_u64(value, key));
    else if (key == "buckets") cfg.train.bucket_count = static_cast<uint32_t>(parse_u64(value, key));
    else if (key == "threads") cfg.train.threads = static_cast<uint32_t>(parse_u64(value, key));
    else if (key == "repeats") cfg.repeats = static_cast<uint32_t>(parse_u64(value, key));
    else if (key == "subset_frac") cfg.subset_frac = parse_double_field(value, key);
    else if (key == "threshold") cfg.threshold = parse_double_field(value, key);
    else if (key == "top_k") cfg.top_k = static_cast<uint32_t>(parse_u64(value, key));
    else if (key == "metric") cfg.metric = bias::parse_metric(value);
    else if (key == "normalize") {
        if (value == "unit") cfg.unit_normalize = true;
        else if (value == "raw") cfg.unit_normalize = false;
        else throw ConfigError("normalize: expected 'unit' or 'raw', got '" + value + "'");
    } else if (key == "random_sets") cfg.random_sets = static_cast<uint32_t>(parse_u64(value, key));
    else if (key == "random_set_size")
        cfg.random_set_size = static_cast<uint32_t>(parse_u64(value, key));
    else if (key == "random_coverage") cfg.random_coverage = parse_double_field(value, key);
    else if (key == "stat") cfg.stat_name = value;
    else if (key == "cap") cfg.cap = parse_u64(value, key);
    else if (key == "seed") cfg.seed = parse_u64(value, key);
    else if (key == "no_train") cfg.no_train = parse_bool(value, key);
    else throw ConfigError("unknown config key '" + key + "'");
}

void load_config_file(RunConfig& cfg, const std::filesystem::path& path) {
    for (const auto& [key, value] : parse_kv_file(path)) apply_config_pair(cfg, key, value);
}

}  // namespace embias::cli
