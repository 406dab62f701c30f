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

#ifndef EMBIAS_SYNTH_SYNTH_HPP
#define EMBIAS_SYNTH_SYNTH_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "embias/analysis/pipeline.hpp"
#include "embias/analysis/stat_table.hpp"
#include "embias/bias/word_sets.hpp"
#include "embias/corpus/corpus.hpp"

namespace embias::synth {

/// One synthetic topic: its tokens co-occur with a female anchor at rate
/// (1 + bias)/2 per culture, and the theme's statistic is an affine image
/// of the bias ladder plus Gaussian noise.
struct SynthTheme {
    std::string name;
    std::vector<std::string> tokens;
    std::vector<double> bias;  // one per culture, each in [-1, 1]
    double stat_slope = 1.0;
    double stat_intercept = 0.0;
    // Noise standard deviation as a fraction of the standard deviation of
    // slope * bias across cultures.
    double noise_frac = 0.05;
};

struct SynthSpec {
    uint32_t n_cultures = 12;
    uint64_t sentences_per_culture = 100000;
    std::vector<std::string> female_anchors;
    std::vector<std::string> male_anchors;
    uint32_t filler_count = 60;   // filler vocabulary: filler-00..filler-NN
    // Themed tokens drawn per sentence. Two or more gives themed words and
    // anchors shared contexts (the other themed tokens), which is the
    // channel the input-vector geometry of SGNS actually learns from; with
    // a single themed token per sentence the axis projection of themed
    // words stays at noise level no matter how large the corpus is.
    uint32_t themed_per_sentence = 2;
    double filler_lambda = 3.0;   // Poisson mean of fillers per sentence
    uint64_t seed = 1;
    std::vector<SynthTheme> themes;

    /// ConfigError on: fewer than 3 cultures, empty anchor lists or themes,
    /// a bias ladder whose length differs from n_cultures or leaves
    /// [-1, 1], non-positive filler settings.
    void validate() const;

    /// Built-in world: 12 cultures, 100k sentences each, 6 female and
    /// 6 male anchors, 60 fillers, and two contrasting 8-token themes,
    /// "career" on a linear bias ladder from -0.8 to 0.8 and "family" on
    /// the reversed ladder. The contrast matters: anchors only develop a
    /// culture-specific gender direction when the corpus mixes themes they
    /// associate with at different rates.
    static SynthSpec default_spec();

    /// Key-value spec file. Keys: n_cultures, sentences_per_culture, seed,
    /// female_anchors, male_anchors (space-separated), filler_count,
    /// filler_lambda, themed_per_sentence, and per theme
    /// theme.<name>.tokens, theme.<name>.bias (either "linear:lo:hi" or
    /// n_cultures explicit values), theme.<name>.stat_slope /
    /// stat_intercept / noise_frac.
    static SynthSpec parse_file(const std::filesystem::path& path);
};

/// Culture keys are "c000", "c001", ... so lexicographic order matches the
/// ladder index.
std::string culture_name(uint32_t index);

struct SynthWorld {
    SynthSpec spec;
    std::map<std::string, corpus::CultureCorpus> corpora;
    // theme name -> culture -> injected bias
    std::map<std::string, std::map<std::string, double>> true_bias;
    std::vector<analysis::StatTable> stats;  // one per theme, named <theme>-stat
};

/// Every sentence holds one anchor, themed_per_sentence tokens of one
/// theme and at least one filler, shuffled; the anchor side is female with
/// probability (1 + bias)/2 for the sentence's theme. A pure function of
/// the spec (per-culture streams derive from (seed, culture index)).
SynthWorld gen_world(const SynthSpec& spec);

/// The theme's tokens as a neutral-themed word set; anchors as the gender
/// sets.
bias::WordSet theme_word_set(const SynthTheme& theme);
bias::WordSet female_anchor_set(const SynthSpec& spec);
bias::WordSet male_anchor_set(const SynthSpec& spec);

struct OracleCheck {
    std::string name;
    bool pass = false;
    double value = 0.0;
    std::string detail;
};

struct OracleReport {
    std::vector<OracleCheck> checks;
    bool all_pass() const;
};

struct OracleOptions {
    double spearman_min = 0.8;   // (a) rank agreement with the true ladder
    double r2_min = 0.6;         // (b) pipeline strength on the true pair
    double null_ceiling = 0.25;  // (c) per-trial bound for filler sets
    uint32_t null_trials = 20;
    double null_pass_frac = 0.95;
    uint32_t repeats = 5;
    double subset_frac = 0.2;
    uint64_t seed = 1;
    bool unit_normalize = true;
};

/// Ground-truth validation of a trained world: (a) measured per-culture
/// theme bias ranks like the injected ladder, (b) the theme vs. its own
/// statistic reaches r2_min with the slope's sign, (c) random filler sets
/// stay under the null ceiling in at least null_pass_frac of trials.
OracleReport pipeline_oracle_check(const SynthWorld& world,
                                   const analysis::CultureModels& models,
                                   const OracleOptions& opt);

}  // namespace embias::synth

#endif  // EMBIAS_SYNTH_SYNTH_HPP
