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

#ifndef EMBIAS_ANALYSIS_PIPELINE_HPP
#define EMBIAS_ANALYSIS_PIPELINE_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "embias/analysis/stat_table.hpp"
#include "embias/bias/metrics.hpp"
#include "embias/bias/word_sets.hpp"
#include "embias/embed/model.hpp"

namespace embias::analysis {

using CultureModels = std::map<std::string, embed::EmbeddingModel>;
using CultureAxes = std::map<std::string, bias::GenderAxis>;

/// Axis per culture, each from the same female/male sets.
CultureAxes make_axes(const CultureModels& models, const bias::WordSet& female,
                      const bias::WordSet& male, bool unit_normalize);

/// Single-word bias value per (word, culture): the per-word term of the
/// chosen metric, so the metric of any word subset is the mean of its rows.
/// Undefined cells (word missing from a culture's vocabulary, or excluded
/// by the l2-ratio zero-distance rule) hold NaN.
struct WordBiasTable {
    std::string set_name;
    std::vector<std::string> words;     // candidate words, set order
    std::vector<std::string> cultures;  // sorted region keys
    std::vector<double> values;         // words.size() x cultures.size(), row-major

    double at(size_t w, size_t c) const { return values[w * cultures.size() + c]; }
    bool defined(size_t w, size_t c) const;
};

WordBiasTable build_word_bias_table(const bias::WordSet& set, const CultureModels& models,
                                    const CultureAxes& axes, bias::Metric metric,
                                    bool unit_normalize);

/// Greedy forward selection over the subset cultures: repeatedly add the
/// word that raises |signed_r2| of the selected words' mean bias against
/// the statistic, stopping when no strict improvement exists. Ties go to
/// the lexicographically smaller word. Never returns empty; throws
/// DataError when no single word yields a valid regression on the subset.
std::vector<std::string> feature_select(const WordBiasTable& table, const StatTable& stat,
                                        const std::vector<std::string>& subset_cultures);

struct CorrelationResult {
    std::string set_name;
    std::string stat_name;
    double signed_r2 = 0.0;                               // mean of per_repeat
    std::vector<double> per_repeat;
    std::vector<std::vector<std::string>> selected_words;  // per repeat
    uint32_t n_cultures = 0;  // cultures present in both the table and stat
};

/// The repeated pipeline: each repeat draws a fresh culture subset of
/// round(subset_frac * n) cultures (clamped to [3, n]), feature-selects on
/// it, then regresses the selected words' mean bias against the statistic
/// over the full culture set. Repeat r uses the seed derived from
/// (seed, "repeat:r"). Requires at least 5 cultures shared by the table
/// and the statistic.
CorrelationResult averaged_signed_r2(const WordBiasTable& table, const StatTable& stat,
                                     uint32_t repeats, double subset_frac, uint64_t seed);

/// Convenience overload building the bias table first (axis-projection
/// terms, the pipeline's metric).
CorrelationResult averaged_signed_r2(const bias::WordSet& set, const CultureModels& models,
                                     const CultureAxes& axes, const StatTable& stat,
                                     uint32_t repeats, double subset_frac, uint64_t seed,
                                     bool unit_normalize = true);

struct MatrixOptions {
    uint32_t repeats = 5;
    double subset_frac = 0.2;
    uint64_t seed = 1;
    bias::Metric metric = bias::Metric::AxisProjection;
    bool unit_normalize = true;
};

struct MatrixCell {
    bool ok = false;
    CorrelationResult result;
    std::string error;  // set when !ok
};

/// Rows are statistics, columns word sets; each cell is an independent
/// averaged_signed_r2 run seeded from (seed, set name, stat name), so cell
/// order and parallelism cannot change values. A failing cell records its
/// error and leaves the rest intact.
struct CorrelationMatrix {
    std::vector<std::string> set_names;
    std::vector<std::string> stat_names;
    std::vector<MatrixCell> cells;  // stat-major: cells[s * set_names.size() + w]

    const MatrixCell& cell(size_t stat_idx, size_t set_idx) const {
        return cells[stat_idx * set_names.size() + set_idx];
    }
};

CorrelationMatrix correlation_matrix(const std::vector<bias::WordSet>& sets,
                                     const CultureModels& models, const CultureAxes& axes,
                                     const std::vector<StatTable>& stats,
                                     const MatrixOptions& opt);

/// Random baseline sets drawn from words covering at least coverage_frac of
/// the culture vocabularies, excluding `exclude` (typically the gender and
/// themed words) and the corpus placeholder tokens. Sets are named
/// "random-1".."random-count" and sampled from the candidates in sorted
/// order, so the draw depends only on (models, exclusions, seed).
std::vector<bias::WordSet> make_random_sets(const CultureModels& models,
                                            const std::vector<std::string>& exclude,
                                            uint32_t count, uint32_t size, double coverage_frac,
                                            uint64_t seed);

}  // namespace embias::analysis

#endif  // EMBIAS_ANALYSIS_PIPELINE_HPP
