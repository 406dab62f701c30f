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

#include "embias/analysis/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>
#include <unordered_set>

#include "embias/analysis/stats_core.hpp"
#include "embias/corpus/clean.hpp"
#include "embias/error.hpp"
#include "embias/rng.hpp"

namespace embias::analysis {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// Per-word term of a metric for one already-normalized word vector. NaN
/// marks the l2-ratio exclusion.
double per_word_term(const std::vector<double>& hat, const bias::GenderAxis& axis,
                     bias::Metric metric) {
    auto distance = [&](const std::vector<double>& endpoint) {
        double s = 0.0;
        for (size_t k = 0; k < hat.size(); ++k) {
            double d = hat[k] - endpoint[k];
            s += d * d;
        }
        return std::sqrt(s);
    };
    switch (metric) {
        case bias::Metric::AxisProjection: {
            double dot = 0.0;
            for (size_t k = 0; k < hat.size(); ++k) dot += hat[k] * axis.axis[k];
            return dot;
        }
        case bias::Metric::L2Diff:
            return distance(axis.male_vec) - distance(axis.female_vec);
        case bias::Metric::L2Ratio: {
            double dm = distance(axis.male_vec), df = distance(axis.female_vec);
            if (dm == 0.0 || df == 0.0) return kNaN;
            return std::log(dm) - std::log(df);
        }
    }
    throw ConfigError("unknown metric tag");
}

/// Mean bias of the given word rows per culture, paired with the statistic.
/// Cultures lacking the statistic or every word are skipped.
void collect_pairs(const WordBiasTable& table, const std::vector<size_t>& word_idx,
                   const StatTable& stat, const std::vector<size_t>& culture_idx,
                   std::vector<double>* xs, std::vector<double>* ys) {
    xs->clear();
    ys->clear();
    for (size_t c : culture_idx) {
        const double* sv = stat.find(table.cultures[c]);
        if (!sv) continue;
        double sum = 0.0;
        size_t used = 0;
        for (size_t w : word_idx) {
            if (!table.defined(w, c)) continue;
            sum += table.at(w, c);
            ++used;
        }
        if (used == 0) continue;
        xs->push_back(sum / static_cast<double>(used));
        ys->push_back(*sv);
    }
}

std::vector<size_t> all_culture_indices(const WordBiasTable& table) {
    std::vector<size_t> idx(table.cultures.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    return idx;
}

}  // namespace

bool WordBiasTable::defined(size_t w, size_t c) const { return !std::isnan(at(w, c)); }

CultureAxes make_axes(const CultureModels& models, const bias::WordSet& female,
                      const bias::WordSet& male, bool unit_normalize) {
    CultureAxes axes;
    for (const auto& [region, model] : models)
        axes.emplace(region, bias::make_gender_axis(model, female, male, unit_normalize));
    return axes;
}

WordBiasTable build_word_bias_table(const bias::WordSet& set, const CultureModels& models,
                                    const CultureAxes& axes, bias::Metric metric,
                                    bool unit_normalize) {
    WordBiasTable table;
    table.set_name = set.name;
    table.words = set.words;
    for (const auto& [region, model] : models) {
        (void)model;
        table.cultures.push_back(region);
    }
    table.values.assign(table.words.size() * table.cultures.size(), kNaN);
    for (size_t c = 0; c < table.cultures.size(); ++c) {
        const embed::EmbeddingModel& model = models.at(table.cultures[c]);
        const bias::GenderAxis& axis = axes.at(table.cultures[c]);
        for (size_t w = 0; w < table.words.size(); ++w) {
            auto v = model.vector(table.words[w]);
            if (v.empty()) continue;
            std::vector<double> hat(v.begin(), v.end());
            if (unit_normalize) {
                double n = 0.0;
                for (double x : hat) n += x * x;
                n = std::sqrt(n);
                if (n != 0.0)
                    for (double& x : hat) x /= n;
            }
            table.values[w * table.cultures.size() + c] = per_word_term(hat, axis, metric);
        }
    }
    return table;
}

std::vector<std::string> feature_select(const WordBiasTable& table, const StatTable& stat,
                                        const std::vector<std::string>& subset_cultures) {
    if (subset_cultures.empty()) throw ConfigError("feature_select: empty culture subset");
    std::vector<size_t> subset_idx;
    for (const auto& culture : subset_cultures) {
        auto it = std::find(table.cultures.begin(), table.cultures.end(), culture);
        if (it == table.cultures.end())
            throw ConfigError("feature_select: unknown culture '" + culture + "'");
        subset_idx.push_back(static_cast<size_t>(it - table.cultures.begin()));
    }
    std::sort(subset_idx.begin(), subset_idx.end());

    // Candidates in lexicographic order so a strict comparison resolves
    // ties toward the smaller word.
    std::vector<size_t> candidates(table.words.size());
    for (size_t i = 0; i < candidates.size(); ++i) candidates[i] = i;
    std::sort(candidates.begin(), candidates.end(),
              [&](size_t a, size_t b) { return table.words[a] < table.words[b]; });

    std::vector<size_t> selected;
    std::vector<char> in_selected(table.words.size(), 0);
    double best_score = -1.0;
    std::vector<double> xs, ys;
    std::vector<size_t> trial;
    while (true) {
        double round_best = -1.0;
        size_t round_word = table.words.size();
        for (size_t w : candidates) {
            if (in_selected[w]) continue;
            trial = selected;
            trial.push_back(w);
            collect_pairs(table, trial, stat, subset_idx, &xs, &ys);
            double score;
            try {
                score = std::abs(signed_r2(xs, ys));
            } catch (const DataError&) {
                continue;  // not computable with this word added
            }
            if (score > round_best) {
                round_best = score;
                round_word = w;
            }
        }
        if (round_word == table.words.size() || round_best <= best_score) break;
        selected.push_back(round_word);
        in_selected[round_word] = 1;
        best_score = round_best;
    }
    if (selected.empty())
        throw DataError("feature_select: no candidate word yields a regression on the subset");
    std::vector<std::string> out;
    out.reserve(selected.size());
    for (size_t w : selected) out.push_back(table.words[w]);
    return out;
}

CorrelationResult averaged_signed_r2(const WordBiasTable& table, const StatTable& stat,
                                     uint32_t repeats, double subset_frac, uint64_t seed) {
    if (repeats < 1) throw ConfigError("averaged_signed_r2: repeats must be >= 1");
    if (subset_frac <= 0.0 || subset_frac > 1.0)
        throw ConfigError("averaged_signed_r2: subset_frac must be in (0, 1]");

    // Universe: cultures covered by both the bias table and the statistic.
    std::vector<std::string> universe;
    for (const auto& culture : table.cultures)
        if (stat.find(culture)) universe.push_back(culture);
    if (universe.size() < 5)
        throw DataError("averaged_signed_r2 needs at least 5 cultures shared by models and "
                        "statistic '" + stat.name + "', got " + std::to_string(universe.size()));

    size_t subset_size = static_cast<size_t>(std::llround(
        subset_frac * static_cast<double>(universe.size())));
    subset_size = std::clamp<size_t>(subset_size, 3, universe.size());

    CorrelationResult result;
    result.set_name = table.set_name;
    result.stat_name = stat.name;
    result.n_cultures = static_cast<uint32_t>(universe.size());

    std::vector<size_t> full_idx = all_culture_indices(table);
    std::vector<double> xs, ys;
    double total = 0.0;
    for (uint32_t r = 0; r < repeats; ++r) {
        Rng rng(derive_seed(seed, "repeat:" + std::to_string(r)));
        std::vector<size_t> pick = rng.sample_indices(universe.size(), subset_size);
        std::sort(pick.begin(), pick.end());
        std::vector<std::string> subset;
        subset.reserve(pick.size());
        for (size_t i : pick) subset.push_back(universe[i]);

        std::vector<std::string> selected = feature_select(table, stat, subset);
        std::vector<size_t> word_idx;
        for (const auto& w : selected) {
            auto it = std::find(table.words.begin(), table.words.end(), w);
            word_idx.push_back(static_cast<size_t>(it - table.words.begin()));
        }
        collect_pairs(table, word_idx, stat, full_idx, &xs, &ys);
        double value = signed_r2(xs, ys);
        result.per_repeat.push_back(value);
        result.selected_words.push_back(std::move(selected));
        total += value;
    }
    result.signed_r2 = total / static_cast<double>(repeats);
    return result;
}

CorrelationResult averaged_signed_r2(const bias::WordSet& set, const CultureModels& models,
                                     const CultureAxes& axes, const StatTable& stat,
                                     uint32_t repeats, double subset_frac, uint64_t seed,
                                     bool unit_normalize) {
    WordBiasTable table =
        build_word_bias_table(set, models, axes, bias::Metric::AxisProjection, unit_normalize);
    return averaged_signed_r2(table, stat, repeats, subset_frac, seed);
}

CorrelationMatrix correlation_matrix(const std::vector<bias::WordSet>& sets,
                                     const CultureModels& models, const CultureAxes& axes,
                                     const std::vector<StatTable>& stats,
                                     const MatrixOptions& opt) {
    CorrelationMatrix matrix;
    for (const auto& s : sets) matrix.set_names.push_back(s.name);
    for (const auto& t : stats) matrix.stat_names.push_back(t.name);
    matrix.cells.resize(sets.size() * stats.size());

    // Tables are per-set work shared across all statistics of that column.
    std::vector<WordBiasTable> tables;
    tables.reserve(sets.size());
    for (const auto& s : sets)
        tables.push_back(build_word_bias_table(s, models, axes, opt.metric, opt.unit_normalize));

    for (size_t si = 0; si < stats.size(); ++si) {
        for (size_t wi = 0; wi < sets.size(); ++wi) {
            MatrixCell& cell = matrix.cells[si * sets.size() + wi];
            uint64_t cell_seed =
                derive_seed(opt.seed, sets[wi].name + std::string(1, '\x1f') + stats[si].name);
            try {
                cell.result = averaged_signed_r2(tables[wi], stats[si], opt.repeats,
                                                 opt.subset_frac, cell_seed);
                cell.ok = true;
            } catch (const std::exception& e) {
                cell.ok = false;
                cell.error = e.what();
            }
        }
    }
    return matrix;
}

std::vector<bias::WordSet> make_random_sets(const CultureModels& models,
                                            const std::vector<std::string>& exclude,
                                            uint32_t count, uint32_t size, double coverage_frac,
                                            uint64_t seed) {
    if (count == 0) return {};
    if (size < 1) throw ConfigError("make_random_sets: size must be >= 1");

    std::unordered_set<std::string> excluded(exclude.begin(), exclude.end());
    std::unordered_map<std::string, size_t> presence;
    for (const auto& [region, model] : models) {
        (void)region;
        const auto& vocab = model.vocab();
        for (size_t i = 0; i < vocab.size(); ++i)
            ++presence[vocab.word(static_cast<int32_t>(i))];
    }
    size_t needed = static_cast<size_t>(
        std::ceil(coverage_frac * static_cast<double>(models.size())));
    std::vector<std::string> candidates;
    for (const auto& [word, n] : presence) {
        if (n < needed) continue;
        if (excluded.count(word)) continue;
        if (corpus::is_placeholder_token(word)) continue;
        candidates.push_back(word);
    }
    if (candidates.size() < size)
        throw DataError("make_random_sets: only " + std::to_string(candidates.size()) +
                        " words cover enough cultures, need " + std::to_string(size));
    std::sort(candidates.begin(), candidates.end());

    std::vector<bias::WordSet> out;
    for (uint32_t i = 1; i <= count; ++i) {
        Rng rng(derive_seed(seed, "random-set:" + std::to_string(i)));
        std::vector<size_t> pick = rng.sample_indices(candidates.size(), size);
        std::sort(pick.begin(), pick.end());
        bias::WordSet set;
        set.name = "random-" + std::to_string(i);
        set.kind = bias::SetKind::Random;
        for (size_t p : pick) set.words.push_back(candidates[p]);
        out.push_back(std::move(set));
    }
    return out;
}

}  // namespace embias::analysis
