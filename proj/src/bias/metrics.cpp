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

#include "embias/bias/metrics.hpp"

#include <cmath>
#include <span>

#include "embias/error.hpp"
#include "embias/log.hpp"

namespace embias::bias {

namespace {

double norm2(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

/// Word vector as used by the metrics: unit length unless raw mode is on or
/// the stored vector is zero.
std::vector<double> word_hat(std::span<const double> v, bool unit_normalize) {
    std::vector<double> out(v.begin(), v.end());
    if (!unit_normalize) return out;
    double n = norm2(v);
    if (n == 0.0) return out;
    for (double& x : out) x /= n;
    return out;
}

/// Runs `per_word` for every in-vocabulary word of the set and returns the
/// mean of the kept values. per_word may reject a word (l2-ratio exclusion)
/// by returning false.
template <typename PerWord>
BiasScore mean_over_set(const embed::EmbeddingModel& m, const WordSet& set, Metric metric,
                        bool unit_normalize, PerWord per_word) {
    BiasScore score;
    score.region = m.region();
    score.set_name = set.name;
    score.metric = metric;
    double sum = 0.0;
    uint32_t used = 0;
    for (const auto& w : set.words) {
        auto v = m.vector(w);
        if (v.empty()) {
            ++score.words_missing;
            continue;
        }
        std::vector<double> hat = word_hat(v, unit_normalize);
        double value = 0.0;
        if (!per_word(hat, w, &value)) continue;
        sum += value;
        ++used;
    }
    if (used == 0)
        throw DataError("word set '" + set.name + "' has no usable word in region '" +
                        m.region() + "'");
    score.words_used = used;
    score.value = sum / static_cast<double>(used);
    return score;
}

double distance(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (size_t k = 0; k < a.size(); ++k) {
        double d = a[k] - b[k];
        s += d * d;
    }
    return std::sqrt(s);
}

}  // namespace

std::string_view metric_name(Metric m) {
    switch (m) {
        case Metric::AxisProjection: return "axis-projection";
        case Metric::L2Diff: return "l2-diff";
        case Metric::L2Ratio: return "l2-ratio";
    }
    throw ConfigError("unknown metric tag");
}

Metric parse_metric(std::string_view name) {
    if (name == "axis-projection") return Metric::AxisProjection;
    if (name == "l2-diff") return Metric::L2Diff;
    if (name == "l2-ratio") return Metric::L2Ratio;
    throw ConfigError("unknown metric '" + std::string(name) +
                      "' (expected axis-projection, l2-diff or l2-ratio)");
}

std::vector<double> gender_vector(const embed::EmbeddingModel& m, const WordSet& set,
                                  bool unit_normalize, uint32_t* words_used,
                                  uint32_t* words_missing) {
    std::vector<double> mean(m.dim(), 0.0);
    uint32_t used = 0, missing = 0;
    for (const auto& w : set.words) {
        auto v = m.vector(w);
        if (v.empty()) {
            ++missing;
            continue;
        }
        std::vector<double> hat = word_hat(v, unit_normalize);
        for (uint32_t k = 0; k < m.dim(); ++k) mean[k] += hat[k];
        ++used;
    }
    if (used == 0)
        throw DataError("word set '" + set.name + "' has no words in the vocabulary of region '" +
                        m.region() + "'");
    for (double& x : mean) x /= static_cast<double>(used);
    if (words_used) *words_used = used;
    if (words_missing) *words_missing = missing;
    return mean;
}

GenderAxis make_gender_axis(const embed::EmbeddingModel& m, const WordSet& female,
                            const WordSet& male, bool unit_normalize) {
    GenderAxis axis;
    axis.female_vec = gender_vector(m, female, unit_normalize);
    axis.male_vec = gender_vector(m, male, unit_normalize);
    axis.axis.resize(axis.female_vec.size());
    for (size_t k = 0; k < axis.axis.size(); ++k)
        axis.axis[k] = axis.female_vec[k] - axis.male_vec[k];
    double n = norm2(axis.axis);
    if (n == 0.0)
        throw DataError("degenerate gender axis in region '" + m.region() +
                        "': female and male mean vectors coincide");
    for (double& x : axis.axis) x /= n;
    return axis;
}

BiasScore axis_projection(const embed::EmbeddingModel& m, const GenderAxis& axis,
                          const WordSet& set, bool unit_normalize) {
    BiasScore s = mean_over_set(
        m, set, Metric::AxisProjection, unit_normalize,
        [&](const std::vector<double>& hat, const std::string&, double* value) {
            double dot = 0.0;
            for (size_t k = 0; k < hat.size(); ++k) dot += hat[k] * axis.axis[k];
            if (unit_normalize) {
                // Both factors are unit vectors, so the true value is in
                // [-1, 1]; trim float rounding at the extremes.
                if (dot > 1.0) dot = 1.0;
                if (dot < -1.0) dot = -1.0;
            }
            *value = dot;
            return true;
        });
    if (unit_normalize) {
        if (s.value > 1.0) s.value = 1.0;
        if (s.value < -1.0) s.value = -1.0;
    }
    return s;
}

BiasScore l2_norm_difference(const embed::EmbeddingModel& m, const GenderAxis& axis,
                             const WordSet& set, bool unit_normalize) {
    return mean_over_set(m, set, Metric::L2Diff, unit_normalize,
                         [&](const std::vector<double>& hat, const std::string&, double* value) {
                             *value = distance(hat, axis.male_vec) -
                                      distance(hat, axis.female_vec);
                             return true;
                         });
}

BiasScore l2_norm_ratio(const embed::EmbeddingModel& m, const GenderAxis& axis,
                        const WordSet& set, bool unit_normalize) {
    return mean_over_set(
        m, set, Metric::L2Ratio, unit_normalize,
        [&](const std::vector<double>& hat, const std::string& word, double* value) {
            double dm = distance(hat, axis.male_vec);
            double df = distance(hat, axis.female_vec);
            // Either zero distance makes the log-ratio undefined; excluding
            // on both sides keeps the female/male swap an exact negation.
            if (dm == 0.0 || df == 0.0) {
                log_warn("l2-ratio: excluding word '" + word + "' in region '" + m.region() +
                         "' (zero distance to an endpoint)");
                return false;
            }
            *value = std::log(dm) - std::log(df);
            return true;
        });
}

BiasScore word_set_bias(const embed::EmbeddingModel& m, const GenderAxis& axis,
                        const WordSet& set, Metric metric, bool unit_normalize) {
    switch (metric) {
        case Metric::AxisProjection: return axis_projection(m, axis, set, unit_normalize);
        case Metric::L2Diff: return l2_norm_difference(m, axis, set, unit_normalize);
        case Metric::L2Ratio: return l2_norm_ratio(m, axis, set, unit_normalize);
    }
    throw ConfigError("unknown metric tag");
}

}  // namespace embias::bias
