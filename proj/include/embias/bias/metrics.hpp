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

#ifndef EMBIAS_BIAS_METRICS_HPP
#define EMBIAS_BIAS_METRICS_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "embias/bias/word_sets.hpp"
#include "embias/embed/model.hpp"

namespace embias::bias {

/// Gender direction in one model's vector space. female_vec and male_vec
/// are the means of the (by default unit-normalized) vectors of the
/// respective word sets; axis is their difference scaled to unit length.
struct GenderAxis {
    std::vector<double> female_vec;
    std::vector<double> male_vec;
    std::vector<double> axis;
};

enum class Metric {
    AxisProjection,
    L2Diff,
    L2Ratio,
};

/// Stable names: "axis-projection", "l2-diff", "l2-ratio".
std::string_view metric_name(Metric m);
Metric parse_metric(std::string_view name);  // ConfigError on unknown

/// All three metrics share the sign convention: positive means
/// female-associated.
struct BiasScore {
    std::string region;
    std::string set_name;
    Metric metric = Metric::AxisProjection;
    double value = 0.0;
    uint32_t words_used = 0;
    uint32_t words_missing = 0;
};

/// Mean of the set's in-vocabulary word vectors; each vector is scaled to
/// unit length first unless unit_normalize is false (a zero vector, which
/// trained models never contain, is used as-is). Missing words are counted,
/// and a set with no in-vocabulary word raises DataError naming the set.
std::vector<double> gender_vector(const embed::EmbeddingModel& m, const WordSet& set,
                                  bool unit_normalize, uint32_t* words_used = nullptr,
                                  uint32_t* words_missing = nullptr);

/// Throws DataError when the two mean vectors coincide (zero difference has
/// no direction to normalize).
GenderAxis make_gender_axis(const embed::EmbeddingModel& m, const WordSet& female,
                            const WordSet& male, bool unit_normalize);

/// Mean over in-vocabulary w of dot(w_hat, axis). With unit normalization
/// the value is clamped into [-1, 1] (a no-op except for float rounding at
/// the extremes).
BiasScore axis_projection(const embed::EmbeddingModel& m, const GenderAxis& axis,
                          const WordSet& set, bool unit_normalize);

/// Mean over in-vocabulary w of |w_hat - male_vec| - |w_hat - female_vec|:
/// positive when the set sits closer to the female mean.
BiasScore l2_norm_difference(const embed::EmbeddingModel& m, const GenderAxis& axis,
                             const WordSet& set, bool unit_normalize);

/// Mean over in-vocabulary w of log|w_hat - male_vec| - log|w_hat -
/// female_vec| (the log of the distance ratio, computed as a difference so
/// swapping the endpoints negates the score exactly). Words at zero
/// distance from either endpoint are excluded with a warning; all excluded
/// raises DataError.
BiasScore l2_norm_ratio(const embed::EmbeddingModel& m, const GenderAxis& axis,
                        const WordSet& set, bool unit_normalize);

/// Dispatch on `metric`.
BiasScore word_set_bias(const embed::EmbeddingModel& m, const GenderAxis& axis,
                        const WordSet& set, Metric metric, bool unit_normalize);

}  // namespace embias::bias

#endif  // EMBIAS_BIAS_METRICS_HPP
