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

#ifndef EMBIAS_EMBED_CONFIG_HPP
#define EMBIAS_EMBED_CONFIG_HPP

#include <cstdint>
#include <string>
#include <string_view>

namespace embias::embed {

enum class Algorithm : uint8_t {
    Skipgram = 0,
    Cbow = 1,
    Glove = 2,
    FasttextSg = 3,
};

/// Stable lowercase names used in configs, CLI flags and model files:
/// "skipgram", "cbow", "glove", "fasttext-sg".
std::string_view algorithm_name(Algorithm a);

/// Inverse of algorithm_name. Throws ConfigError on an unknown name.
Algorithm parse_algorithm(std::string_view name);

/// Hyper-parameters shared by all four trainers. Fields that only apply to
/// one family (glove_*, ngram_*, bucket_count, negatives) are ignored by the
/// others but always carried so a single snapshot describes any model.
struct TrainConfig {
    Algorithm algorithm = Algorithm::Skipgram;
    uint32_t window = 10;
    uint32_t dim = 200;
    uint32_t min_count = 5;
    uint32_t negatives = 5;
    // 0 means "use the algorithm default": 5 epochs for the skip-gram
    // family and CBOW, 15 for GloVe; learning rate 0.025 for the skip-gram
    // family, 0.05 for CBOW and GloVe.
    uint32_t epochs = 0;
    double learning_rate = 0.0;
    uint64_t seed = 1;
    uint32_t threads = 1;
    double subsample_threshold = 1e-4;  // 0 disables subsampling
    double glove_xmax = 100.0;
    double glove_alpha = 0.75;
    uint32_t ngram_min = 3;
    uint32_t ngram_max = 6;
    uint32_t bucket_count = 2000000;

    uint32_t effective_epochs() const;
    double effective_learning_rate() const;

    /// Throws ConfigError when a field is out of range (window or dim < 1,
    /// min_count < 1, threads < 1, negative rates, ngram_min > ngram_max,
    /// bucket_count < 1, subsample_threshold < 0).
    void validate() const;
};

}  // namespace embias::embed

#endif  // EMBIAS_EMBED_CONFIG_HPP
