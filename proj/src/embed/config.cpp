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

#include "embias/embed/config.hpp"

#include <string>

#include "embias/error.hpp"

namespace embias::embed {

std::string_view algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::Skipgram: return "skipgram";
        case Algorithm::Cbow: return "cbow";
        case Algorithm::Glove: return "glove";
        case Algorithm::FasttextSg: return "fasttext-sg";
    }
    throw ConfigError("unknown algorithm tag");
}

Algorithm parse_algorithm(std::string_view name) {
    if (name == "skipgram") return Algorithm::Skipgram;
    if (name == "cbow") return Algorithm::Cbow;
    if (name == "glove") return Algorithm::Glove;
    if (name == "fasttext-sg") return Algorithm::FasttextSg;
    throw ConfigError("unknown algorithm '" + std::string(name) +
                      "' (expected skipgram, cbow, glove or fasttext-sg)");
}

uint32_t TrainConfig::effective_epochs() const {
    if (epochs != 0) return epochs;
    return algorithm == Algorithm::Glove ? 15 : 5;
}

double TrainConfig::effective_learning_rate() const {
    if (learning_rate != 0.0) return learning_rate;
    // word2vec starts CBOW at twice the skip-gram rate: each sentence
    // position yields one averaged update instead of one per context word.
    if (algorithm == Algorithm::Cbow || algorithm == Algorithm::Glove) return 0.05;
    return 0.025;
}

void TrainConfig::validate() const {
    if (window < 1) throw ConfigError("window must be >= 1");
    if (dim < 1) throw ConfigError("dim must be >= 1");
    if (min_count < 1) throw ConfigError("min_count must be >= 1");
    if (threads < 1) throw ConfigError("threads must be >= 1");
    if (learning_rate < 0.0) throw ConfigError("learning_rate must be >= 0");
    if (subsample_threshold < 0.0) throw ConfigError("subsample_threshold must be >= 0");
    if (glove_xmax <= 0.0) throw ConfigError("glove_xmax must be > 0");
    if (glove_alpha <= 0.0) throw ConfigError("glove_alpha must be > 0");
    if (ngram_min < 1 || ngram_min > ngram_max)
        throw ConfigError("ngram range must satisfy 1 <= ngram_min <= ngram_max");
    if (bucket_count < 1) throw ConfigError("bucket_count must be >= 1");
}

}  // namespace embias::embed
