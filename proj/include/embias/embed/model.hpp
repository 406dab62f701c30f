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

#ifndef EMBIAS_EMBED_MODEL_HPP
#define EMBIAS_EMBED_MODEL_HPP

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "embias/embed/config.hpp"
#include "embias/embed/vocab.hpp"

namespace embias::embed {

/// Trained per-culture embedding table. Rows are stored as doubles so that
/// downstream arithmetic (projections, norms) runs in full precision;
/// trainers fill them with float-exact values, which keeps the binary
/// format below lossless.
class EmbeddingModel {
public:
    EmbeddingModel() = default;
    EmbeddingModel(std::string region, TrainConfig config, Vocabulary vocab,
                   std::vector<double> matrix);

    const std::string& region() const { return region_; }
    Algorithm algorithm() const { return config_.algorithm; }
    const TrainConfig& config() const { return config_; }
    const Vocabulary& vocab() const { return vocab_; }
    uint32_t dim() const { return config_.dim; }
    size_t size() const { return vocab_.size(); }

    std::span<const double> row(int32_t idx) const {
        return {matrix_.data() + static_cast<size_t>(idx) * config_.dim, config_.dim};
    }

    /// Vector for `word`, or an empty span when the word is out of vocab.
    std::span<const double> vector(std::string_view word) const;

    const std::vector<double>& matrix() const { return matrix_; }

private:
    std::string region_;
    TrainConfig config_;
    Vocabulary vocab_;
    std::vector<double> matrix_;  // size() * dim(), row-major
};

/// Binary model format (all integers little-endian):
///   magic "EMBV", u32 version (currently 1),
///   config block (algorithm u8, then every TrainConfig field),
///   region (u32 length + bytes),
///   u64 total_tokens, u64 vocab_size,
///   vocab_size entries of (u32 length + bytes + u64 count),
///   vocab_size * dim matrix entries as little-endian f32.
void save_model(const EmbeddingModel& m, const std::filesystem::path& path);

/// Throws DataError on bad magic, unsupported version, truncation, or a
/// non-finite matrix entry (the error names the offending word).
EmbeddingModel load_model(const std::filesystem::path& path);

/// Reads only the header and vocabulary of a binary model file.
struct ModelHeader {
    std::string region;
    TrainConfig config;
    Vocabulary vocab;
};
ModelHeader load_model_header(const std::filesystem::path& path);

/// Text format: first line "vocab_size dim", then one "word v1 ... vd" line
/// per word. Values are printed with nine significant digits, which
/// round-trips the float-exact entries written by trainers.
void save_model_text(const EmbeddingModel& m, const std::filesystem::path& path);

/// The text format carries no counts or config, so the loaded model gets
/// word counts of 1 and a default config with dim and min_count=1 filled in.
EmbeddingModel load_model_text(const std::filesystem::path& path, std::string region = "");

}  // namespace embias::embed

#endif  // EMBIAS_EMBED_MODEL_HPP
