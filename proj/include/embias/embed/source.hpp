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

#ifndef EMBIAS_EMBED_SOURCE_HPP
#define EMBIAS_EMBED_SOURCE_HPP

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "embias/corpus/corpus.hpp"

namespace embias::embed {

class Vocabulary;

/// Sentence stream a trainer can scan more than once (vocabulary pass plus
/// one encoding pass).
class TokenSource {
public:
    virtual ~TokenSource() = default;
    virtual void for_each_sentence(
        const std::function<void(const std::vector<std::string>&)>& fn) const = 0;
};

/// In-memory corpus view. Does not own the corpus.
class CorpusSource final : public TokenSource {
public:
    explicit CorpusSource(const corpus::CultureCorpus& c) : corpus_(&c) {}
    void for_each_sentence(
        const std::function<void(const std::vector<std::string>&)>& fn) const override;

private:
    const corpus::CultureCorpus* corpus_;
};

/// Token file view: one sentence per line, tokens separated by single
/// spaces (the format written by write_corpus_file). Throws DataError when
/// the file cannot be read.
class FileSource final : public TokenSource {
public:
    explicit FileSource(std::filesystem::path path) : path_(std::move(path)) {}
    void for_each_sentence(
        const std::function<void(const std::vector<std::string>&)>& fn) const override;

private:
    std::filesystem::path path_;
};

/// Corpus mapped to vocabulary ids, flattened for cheap repeated epochs.
/// Out-of-vocabulary tokens are dropped; sentences that end up empty are
/// skipped entirely.
struct EncodedCorpus {
    std::vector<int32_t> tokens;     // vocab ids, sentence-major
    std::vector<uint64_t> offsets;   // sentence i spans [offsets[i], offsets[i+1])

    uint64_t sentence_count() const { return offsets.empty() ? 0 : offsets.size() - 1; }
};

EncodedCorpus encode_corpus(const TokenSource& src, const Vocabulary& vocab);

}  // namespace embias::embed

#endif  // EMBIAS_EMBED_SOURCE_HPP
