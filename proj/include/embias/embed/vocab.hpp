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

#ifndef EMBIAS_EMBED_VOCAB_HPP
#define EMBIAS_EMBED_VOCAB_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace embias::embed {

class TokenSource;

/// Frequency-filtered vocabulary. Words are indexed densely in [0, size),
/// ordered by descending count and ascending word for ties, so the same
/// corpus always produces the same index assignment.
class Vocabulary {
public:
    Vocabulary() = default;

    /// Build from explicit (word, count) rows; rows below min_count are
    /// dropped. total_tokens is the token count of the originating corpus
    /// including dropped words.
    Vocabulary(std::vector<std::pair<std::string, uint64_t>> counts, uint64_t min_count,
               uint64_t total_tokens);

    size_t size() const { return words_.size(); }
    uint64_t total_tokens() const { return total_tokens_; }

    /// Sum of counts of kept words (the token count a trainer will see).
    uint64_t kept_tokens() const { return kept_tokens_; }

    /// Index of `w`, or -1 when absent.
    int32_t find(std::string_view w) const;

    const std::string& word(int32_t idx) const { return words_[idx]; }
    uint64_t count(int32_t idx) const { return counts_[idx]; }
    const std::vector<uint64_t>& counts() const { return counts_; }

private:
    std::vector<std::string> words_;
    std::vector<uint64_t> counts_;
    std::unordered_map<std::string_view, int32_t> index_;  // views into words_
    uint64_t total_tokens_ = 0;
    uint64_t kept_tokens_ = 0;
};

/// Count tokens in `src` and keep words occurring at least min_count times.
/// Throws DataError when the corpus has no tokens or nothing survives the
/// threshold, and ConfigError when min_count < 1.
Vocabulary build_vocab(const TokenSource& src, uint64_t min_count);

}  // namespace embias::embed

#endif  // EMBIAS_EMBED_VOCAB_HPP
