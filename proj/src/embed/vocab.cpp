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

#include "embias/embed/vocab.hpp"

#include <algorithm>

#include "embias/embed/source.hpp"
#include "embias/error.hpp"

namespace embias::embed {

Vocabulary::Vocabulary(std::vector<std::pair<std::string, uint64_t>> counts, uint64_t min_count,
                       uint64_t total_tokens)
    : total_tokens_(total_tokens) {
    std::erase_if(counts, [&](const auto& p) { return p.second < min_count; });
    std::sort(counts.begin(), counts.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    words_.reserve(counts.size());
    counts_.reserve(counts.size());
    for (auto& [w, c] : counts) {
        words_.push_back(std::move(w));
        counts_.push_back(c);
        kept_tokens_ += c;
    }
    index_.reserve(words_.size());
    for (size_t i = 0; i < words_.size(); ++i)
        index_.emplace(std::string_view(words_[i]), static_cast<int32_t>(i));
}

int32_t Vocabulary::find(std::string_view w) const {
    auto it = index_.find(w);
    return it == index_.end() ? -1 : it->second;
}

Vocabulary build_vocab(const TokenSource& src, uint64_t min_count) {
    if (min_count < 1) throw ConfigError("min_count must be >= 1");
    std::unordered_map<std::string, uint64_t> counts;
    uint64_t total = 0;
    src.for_each_sentence([&](const std::vector<std::string>& toks) {
        for (const auto& t : toks) {
            ++counts[t];
            ++total;
        }
    });
    if (total == 0) throw DataError("cannot build vocabulary: corpus has no tokens");
    std::vector<std::pair<std::string, uint64_t>> rows;
    rows.reserve(counts.size());
    for (auto& [w, c] : counts) rows.emplace_back(w, c);
    Vocabulary v(std::move(rows), min_count, total);
    if (v.size() == 0)
        throw DataError("cannot build vocabulary: no word reaches min_count=" +
                        std::to_string(min_count));
    return v;
}

}  // namespace embias::embed
