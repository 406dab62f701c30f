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

#include "embias/embed/source.hpp"

#include <fstream>

#include "embias/embed/vocab.hpp"
#include "embias/error.hpp"
#include "embias/util.hpp"

namespace embias::embed {

void CorpusSource::for_each_sentence(
    const std::function<void(const std::vector<std::string>&)>& fn) const {
    for (const auto& s : corpus_->sentences) fn(s.tokens);
}

void FileSource::for_each_sentence(
    const std::function<void(const std::vector<std::string>&)>& fn) const {
    std::ifstream in(path_, std::ios::binary);
    if (!in) throw DataError("cannot open token file: " + path_.string());
    std::string line;
    std::vector<std::string> toks;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        toks = split(line, ' ');
        fn(toks);
    }
    if (in.bad()) throw DataError("I/O error while reading token file: " + path_.string());
}

EncodedCorpus encode_corpus(const TokenSource& src, const Vocabulary& vocab) {
    EncodedCorpus enc;
    enc.offsets.push_back(0);
    src.for_each_sentence([&](const std::vector<std::string>& toks) {
        size_t before = enc.tokens.size();
        for (const auto& t : toks) {
            int32_t id = vocab.find(t);
            if (id >= 0) enc.tokens.push_back(id);
        }
        if (enc.tokens.size() > before) enc.offsets.push_back(enc.tokens.size());
    });
    return enc;
}

}  // namespace embias::embed
