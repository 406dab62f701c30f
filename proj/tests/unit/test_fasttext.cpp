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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "embias/corpus/corpus.hpp"
#include "embias/embed/source.hpp"
#include "embias/embed/train.hpp"
#include "embias/error.hpp"
#include "embias/rng.hpp"

#include "test_helpers.hpp"

using namespace embias;
using namespace embias::embed;

namespace {

corpus::CultureCorpus corpus_of(const std::vector<std::vector<std::string>>& sents) {
    corpus::CultureCorpus c;
    c.region = "r";
    for (const auto& s : sents) c.sentences.push_back({s, "r"});
    return c;
}

}  // namespace

TEST_CASE("char_ngrams enumerates padded n-grams in scan order") {
    auto grams = char_ngrams("ab", 3, 6);
    CHECK(grams == std::vector<std::string>{"<ab", "<ab>", "ab>"});

    auto apple = char_ngrams("apple", 3, 6);
    CHECK(apple.size() == 14);  // sum over starts of admissible lengths
    CHECK(apple.front() == "<ap");
    // "<apple>" has seven codepoints, one past ngram_max, so it is absent.
    CHECK(std::count(apple.begin(), apple.end(), "<apple>") == 0);
    CHECK(std::count(apple.begin(), apple.end(), "ppl") == 1);
    // A shorter word's padded form fits the range and is enumerated.
    auto pear = char_ngrams("pear", 3, 6);
    CHECK(std::count(pear.begin(), pear.end(), "<pear>") == 1);

    // Codepoint-based windows keep multi-byte characters whole.
    auto cafe = char_ngrams("caf\xc3\xa9", 3, 4);
    CHECK(std::count(cafe.begin(), cafe.end(), "af\xc3\xa9") == 1);
    CHECK(std::count(cafe.begin(), cafe.end(), "f\xc3\xa9>") == 1);
    for (const auto& g : cafe) {
        auto p = g.find('\xc3');
        if (p != std::string::npos) CHECK(p + 1 < g.size());  // continuation byte stays attached
    }

    // Words shorter than nmin only contribute grams that fit.
    auto tiny = char_ngrams("a", 4, 6);
    CHECK(tiny.empty());  // "<a>" has 3 codepoints, below nmin
}

TEST_CASE("ngram_bucket is stable and in range") {
    // FNV-1a 32-bit of "abc" is a published constant.
    CHECK(ngram_bucket("abc", 0xFFFFFFFFu) == 0x1A47E90Bu % 0xFFFFFFFFu);
    for (uint32_t buckets : {1u, 7u, 2000000u}) {
        CHECK(ngram_bucket("<ap", buckets) < buckets);
        CHECK(ngram_bucket("", buckets) < buckets);
    }
    CHECK(ngram_bucket("x", 5) == ngram_bucket("x", 5));
}

TEST_CASE("fasttext in-vocab vectors equal the composed subword sum") {
    Rng rng(41);
    std::vector<std::vector<std::string>> sents;
    const char* words[] = {"apple", "apply", "maple", "stone", "stove", "north"};
    for (int i = 0; i < 800; ++i) {
        std::vector<std::string> s;
        for (int j = 0; j < 4; ++j) s.push_back(words[rng.next_below(6)]);
        sents.push_back(s);
    }
    auto c = corpus_of(sents);
    CorpusSource src(c);
    TrainConfig cfg;
    cfg.algorithm = Algorithm::FasttextSg;
    cfg.dim = 12;
    cfg.min_count = 1;
    cfg.window = 3;
    cfg.seed = 6;
    cfg.bucket_count = 4096;  // small table keeps the test light
    SubwordVectors sub;
    EmbeddingModel m = train_fasttext_sg(src, "r", cfg, &sub);

    // The stored row must equal the float-exact composition bitwise.
    for (const char* w : words) {
        auto row = m.vector(w);
        auto composed = sub.word_vector(w);
        REQUIRE(row.size() == composed.size());
        for (size_t d = 0; d < row.size(); ++d) CHECK(row[d] == composed[d]);
    }

    // OOV words compose from shared n-grams: deterministic and nonzero.
    auto oov1 = sub.word_vector("apples");
    auto oov2 = sub.word_vector("apples");
    CHECK(oov1 == oov2);
    double norm = 0;
    for (double v : oov1) norm += v * v;
    CHECK(norm > 0.0);
    // Sharing most n-grams with "apple" should beat an unrelated word.
    auto cos = [](const std::vector<double>& a, std::span<const double> b) {
        double uv = 0, uu = 0, vv = 0;
        for (size_t i = 0; i < a.size(); ++i) {
            uv += a[i] * b[i];
            uu += a[i] * a[i];
            vv += b[i] * b[i];
        }
        return uv / std::sqrt(uu * vv);
    };
    CHECK(cos(oov1, m.vector("apple")) > cos(oov1, m.vector("north")));
}

TEST_CASE("fasttext training is deterministic per seed") {
    std::vector<std::vector<std::string>> sents;
    Rng rng(43);
    for (int i = 0; i < 150; ++i) {
        std::vector<std::string> s;
        for (int j = 0; j < 4; ++j) s.push_back("word" + std::to_string(rng.next_below(8)));
        sents.push_back(s);
    }
    auto c = corpus_of(sents);
    CorpusSource src(c);
    TrainConfig cfg;
    cfg.algorithm = Algorithm::FasttextSg;
    cfg.dim = 8;
    cfg.min_count = 1;
    cfg.seed = 4;
    cfg.bucket_count = 2048;
    EmbeddingModel a = train_fasttext_sg(src, "r", cfg);
    EmbeddingModel b = train_fasttext_sg(src, "r", cfg);
    CHECK(a.matrix() == b.matrix());
    cfg.seed = 5;
    EmbeddingModel d = train_fasttext_sg(src, "r", cfg);
    CHECK(a.matrix() != d.matrix());
}
