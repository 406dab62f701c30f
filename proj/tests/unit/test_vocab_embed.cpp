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

#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "embias/corpus/corpus.hpp"
#include "embias/embed/model.hpp"
#include "embias/embed/source.hpp"
#include "embias/embed/train.hpp"
#include "embias/embed/vocab.hpp"
#include "embias/error.hpp"
#include "embias/rng.hpp"
#include "embias/util.hpp"

#include "test_helpers.hpp"

using namespace embias;
using namespace embias::embed;

namespace {

corpus::CultureCorpus corpus_of(const std::vector<std::vector<std::string>>& sents,
                                const std::string& region = "r") {
    corpus::CultureCorpus c;
    c.region = region;
    for (const auto& s : sents) c.sentences.push_back({s, region});
    return c;
}

/// Two context-separated clusters: a-words share contexts with x, b-words
/// with y. Input-vector similarity must recover the clusters.
corpus::CultureCorpus cluster_corpus(int sentences, uint64_t seed) {
    Rng rng(seed);
    std::vector<std::vector<std::string>> sents;
    for (int i = 0; i < sentences; ++i) {
        bool a_side = rng.next_below(2) == 0;
        const char* hub = a_side ? "x" : "y";
        std::string w1 = (a_side ? "a" : "b") + std::to_string(rng.next_below(4));
        std::string w2 = (a_side ? "a" : "b") + std::to_string(rng.next_below(4));
        sents.push_back({hub, w1, w2});
    }
    return corpus_of(sents);
}

double cosine(std::span<const double> u, std::span<const double> v) {
    double uv = 0, uu = 0, vv = 0;
    for (size_t i = 0; i < u.size(); ++i) {
        uv += u[i] * v[i];
        uu += u[i] * u[i];
        vv += v[i] * v[i];
    }
    return uv / std::sqrt(uu * vv);
}

/// Mean cosine between cluster members vs. across clusters.
std::pair<double, double> cluster_cosines(const EmbeddingModel& m) {
    std::vector<std::string> as = {"a0", "a1", "a2", "a3"}, bs = {"b0", "b1", "b2", "b3"};
    double intra = 0, inter = 0;
    int ni = 0, nx = 0;
    for (const auto& g : {as, bs})
        for (size_t i = 0; i < g.size(); ++i)
            for (size_t j = i + 1; j < g.size(); ++j) {
                intra += cosine(m.vector(g[i]), m.vector(g[j]));
                ++ni;
            }
    for (const auto& a : as)
        for (const auto& b : bs) {
            inter += cosine(m.vector(a), m.vector(b));
            ++nx;
        }
    return {intra / ni, inter / nx};
}

}  // namespace

TEST_CASE("vocabulary ordering and min_count boundary") {
    auto c = corpus_of({{"b", "a", "a", "c", "c", "c"}, {"rare", "a", "b"}});
    CorpusSource src(c);
    Vocabulary v = build_vocab(src, 2);
    REQUIRE(v.size() == 3);  // rare (count 1) dropped at min_count 2
    CHECK(v.word(0) == "a");  // count 3, ties broken by word
    CHECK(v.word(1) == "c");  // count 3
    CHECK(v.count(0) == 3);
    CHECK(v.word(2) == "b");  // count 2: exactly min_count is kept
    CHECK(v.find("rare") == -1);
    CHECK(v.find("a") == 0);
    CHECK(v.total_tokens() == 9);
    CHECK(v.kept_tokens() == 8);

    CHECK_THROWS_AS(build_vocab(src, 100), DataError);  // nothing survives
    auto empty = corpus_of({});
    CorpusSource esrc(empty);
    CHECK_THROWS_AS(build_vocab(esrc, 1), DataError);
    CHECK_THROWS_AS(build_vocab(src, 0), ConfigError);
}

TEST_CASE("encode_corpus drops OOV and empty sentences") {
    auto c = corpus_of({{"a", "zz", "b"}, {"zz", "zz", "zz"}, {"b", "b", "a"}});
    CorpusSource src(c);
    Vocabulary v({{"a", 2}, {"b", 3}}, 1, 9);
    EncodedCorpus enc = encode_corpus(src, v);
    CHECK(enc.sentence_count() == 2);  // all-OOV sentence vanishes
    CHECK(enc.tokens.size() == 5);
    std::vector<int32_t> first(enc.tokens.begin() + static_cast<long>(enc.offsets[0]),
                               enc.tokens.begin() + static_cast<long>(enc.offsets[1]));
    CHECK(first == std::vector<int32_t>{v.find("a"), v.find("b")});
}

TEST_CASE("train config defaults and validation") {
    TrainConfig cfg;
    CHECK(cfg.effective_epochs() == 5);
    CHECK(cfg.effective_learning_rate() == 0.025);
    cfg.algorithm = Algorithm::Cbow;
    CHECK(cfg.effective_epochs() == 5);
    CHECK(cfg.effective_learning_rate() == 0.05);
    cfg.algorithm = Algorithm::FasttextSg;
    CHECK(cfg.effective_learning_rate() == 0.025);
    cfg.algorithm = Algorithm::Glove;
    CHECK(cfg.effective_epochs() == 15);
    CHECK(cfg.effective_learning_rate() == 0.05);
    cfg.epochs = 7;
    cfg.learning_rate = 0.1;
    CHECK(cfg.effective_epochs() == 7);
    CHECK(cfg.effective_learning_rate() == 0.1);

    TrainConfig bad;
    bad.dim = 0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = TrainConfig{};
    bad.ngram_min = 7;  // > ngram_max
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = TrainConfig{};
    bad.subsample_threshold = -1.0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("algorithm names round-trip") {
    for (Algorithm a : {Algorithm::Skipgram, Algorithm::Cbow, Algorithm::Glove,
                        Algorithm::FasttextSg})
        CHECK(parse_algorithm(algorithm_name(a)) == a);
    CHECK_THROWS_AS(parse_algorithm("word2vec"), ConfigError);
}

TEST_CASE("skip-gram separates context clusters") {
    auto c = cluster_corpus(3000, 21);
    CorpusSource src(c);
    TrainConfig cfg;
    cfg.dim = 16;
    cfg.min_count = 1;
    cfg.window = 5;
    cfg.subsample_threshold = 0.0;
    cfg.seed = 3;
    EmbeddingModel m = train_skipgram(src, "r", cfg);
    auto [intra, inter] = cluster_cosines(m);
    CHECK(intra > inter + 0.2);
}

TEST_CASE("cbow separates context clusters") {
    auto c = cluster_corpus(3000, 22);
    CorpusSource src(c);
    TrainConfig cfg;
    cfg.algorithm = Algorithm::Cbow;
    cfg.dim = 16;
    cfg.min_count = 1;
    cfg.window = 5;
    cfg.subsample_threshold = 0.0;
    cfg.seed = 3;
    EmbeddingModel m = train_cbow(src, "r", cfg);
    auto [intra, inter] = cluster_cosines(m);
    CHECK(intra > inter + 0.2);
}

TEST_CASE("sgns training is bit-deterministic per seed") {
    auto c = cluster_corpus(400, 23);
    CorpusSource src(c);
    TrainConfig cfg;
    cfg.dim = 12;
    cfg.min_count = 1;
    cfg.seed = 9;
    EmbeddingModel m1 = train_skipgram(src, "r", cfg);
    EmbeddingModel m2 = train_skipgram(src, "r", cfg);
    CHECK(m1.matrix() == m2.matrix());
    cfg.seed = 10;
    EmbeddingModel m3 = train_skipgram(src, "r", cfg);
    CHECK(m1.matrix() != m3.matrix());
}

TEST_CASE("trainers reject an untrainable corpus") {
    auto c = corpus_of({{"only"}});
    CorpusSource src(c);
    TrainConfig cfg;
    cfg.dim = 4;
    cfg.min_count = 1;
    // A single one-token sentence yields no training pair.
    CHECK_THROWS_AS(train_skipgram(src, "r", cfg), DataError);
}

TEST_CASE("binary model round trip is bitwise") {
    auto c = cluster_corpus(400, 25);
    CorpusSource src(c);
    TrainConfig cfg;
    cfg.dim = 12;
    cfg.min_count = 1;
    cfg.seed = 1;
    EmbeddingModel m = train_skipgram(src, "r", cfg);

    test::TempDir tmp("model");
    save_model(m, tmp / "m.bin");
    EmbeddingModel back = load_model(tmp / "m.bin");
    CHECK(back.matrix() == m.matrix());
    CHECK(back.region() == "r");
    CHECK(back.vocab().size() == m.vocab().size());
    CHECK(back.config().dim == cfg.dim);
    for (size_t i = 0; i < m.vocab().size(); ++i) {
        auto idx = static_cast<int32_t>(i);
        CHECK(back.vocab().word(idx) == m.vocab().word(idx));
        CHECK(back.vocab().count(idx) == m.vocab().count(idx));
    }
    // Save-load-save yields identical bytes.
    save_model(back, tmp / "m2.bin");
    CHECK(test::read_file_bytes(tmp / "m.bin") == test::read_file_bytes(tmp / "m2.bin"));

    // Header-only loader agrees without reading the matrix.
    ModelHeader h = load_model_header(tmp / "m.bin");
    CHECK(h.region == "r");
    CHECK(h.vocab.size() == m.vocab().size());
    CHECK(h.config.algorithm == Algorithm::Skipgram);
}

TEST_CASE("corrupt model files are rejected") {
    test::TempDir tmp("badmodel");
    write_text_file(tmp / "junk.bin", "EMBXnot a model");
    CHECK_THROWS_AS(load_model(tmp / "junk.bin"), DataError);
    auto c = cluster_corpus(200, 26);
    CorpusSource src(c);
    TrainConfig cfg;
    cfg.dim = 8;
    cfg.min_count = 1;
    EmbeddingModel m = train_skipgram(src, "r", cfg);
    save_model(m, tmp / "ok.bin");
    std::string bytes = test::read_file_bytes(tmp / "ok.bin");
    write_text_file(tmp / "trunc.bin", bytes.substr(0, bytes.size() / 2));
    CHECK_THROWS_AS(load_model(tmp / "trunc.bin"), DataError);
}

TEST_CASE("text model round trip within 1e-6") {
    auto c = cluster_corpus(400, 27);
    CorpusSource src(c);
    TrainConfig cfg;
    cfg.dim = 12;
    cfg.min_count = 1;
    EmbeddingModel m = train_skipgram(src, "r", cfg);
    test::TempDir tmp("textmodel");
    save_model_text(m, tmp / "m.txt");
    EmbeddingModel back = load_model_text(tmp / "m.txt", "r");
    REQUIRE(back.vocab().size() == m.vocab().size());
    REQUIRE(back.dim() == m.dim());
    for (size_t i = 0; i < m.vocab().size(); ++i) {
        auto w = m.vocab().word(static_cast<int32_t>(i));
        auto a = m.vector(w);
        auto b = back.vector(w);
        REQUIRE(b.size() == a.size());
        for (size_t d = 0; d < a.size(); ++d)
            CHECK(std::abs(a[d] - b[d]) <= 1e-6 * std::max(1.0, std::abs(a[d])));
    }
}

TEST_CASE("oov lookup returns an empty span") {
    auto m = test::make_model("r", 3, {{"w", {1, 2, 3}}});
    CHECK(m.vector("w").size() == 3);
    CHECK(m.vector("absent").empty());
}
