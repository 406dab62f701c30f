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

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "embias/embed/train.hpp"
#include "embias/error.hpp"
#include "train_common.hpp"

namespace embias::embed {

namespace {

// Steps over one UTF-8 codepoint; an invalid lead byte advances one byte so
// the scan always terminates.
size_t cp_len(unsigned char lead) {
    if (lead < 0x80) return 1;
    if ((lead >> 5) == 0x6) return 2;
    if ((lead >> 4) == 0xE) return 3;
    if ((lead >> 3) == 0x1E) return 4;
    return 1;
}

// n-gram bucket ids of a word, via the padded form and FNV-1a hashing.
std::vector<uint32_t> word_buckets(std::string_view word, const TrainConfig& cfg) {
    std::vector<uint32_t> ids;
    for (const auto& g : char_ngrams(word, cfg.ngram_min, cfg.ngram_max))
        ids.push_back(ngram_bucket(g, cfg.bucket_count));
    return ids;
}

}  // namespace

std::vector<std::string> char_ngrams(std::string_view word, uint32_t nmin, uint32_t nmax) {
    std::string padded;
    padded.reserve(word.size() + 2);
    padded.push_back('<');
    padded.append(word);
    padded.push_back('>');
    // Codepoint start offsets, plus the end sentinel.
    std::vector<size_t> starts;
    for (size_t i = 0; i < padded.size();) {
        starts.push_back(i);
        i += cp_len(static_cast<unsigned char>(padded[i]));
        if (i > padded.size()) i = padded.size();
    }
    starts.push_back(padded.size());
    size_t n_cp = starts.size() - 1;
    std::vector<std::string> grams;
    for (size_t i = 0; i < n_cp; ++i) {
        for (uint32_t n = nmin; n <= nmax && i + n <= n_cp; ++n) {
            grams.emplace_back(padded.substr(starts[i], starts[i + n] - starts[i]));
        }
    }
    return grams;
}

uint32_t ngram_bucket(std::string_view ngram, uint32_t bucket_count) {
    uint32_t h = 2166136261u;
    for (unsigned char c : ngram) {
        h ^= c;
        h *= 16777619u;
    }
    return h % bucket_count;
}

SubwordVectors::SubwordVectors(uint32_t dim, uint32_t nmin, uint32_t nmax, uint32_t bucket_count,
                               std::vector<float> word_rows, std::vector<float> bucket_rows,
                               Vocabulary vocab)
    : dim_(dim),
      nmin_(nmin),
      nmax_(nmax),
      bucket_count_(bucket_count),
      word_rows_(std::move(word_rows)),
      bucket_rows_(std::move(bucket_rows)),
      vocab_(std::move(vocab)) {}

std::vector<double> SubwordVectors::word_vector(std::string_view word) const {
    // Accumulate in float, exactly like the trainer composes rows, so an
    // in-vocab query reproduces the model row bit for bit.
    std::vector<float> acc(dim_, 0.0f);
    int32_t idx = vocab_.find(word);
    if (idx >= 0) {
        const float* row = word_rows_.data() + static_cast<size_t>(idx) * dim_;
        for (uint32_t k = 0; k < dim_; ++k) acc[k] = row[k];
    }
    for (const auto& g : char_ngrams(word, nmin_, nmax_)) {
        const float* row =
            bucket_rows_.data() + static_cast<size_t>(ngram_bucket(g, bucket_count_)) * dim_;
        for (uint32_t k = 0; k < dim_; ++k) acc[k] += row[k];
    }
    return std::vector<double>(acc.begin(), acc.end());
}

EmbeddingModel train_fasttext_sg(const TokenSource& src, std::string region, TrainConfig cfg,
                                 SubwordVectors* subwords) {
    cfg = detail::resolve(cfg, Algorithm::FasttextSg);
    Vocabulary vocab = build_vocab(src, cfg.min_count);
    EncodedCorpus enc = encode_corpus(src, vocab);
    detail::require_trainable(enc);

    detail::SgnsShared ctx;
    ctx.enc = &enc;
    ctx.cfg = cfg;
    ctx.keep_prob = detail::subsample_keep_probs(vocab, cfg.subsample_threshold, enc.tokens.size());
    detail::AliasSampler neg = detail::make_negative_sampler(vocab);
    ctx.neg = &neg;
    ctx.total_to_process = static_cast<uint64_t>(cfg.epochs) * enc.tokens.size();

    const uint32_t dim = cfg.dim;
    const uint32_t window = cfg.window;

    // One init stream covers word rows then bucket rows, so the layout is a
    // pure function of (vocab, config, seed).
    std::vector<float> init =
        detail::init_input_matrix(vocab.size() + cfg.bucket_count, dim, cfg.seed);
    std::vector<float> word_rows(init.begin(),
                                 init.begin() + static_cast<ptrdiff_t>(vocab.size() * dim));
    std::vector<float> bucket_rows(init.begin() + static_cast<ptrdiff_t>(vocab.size() * dim),
                                   init.end());
    init.clear();
    init.shrink_to_fit();
    std::vector<float> syn1(vocab.size() * static_cast<size_t>(dim), 0.0f);
    ctx.syn1 = &syn1;

    // Bucket ids per vocabulary word, computed once.
    std::vector<std::vector<uint32_t>> buckets(vocab.size());
    for (size_t i = 0; i < vocab.size(); ++i)
        buckets[i] = word_buckets(vocab.word(static_cast<int32_t>(i)), cfg);

    auto compose = [&](int32_t w, float* hidden) {
        const float* row = word_rows.data() + static_cast<size_t>(w) * dim;
        std::copy(row, row + dim, hidden);
        for (uint32_t b : buckets[static_cast<size_t>(w)]) {
            const float* brow = bucket_rows.data() + static_cast<size_t>(b) * dim;
            for (uint32_t k = 0; k < dim; ++k) hidden[k] += brow[k];
        }
    };
    auto apply_grad = [&](int32_t w, const float* grad) {
        float* row = word_rows.data() + static_cast<size_t>(w) * dim;
        for (uint32_t k = 0; k < dim; ++k) row[k] += grad[k];
        for (uint32_t b : buckets[static_cast<size_t>(w)]) {
            float* brow = bucket_rows.data() + static_cast<size_t>(b) * dim;
            for (uint32_t k = 0; k < dim; ++k) brow[k] += grad[k];
        }
    };

    detail::launch_workers(cfg.threads, [&](uint32_t tid) {
        std::vector<float> hidden(dim), grad(dim);
        detail::run_worker(ctx, tid, "ft-thread:",
                           [&](Rng& rng, const std::vector<int32_t>& sen, float alpha) {
                               for (size_t i = 0; i < sen.size(); ++i) {
                                   size_t lo = i > window ? i - window : 0;
                                   size_t hi = std::min(sen.size() - 1, i + window);
                                   for (size_t j = lo; j <= hi; ++j) {
                                       if (j == i) continue;
                                       compose(sen[j], hidden.data());
                                       detail::negative_sampling_step(ctx, rng, hidden.data(),
                                                                      sen[i], alpha, grad.data());
                                       apply_grad(sen[j], grad.data());
                                   }
                               }
                           });
    });

    // The published vector of each vocab word is its composed form. Summing
    // in float keeps the matrix float-exact for lossless binary round-trips.
    std::vector<float> composed(vocab.size() * static_cast<size_t>(dim));
    for (size_t i = 0; i < vocab.size(); ++i)
        compose(static_cast<int32_t>(i), composed.data() + i * dim);

    if (subwords)
        *subwords = SubwordVectors(dim, cfg.ngram_min, cfg.ngram_max, cfg.bucket_count,
                                   std::move(word_rows), std::move(bucket_rows), vocab);

    return EmbeddingModel(std::move(region), cfg, std::move(vocab), detail::widen(composed));
}

}  // namespace embias::embed
