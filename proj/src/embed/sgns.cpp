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
#include <string>
#include <vector>

#include "embias/embed/train.hpp"
#include "embias/error.hpp"
#include "train_common.hpp"

namespace embias::embed {

namespace {

using detail::SgnsShared;

// Both word2vec objectives share the setup; they differ only in how a
// window position turns into (input vector, predicted word) updates. The
// input matrix syn0 is the published embedding; for skip-gram the context
// word's row feeds the prediction of the center word, for CBOW the averaged
// context predicts it.
EmbeddingModel train_w2v(const TokenSource& src, std::string region, TrainConfig cfg,
                         Algorithm alg) {
    cfg = detail::resolve(cfg, alg);
    Vocabulary vocab = build_vocab(src, cfg.min_count);
    EncodedCorpus enc = encode_corpus(src, vocab);
    detail::require_trainable(enc);

    SgnsShared ctx;
    ctx.enc = &enc;
    ctx.cfg = cfg;
    ctx.keep_prob = detail::subsample_keep_probs(vocab, cfg.subsample_threshold, enc.tokens.size());
    detail::AliasSampler neg = detail::make_negative_sampler(vocab);
    ctx.neg = &neg;
    ctx.total_to_process = static_cast<uint64_t>(cfg.epochs) * enc.tokens.size();

    std::vector<float> syn0 = detail::init_input_matrix(vocab.size(), cfg.dim, cfg.seed);
    std::vector<float> syn1(vocab.size() * static_cast<size_t>(cfg.dim), 0.0f);
    ctx.syn1 = &syn1;

    const uint32_t dim = cfg.dim;
    const uint32_t window = cfg.window;

    if (alg == Algorithm::Skipgram) {
        detail::launch_workers(cfg.threads, [&](uint32_t tid) {
            std::vector<float> grad(dim);
            detail::run_worker(
                ctx, tid, "sg-thread:",
                [&](Rng& rng, const std::vector<int32_t>& sen, float alpha) {
                    for (size_t i = 0; i < sen.size(); ++i) {
                        size_t lo = i > window ? i - window : 0;
                        size_t hi = std::min(sen.size() - 1, i + window);
                        for (size_t j = lo; j <= hi; ++j) {
                            if (j == i) continue;
                            float* in = syn0.data() + static_cast<size_t>(sen[j]) * dim;
                            detail::negative_sampling_step(ctx, rng, in, sen[i], alpha,
                                                           grad.data());
                            for (uint32_t k = 0; k < dim; ++k) in[k] += grad[k];
                        }
                    }
                });
        });
    } else {
        detail::launch_workers(cfg.threads, [&](uint32_t tid) {
            std::vector<float> neu1(dim), grad(dim);
            detail::run_worker(
                ctx, tid, "cbow-thread:",
                [&](Rng& rng, const std::vector<int32_t>& sen, float alpha) {
                    for (size_t i = 0; i < sen.size(); ++i) {
                        size_t lo = i > window ? i - window : 0;
                        size_t hi = std::min(sen.size() - 1, i + window);
                        std::fill(neu1.begin(), neu1.end(), 0.0f);
                        uint32_t cw = 0;
                        for (size_t j = lo; j <= hi; ++j) {
                            if (j == i) continue;
                            const float* row = syn0.data() + static_cast<size_t>(sen[j]) * dim;
                            for (uint32_t k = 0; k < dim; ++k) neu1[k] += row[k];
                            ++cw;
                        }
                        if (cw == 0) continue;
                        for (uint32_t k = 0; k < dim; ++k) neu1[k] /= static_cast<float>(cw);
                        detail::negative_sampling_step(ctx, rng, neu1.data(), sen[i], alpha,
                                                       grad.data());
                        for (size_t j = lo; j <= hi; ++j) {
                            if (j == i) continue;
                            float* row = syn0.data() + static_cast<size_t>(sen[j]) * dim;
                            for (uint32_t k = 0; k < dim; ++k) row[k] += grad[k];
                        }
                    }
                });
        });
    }

    return EmbeddingModel(std::move(region), cfg, std::move(vocab), detail::widen(syn0));
}

}  // namespace

EmbeddingModel train_skipgram(const TokenSource& src, std::string region, TrainConfig cfg) {
    return train_w2v(src, std::move(region), cfg, Algorithm::Skipgram);
}

EmbeddingModel train_cbow(const TokenSource& src, std::string region, TrainConfig cfg) {
    return train_w2v(src, std::move(region), cfg, Algorithm::Cbow);
}

EmbeddingModel train_embedding(const TokenSource& src, std::string region, TrainConfig cfg) {
    switch (cfg.algorithm) {
        case Algorithm::Skipgram: return train_skipgram(src, std::move(region), cfg);
        case Algorithm::Cbow: return train_cbow(src, std::move(region), cfg);
        case Algorithm::Glove: return train_glove(src, std::move(region), cfg);
        case Algorithm::FasttextSg: return train_fasttext_sg(src, std::move(region), cfg);
    }
    throw ConfigError("unknown algorithm tag");
}

}  // namespace embias::embed
