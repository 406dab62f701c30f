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

// Internal machinery shared by the negative-sampling trainers (skip-gram,
// CBOW and the subword variant). Not installed.

#ifndef EMBIAS_SRC_EMBED_TRAIN_COMMON_HPP
#define EMBIAS_SRC_EMBED_TRAIN_COMMON_HPP

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "embias/embed/config.hpp"
#include "embias/embed/source.hpp"
#include "embias/embed/vocab.hpp"
#include "embias/error.hpp"
#include "embias/rng.hpp"

namespace embias::embed::detail {

constexpr int kExpTableSize = 1000;
constexpr float kMaxExp = 6.0f;

/// Table-driven logistic function on (-kMaxExp, kMaxExp); callers handle
/// saturation outside that range themselves.
class SigmoidTable {
public:
    SigmoidTable() {
        for (int i = 0; i < kExpTableSize; ++i) {
            float e = std::exp((i / static_cast<float>(kExpTableSize) * 2.0f - 1.0f) * kMaxExp);
            table_[static_cast<size_t>(i)] = e / (e + 1.0f);
        }
    }
    float operator()(float x) const {
        int i = static_cast<int>((x + kMaxExp) * (kExpTableSize / kMaxExp / 2.0f));
        // Callers saturate on strict |x| > kMaxExp, so x == +kMaxExp exactly
        // would index one past the table; clamp keeps the lookup in range
        // without touching any interior cell.
        if (i >= kExpTableSize) i = kExpTableSize - 1;
        if (i < 0) i = 0;
        return table_[static_cast<size_t>(i)];
    }

private:
    std::array<float, kExpTableSize> table_{};
};

/// Walker alias method: O(1) draws from a fixed discrete distribution.
class AliasSampler {
public:
    explicit AliasSampler(const std::vector<double>& weights) {
        size_t n = weights.size();
        prob_.resize(n);
        alias_.resize(n);
        double sum = 0.0;
        for (double w : weights) sum += w;
        std::vector<double> scaled(n);
        std::vector<int32_t> small, large;
        for (size_t i = 0; i < n; ++i) {
            scaled[i] = weights[i] * static_cast<double>(n) / sum;
            (scaled[i] < 1.0 ? small : large).push_back(static_cast<int32_t>(i));
        }
        while (!small.empty() && !large.empty()) {
            int32_t s = small.back();
            small.pop_back();
            int32_t l = large.back();
            large.pop_back();
            prob_[static_cast<size_t>(s)] = scaled[static_cast<size_t>(s)];
            alias_[static_cast<size_t>(s)] = l;
            scaled[static_cast<size_t>(l)] += scaled[static_cast<size_t>(s)] - 1.0;
            (scaled[static_cast<size_t>(l)] < 1.0 ? small : large).push_back(l);
        }
        for (int32_t i : large) {
            prob_[static_cast<size_t>(i)] = 1.0;
            alias_[static_cast<size_t>(i)] = i;
        }
        for (int32_t i : small) {
            prob_[static_cast<size_t>(i)] = 1.0;
            alias_[static_cast<size_t>(i)] = i;
        }
    }

    int32_t sample(Rng& rng) const {
        uint64_t i = rng.next_below(prob_.size());
        return rng.next_double() < prob_[i] ? static_cast<int32_t>(i) : alias_[i];
    }

private:
    std::vector<double> prob_;
    std::vector<int32_t> alias_;
};

/// Negative-sampling distribution: unigram counts raised to the 3/4 power.
inline AliasSampler make_negative_sampler(const Vocabulary& vocab) {
    std::vector<double> w(vocab.size());
    for (size_t i = 0; i < vocab.size(); ++i)
        w[i] = std::pow(static_cast<double>(vocab.count(static_cast<int32_t>(i))), 0.75);
    return AliasSampler(w);
}

/// Per-word keep probability for frequency subsampling: for word frequency
/// f and threshold t, min(1, (sqrt(f/t) + 1) * t/f). A threshold of 0
/// disables subsampling (all probabilities 1).
inline std::vector<float> subsample_keep_probs(const Vocabulary& vocab, double threshold,
                                               uint64_t train_words) {
    std::vector<float> kp(vocab.size(), 1.0f);
    if (threshold <= 0.0 || train_words == 0) return kp;
    for (size_t i = 0; i < vocab.size(); ++i) {
        double f = static_cast<double>(vocab.count(static_cast<int32_t>(i))) /
                   static_cast<double>(train_words);
        double p = (std::sqrt(f / threshold) + 1.0) * threshold / f;
        kp[i] = static_cast<float>(p < 1.0 ? p : 1.0);
    }
    return kp;
}

/// State shared by every worker of one training run.
struct SgnsShared {
    const EncodedCorpus* enc = nullptr;
    TrainConfig cfg;                      // epochs and learning_rate resolved
    std::vector<float> keep_prob;
    const AliasSampler* neg = nullptr;
    SigmoidTable sig;
    std::vector<float>* syn1 = nullptr;   // output vectors, vocab * dim
    std::atomic<uint64_t> processed{0};
    uint64_t total_to_process = 0;        // epochs * encoded token count
};

/// One negative-sampling step: `hidden` is the composed input vector,
/// `positive` the word to predict. Accumulates the input-side gradient into
/// `grad` (overwritten) and updates the output rows in place.
inline void negative_sampling_step(SgnsShared& ctx, Rng& rng, const float* hidden,
                                   int32_t positive, float alpha, float* grad) {
    const uint32_t dim = ctx.cfg.dim;
    std::fill(grad, grad + dim, 0.0f);
    for (uint32_t d = 0; d <= ctx.cfg.negatives; ++d) {
        int32_t target;
        float label;
        if (d == 0) {
            target = positive;
            label = 1.0f;
        } else {
            target = ctx.neg->sample(rng);
            if (target == positive) continue;
            label = 0.0f;
        }
        float* out = ctx.syn1->data() + static_cast<size_t>(target) * dim;
        float f = 0.0f;
        for (uint32_t k = 0; k < dim; ++k) f += hidden[k] * out[k];
        float g;
        if (f > kMaxExp)
            g = (label - 1.0f) * alpha;
        else if (f < -kMaxExp)
            g = label * alpha;
        else
            g = (label - ctx.sig(f)) * alpha;
        for (uint32_t k = 0; k < dim; ++k) grad[k] += g * out[k];
        for (uint32_t k = 0; k < dim; ++k) out[k] += g * hidden[k];
    }
}

/// Shared outer loop: contiguous sentence shard per worker, fresh
/// subsampling each epoch, linear learning-rate decay with a floor at
/// 1e-4 of the start rate. `body(rng, sentence, alpha)` handles one
/// subsampled sentence of at least two tokens.
template <typename Body>
void run_worker(SgnsShared& ctx, uint32_t tid, const char* rng_tag, Body body) {
    Rng rng(derive_seed(ctx.cfg.seed, std::string(rng_tag) + std::to_string(tid)));
    const uint64_t nsent = ctx.enc->sentence_count();
    const uint64_t begin = nsent * tid / ctx.cfg.threads;
    const uint64_t end = nsent * (tid + 1) / ctx.cfg.threads;
    const double start_lr = ctx.cfg.learning_rate;
    const bool subsample = ctx.cfg.subsample_threshold > 0.0;
    float alpha = static_cast<float>(start_lr);
    uint64_t local = 0, synced = 0;
    std::vector<int32_t> sen;
    for (uint32_t epoch = 0; epoch < ctx.cfg.epochs; ++epoch) {
        for (uint64_t s = begin; s < end; ++s) {
            sen.clear();
            for (uint64_t p = ctx.enc->offsets[s]; p < ctx.enc->offsets[s + 1]; ++p) {
                ++local;
                int32_t w = ctx.enc->tokens[p];
                if (subsample && !(rng.next_double() < ctx.keep_prob[static_cast<size_t>(w)]))
                    continue;
                sen.push_back(w);
            }
            if (local - synced >= 10000) {
                uint64_t global = ctx.processed.fetch_add(local - synced) + (local - synced);
                synced = local;
                double a = start_lr * (1.0 - static_cast<double>(global) /
                                                 static_cast<double>(ctx.total_to_process + 1));
                if (a < start_lr * 1e-4) a = start_lr * 1e-4;
                alpha = static_cast<float>(a);
            }
            if (sen.size() >= 2) body(rng, sen, alpha);
        }
    }
    ctx.processed.fetch_add(local - synced);
}

inline void launch_workers(uint32_t threads, const std::function<void(uint32_t)>& worker) {
    if (threads == 1) {
        worker(0);
        return;
    }
    std::vector<std::thread> pool;
    for (uint32_t t = 1; t < threads; ++t) pool.emplace_back(worker, t);
    worker(0);
    for (auto& th : pool) th.join();
}

/// Uniform init in (-0.5/dim, 0.5/dim), the usual word2vec scheme.
inline std::vector<float> init_input_matrix(size_t rows, uint32_t dim, uint64_t seed) {
    std::vector<float> m(rows * dim);
    Rng rng(derive_seed(seed, "init"));
    for (auto& v : m) v = static_cast<float>((rng.next_double() - 0.5) / dim);
    return m;
}

inline void require_trainable(const EncodedCorpus& enc) {
    for (uint64_t s = 0; s < enc.sentence_count(); ++s)
        if (enc.offsets[s + 1] - enc.offsets[s] >= 2) return;
    throw DataError("corpus too small: no sentence contains two in-vocabulary tokens");
}

inline std::vector<double> widen(const std::vector<float>& m) {
    std::vector<double> out(m.size());
    for (size_t i = 0; i < m.size(); ++i) {
        if (!std::isfinite(m[i])) throw DataError("training diverged: non-finite vector entry");
        out[i] = m[i];
    }
    return out;
}

/// Stamp the algorithm tag and make the 0-valued epoch/rate defaults
/// concrete so the model snapshot is self-describing.
inline TrainConfig resolve(TrainConfig cfg, Algorithm alg) {
    cfg.algorithm = alg;
    cfg.epochs = cfg.effective_epochs();
    cfg.learning_rate = cfg.effective_learning_rate();
    cfg.validate();
    return cfg;
}

}  // namespace embias::embed::detail

#endif  // EMBIAS_SRC_EMBED_TRAIN_COMMON_HPP
