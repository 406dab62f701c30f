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
#include <cmath>
#include <thread>
#include <unordered_map>
#include <vector>

#include "embias/embed/train.hpp"
#include "embias/error.hpp"
#include "embias/rng.hpp"
#include "train_common.hpp"

namespace embias::embed {

std::vector<CoocRecord> count_cooccurrences(const EncodedCorpus& enc, uint32_t window) {
    // Key packs the ordered pair (a, b); both directions are accumulated so
    // the table is symmetric by construction.
    std::unordered_map<uint64_t, double> cells;
    for (uint64_t s = 0; s < enc.sentence_count(); ++s) {
        uint64_t lo = enc.offsets[s], hi = enc.offsets[s + 1];
        for (uint64_t i = lo; i < hi; ++i) {
            uint64_t jmax = std::min<uint64_t>(hi, i + 1 + window);
            for (uint64_t j = i + 1; j < jmax; ++j) {
                double w = 1.0 / static_cast<double>(j - i);
                uint64_t a = static_cast<uint64_t>(enc.tokens[i]);
                uint64_t b = static_cast<uint64_t>(enc.tokens[j]);
                cells[(a << 32) | b] += w;
                cells[(b << 32) | a] += w;
            }
        }
    }
    if (cells.empty())
        throw DataError("empty co-occurrence set: no token pair falls inside any window");
    std::vector<CoocRecord> recs;
    recs.reserve(cells.size());
    for (const auto& [key, x] : cells)
        recs.push_back({static_cast<int32_t>(key >> 32),
                        static_cast<int32_t>(key & 0xFFFFFFFFu), x});
    std::sort(recs.begin(), recs.end(), [](const CoocRecord& p, const CoocRecord& q) {
        if (p.a != q.a) return p.a < q.a;
        return p.b < q.b;
    });
    return recs;
}

GloveSolver::GloveSolver(size_t vocab_size, uint32_t dim, uint64_t seed)
    : vocab_size_(vocab_size), dim_(dim) {
    size_t n = vocab_size * dim;
    w_.resize(n);
    wc_.resize(n);
    b_.resize(vocab_size);
    bc_.resize(vocab_size);
    Rng rng(derive_seed(seed, "glove-init"));
    auto fill = [&](std::vector<double>& v) {
        for (auto& x : v) x = (rng.next_double() - 0.5) / dim;
    };
    fill(w_);
    fill(wc_);
    fill(b_);
    fill(bc_);
    gw_.assign(n, 1.0);
    gwc_.assign(n, 1.0);
    gb_.assign(vocab_size, 1.0);
    gbc_.assign(vocab_size, 1.0);
}

double GloveSolver::predict(int32_t a, int32_t b) const {
    const double* wa = w_.data() + static_cast<size_t>(a) * dim_;
    const double* wb = wc_.data() + static_cast<size_t>(b) * dim_;
    double dot = 0.0;
    for (uint32_t k = 0; k < dim_; ++k) dot += wa[k] * wb[k];
    return dot + b_[static_cast<size_t>(a)] + bc_[static_cast<size_t>(b)];
}

double GloveSolver::run_epoch(const std::vector<CoocRecord>& recs, double eta, double xmax,
                              double alpha, uint32_t threads) {
    auto shard = [&](size_t begin, size_t end, double* loss_out) {
        double loss = 0.0;
        for (size_t r = begin; r < end; ++r) {
            const CoocRecord& rec = recs[r];
            double* wa = w_.data() + static_cast<size_t>(rec.a) * dim_;
            double* wb = wc_.data() + static_cast<size_t>(rec.b) * dim_;
            double* ga = gw_.data() + static_cast<size_t>(rec.a) * dim_;
            double* gb2 = gwc_.data() + static_cast<size_t>(rec.b) * dim_;
            double diff = b_[static_cast<size_t>(rec.a)] + bc_[static_cast<size_t>(rec.b)] -
                          std::log(rec.x);
            for (uint32_t k = 0; k < dim_; ++k) diff += wa[k] * wb[k];
            double fdiff = rec.x > xmax ? diff : std::pow(rec.x / xmax, alpha) * diff;
            loss += 0.5 * fdiff * diff;
            fdiff *= eta;
            for (uint32_t k = 0; k < dim_; ++k) {
                double t1 = fdiff * wb[k];
                double t2 = fdiff * wa[k];
                wa[k] -= t1 / std::sqrt(ga[k]);
                wb[k] -= t2 / std::sqrt(gb2[k]);
                ga[k] += t1 * t1;
                gb2[k] += t2 * t2;
            }
            b_[static_cast<size_t>(rec.a)] -= fdiff / std::sqrt(gb_[static_cast<size_t>(rec.a)]);
            bc_[static_cast<size_t>(rec.b)] -= fdiff / std::sqrt(gbc_[static_cast<size_t>(rec.b)]);
            gb_[static_cast<size_t>(rec.a)] += fdiff * fdiff;
            gbc_[static_cast<size_t>(rec.b)] += fdiff * fdiff;
        }
        *loss_out = loss;
    };

    std::vector<double> losses(threads, 0.0);
    if (threads == 1) {
        shard(0, recs.size(), &losses[0]);
    } else {
        std::vector<std::thread> pool;
        for (uint32_t t = 1; t < threads; ++t)
            pool.emplace_back(shard, recs.size() * t / threads, recs.size() * (t + 1) / threads,
                              &losses[t]);
        shard(0, recs.size() / threads, &losses[0]);
        for (auto& th : pool) th.join();
    }
    double total = 0.0;
    for (double l : losses) total += l;
    return total / static_cast<double>(recs.size());
}

std::vector<double> GloveSolver::combined() const {
    std::vector<double> out(w_.size());
    for (size_t i = 0; i < w_.size(); ++i)
        out[i] = static_cast<double>(static_cast<float>(w_[i] + wc_[i]));
    return out;
}

EmbeddingModel train_glove(const TokenSource& src, std::string region, TrainConfig cfg,
                           std::vector<double>* epoch_losses) {
    cfg = detail::resolve(cfg, Algorithm::Glove);
    Vocabulary vocab = build_vocab(src, cfg.min_count);
    EncodedCorpus enc = encode_corpus(src, vocab);
    std::vector<CoocRecord> recs = count_cooccurrences(enc, cfg.window);

    // One up-front shuffle; epochs then revisit records in the same order,
    // as the reference implementation does with its pre-shuffled input.
    {
        Rng rng(derive_seed(cfg.seed, "glove-shuffle"));
        rng.shuffle(recs);
    }

    GloveSolver solver(vocab.size(), cfg.dim, cfg.seed);
    if (epoch_losses) epoch_losses->clear();
    for (uint32_t e = 0; e < cfg.epochs; ++e) {
        double loss = solver.run_epoch(recs, cfg.learning_rate, cfg.glove_xmax, cfg.glove_alpha,
                                       cfg.threads);
        if (epoch_losses) epoch_losses->push_back(loss);
    }

    std::vector<double> table = solver.combined();
    for (double v : table)
        if (!std::isfinite(v)) throw DataError("training diverged: non-finite vector entry");
    return EmbeddingModel(std::move(region), cfg, std::move(vocab), std::move(table));
}

}  // namespace embias::embed
