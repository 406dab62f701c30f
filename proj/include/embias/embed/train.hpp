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

#ifndef EMBIAS_EMBED_TRAIN_HPP
#define EMBIAS_EMBED_TRAIN_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "embias/embed/config.hpp"
#include "embias/embed/model.hpp"
#include "embias/embed/source.hpp"

namespace embias::embed {

/// Skip-gram with negative sampling. Deterministic for threads=1 and a
/// fixed seed; with more threads the shared matrices take unsynchronized
/// updates and runs are not reproducible.
EmbeddingModel train_skipgram(const TokenSource& src, std::string region, TrainConfig cfg);

/// CBOW with negative sampling: the averaged context predicts the target.
EmbeddingModel train_cbow(const TokenSource& src, std::string region, TrainConfig cfg);

/// One weighted co-occurrence cell. Both ordered directions of a pair are
/// present with equal weight.
struct CoocRecord {
    int32_t a = 0;
    int32_t b = 0;
    double x = 0.0;
};

/// Window-limited co-occurrence counts with 1/distance weighting, sorted by
/// (a, b). Throws DataError when no pair falls inside any window.
std::vector<CoocRecord> count_cooccurrences(const EncodedCorpus& enc, uint32_t window);

/// AdaGrad solver for the weighted least-squares objective
///   sum f(x_ij) (w_i . wc_j + b_i + bc_j - log x_ij)^2,
/// kept as a standalone object so tests can inspect the factor matrices.
class GloveSolver {
public:
    GloveSolver(size_t vocab_size, uint32_t dim, uint64_t seed);

    /// One pass over `recs`; returns the mean loss per record.
    double run_epoch(const std::vector<CoocRecord>& recs, double eta, double xmax, double alpha,
                     uint32_t threads);

    double predict(int32_t a, int32_t b) const;  // w_a . wc_b + b_a + bc_b

    /// Final table: word plus context vector per row, each entry rounded
    /// through float.
    std::vector<double> combined() const;

    std::vector<double> w_, wc_;   // vocab_size * dim
    std::vector<double> b_, bc_;   // vocab_size

private:
    size_t vocab_size_ = 0;
    uint32_t dim_ = 0;
    std::vector<double> gw_, gwc_, gb_, gbc_;  // AdaGrad accumulators
};

/// GloVe over symmetric window co-occurrences; the returned table is the sum
/// of word and context vectors. epoch_losses, when given, receives one mean
/// loss per epoch.
EmbeddingModel train_glove(const TokenSource& src, std::string region, TrainConfig cfg,
                           std::vector<double>* epoch_losses = nullptr);

/// Character n-grams of '<' + word + '>' for n in [nmin, nmax], over
/// codepoints, in scan order. The full padded word is included when its
/// length falls inside the range.
std::vector<std::string> char_ngrams(std::string_view word, uint32_t nmin, uint32_t nmax);

/// FNV-1a 32-bit hash reduced to a bucket index.
uint32_t ngram_bucket(std::string_view ngram, uint32_t bucket_count);

/// Subword parameter table kept alongside a fasttext-sg model so that
/// out-of-vocabulary words can still be composed.
class SubwordVectors {
public:
    SubwordVectors() = default;
    SubwordVectors(uint32_t dim, uint32_t nmin, uint32_t nmax, uint32_t bucket_count,
                   std::vector<float> word_rows, std::vector<float> bucket_rows,
                   Vocabulary vocab);

    /// Whole-word row plus n-gram bucket rows for in-vocab words; bucket
    /// rows only for unseen words. Deterministic and corpus-independent
    /// given the same parameters.
    std::vector<double> word_vector(std::string_view word) const;

    uint32_t dim() const { return dim_; }

private:
    uint32_t dim_ = 0;
    uint32_t nmin_ = 0;
    uint32_t nmax_ = 0;
    uint32_t bucket_count_ = 0;
    std::vector<float> word_rows_;    // vocab * dim
    std::vector<float> bucket_rows_;  // bucket_count * dim
    Vocabulary vocab_;
};

/// Skip-gram where the input side of each update is the sum of the word row
/// and its n-gram bucket rows. When `subwords` is non-null it receives the
/// raw parameter tables for out-of-vocabulary composition.
EmbeddingModel train_fasttext_sg(const TokenSource& src, std::string region, TrainConfig cfg,
                                 SubwordVectors* subwords = nullptr);

/// Dispatch on cfg.algorithm.
EmbeddingModel train_embedding(const TokenSource& src, std::string region, TrainConfig cfg);

}  // namespace embias::embed

#endif  // EMBIAS_EMBED_TRAIN_HPP
