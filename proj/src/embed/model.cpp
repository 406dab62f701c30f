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

#include "embias/embed/model.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include "embias/error.hpp"
#include "embias/util.hpp"

static_assert(std::endian::native == std::endian::little,
              "model serialization assumes a little-endian host");

namespace embias::embed {

namespace {

constexpr char kMagic[4] = {'E', 'M', 'B', 'V'};
constexpr uint32_t kFormatVersion = 1;

template <typename T>
void put(std::ostream& out, T v) {
    static_assert(std::is_trivially_copyable_v<T>);
    out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& in, const std::filesystem::path& path) {
    T v{};
    in.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!in) throw DataError("truncated model file: " + path.string());
    return v;
}

void put_string(std::ostream& out, std::string_view s) {
    put<uint32_t>(out, static_cast<uint32_t>(s.size()));
    out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

std::string get_string(std::istream& in, const std::filesystem::path& path) {
    uint32_t len = get<uint32_t>(in, path);
    std::string s(len, '\0');
    in.read(s.data(), len);
    if (!in) throw DataError("truncated model file: " + path.string());
    return s;
}

void put_config(std::ostream& out, const TrainConfig& c) {
    put<uint8_t>(out, static_cast<uint8_t>(c.algorithm));
    put<uint32_t>(out, c.window);
    put<uint32_t>(out, c.dim);
    put<uint32_t>(out, c.min_count);
    put<uint32_t>(out, c.negatives);
    put<uint32_t>(out, c.epochs);
    put<double>(out, c.learning_rate);
    put<uint64_t>(out, c.seed);
    put<uint32_t>(out, c.threads);
    put<double>(out, c.subsample_threshold);
    put<double>(out, c.glove_xmax);
    put<double>(out, c.glove_alpha);
    put<uint32_t>(out, c.ngram_min);
    put<uint32_t>(out, c.ngram_max);
    put<uint32_t>(out, c.bucket_count);
}

TrainConfig get_config(std::istream& in, const std::filesystem::path& path) {
    TrainConfig c;
    uint8_t alg = get<uint8_t>(in, path);
    if (alg > static_cast<uint8_t>(Algorithm::FasttextSg))
        throw DataError("model file has unknown algorithm tag: " + path.string());
    c.algorithm = static_cast<Algorithm>(alg);
    c.window = get<uint32_t>(in, path);
    c.dim = get<uint32_t>(in, path);
    c.min_count = get<uint32_t>(in, path);
    c.negatives = get<uint32_t>(in, path);
    c.epochs = get<uint32_t>(in, path);
    c.learning_rate = get<double>(in, path);
    c.seed = get<uint64_t>(in, path);
    c.threads = get<uint32_t>(in, path);
    c.subsample_threshold = get<double>(in, path);
    c.glove_xmax = get<double>(in, path);
    c.glove_alpha = get<double>(in, path);
    c.ngram_min = get<uint32_t>(in, path);
    c.ngram_max = get<uint32_t>(in, path);
    c.bucket_count = get<uint32_t>(in, path);
    return c;
}

struct HeaderData {
    std::string region;
    TrainConfig config;
    Vocabulary vocab;
};

HeaderData read_header(std::istream& in, const std::filesystem::path& path) {
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kMagic, 4) != 0)
        throw DataError("not a model file (bad magic): " + path.string());
    uint32_t version = get<uint32_t>(in, path);
    if (version != kFormatVersion)
        throw DataError("unsupported model format version " + std::to_string(version) + " in " +
                        path.string());
    HeaderData h;
    h.config = get_config(in, path);
    h.region = get_string(in, path);
    uint64_t total_tokens = get<uint64_t>(in, path);
    uint64_t vocab_size = get<uint64_t>(in, path);
    std::vector<std::pair<std::string, uint64_t>> rows;
    rows.reserve(vocab_size);
    for (uint64_t i = 0; i < vocab_size; ++i) {
        std::string w = get_string(in, path);
        uint64_t c = get<uint64_t>(in, path);
        rows.emplace_back(std::move(w), c);
    }
    h.vocab = Vocabulary(std::move(rows), 1, total_tokens);
    if (h.vocab.size() != vocab_size)
        throw DataError("model file has duplicate vocabulary entries: " + path.string());
    return h;
}

}  // namespace

EmbeddingModel::EmbeddingModel(std::string region, TrainConfig config, Vocabulary vocab,
                               std::vector<double> matrix)
    : region_(std::move(region)),
      config_(config),
      vocab_(std::move(vocab)),
      matrix_(std::move(matrix)) {
    if (matrix_.size() != vocab_.size() * static_cast<size_t>(config_.dim))
        throw ConfigError("embedding matrix size does not match vocab size * dim");
}

std::span<const double> EmbeddingModel::vector(std::string_view word) const {
    int32_t idx = vocab_.find(word);
    if (idx < 0) return {};
    return row(idx);
}

void save_model(const EmbeddingModel& m, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write model file: " + path.string());
    out.write(kMagic, 4);
    put<uint32_t>(out, kFormatVersion);
    put_config(out, m.config());
    put_string(out, m.region());
    put<uint64_t>(out, m.vocab().total_tokens());
    put<uint64_t>(out, m.size());
    for (size_t i = 0; i < m.size(); ++i) {
        put_string(out, m.vocab().word(static_cast<int32_t>(i)));
        put<uint64_t>(out, m.vocab().count(static_cast<int32_t>(i)));
    }
    std::vector<float> rowbuf(m.dim());
    for (size_t i = 0; i < m.size(); ++i) {
        auto r = m.row(static_cast<int32_t>(i));
        for (uint32_t j = 0; j < m.dim(); ++j) rowbuf[j] = static_cast<float>(r[j]);
        out.write(reinterpret_cast<const char*>(rowbuf.data()),
                  static_cast<std::streamsize>(rowbuf.size() * sizeof(float)));
    }
    if (!out) throw DataError("write failed: " + path.string());
}

EmbeddingModel load_model(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open model file: " + path.string());
    HeaderData h = read_header(in, path);
    size_t n = h.vocab.size();
    uint32_t dim = h.config.dim;
    std::vector<double> matrix(n * static_cast<size_t>(dim));
    std::vector<float> rowbuf(dim);
    for (size_t i = 0; i < n; ++i) {
        in.read(reinterpret_cast<char*>(rowbuf.data()),
                static_cast<std::streamsize>(rowbuf.size() * sizeof(float)));
        if (!in) throw DataError("truncated model file: " + path.string());
        for (uint32_t j = 0; j < dim; ++j) {
            if (!std::isfinite(rowbuf[j]))
                throw DataError("model file " + path.string() +
                                " has a non-finite entry in vector for word '" +
                                h.vocab.word(static_cast<int32_t>(i)) + "'");
            matrix[i * dim + j] = rowbuf[j];
        }
    }
    // A well-formed file ends exactly after the matrix.
    char extra;
    if (in.read(&extra, 1))
        throw DataError("model file has trailing bytes: " + path.string());
    return EmbeddingModel(std::move(h.region), h.config, std::move(h.vocab), std::move(matrix));
}

ModelHeader load_model_header(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open model file: " + path.string());
    HeaderData h = read_header(in, path);
    return ModelHeader{std::move(h.region), h.config, std::move(h.vocab)};
}

void save_model_text(const EmbeddingModel& m, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write model file: " + path.string());
    out << m.size() << ' ' << m.dim() << '\n';
    char buf[64];
    for (size_t i = 0; i < m.size(); ++i) {
        out << m.vocab().word(static_cast<int32_t>(i));
        auto r = m.row(static_cast<int32_t>(i));
        for (uint32_t j = 0; j < m.dim(); ++j) {
            std::snprintf(buf, sizeof(buf), " %.9g", static_cast<double>(static_cast<float>(r[j])));
            out << buf;
        }
        out << '\n';
    }
    if (!out) throw DataError("write failed: " + path.string());
}

EmbeddingModel load_model_text(const std::filesystem::path& path, std::string region) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open model file: " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw DataError("empty model file: " + path.string());
    uint64_t n = 0;
    uint32_t dim = 0;
    {
        std::istringstream hs(line);
        if (!(hs >> n >> dim) || n == 0 || dim == 0)
            throw DataError("bad text model header (expected 'vocab_size dim'): " + path.string());
    }
    std::vector<std::string> words;
    words.reserve(n);
    std::vector<double> matrix;
    matrix.reserve(n * static_cast<size_t>(dim));
    for (uint64_t i = 0; i < n; ++i) {
        if (!std::getline(in, line))
            throw DataError("truncated model file: " + path.string());
        std::istringstream ls(line);
        std::string word;
        if (!(ls >> word)) throw DataError("bad vector line in " + path.string());
        double v;
        uint32_t got = 0;
        while (ls >> v) {
            if (!std::isfinite(v))
                throw DataError("model file " + path.string() +
                                " has a non-finite entry in vector for word '" + word + "'");
            matrix.push_back(v);
            ++got;
        }
        if (got != dim)
            throw DataError("vector for word '" + word + "' has " + std::to_string(got) +
                            " entries, expected " + std::to_string(dim) + ": " + path.string());
        words.push_back(std::move(word));
    }
    std::vector<std::pair<std::string, uint64_t>> rows;
    rows.reserve(n);
    for (const auto& w : words) rows.emplace_back(w, 1);
    Vocabulary vocab(std::move(rows), 1, n);
    if (vocab.size() != n)
        throw DataError("model file has duplicate vocabulary entries: " + path.string());
    // All counts are 1, so Vocabulary sorts the words alphabetically;
    // permute the rows read in file order to match that index assignment.
    std::vector<double> reordered(matrix.size());
    for (uint64_t i = 0; i < n; ++i) {
        int32_t idx = vocab.find(words[i]);
        for (uint32_t j = 0; j < dim; ++j)
            reordered[static_cast<size_t>(idx) * dim + j] = matrix[i * dim + j];
    }
    TrainConfig cfg;
    cfg.dim = dim;
    cfg.min_count = 1;
    return EmbeddingModel(std::move(region), cfg, std::move(vocab), std::move(reordered));
}

}  // namespace embias::embed
