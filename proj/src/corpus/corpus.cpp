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

#include "embias/corpus/corpus.hpp"

#include <fstream>

#include <json.hpp>

#include "embias/error.hpp"
#include "embias/rng.hpp"
#include "embias/util.hpp"

namespace embias::corpus {

std::map<std::string, CultureCorpus> partition_by_region(std::vector<CleanSentence>&& sentences) {
    std::map<std::string, CultureCorpus> out;
    for (auto& s : sentences) {
        auto& c = out[s.region];
        if (c.region.empty()) c.region = s.region;
        c.sentences.push_back(std::move(s));
    }
    return out;
}

CultureCorpus sample_cap(CultureCorpus c, uint64_t cap, uint64_t seed) {
    if (cap == 0) throw ConfigError("sample_cap: cap must be >= 1");
    if (c.sentences.size() <= cap) {
        c.sampled = false;
        return c;
    }
    Rng rng(seed);
    std::vector<CleanSentence> keep(c.sentences.begin(), c.sentences.begin() + cap);
    for (uint64_t i = cap; i < c.sentences.size(); ++i) {
        uint64_t j = rng.next_below(i + 1);
        if (j < cap) keep[j] = std::move(c.sentences[i]);
    }
    c.sentences = std::move(keep);
    c.sampled = true;
    return c;
}

std::vector<std::string> reservoir_sample_lines(std::istream& in, uint64_t cap, uint64_t seed,
                                                uint64_t* total_seen) {
    if (cap == 0) throw ConfigError("reservoir_sample_lines: cap must be >= 1");
    Rng rng(seed);
    std::vector<std::string> keep;
    keep.reserve(std::min<uint64_t>(cap, 1 << 20));
    std::string line;
    uint64_t n = 0;
    while (std::getline(in, line)) {
        if (n < cap) {
            keep.push_back(line);
        } else {
            uint64_t j = rng.next_below(n + 1);
            if (j < cap) keep[j] = line;
        }
        ++n;
    }
    if (in.bad()) throw DataError("I/O error while sampling lines");
    if (total_seen) *total_seen = n;
    return keep;
}

void write_corpus_file(const std::filesystem::path& path, const CultureCorpus& c) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write corpus file: " + path.string());
    for (const auto& s : c.sentences) {
        for (size_t i = 0; i < s.tokens.size(); ++i) {
            if (i) out << ' ';
            out << s.tokens[i];
        }
        out << '\n';
    }
    if (!out) throw DataError("write failed: " + path.string());
}

CultureCorpus read_corpus_file(const std::filesystem::path& path, const std::string& region) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open corpus file: " + path.string());
    CultureCorpus c;
    c.region = region;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        CleanSentence s;
        s.region = region;
        s.tokens = split(line, ' ');
        c.sentences.push_back(std::move(s));
    }
    if (in.bad()) throw DataError("I/O error while reading corpus file: " + path.string());
    return c;
}

void write_corpus_manifest(const std::filesystem::path& path, const CorpusManifest& m) {
    nlohmann::json j;
    j["cap"] = m.cap;
    j["seed"] = m.seed;
    j["malformed_lines"] = m.malformed_lines;
    nlohmann::json regions = nlohmann::json::object();
    for (const auto& [region, rm] : m.regions) {
        nlohmann::json r;
        r["file"] = rm.file;
        r["accepted"] = rm.accepted;
        r["written"] = rm.written;
        r["rejected_non_english"] = rm.rejected_non_english;
        r["rejected_too_short"] = rm.rejected_too_short;
        r["sampled"] = rm.sampled;
        regions[region] = std::move(r);
    }
    j["regions"] = std::move(regions);
    write_text_file(path, j.dump(2) + "\n");
}

CorpusManifest read_corpus_manifest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open manifest: " + path.string());
    nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
    if (j.is_discarded()) throw DataError("invalid manifest JSON: " + path.string());
    CorpusManifest m;
    try {
        m.cap = j.at("cap").get<uint64_t>();
        m.seed = j.at("seed").get<uint64_t>();
        m.malformed_lines = j.at("malformed_lines").get<uint64_t>();
        for (const auto& [region, r] : j.at("regions").items()) {
            RegionManifest rm;
            rm.file = r.at("file").get<std::string>();
            rm.accepted = r.at("accepted").get<uint64_t>();
            rm.written = r.at("written").get<uint64_t>();
            rm.rejected_non_english = r.at("rejected_non_english").get<uint64_t>();
            rm.rejected_too_short = r.at("rejected_too_short").get<uint64_t>();
            rm.sampled = r.at("sampled").get<bool>();
            m.regions[region] = std::move(rm);
        }
    } catch (const nlohmann::json::exception& e) {
        throw DataError("manifest " + path.string() + ": " + e.what());
    }
    return m;
}

}  // namespace embias::corpus
