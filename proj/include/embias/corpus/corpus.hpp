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

#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <string>
#include <vector>

#include "embias/corpus/clean.hpp"

namespace embias::corpus {

struct CultureCorpus {
    std::string region;
    std::vector<CleanSentence> sentences;  // all share `region`
    bool sampled = false;                  // true iff capped by sample_cap
};

/// Groups sentences by region. Regions with zero sentences are absent.
std::map<std::string, CultureCorpus> partition_by_region(std::vector<CleanSentence>&& sentences);

/// Caps a corpus at `cap` sentences by uniform sampling without replacement
/// (single-pass reservoir, Algorithm R). Inputs at or under the cap are
/// returned unchanged with sampled=false. Deterministic for a fixed seed.
CultureCorpus sample_cap(CultureCorpus c, uint64_t cap, uint64_t seed);

/// Streaming variant of the same reservoir over raw lines; used by the CLI so
/// oversized regions never need all sentences in memory at once.
std::vector<std::string> reservoir_sample_lines(std::istream& in, uint64_t cap, uint64_t seed,
                                                uint64_t* total_seen = nullptr);

/// Token-file format: one sentence per line, tokens separated by single
/// spaces, UTF-8.
void write_corpus_file(const std::filesystem::path& path, const CultureCorpus& c);
CultureCorpus read_corpus_file(const std::filesystem::path& path, const std::string& region);

struct RegionManifest {
    std::string file;  // empty when no sentences were written
    uint64_t accepted = 0;  // cleaned sentences before capping
    uint64_t written = 0;   // sentences in the token file
    uint64_t rejected_non_english = 0;
    uint64_t rejected_too_short = 0;
    bool sampled = false;
};

struct CorpusManifest {
    uint64_t cap = 0;
    uint64_t seed = 0;
    uint64_t malformed_lines = 0;
    std::map<std::string, RegionManifest> regions;
};

void write_corpus_manifest(const std::filesystem::path& path, const CorpusManifest& m);
CorpusManifest read_corpus_manifest(const std::filesystem::path& path);

}  // namespace embias::corpus
