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

#ifndef EMBIAS_ANALYSIS_ADJECTIVES_HPP
#define EMBIAS_ANALYSIS_ADJECTIVES_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "embias/analysis/pipeline.hpp"
#include "embias/analysis/stat_table.hpp"

namespace embias::analysis {

struct AffectEntry {
    double valence = 0.0;
    double dominance = 0.0;
};

/// Word affect norms on a 1-9 scale with neutral at 4.5.
class AffectLexicon {
public:
    /// CSV with the exact header "word,valence,dominance"; scores must lie
    /// in [1, 9]. Words are lowercased; duplicates are a DataError.
    static AffectLexicon load_csv(const std::filesystem::path& path);

    const AffectEntry* find(std::string_view word) const;
    size_t size() const { return entries_.size(); }

private:
    std::map<std::string, AffectEntry, std::less<>> entries_;
};

struct AdjectiveEntry {
    std::string word;
    double r2 = 0.0;  // signed
};

struct WelchOutcome {
    double t = 0.0;
    double p = 1.0;
    double df = 0.0;
    double mean_lo = 0.0;
    double mean_hi = 0.0;
};

/// "lo-gap" holds adjectives whose female bias rises with the statistic
/// (positive signed R-squared; for gap indices scored so that greater
/// means less gap, these track gap reduction), "hi-gap" the negative
/// direction. The *_all lists keep every adjective past the threshold;
/// lo_gap/hi_gap are the top_k presentation slices.
struct AdjectiveReport {
    std::string stat_name;
    double threshold = 0.1;
    uint32_t top_k = 10;
    std::vector<AdjectiveEntry> lo_gap;      // r2 descending, at most top_k
    std::vector<AdjectiveEntry> hi_gap;      // r2 ascending, at most top_k
    std::vector<AdjectiveEntry> lo_gap_all;  // r2 descending
    std::vector<AdjectiveEntry> hi_gap_all;  // r2 ascending
    uint32_t scanned = 0;           // adjectives passing the coverage floor
    uint32_t skipped_coverage = 0;  // below the floor
    bool has_affect = false;        // set by affect_compare
    WelchOutcome valence;
    WelchOutcome dominance;
    uint32_t affect_missing = 0;  // survivors absent from the affect lexicon
};

/// Scores every adjective present in at least 80% of the culture
/// vocabularies (integer-exact: present * 5 >= cultures * 4) by the signed
/// R-squared of its single-word axis projection against the statistic, then
/// keeps |r2| strictly above the threshold. Throws DataError when nothing
/// passes the coverage floor.
AdjectiveReport adjective_scan(const bias::WordSet& adjectives, const CultureModels& models,
                               const CultureAxes& axes, const StatTable& stat,
                               double threshold = 0.1, uint32_t top_k = 10,
                               bool unit_normalize = true);

/// Welch t-tests on valence and dominance between the full lo-gap and
/// hi-gap groups. Adjectives missing from the lexicon are dropped with a
/// warning; fewer than two present per group is a DataError naming the
/// missing words.
AdjectiveReport affect_compare(AdjectiveReport report, const AffectLexicon& lexicon);

}  // namespace embias::analysis

#endif  // EMBIAS_ANALYSIS_ADJECTIVES_HPP
