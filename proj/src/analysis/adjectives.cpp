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

#include "embias/analysis/adjectives.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "embias/analysis/stats_core.hpp"
#include "embias/error.hpp"
#include "embias/log.hpp"
#include "embias/util.hpp"

namespace embias::analysis {

AffectLexicon AffectLexicon::load_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open affect lexicon: " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw DataError("affect lexicon is empty: " + path.string());
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "word,valence,dominance")
        throw DataError("affect lexicon " + path.string() +
                        " must start with the header 'word,valence,dominance', got '" + line +
                        "'");
    AffectLexicon lex;
    size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = split_csv_line(line);
        if (fields.size() != 3)
            throw DataError(path.string() + ":" + std::to_string(lineno) +
                            ": expected 3 fields, got " + std::to_string(fields.size()));
        std::string word = ascii_lower(trim(fields[0]));
        if (word.empty())
            throw DataError(path.string() + ":" + std::to_string(lineno) + ": empty word");
        AffectEntry e;
        std::string ctx = path.string() + ":" + std::to_string(lineno);
        e.valence = parse_double_field(fields[1], ctx);
        e.dominance = parse_double_field(fields[2], ctx);
        if (e.valence < 1.0 || e.valence > 9.0 || e.dominance < 1.0 || e.dominance > 9.0)
            throw DataError(ctx + ": affect scores must lie in [1, 9]");
        if (!lex.entries_.emplace(std::move(word), e).second)
            throw DataError(ctx + ": duplicate word '" + fields[0] + "'");
    }
    if (in.bad()) throw DataError("I/O error while reading affect lexicon: " + path.string());
    if (lex.entries_.empty())
        throw DataError("affect lexicon has no entries: " + path.string());
    return lex;
}

const AffectEntry* AffectLexicon::find(std::string_view word) const {
    auto it = entries_.find(word);
    return it == entries_.end() ? nullptr : &it->second;
}

AdjectiveReport adjective_scan(const bias::WordSet& adjectives, const CultureModels& models,
                               const CultureAxes& axes, const StatTable& stat, double threshold,
                               uint32_t top_k, bool unit_normalize) {
    if (adjectives.words.empty()) throw ConfigError("adjective_scan: empty adjective list");
    if (models.empty()) throw ConfigError("adjective_scan: no models");

    AdjectiveReport report;
    report.stat_name = stat.name;
    report.threshold = threshold;
    report.top_k = top_k;

    // The whole lexicon is one big candidate table; single-word rows are
    // exactly the per-adjective projections.
    WordBiasTable table = build_word_bias_table(adjectives, models, axes,
                                                bias::Metric::AxisProjection, unit_normalize);
    const size_t n_models = models.size();
    std::vector<double> xs, ys;
    for (size_t w = 0; w < table.words.size(); ++w) {
        size_t present = 0;
        for (size_t c = 0; c < table.cultures.size(); ++c)
            if (table.defined(w, c)) ++present;
        // Integer-exact 80% coverage floor: present/n >= 4/5.
        if (present * 5 < n_models * 4) {
            ++report.skipped_coverage;
            continue;
        }
        ++report.scanned;
        xs.clear();
        ys.clear();
        for (size_t c = 0; c < table.cultures.size(); ++c) {
            if (!table.defined(w, c)) continue;
            const double* sv = stat.find(table.cultures[c]);
            if (!sv) continue;
            xs.push_back(table.at(w, c));
            ys.push_back(*sv);
        }
        double r2;
        try {
            r2 = signed_r2(xs, ys);
        } catch (const DataError&) {
            continue;  // too few pairs or degenerate variance for this word
        }
        if (std::abs(r2) <= threshold) continue;
        if (r2 > 0.0)
            report.lo_gap_all.push_back({table.words[w], r2});
        else
            report.hi_gap_all.push_back({table.words[w], r2});
    }
    if (report.scanned == 0)
        throw DataError("adjective_scan: no adjective passes the 80% culture-coverage floor");

    auto by_word = [](const AdjectiveEntry& a, const AdjectiveEntry& b) {
        return a.word < b.word;
    };
    std::sort(report.lo_gap_all.begin(), report.lo_gap_all.end(),
              [&](const AdjectiveEntry& a, const AdjectiveEntry& b) {
                  if (a.r2 != b.r2) return a.r2 > b.r2;
                  return by_word(a, b);
              });
    std::sort(report.hi_gap_all.begin(), report.hi_gap_all.end(),
              [&](const AdjectiveEntry& a, const AdjectiveEntry& b) {
                  if (a.r2 != b.r2) return a.r2 < b.r2;
                  return by_word(a, b);
              });
    auto take = [top_k](const std::vector<AdjectiveEntry>& v) {
        return std::vector<AdjectiveEntry>(v.begin(),
                                           v.begin() + std::min<size_t>(v.size(), top_k));
    };
    report.lo_gap = take(report.lo_gap_all);
    report.hi_gap = take(report.hi_gap_all);
    return report;
}

AdjectiveReport affect_compare(AdjectiveReport report, const AffectLexicon& lexicon) {
    std::vector<double> lo_val, hi_val, lo_dom, hi_dom;
    std::vector<std::string> missing;
    auto gather = [&](const std::vector<AdjectiveEntry>& group, std::vector<double>* val,
                      std::vector<double>* dom) {
        for (const auto& e : group) {
            const AffectEntry* a = lexicon.find(e.word);
            if (!a) {
                log_warn("affect_compare: adjective '" + e.word + "' missing from the lexicon");
                missing.push_back(e.word);
                continue;
            }
            val->push_back(a->valence);
            dom->push_back(a->dominance);
        }
    };
    gather(report.lo_gap_all, &lo_val, &lo_dom);
    gather(report.hi_gap_all, &hi_val, &hi_dom);
    report.affect_missing = static_cast<uint32_t>(missing.size());
    if (lo_val.size() < 2 || hi_val.size() < 2) {
        std::string names;
        for (const auto& w : missing) {
            if (!names.empty()) names += ", ";
            names += w;
        }
        throw DataError("affect_compare: need at least 2 covered adjectives per direction (" +
                        std::to_string(lo_val.size()) + " lo-gap, " + std::to_string(hi_val.size()) +
                        " hi-gap)" + (names.empty() ? "" : "; missing from lexicon: " + names));
    }
    auto mean_of = [](const std::vector<double>& v) {
        double s = 0.0;
        for (double x : v) s += x;
        return s / static_cast<double>(v.size());
    };
    WelchResult v = welch_t_test(lo_val, hi_val);
    report.valence = {v.t, v.p, v.df, mean_of(lo_val), mean_of(hi_val)};
    WelchResult d = welch_t_test(lo_dom, hi_dom);
    report.dominance = {d.t, d.p, d.df, mean_of(lo_dom), mean_of(hi_dom)};
    report.has_affect = true;
    return report;
}

}  // namespace embias::analysis
