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

#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "embias/analysis/adjectives.hpp"
#include "embias/analysis/stats_core.hpp"
#include "embias/error.hpp"
#include "embias/util.hpp"

#include "test_helpers.hpp"

using namespace embias;
using namespace embias::analysis;
using embias::test::make_model;
using embias::test::make_set;

namespace {

std::string culture_key(size_t i) {
    char buf[8];
    std::snprintf(buf, sizeof(buf), "c%02zu", i);
    return buf;
}

/// Models with an axis pair plus per-word chosen projections; a word whose
/// projection row holds NaN for a culture is left out of that vocabulary.
CultureModels projection_models(const std::vector<std::string>& words,
                                const std::vector<std::vector<double>>& proj, size_t n_cultures) {
    CultureModels models;
    for (size_t c = 0; c < n_cultures; ++c) {
        std::vector<std::pair<std::string, std::vector<double>>> rows;
        rows.emplace_back("fem", std::vector<double>{1.0, 0.0});
        rows.emplace_back("mal", std::vector<double>{-1.0, 0.0});
        for (size_t w = 0; w < words.size(); ++w) {
            double p = proj[w][c];
            if (std::isnan(p)) continue;
            rows.emplace_back(words[w],
                              std::vector<double>{p, std::sqrt(std::max(0.0, 1.0 - p * p))});
        }
        models.emplace(culture_key(c), make_model(culture_key(c), 2, rows));
    }
    return models;
}

CultureAxes axes_for(const CultureModels& models) {
    return make_axes(models, make_set("f", {"fem"}, bias::SetKind::Female),
                     make_set("m", {"mal"}, bias::SetKind::Male), true);
}

StatTable stat_of(const std::vector<double>& vals) {
    StatTable s;
    s.name = "gap";
    for (size_t i = 0; i < vals.size(); ++i) s.values[culture_key(i)] = vals[i];
    return s;
}

}  // namespace

TEST_CASE("affect lexicon loads and validates") {
    test::TempDir tmp("affect");
    write_text_file(tmp / "lex.csv",
                    "word,valence,dominance\nHappy,8.21,6.05\nsad,2.1,3.4\n");
    AffectLexicon lex = AffectLexicon::load_csv(tmp / "lex.csv");
    CHECK(lex.size() == 2);
    REQUIRE(lex.find("happy") != nullptr);  // lowercased on load
    CHECK(lex.find("happy")->valence == 8.21);
    CHECK(lex.find("HAPPY") == nullptr);    // lookups are literal
    CHECK(lex.find("missing") == nullptr);

    write_text_file(tmp / "bad1.csv", "word,valence\nhappy,8\n");
    CHECK_THROWS_AS(AffectLexicon::load_csv(tmp / "bad1.csv"), DataError);
    write_text_file(tmp / "bad2.csv", "word,valence,dominance\nhappy,11.0,5\n");
    CHECK_THROWS_AS(AffectLexicon::load_csv(tmp / "bad2.csv"), DataError);
    write_text_file(tmp / "bad3.csv", "word,valence,dominance\nhappy,8,5\nHAPPY,2,2\n");
    CHECK_THROWS_AS(AffectLexicon::load_csv(tmp / "bad3.csv"), DataError);
}

TEST_CASE("adjective_scan splits directions and honors strict threshold") {
    const size_t n = 8;
    std::vector<double> sv(n);
    for (size_t i = 0; i < n; ++i) sv[i] = static_cast<double>(i);
    // "rising" tracks the statistic, "falling" anti-tracks it, "flat" does
    // neither, "weak" has a followed trend diluted by alternation.
    std::vector<std::string> words = {"rising", "falling", "flat", "weak"};
    std::vector<std::vector<double>> proj = {
        {0.01, 0.1, 0.22, 0.3, 0.41, 0.5, 0.62, 0.7},
        {0.7, 0.62, 0.5, 0.41, 0.3, 0.22, 0.1, 0.01},
        {0.3, 0.31, 0.29, 0.3, 0.31, 0.29, 0.3, 0.31},
        {0.0, 0.2, 0.0, 0.2, 0.1, 0.3, 0.1, 0.3},
    };
    CultureModels models = projection_models(words, proj, n);
    CultureAxes axes = axes_for(models);
    StatTable s = stat_of(sv);

    AdjectiveReport rep = adjective_scan(make_set("adj", words), models, axes, s, 0.1, 10, true);
    CHECK(rep.scanned == 4);
    CHECK(rep.skipped_coverage == 0);
    REQUIRE_FALSE(rep.lo_gap_all.empty());
    CHECK(rep.lo_gap_all[0].word == "rising");
    CHECK(rep.lo_gap_all[0].r2 > 0.9);
    REQUIRE_FALSE(rep.hi_gap_all.empty());
    CHECK(rep.hi_gap_all[0].word == "falling");
    CHECK(rep.hi_gap_all[0].r2 < -0.9);
    // lo list descending, hi list ascending.
    for (size_t i = 1; i < rep.lo_gap_all.size(); ++i)
        CHECK(rep.lo_gap_all[i - 1].r2 >= rep.lo_gap_all[i].r2);
    for (size_t i = 1; i < rep.hi_gap_all.size(); ++i)
        CHECK(rep.hi_gap_all[i - 1].r2 <= rep.hi_gap_all[i].r2);
    // "flat" passes nowhere.
    for (const auto& e : rep.lo_gap_all) CHECK(e.word != "flat");
    for (const auto& e : rep.hi_gap_all) CHECK(e.word != "flat");

    // The threshold boundary is strict: exactly-equal r2 is excluded.
    double weak_r2 = 0.0;
    bool weak_in_lo = false;
    for (const auto& e : rep.lo_gap_all)
        if (e.word == "weak") {
            weak_r2 = e.r2;
            weak_in_lo = true;
        }
    REQUIRE(weak_in_lo);
    AdjectiveReport cut = adjective_scan(make_set("adj", words), models, axes, s,
                                         std::abs(weak_r2), 10, true);
    for (const auto& e : cut.lo_gap_all) CHECK(e.word != "weak");
    CHECK(cut.threshold == std::abs(weak_r2));
}

TEST_CASE("adjective_scan coverage floor is integer-exact") {
    const size_t n = 5;  // floor: present * 5 >= 5 * 4, so 4 cultures needed
    const double nan = std::nan("");
    std::vector<std::string> words = {"kept4", "dropped3"};
    std::vector<std::vector<double>> proj = {
        {0.1, 0.2, 0.3, 0.4, nan},
        {0.1, 0.2, 0.3, nan, nan},
    };
    CultureModels models = projection_models(words, proj, n);
    CultureAxes axes = axes_for(models);
    StatTable s = stat_of({0, 1, 2, 3, 4});
    AdjectiveReport rep = adjective_scan(make_set("adj", words), models, axes, s, 0.1, 10, true);
    CHECK(rep.scanned == 1);
    CHECK(rep.skipped_coverage == 1);
    bool kept_seen = false;
    for (const auto& e : rep.lo_gap_all) kept_seen |= (e.word == "kept4");
    CHECK(kept_seen);

    // Nothing passes the floor: error.
    std::vector<std::vector<double>> sparse = {{0.1, nan, nan, nan, nan},
                                               {nan, 0.2, nan, nan, nan}};
    CultureModels thin = projection_models(words, sparse, n);
    CHECK_THROWS_AS(adjective_scan(make_set("adj", words), thin, axes_for(thin), s, 0.1, 10, true),
                    DataError);
}

TEST_CASE("top_k slices the presentation lists only") {
    const size_t n = 6;
    std::vector<double> sv(n);
    for (size_t i = 0; i < n; ++i) sv[i] = static_cast<double>(i);
    std::vector<std::string> words;
    std::vector<std::vector<double>> proj;
    for (int w = 0; w < 5; ++w) {
        std::vector<double> row(n);
        for (size_t i = 0; i < n; ++i)
            row[i] = (0.05 + 0.01 * w) * static_cast<double>(i) + 0.1;
        words.push_back("adj" + std::to_string(w));
        proj.push_back(row);
    }
    CultureModels models = projection_models(words, proj, n);
    AdjectiveReport rep = adjective_scan(make_set("adj", words), models, axes_for(models),
                                         stat_of(sv), 0.1, 2, true);
    CHECK(rep.lo_gap.size() == 2);
    CHECK(rep.lo_gap_all.size() == 5);
    CHECK(rep.lo_gap[0].word == rep.lo_gap_all[0].word);
    CHECK(rep.lo_gap[1].word == rep.lo_gap_all[1].word);
    CHECK(rep.top_k == 2);
}

TEST_CASE("affect_compare separates constructed groups") {
    test::TempDir tmp("affectcmp");
    // lo-gap words carry high valence/dominance, hi-gap words low.
    AdjectiveReport rep;
    rep.stat_name = "gap";
    rep.lo_gap_all = {{"bright", 0.9}, {"warm", 0.8}, {"kind", 0.7}};
    rep.hi_gap_all = {{"bleak", -0.9}, {"grim", -0.8}, {"cruel", -0.7}, {"ghost", -0.6}};
    rep.lo_gap = rep.lo_gap_all;
    rep.hi_gap = rep.hi_gap_all;
    std::string csv = "word,valence,dominance\n";
    csv += "bright,8.0,7.0\nwarm,7.8,6.9\nkind,8.2,7.3\n";
    csv += "bleak,2.0,2.5\ngrim,2.2,2.8\ncruel,1.9,3.0\n";  // "ghost" missing
    write_text_file(tmp / "lex.csv", csv);
    AffectLexicon lex = AffectLexicon::load_csv(tmp / "lex.csv");

    AdjectiveReport out = affect_compare(rep, lex);
    CHECK(out.has_affect);
    CHECK(out.affect_missing == 1);
    CHECK(out.valence.mean_lo > out.valence.mean_hi);
    CHECK(out.dominance.mean_lo > out.dominance.mean_hi);
    CHECK(out.valence.p < 0.01);
    CHECK(out.valence.t > 0.0);

    // Welch values must agree with the core test on the same samples.
    WelchResult direct = welch_t_test(std::vector<double>{8.0, 7.8, 8.2},
                                      std::vector<double>{2.0, 2.2, 1.9});
    CHECK(out.valence.t == doctest::Approx(direct.t).epsilon(1e-14));
    CHECK(out.valence.p == doctest::Approx(direct.p).epsilon(1e-14));

    // Fewer than two covered words in a group: error naming the word.
    AdjectiveReport thin = rep;
    thin.hi_gap_all = {{"ghost", -0.9}, {"phantom", -0.8}};
    try {
        affect_compare(thin, lex);
        FAIL("expected DataError");
    } catch (const DataError& e) {
        std::string msg = e.what();
        CHECK(msg.find("ghost") != std::string::npos);
    }
}
