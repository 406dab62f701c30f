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

#include "embias/synth/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "embias/analysis/stats_core.hpp"
#include "embias/bias/metrics.hpp"
#include "embias/error.hpp"
#include "embias/rng.hpp"
#include "embias/util.hpp"

namespace embias::synth {

namespace {

// Spec files are configuration, so numeric parse failures surface as
// ConfigError rather than parse_double_field's DataError.
double spec_number(const std::string& value, const std::string& key) {
    try {
        return parse_double_field(value, key);
    } catch (const DataError& e) {
        throw ConfigError(e.what());
    }
}

std::vector<double> linear_ladder(double lo, double hi, uint32_t n) {
    std::vector<double> v(n);
    if (n == 1) {
        v[0] = lo;
        return v;
    }
    for (uint32_t i = 0; i < n; ++i)
        v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    return v;
}

std::vector<double> parse_ladder(const std::string& value, uint32_t n_cultures,
                                 const std::string& key) {
    if (value.rfind("linear:", 0) == 0) {
        auto parts = split(value, ':');
        if (parts.size() != 3)
            throw ConfigError(key + ": linear ladder must be 'linear:lo:hi', got '" + value + "'");
        double lo = spec_number(parts[1], key);
        double hi = spec_number(parts[2], key);
        return linear_ladder(lo, hi, n_cultures);
    }
    std::vector<double> v;
    for (const auto& f : split(value, ' ')) {
        if (f.empty()) continue;
        v.push_back(spec_number(f, key));
    }
    return v;
}

}  // namespace

void SynthSpec::validate() const {
    if (n_cultures < 3) throw ConfigError("synth spec: n_cultures must be >= 3");
    if (sentences_per_culture < 1)
        throw ConfigError("synth spec: sentences_per_culture must be >= 1");
    if (female_anchors.empty() || male_anchors.empty())
        throw ConfigError("synth spec: both anchor lists must be nonempty");
    if (filler_count < 1) throw ConfigError("synth spec: filler_count must be >= 1");
    if (!(filler_lambda > 0.0)) throw ConfigError("synth spec: filler_lambda must be > 0");
    if (themed_per_sentence < 1)
        throw ConfigError("synth spec: themed_per_sentence must be >= 1");
    if (themes.empty()) throw ConfigError("synth spec: at least one theme is required");
    for (const auto& t : themes) {
        if (t.name.empty()) throw ConfigError("synth spec: theme with empty name");
        if (t.tokens.empty())
            throw ConfigError("synth spec: theme '" + t.name + "' has no tokens");
        if (t.bias.size() != n_cultures)
            throw ConfigError("synth spec: theme '" + t.name + "' has " +
                              std::to_string(t.bias.size()) + " bias values for " +
                              std::to_string(n_cultures) + " cultures");
        for (double b : t.bias)
            if (!std::isfinite(b) || b < -1.0 || b > 1.0)
                throw ConfigError("synth spec: theme '" + t.name +
                                  "' has a bias outside [-1, 1]");
        if (!std::isfinite(t.stat_slope) || t.stat_slope == 0.0)
            throw ConfigError("synth spec: theme '" + t.name + "' needs a nonzero stat_slope");
        if (t.noise_frac < 0.0)
            throw ConfigError("synth spec: theme '" + t.name + "' has negative noise_frac");
    }
}

SynthSpec SynthSpec::default_spec() {
    SynthSpec spec;
    spec.n_cultures = 12;
    spec.sentences_per_culture = 100000;
    spec.female_anchors = {"she", "her", "woman", "girl", "mother", "queen"};
    spec.male_anchors = {"he", "him", "man", "boy", "father", "king"};
    spec.filler_count = 60;
    spec.filler_lambda = 3.0;
    spec.seed = 1;
    SynthTheme career;
    career.name = "career";
    career.tokens = {"career", "office", "salary", "job", "work", "business", "money",
                     "promotion"};
    career.bias = linear_ladder(-0.8, 0.8, spec.n_cultures);
    career.stat_slope = 1.0;
    career.stat_intercept = 0.5;
    career.noise_frac = 0.05;
    spec.themes.push_back(std::move(career));
    SynthTheme family;
    family.name = "family";
    family.tokens = {"family", "home", "kitchen", "children", "wedding", "care", "parent",
                     "school"};
    family.bias = linear_ladder(0.8, -0.8, spec.n_cultures);
    family.stat_slope = 1.0;
    family.stat_intercept = 0.5;
    family.noise_frac = 0.05;
    spec.themes.push_back(std::move(family));
    return spec;
}

SynthSpec SynthSpec::parse_file(const std::filesystem::path& path) {
    SynthSpec spec;
    spec.female_anchors.clear();
    spec.male_anchors.clear();
    spec.themes.clear();

    // Theme sub-keys arrive as "theme.<name>.<field>"; ladders are parsed
    // after n_cultures is final, so key order in the file does not matter.
    std::vector<std::pair<std::string, std::string>> pending_bias;
    auto theme_ref = [&](const std::string& name) -> SynthTheme& {
        for (auto& t : spec.themes)
            if (t.name == name) return t;
        spec.themes.push_back(SynthTheme{});
        spec.themes.back().name = name;
        return spec.themes.back();
    };

    for (const auto& [key, value] : parse_kv_file(path)) {
        if (key == "n_cultures") {
            spec.n_cultures = static_cast<uint32_t>(spec_number(value, key));
        } else if (key == "sentences_per_culture") {
            spec.sentences_per_culture = static_cast<uint64_t>(spec_number(value, key));
        } else if (key == "seed") {
            spec.seed = static_cast<uint64_t>(spec_number(value, key));
        } else if (key == "filler_count") {
            spec.filler_count = static_cast<uint32_t>(spec_number(value, key));
        } else if (key == "filler_lambda") {
            spec.filler_lambda = spec_number(value, key);
        } else if (key == "themed_per_sentence") {
            spec.themed_per_sentence = static_cast<uint32_t>(spec_number(value, key));
        } else if (key == "female_anchors") {
            for (const auto& w : split(value, ' '))
                if (!w.empty()) spec.female_anchors.push_back(w);
        } else if (key == "male_anchors") {
            for (const auto& w : split(value, ' '))
                if (!w.empty()) spec.male_anchors.push_back(w);
        } else if (key.rfind("theme.", 0) == 0) {
            std::string rest = key.substr(6);
            size_t dot = rest.find('.');
            if (dot == std::string::npos || dot == 0 || dot + 1 >= rest.size())
                throw ConfigError("synth spec key '" + key +
                                  "' must look like theme.<name>.<field>");
            std::string name = rest.substr(0, dot);
            std::string field = rest.substr(dot + 1);
            SynthTheme& t = theme_ref(name);
            if (field == "tokens") {
                for (const auto& w : split(value, ' '))
                    if (!w.empty()) t.tokens.push_back(w);
            } else if (field == "bias") {
                pending_bias.emplace_back(name, value);
            } else if (field == "stat_slope") {
                t.stat_slope = spec_number(value, key);
            } else if (field == "stat_intercept") {
                t.stat_intercept = spec_number(value, key);
            } else if (field == "noise_frac") {
                t.noise_frac = spec_number(value, key);
            } else {
                throw ConfigError("unknown synth theme field '" + field + "' in key '" + key +
                                  "'");
            }
        } else {
            throw ConfigError("unknown synth spec key '" + key + "'");
        }
    }
    for (const auto& [name, value] : pending_bias)
        theme_ref(name).bias = parse_ladder(value, spec.n_cultures, "theme." + name + ".bias");
    spec.validate();
    return spec;
}

std::string culture_name(uint32_t index) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "c%03u", index);
    return buf;
}

bias::WordSet theme_word_set(const SynthTheme& theme) {
    bias::WordSet set;
    set.name = theme.name;
    set.kind = bias::SetKind::NeutralThemed;
    set.words = theme.tokens;
    return set;
}

bias::WordSet female_anchor_set(const SynthSpec& spec) {
    bias::WordSet set;
    set.name = "female";
    set.kind = bias::SetKind::Female;
    set.words = spec.female_anchors;
    return set;
}

bias::WordSet male_anchor_set(const SynthSpec& spec) {
    bias::WordSet set;
    set.name = "male";
    set.kind = bias::SetKind::Male;
    set.words = spec.male_anchors;
    return set;
}

SynthWorld gen_world(const SynthSpec& spec) {
    spec.validate();
    SynthWorld world;
    world.spec = spec;

    std::vector<std::string> fillers;
    fillers.reserve(spec.filler_count);
    for (uint32_t i = 0; i < spec.filler_count; ++i) {
        char buf[24];
        std::snprintf(buf, sizeof(buf), "filler-%02u", i);
        fillers.emplace_back(buf);
    }

    for (uint32_t c = 0; c < spec.n_cultures; ++c) {
        std::string culture = culture_name(c);
        Rng rng(derive_seed(spec.seed, "culture:" + std::to_string(c)));
        corpus::CultureCorpus cc;
        cc.region = culture;
        cc.sentences.reserve(spec.sentences_per_culture);
        for (uint64_t s = 0; s < spec.sentences_per_culture; ++s) {
            const SynthTheme& theme = spec.themes[rng.next_below(spec.themes.size())];
            corpus::CleanSentence sent;
            sent.region = culture;
            for (uint32_t t = 0; t < spec.themed_per_sentence; ++t)
                sent.tokens.push_back(theme.tokens[rng.next_below(theme.tokens.size())]);
            double p_female = (1.0 + theme.bias[c]) / 2.0;
            if (rng.next_double() < p_female)
                sent.tokens.push_back(
                    spec.female_anchors[rng.next_below(spec.female_anchors.size())]);
            else
                sent.tokens.push_back(
                    spec.male_anchors[rng.next_below(spec.male_anchors.size())]);
            uint32_t n_filler = std::max<uint32_t>(1, rng.next_poisson(spec.filler_lambda));
            for (uint32_t f = 0; f < n_filler; ++f)
                sent.tokens.push_back(fillers[rng.next_below(fillers.size())]);
            rng.shuffle(sent.tokens);
            cc.sentences.push_back(std::move(sent));
        }
        world.corpora.emplace(std::move(culture), std::move(cc));
    }

    for (const auto& theme : spec.themes) {
        analysis::StatTable st;
        st.name = theme.name + "-stat";
        st.note = "derived: slope=" + format_double(theme.stat_slope) +
                  " intercept=" + format_double(theme.stat_intercept) +
                  " noise_frac=" + format_double(theme.noise_frac);
        std::vector<double> base(spec.n_cultures);
        double mean = 0.0;
        for (uint32_t c = 0; c < spec.n_cultures; ++c) {
            base[c] = theme.stat_slope * theme.bias[c] + theme.stat_intercept;
            mean += base[c];
        }
        mean /= static_cast<double>(spec.n_cultures);
        double var = 0.0;
        for (double b : base) var += (b - mean) * (b - mean);
        double sd = std::sqrt(var / static_cast<double>(spec.n_cultures));
        Rng nrng(derive_seed(spec.seed, "stat:" + theme.name));
        auto& tb = world.true_bias[theme.name];
        for (uint32_t c = 0; c < spec.n_cultures; ++c) {
            double noise = theme.noise_frac > 0.0
                               ? nrng.next_gaussian() * theme.noise_frac * sd
                               : 0.0;
            st.values[culture_name(c)] = base[c] + noise;
            tb[culture_name(c)] = theme.bias[c];
        }
        world.stats.push_back(std::move(st));
    }
    return world;
}

bool OracleReport::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

OracleReport pipeline_oracle_check(const SynthWorld& world, const analysis::CultureModels& models,
                                   const OracleOptions& opt) {
    OracleReport report;
    const SynthSpec& spec = world.spec;
    analysis::CultureAxes axes = analysis::make_axes(models, female_anchor_set(spec),
                                                     male_anchor_set(spec), opt.unit_normalize);

    for (size_t t = 0; t < spec.themes.size(); ++t) {
        const SynthTheme& theme = spec.themes[t];
        const analysis::StatTable& stat = world.stats[t];
        bias::WordSet set = theme_word_set(theme);
        analysis::WordBiasTable table = analysis::build_word_bias_table(
            set, models, axes, bias::Metric::AxisProjection, opt.unit_normalize);

        // (a) measured per-culture bias ranks like the injected ladder.
        {
            std::vector<double> measured, truth;
            for (size_t c = 0; c < table.cultures.size(); ++c) {
                double sum = 0.0;
                size_t used = 0;
                for (size_t w = 0; w < table.words.size(); ++w) {
                    if (!table.defined(w, c)) continue;
                    sum += table.at(w, c);
                    ++used;
                }
                if (used == 0) continue;
                measured.push_back(sum / static_cast<double>(used));
                truth.push_back(world.true_bias.at(theme.name).at(table.cultures[c]));
            }
            OracleCheck check;
            check.name = theme.name + ": rank agreement";
            check.value = analysis::spearman(measured, truth);
            check.pass = check.value >= opt.spearman_min;
            check.detail = "spearman=" + format_double(check.value) +
                           " min=" + format_double(opt.spearman_min);
            report.checks.push_back(std::move(check));
        }

        // (b) the theme against its own statistic: strong, correctly signed.
        {
            analysis::CorrelationResult res = analysis::averaged_signed_r2(
                table, stat, opt.repeats, opt.subset_frac,
                derive_seed(opt.seed, "oracle-cell:" + theme.name));
            OracleCheck check;
            check.name = theme.name + ": pipeline strength";
            check.value = res.signed_r2;
            bool sign_ok = theme.stat_slope > 0.0 ? res.signed_r2 > 0.0 : res.signed_r2 < 0.0;
            check.pass = sign_ok && std::abs(res.signed_r2) >= opt.r2_min;
            check.detail = "signed_r2=" + format_double(res.signed_r2) +
                           " min=" + format_double(opt.r2_min) +
                           (sign_ok ? "" : " (wrong sign)");
            report.checks.push_back(std::move(check));
        }
    }

    // (c) gender-free filler sets must stay under the null ceiling against
    // the first statistic in nearly every seeded trial.
    {
        std::vector<std::string> fillers;
        for (uint32_t i = 0; i < spec.filler_count; ++i) {
            char buf[24];
            std::snprintf(buf, sizeof(buf), "filler-%02u", i);
            fillers.emplace_back(buf);
        }
        size_t set_size = std::min<size_t>(spec.themes[0].tokens.size(), fillers.size());
        uint32_t under = 0;
        double worst = 0.0;
        for (uint32_t trial = 0; trial < opt.null_trials; ++trial) {
            Rng rng(derive_seed(opt.seed, "null:" + std::to_string(trial)));
            std::vector<size_t> pick = rng.sample_indices(fillers.size(), set_size);
            std::sort(pick.begin(), pick.end());
            bias::WordSet set;
            set.name = "null-" + std::to_string(trial);
            set.kind = bias::SetKind::Random;
            for (size_t p : pick) set.words.push_back(fillers[p]);
            analysis::CorrelationResult res = analysis::averaged_signed_r2(
                set, models, axes, world.stats[0], opt.repeats, opt.subset_frac,
                derive_seed(opt.seed, "null-cell:" + std::to_string(trial)), opt.unit_normalize);
            if (std::abs(res.signed_r2) <= opt.null_ceiling) ++under;
            worst = std::max(worst, std::abs(res.signed_r2));
        }
        OracleCheck check;
        check.name = "filler null ceiling";
        check.value = static_cast<double>(under) / static_cast<double>(opt.null_trials);
        check.pass = check.value >= opt.null_pass_frac;
        check.detail = std::to_string(under) + "/" + std::to_string(opt.null_trials) +
                       " trials under " + format_double(opt.null_ceiling) +
                       ", worst |r2|=" + format_double(worst);
        report.checks.push_back(std::move(check));
    }
    return report;
}

}  // namespace embias::synth
