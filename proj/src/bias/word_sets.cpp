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

#include "embias/bias/word_sets.hpp"

#include <algorithm>
#include <fstream>
#include <unordered_set>

#include <json.hpp>

#include "embias/error.hpp"
#include "embias/util.hpp"

namespace embias::bias {

std::string_view set_kind_name(SetKind k) {
    switch (k) {
        case SetKind::Female: return "female";
        case SetKind::Male: return "male";
        case SetKind::NeutralThemed: return "neutral-themed";
        case SetKind::Random: return "random";
    }
    throw ConfigError("unknown word-set kind tag");
}

SetKind parse_set_kind(std::string_view name) {
    if (name == "female") return SetKind::Female;
    if (name == "male") return SetKind::Male;
    if (name == "neutral-themed") return SetKind::NeutralThemed;
    if (name == "random") return SetKind::Random;
    throw ConfigError("unknown word-set kind '" + std::string(name) +
                      "' (expected female, male, neutral-themed or random)");
}

WordSet load_word_set(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open word-set file: " + path.string());
    WordSet set;
    set.name = path.stem().string();
    std::unordered_set<std::string> seen;
    std::string line;
    while (std::getline(in, line)) {
        std::string w = trim(line);
        if (w.empty() || w[0] == '#') continue;
        w = ascii_lower(w);
        if (seen.insert(w).second) set.words.push_back(std::move(w));
    }
    if (in.bad()) throw DataError("I/O error while reading word-set file: " + path.string());
    if (set.words.empty())
        throw DataError("word-set file is empty after parsing: " + path.string());
    return set;
}

const WordSet* WordSetCatalog::find_themed(std::string_view name) const {
    for (const auto& s : themed)
        if (s.name == name) return &s;
    return nullptr;
}

WordSetCatalog load_catalog(const std::filesystem::path& dir) {
    std::filesystem::path manifest = dir / "sets.json";
    std::ifstream in(manifest);
    if (!in) throw DataError("cannot open word-set manifest: " + manifest.string());
    nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
    if (j.is_discarded() || !j.is_object())
        throw DataError("invalid word-set manifest JSON: " + manifest.string());

    WordSetCatalog cat;
    bool have_female = false, have_male = false;
    for (const auto& [name, kind_val] : j.items()) {
        if (!kind_val.is_string())
            throw DataError("word-set manifest entry '" + name + "' must map to a kind string");
        SetKind kind = parse_set_kind(kind_val.get<std::string>());
        if (kind == SetKind::Random)
            throw DataError("word-set manifest names a random-kind set '" + name +
                            "'; random baselines are sampled from the vocabulary, not shipped");
        WordSet set = load_word_set(dir / (name + ".txt"));
        set.kind = kind;
        switch (kind) {
            case SetKind::Female:
                if (have_female)
                    throw DataError("word-set manifest declares more than one female set");
                cat.female = std::move(set);
                have_female = true;
                break;
            case SetKind::Male:
                if (have_male)
                    throw DataError("word-set manifest declares more than one male set");
                cat.male = std::move(set);
                have_male = true;
                break;
            default: cat.themed.push_back(std::move(set)); break;
        }
    }
    if (!have_female || !have_male)
        throw DataError("word-set manifest must declare one female and one male set: " +
                        manifest.string());
    if (cat.themed.empty())
        throw DataError("word-set manifest declares no neutral-themed sets: " + manifest.string());
    std::sort(cat.themed.begin(), cat.themed.end(),
              [](const WordSet& a, const WordSet& b) { return a.name < b.name; });
    return cat;
}

}  // namespace embias::bias
