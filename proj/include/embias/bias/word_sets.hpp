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

#ifndef EMBIAS_BIAS_WORD_SETS_HPP
#define EMBIAS_BIAS_WORD_SETS_HPP

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace embias::bias {

enum class SetKind {
    Female,
    Male,
    NeutralThemed,
    Random,
};

/// Stable names: "female", "male", "neutral-themed", "random".
std::string_view set_kind_name(SetKind k);
SetKind parse_set_kind(std::string_view name);  // ConfigError on unknown

struct WordSet {
    std::string name;
    std::vector<std::string> words;  // lowercase, first occurrence kept
    SetKind kind = SetKind::NeutralThemed;
};

/// One word per line, '#' lines are comments, words are lowercased and
/// de-duplicated preserving the first occurrence. The set name is the
/// filename stem. Throws DataError when nothing remains after parsing.
WordSet load_word_set(const std::filesystem::path& path);

/// A word-set directory: one .txt file per set plus a sets.json manifest
/// mapping each set name to its kind, e.g. {"female": "female",
/// "government": "neutral-themed"}.
struct WordSetCatalog {
    WordSet female;
    WordSet male;
    std::vector<WordSet> themed;  // neutral-themed sets, sorted by name

    const WordSet* find_themed(std::string_view name) const;
};

/// Loads every set named in dir/sets.json. Requires exactly one set of kind
/// female and one of kind male; random-kind entries are rejected here
/// (random baselines are drawn from the model vocabulary, not shipped).
WordSetCatalog load_catalog(const std::filesystem::path& dir);

}  // namespace embias::bias

#endif  // EMBIAS_BIAS_WORD_SETS_HPP
