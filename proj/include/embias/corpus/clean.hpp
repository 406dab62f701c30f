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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "embias/corpus/record.hpp"

namespace embias::corpus {

inline constexpr std::string_view kUrlToken = "<url>";
inline constexpr std::string_view kUserToken = "<user>";
inline constexpr std::string_view kHashtagToken = "<hashtag>";
inline constexpr std::string_view kEmojiToken = "<emoji>";
inline constexpr std::string_view kMediaToken = "<media>";

bool is_placeholder_token(std::string_view token);

/// A cleaned, tokenized post. Invariant: >= 3 tokens, no whitespace inside
/// any token.
struct CleanSentence {
    std::vector<std::string> tokens;
    std::string region;
};

enum class RejectReason { NonEnglish, TooShort };

struct CleanOutcome {
    std::optional<CleanSentence> sentence;  // engaged on acceptance
    RejectReason reason = RejectReason::NonEnglish;
};

/// The full token pipeline, without the language / minimum-length gates.
///
/// Rules, applied per whitespace-separated chunk (Unicode whitespace splits):
///   1. a chunk that already equals a placeholder token passes through;
///   2. media links (pic.twitter.com/..., pbs.twimg.com/..., with or without
///      an http(s) scheme) -> <media>;
///   3. chunks starting with http://, https://, or www. -> <url>;
///   4. @name -> <user> and #tag -> <hashtag> (next char alphanumeric or _);
///   5. everything else is ASCII-lowercased; maximal emoji runs (codepoints
///      in U+1F300-1F5FF, U+1F600-1F64F, U+1F680-1F6FF, U+1F900-1F9FF,
///      extended by ZWJ / VS-16 / skin-tone modifiers) each collapse to one
///      <emoji> token and split the chunk;
///   6. remaining segments are stripped of leading/trailing punctuation
///      (ASCII non-alphanumerics, Latin-1 punctuation U+00A1-00BF, general
///      punctuation U+2000-206F); internal characters are kept, so "don't"
///      stays one token. Empty residues are dropped.
std::vector<std::string> tokenize_clean(std::string_view text);

/// Applies tokenize_clean behind the two acceptance gates: records with
/// lang != "en" are rejected as NonEnglish, results with fewer than 3 tokens
/// (placeholders included) as TooShort.
CleanOutcome clean_record(const TextRecord& rec);

const char* reject_reason_name(RejectReason r);

}  // namespace embias::corpus
