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

#include "embias/corpus/clean.hpp"

#include <array>

#include "embias/util.hpp"

namespace embias::corpus {

namespace {

// Decodes the codepoint starting at s[i]; advances i by at least one byte.
// Invalid sequences decode to U+FFFD one byte at a time.
uint32_t next_codepoint(std::string_view s, size_t& i) {
    unsigned char b0 = static_cast<unsigned char>(s[i]);
    if (b0 < 0x80) {
        ++i;
        return b0;
    }
    int len = 0;
    uint32_t cp = 0;
    if ((b0 & 0xE0) == 0xC0) {
        len = 2;
        cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
        len = 3;
        cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
        len = 4;
        cp = b0 & 0x07;
    } else {
        ++i;
        return 0xFFFD;
    }
    if (i + len > s.size()) {
        ++i;
        return 0xFFFD;
    }
    for (int k = 1; k < len; ++k) {
        unsigned char b = static_cast<unsigned char>(s[i + k]);
        if ((b & 0xC0) != 0x80) {
            ++i;
            return 0xFFFD;
        }
        cp = (cp << 6) | (b & 0x3F);
    }
    i += len;
    return cp;
}

bool is_space_cp(uint32_t cp) {
    switch (cp) {
        case 0x09: case 0x0A: case 0x0B: case 0x0C: case 0x0D: case 0x20:
        case 0x85: case 0xA0: case 0x1680: case 0x2028: case 0x2029:
        case 0x202F: case 0x205F: case 0x3000:
            return true;
        default:
            return cp >= 0x2000 && cp <= 0x200A;
    }
}

bool is_emoji_base(uint32_t cp) {
    return (cp >= 0x1F300 && cp <= 0x1F5FF) ||  // Misc Symbols & Pictographs
           (cp >= 0x1F600 && cp <= 0x1F64F) ||  // Emoticons
           (cp >= 0x1F680 && cp <= 0x1F6FF) ||  // Transport & Map
           (cp >= 0x1F900 && cp <= 0x1F9FF);    // Supplemental Symbols
}

// Codepoints that extend an already-started emoji sequence.
bool is_emoji_extension(uint32_t cp) {
    return cp == 0x200D ||                     // zero-width joiner
           cp == 0xFE0F ||                     // variation selector 16
           (cp >= 0x1F3FB && cp <= 0x1F3FF);   // skin-tone modifiers
}

bool is_ascii_alnum(uint32_t cp) {
    return (cp >= '0' && cp <= '9') || (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z');
}

bool is_strippable(uint32_t cp) {
    if (cp < 0x80) return !is_ascii_alnum(cp);
    if (cp >= 0xA1 && cp <= 0xBF) return true;      // Latin-1 punctuation block
    if (cp >= 0x2000 && cp <= 0x206F) return true;  // general punctuation
    return false;
}

bool is_word_char(char c) {
    return is_ascii_alnum(static_cast<unsigned char>(c)) || c == '_';
}

bool starts_with(std::string_view s, std::string_view prefix) {
    return s.substr(0, prefix.size()) == prefix;
}

bool is_media_link(std::string_view low) {
    for (std::string_view scheme : {"https://", "http://"}) {
        if (starts_with(low, scheme)) {
            low.remove_prefix(scheme.size());
            break;
        }
    }
    return starts_with(low, "pic.twitter.com") || starts_with(low, "pbs.twimg.com");
}

bool is_url(std::string_view low) {
    return starts_with(low, "http://") || starts_with(low, "https://") ||
           starts_with(low, "www.");
}

// Strips leading/trailing punctuation from a non-emoji segment; emits the
// residue if nonempty.
void emit_segment(std::string_view seg, std::vector<std::string>& out) {
    // Codepoint boundaries of seg.
    std::vector<std::pair<size_t, uint32_t>> cps;  // (byte offset, codepoint)
    size_t i = 0;
    while (i < seg.size()) {
        size_t at = i;
        uint32_t cp = next_codepoint(seg, i);
        cps.emplace_back(at, cp);
    }
    size_t b = 0, e = cps.size();
    while (b < e && is_strippable(cps[b].second)) ++b;
    while (e > b && is_strippable(cps[e - 1].second)) --e;
    if (b == e) return;
    size_t from = cps[b].first;
    size_t to = (e == cps.size()) ? seg.size() : cps[e].first;
    out.emplace_back(seg.substr(from, to - from));
}

void handle_chunk(std::string_view chunk, std::vector<std::string>& out) {
    if (is_placeholder_token(chunk)) {  // keeps cleaning idempotent
        out.emplace_back(chunk);
        return;
    }
    std::string low = ascii_lower(chunk);
    if (is_media_link(low)) {
        out.emplace_back(kMediaToken);
        return;
    }
    if (is_url(low)) {
        out.emplace_back(kUrlToken);
        return;
    }
    if (low.size() > 1 && low[0] == '@' && is_word_char(low[1])) {
        out.emplace_back(kUserToken);
        return;
    }
    if (low.size() > 1 && low[0] == '#' && is_word_char(low[1])) {
        out.emplace_back(kHashtagToken);
        return;
    }
    // Split on emoji runs, then strip punctuation boundaries of the rest.
    size_t i = 0, seg_start = 0;
    while (i < low.size()) {
        size_t at = i;
        uint32_t cp = next_codepoint(low, i);
        if (!is_emoji_base(cp)) continue;
        if (at > seg_start) emit_segment(std::string_view(low).substr(seg_start, at - seg_start), out);
        // Consume the full emoji sequence.
        while (i < low.size()) {
            size_t k = i;
            uint32_t nxt = next_codepoint(low, k);
            if (!is_emoji_base(nxt) && !is_emoji_extension(nxt)) break;
            i = k;
        }
        out.emplace_back(kEmojiToken);
        seg_start = i;
    }
    if (seg_start < low.size()) emit_segment(std::string_view(low).substr(seg_start), out);
}

}  // namespace

bool is_placeholder_token(std::string_view token) {
    return token == kUrlToken || token == kUserToken || token == kHashtagToken ||
           token == kEmojiToken || token == kMediaToken;
}

std::vector<std::string> tokenize_clean(std::string_view text) {
    std::vector<std::string> out;
    size_t i = 0;
    while (i < text.size()) {
        size_t j = i;
        uint32_t cp = next_codepoint(text, j);
        if (is_space_cp(cp)) {
            i = j;
            continue;
        }
        size_t start = i;
        while (i < text.size()) {
            size_t k = i;
            cp = next_codepoint(text, k);
            if (is_space_cp(cp)) break;
            i = k;
        }
        handle_chunk(text.substr(start, i - start), out);
    }
    return out;
}

CleanOutcome clean_record(const TextRecord& rec) {
    if (rec.lang != "en") return {std::nullopt, RejectReason::NonEnglish};
    auto tokens = tokenize_clean(rec.text);
    if (tokens.size() < 3) return {std::nullopt, RejectReason::TooShort};
    return {CleanSentence{std::move(tokens), rec.region}, RejectReason::NonEnglish};
}

const char* reject_reason_name(RejectReason r) {
    switch (r) {
        case RejectReason::NonEnglish: return "non-english";
        case RejectReason::TooShort: return "too-short";
    }
    return "unknown";
}

}  // namespace embias::corpus
