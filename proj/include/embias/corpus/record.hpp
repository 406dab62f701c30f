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
#include <functional>
#include <istream>
#include <string>
#include <vector>

namespace embias::corpus {

/// One raw region-tagged short-text post.
struct TextRecord {
    std::string id;      // nonempty
    std::string text;    // UTF-8
    std::string lang;    // ISO-639-1 code
    std::string region;  // culture key (country code or U.S. state code), nonempty
};

struct ParseStats {
    uint64_t parsed = 0;
    uint64_t malformed = 0;  // skipped lines
};

/// Parses line-delimited records: one JSON object per line with exactly the
/// fields id/text/lang/region, all strings, id and region nonempty. Malformed
/// lines are counted and skipped. Records are delivered in file order.
/// Throws DataError only if the stream itself is unreadable.
ParseStats parse_records(std::istream& in, const std::function<void(TextRecord&&)>& on_record);

ParseStats parse_records_file(const std::filesystem::path& path,
                              const std::function<void(TextRecord&&)>& on_record);

/// Convenience wrapper collecting all records in memory.
std::vector<TextRecord> parse_records_vec(std::istream& in, ParseStats* stats = nullptr);

}  // namespace embias::corpus
