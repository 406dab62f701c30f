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

#include "embias/corpus/record.hpp"

#include <fstream>

#include <json.hpp>

#include "embias/error.hpp"

namespace embias::corpus {

namespace {

// A line is well-formed iff it is a JSON object with exactly the four string
// fields id/text/lang/region and nonempty id and region.
bool parse_line(const std::string& line, TextRecord& out) {
    nlohmann::json j = nlohmann::json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded() || !j.is_object() || j.size() != 4) return false;
    for (const char* key : {"id", "text", "lang", "region"}) {
        auto it = j.find(key);
        if (it == j.end() || !it->is_string()) return false;
    }
    out.id = j["id"].get<std::string>();
    out.text = j["text"].get<std::string>();
    out.lang = j["lang"].get<std::string>();
    out.region = j["region"].get<std::string>();
    return !out.id.empty() && !out.region.empty();
}

}  // namespace

ParseStats parse_records(std::istream& in, const std::function<void(TextRecord&&)>& on_record) {
    if (!in) throw DataError("record stream is not readable");
    ParseStats stats;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        TextRecord rec;
        if (parse_line(line, rec)) {
            ++stats.parsed;
            on_record(std::move(rec));
        } else {
            ++stats.malformed;
        }
    }
    if (in.bad()) throw DataError("I/O error while reading records");
    return stats;
}

ParseStats parse_records_file(const std::filesystem::path& path,
                              const std::function<void(TextRecord&&)>& on_record) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open record file: " + path.string());
    return parse_records(in, on_record);
}

std::vector<TextRecord> parse_records_vec(std::istream& in, ParseStats* stats) {
    std::vector<TextRecord> out;
    ParseStats s = parse_records(in, [&out](TextRecord&& r) { out.push_back(std::move(r)); });
    if (stats) *stats = s;
    return out;
}

}  // namespace embias::corpus
