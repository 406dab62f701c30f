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

#include "embias/analysis/stat_table.hpp"

#include <algorithm>
#include <fstream>

#include <json.hpp>

#include "embias/error.hpp"
#include "embias/util.hpp"

namespace embias::analysis {

StatTable load_stat_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open statistic file: " + path.string());
    StatTable table;
    table.name = path.stem().string();
    std::string line;
    if (!std::getline(in, line))
        throw DataError("statistic file is empty: " + path.string());
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "culture,value")
        throw DataError("statistic file " + path.string() +
                        " must start with the header 'culture,value', got '" + line + "'");
    size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = split_csv_line(line);
        if (fields.size() != 2)
            throw DataError(path.string() + ":" + std::to_string(lineno) +
                            ": expected 2 fields, got " + std::to_string(fields.size()));
        std::string culture = trim(fields[0]);
        if (culture.empty())
            throw DataError(path.string() + ":" + std::to_string(lineno) + ": empty culture key");
        double v = parse_double_field(fields[1], path.string() + ":" + std::to_string(lineno));
        if (!table.values.emplace(culture, v).second)
            throw DataError(path.string() + ":" + std::to_string(lineno) +
                            ": duplicate culture '" + culture + "'");
    }
    if (in.bad()) throw DataError("I/O error while reading statistic file: " + path.string());
    if (table.values.size() < 3)
        throw DataError("statistic " + table.name + " covers fewer than 3 cultures");
    return table;
}

std::vector<StatTable> load_stats_dir(const std::filesystem::path& dir) {
    std::vector<StatTable> out;
    std::filesystem::path manifest = dir / "stats.json";
    if (std::filesystem::exists(manifest)) {
        std::ifstream in(manifest);
        if (!in) throw DataError("cannot open statistics manifest: " + manifest.string());
        nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
        if (j.is_discarded() || !j.is_object())
            throw DataError("invalid statistics manifest JSON: " + manifest.string());
        for (const auto& [name, note] : j.items()) {
            if (!note.is_string())
                throw DataError("statistics manifest entry '" + name +
                                "' must map to a note string");
            StatTable t = load_stat_csv(dir / (name + ".csv"));
            t.note = note.get<std::string>();
            out.push_back(std::move(t));
        }
    } else {
        for (const auto& entry : std::filesystem::directory_iterator(dir)) {
            if (entry.path().extension() == ".csv")
                out.push_back(load_stat_csv(entry.path()));
        }
    }
    if (out.empty()) throw DataError("no statistic files found in: " + dir.string());
    std::sort(out.begin(), out.end(),
              [](const StatTable& a, const StatTable& b) { return a.name < b.name; });
    return out;
}

}  // namespace embias::analysis
