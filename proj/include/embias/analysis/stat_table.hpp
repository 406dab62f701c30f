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

#ifndef EMBIAS_ANALYSIS_STAT_TABLE_HPP
#define EMBIAS_ANALYSIS_STAT_TABLE_HPP

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace embias::analysis {

/// One per-culture statistic. Values keep their published orientation; the
/// note carries the unit or direction hint for human readers only.
struct StatTable {
    std::string name;
    std::string note;
    std::map<std::string, double> values;  // culture -> value

    const double* find(const std::string& culture) const {
        auto it = values.find(culture);
        return it == values.end() ? nullptr : &it->second;
    }
};

/// CSV with the exact header "culture,value". Statistic name is the
/// filename stem. Throws DataError on a wrong header, duplicate cultures,
/// non-finite values, or fewer than 3 rows.
StatTable load_stat_csv(const std::filesystem::path& path);

/// Loads every statistic in a directory. When dir/stats.json exists it maps
/// statistic names to orientation notes and fixes the load set; otherwise
/// every *.csv file is loaded. Result is sorted by name.
std::vector<StatTable> load_stats_dir(const std::filesystem::path& dir);

}  // namespace embias::analysis

#endif  // EMBIAS_ANALYSIS_STAT_TABLE_HPP
