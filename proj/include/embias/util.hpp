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

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace embias {

std::string trim(std::string_view s);
std::string ascii_lower(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);

/// Strict double parse of an entire trimmed field; throws DataError otherwise.
double parse_double_field(const std::string& field, const std::string& context);

/// Shortest decimal form that round-trips a double ("%.17g" fallback).
std::string format_double(double v);

/// Flat "key = value" file: '#' starts a comment line, blank lines ignored.
/// Pairs are returned in file order; duplicate keys are preserved.
std::vector<std::pair<std::string, std::string>> parse_kv_file(const std::filesystem::path& path);

/// Minimal CSV splitting; supports double-quoted fields with "" escapes.
std::vector<std::string> split_csv_line(const std::string& line);
std::string csv_escape(const std::string& field);

std::vector<std::string> read_lines(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace embias
